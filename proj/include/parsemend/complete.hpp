#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "parsemend/config.hpp"
#include "parsemend/match.hpp"

namespace parsemend {

/// POS-profile evidence backing a retag.
struct PosEvidence {
  std::string lemma;
  Pos dominant = Pos::N;
  int dominant_count = 0;
  int total = 0;

  std::string summary() const;  // "side: N 15/15"
};

struct RetagAction {
  int token_index = 0;
  std::string lemma;
  Pos from = Pos::N;
  Pos to = Pos::N;
  PosEvidence evidence;
};

struct ReattachAction {
  int dependent = 0;
  int old_head = 0;
  int new_head = 0;
  RelationLabel old_relation;
  RelationLabel new_relation;
  MatchResult evidence;
};

using RestructureAction = std::variant<RetagAction, ReattachAction>;

std::string to_string(const RestructureAction& action);

enum class JoinDirection : std::uint8_t { RightUnderLeft, LeftUnderRight };

struct JoinDecision {
  JoinDirection direction = JoinDirection::RightUnderLeft;
  int attach_head = 0;    // token the root was attached under
  int attached_root = 0;  // root token of the absorbed unit
  RelationLabel relation;
  MatchResult match;       // level None iff heuristic
  bool heuristic = false;
};

std::string to_string(const JoinDecision& decision);

enum class CompletionStatus : std::uint8_t { Unified, PartiallyJoined, Unchanged };

std::string_view to_string(CompletionStatus status);

/// Outcome of completing one partial parse. `output` is a single covering
/// tree iff status == Unified; Unchanged means nothing was touched at all.
/// `skipped` records candidate restructure actions rejected by the validity
/// re-check (audit only).
struct CompletionResult {
  CompletionStatus status = CompletionStatus::Unchanged;
  std::variant<DependencyTree, PartialParse> output;
  std::vector<RestructureAction> actions;
  std::vector<JoinDecision> joins;
  std::vector<std::string> skipped;

  bool unified() const { return status == CompletionStatus::Unified; }
  const DependencyTree& tree() const { return std::get<DependencyTree>(output); }
  const PartialParse& partial() const { return std::get<PartialParse>(output); }
};

struct RestructureOutcome {
  ParseFragment fragment;
  std::vector<RestructureAction> actions;
  std::vector<std::string> skipped;
};

/// Step 1: make one fragment consistent with the discourse. Retags a token
/// when its lemma's profile has at least `retag_min_count` occurrences and a
/// dominant tag (ratio >= retag_pos_ratio) that differs; reattaches a
/// dependent whose current edge lacks word-level support (no Identical or
/// Synonym match) to an alternative in-fragment head that has it. Actions
/// run in token order and are re-validated before commit; passes repeat to a
/// fixpoint so the operation is idempotent.
RestructureOutcome restructure_fragment(const DiscourseStore& store,
                                        const SynonymLexicon& lexicon,
                                        const ParseFragment& fragment,
                                        const PipelineConfig& config,
                                        const QueryFilter& filter = {});

/// Step 2 primitive: attach one adjacent fragment's root into the other.
/// Candidate sites are the left tree's right spine (for the right root) and
/// the right tree's left spine (for the left root) — exactly the
/// projectivity-preserving frontier. The best candidate wins by
/// (level desc, score desc, distance asc, RightUnderLeft first); absent when
/// no candidate has any support.
std::optional<std::pair<ParseFragment, JoinDecision>> try_join(
    const DiscourseStore& store, const SynonymLexicon& lexicon, const ParseFragment& left,
    const ParseFragment& right, const QueryFilter& filter = {});

struct JoinAllResult {
  std::vector<ParseFragment> units;
  std::vector<JoinDecision> joins;
};

/// Left-to-right sweep: try to join the current unit with the next; on
/// success the union becomes current, on failure the unit is emitted.
/// Sweeps repeat until one makes no join.
JoinAllResult join_all(const DiscourseStore& store, const SynonymLexicon& lexicon,
                       const PartialParse& partial, const QueryFilter& filter = {});

struct HeuristicJoinResult {
  DependencyTree tree;
  std::vector<JoinDecision> joins;  // all heuristic
};

/// Discourse-free fallback: a noun-rooted unit followed by a verb-rooted
/// unit joins as SUBJ under the verb root; every other boundary attaches the
/// next root under the last token of the preceding unit with DIRECT. Always
/// yields a single valid projective tree.
HeuristicJoinResult heuristic_join(const PartialParse& partial);

/// Full completion: restructure each fragment, join, then (if configured)
/// fall back to heuristics. Fallback-produced trees have status Unified but
/// their joins carry heuristic = true so reports can tell discourse-driven
/// unification apart.
CompletionResult complete(const DiscourseStore& store, const SynonymLexicon& lexicon,
                          const PartialParse& partial, const PipelineConfig& config,
                          const QueryFilter& filter = {});

}  // namespace parsemend
