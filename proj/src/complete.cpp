#include "parsemend/complete.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "parsemend/errors.hpp"

namespace parsemend {

std::string PosEvidence::summary() const {
  std::ostringstream out;
  out << lemma << ": " << to_string(dominant) << " " << dominant_count << "/" << total;
  return out.str();
}

std::string to_string(const RestructureAction& action) {
  std::ostringstream out;
  if (const auto* retag = std::get_if<RetagAction>(&action)) {
    out << "retag token=" << retag->token_index << " lemma=" << retag->lemma << " "
        << to_string(retag->from) << "->" << to_string(retag->to)
        << " evidence=" << retag->evidence.summary();
  } else {
    const auto& reattach = std::get<ReattachAction>(action);
    out << "reattach dep=" << reattach.dependent << " head=" << reattach.old_head << "->"
        << reattach.new_head << " rel=" << reattach.old_relation.str() << "->"
        << reattach.new_relation.str() << " level=" << to_string(reattach.evidence.level)
        << " score=" << ratio_string(reattach.evidence.score);
    if (reattach.evidence.entry) out << " entry=" << reattach.evidence.entry->key.str();
  }
  return out.str();
}

std::string to_string(const JoinDecision& decision) {
  std::ostringstream out;
  out << "join dir=" << (decision.direction == JoinDirection::RightUnderLeft ? "RL" : "LR")
      << " attach=" << decision.attach_head << " root=" << decision.attached_root
      << " rel=" << decision.relation.str() << " level=" << to_string(decision.match.level)
      << " score=" << ratio_string(decision.match.score)
      << " heuristic=" << (decision.heuristic ? 1 : 0);
  return out.str();
}

std::string_view to_string(CompletionStatus status) {
  switch (status) {
    case CompletionStatus::Unified: return "Unified";
    case CompletionStatus::PartiallyJoined: return "PartiallyJoined";
    case CompletionStatus::Unchanged: return "Unchanged";
  }
  return "Unchanged";
}

// ---------------------------------------------------------------------------
// Restructuring (step 1)
// ---------------------------------------------------------------------------

namespace {

DependencyEdge* mutable_edge_of(DependencyTree& tree, int dependent) {
  for (auto& edge : tree.edges) {
    if (edge.dependent == dependent) return &edge;
  }
  return nullptr;
}

}  // namespace

RestructureOutcome restructure_fragment(const DiscourseStore& store,
                                        const SynonymLexicon& lexicon,
                                        const ParseFragment& fragment,
                                        const PipelineConfig& config,
                                        const QueryFilter& filter) {
  auto violations = validate_fragment(fragment);
  if (!violations.empty()) {
    throw ValidationError("restructure_fragment: invalid fragment: " +
                          to_string(violations.front()));
  }

  RestructureOutcome outcome;
  outcome.fragment = fragment;
  DependencyTree& tree = outcome.fragment.tree;
  const bool keep_projective = is_projective(tree);

  // Retag pass. Profiles do not change underneath us, so one pass settles
  // every token's tag.
  for (auto& token : tree.tokens) {
    if (token.pos == Pos::PUNC) continue;
    const PosProfile profile = store.pos_profile(token.lemma, filter);
    const int total = profile.total();
    if (total < config.retag_min_count) continue;
    const auto dominant = profile.dominant();
    if (!dominant) continue;
    const auto [tag, count] = *dominant;
    if (tag == token.pos || !is_collocation_pos(tag)) continue;
    if (Rational(count, total) < config.retag_pos_ratio) continue;
    RetagAction action{token.index, token.lemma, token.pos, tag,
                       PosEvidence{token.lemma, tag, count, total}};
    token.pos = tag;
    token.pos_raw.clear();
    outcome.actions.emplace_back(std::move(action));
  }

  // Reattach passes, to a fixpoint. A committed reattach leaves its edge
  // supported, so the set of unsupported dependents shrinks monotonically
  // and the loop terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& token : tree.tokens) {
      DependencyEdge* edge = mutable_edge_of(tree, token.index);
      if (!edge || edge->head == 0) continue;
      const Token* dep = tree.token_at(edge->dependent);
      const Token* head = tree.token_at(edge->head);
      if (!is_collocation_pos(dep->pos) || !is_collocation_pos(head->pos)) continue;
      const CollocationTriple current{{dep->lemma, dep->pos}, edge->relation,
                                      {head->lemma, head->pos}};
      // Word-level support keeps an edge; the POS relaxation alone does not
      // (it is a joining device, not usage evidence).
      if (match_level_only(store, lexicon, current, filter) >= MatchLevel::Synonym) continue;

      // Hunt for an alternative in-fragment head with real support.
      MatchResult best;
      int best_head = 0;
      for (const auto& candidate : tree.tokens) {
        if (candidate.index == edge->dependent || candidate.index == edge->head) continue;
        MatchResult match =
            best_pair_match(store, lexicon, {dep->lemma, dep->pos},
                            {candidate.lemma, candidate.pos}, /*allow_pos_backoff=*/false, filter);
        if (match.level == MatchLevel::None) continue;
        const bool wins = [&] {
          if (best.level == MatchLevel::None) return true;
          if (match.level != best.level) return match.level > best.level;
          if (match.score != best.score) return match.score > best.score;
          return std::abs(edge->dependent - candidate.index) <
                 std::abs(edge->dependent - best_head);
        }();
        if (wins) {
          best = std::move(match);
          best_head = candidate.index;
        }
      }
      if (best.level == MatchLevel::None) continue;

      const int old_head = edge->head;
      const RelationLabel old_relation = edge->relation;
      edge->head = best_head;
      edge->relation = best.entry->key.relation;
      const bool ok = is_valid(tree) && (!keep_projective || is_projective(tree));
      if (!ok) {
        edge->head = old_head;
        edge->relation = old_relation;
        std::ostringstream note;
        note << "reattach dep=" << token.index << " cand_head=" << best_head
             << " rejected: would break the tree";
        outcome.skipped.push_back(note.str());
        continue;
      }
      outcome.actions.emplace_back(ReattachAction{token.index, old_head, best_head, old_relation,
                                                  edge->relation, std::move(best)});
      changed = true;
    }
  }

  return outcome;
}

// ---------------------------------------------------------------------------
// Joining (step 2)
// ---------------------------------------------------------------------------

namespace {

struct JoinCandidate {
  JoinDirection direction;
  int attach_head;
  int attached_root;
  MatchResult match;
};

bool candidate_wins(const JoinCandidate& a, const JoinCandidate& b) {
  if (a.match.level != b.match.level) return a.match.level > b.match.level;
  if (a.match.score != b.match.score) return a.match.score > b.match.score;
  const int da = std::abs(a.attach_head - a.attached_root);
  const int db = std::abs(b.attach_head - b.attached_root);
  if (da != db) return da < db;
  return a.direction == JoinDirection::RightUnderLeft &&
         b.direction == JoinDirection::LeftUnderRight;
}

/// Concatenates the two fragments and rewrites `root`'s root edge into an
/// attachment under `attach` with `relation`.
ParseFragment merge_fragments(const ParseFragment& left, const ParseFragment& right, int root,
                              int attach, const RelationLabel& relation) {
  ParseFragment merged;
  merged.span_begin = left.span_begin;
  merged.span_end = right.span_end;
  merged.tree.tokens = left.tree.tokens;
  merged.tree.tokens.insert(merged.tree.tokens.end(), right.tree.tokens.begin(),
                            right.tree.tokens.end());
  merged.tree.edges = left.tree.edges;
  merged.tree.edges.insert(merged.tree.edges.end(), right.tree.edges.begin(),
                           right.tree.edges.end());
  for (auto& edge : merged.tree.edges) {
    if (edge.dependent == root && edge.head == 0) {
      edge.head = attach;
      edge.relation = relation;
      edge.ambiguous = false;
      break;
    }
  }
  return merged;
}

void require_joinable(const ParseFragment& left, const ParseFragment& right) {
  auto lv = validate_fragment(left);
  auto rv = validate_fragment(right);
  if (!lv.empty() || !rv.empty()) {
    throw ValidationError("try_join: invalid fragment: " +
                          to_string(lv.empty() ? rv.front() : lv.front()));
  }
  if (left.span_end + 1 != right.span_begin) {
    throw ValidationError("try_join: fragments are not adjacent (" +
                          std::to_string(left.span_end) + " / " +
                          std::to_string(right.span_begin) + ")");
  }
  if (!is_projective(left.tree) || !is_projective(right.tree)) {
    throw ValidationError("try_join: fragments must be projective");
  }
}

}  // namespace

std::optional<std::pair<ParseFragment, JoinDecision>> try_join(
    const DiscourseStore& store, const SynonymLexicon& lexicon, const ParseFragment& left,
    const ParseFragment& right, const QueryFilter& filter) {
  require_joinable(left, right);

  const int left_root = tree_root(left.tree);
  const int right_root = tree_root(right.tree);
  const Token* left_root_token = left.tree.token_at(left_root);
  const Token* right_root_token = right.tree.token_at(right_root);

  std::optional<JoinCandidate> best;
  auto consider = [&](JoinDirection direction, const Token& root, const Token& attach) {
    MatchResult match = best_pair_match(store, lexicon, {root.lemma, root.pos},
                                        {attach.lemma, attach.pos},
                                        /*allow_pos_backoff=*/true, filter);
    if (match.level == MatchLevel::None) return;
    JoinCandidate candidate{direction, attach.index, root.index, std::move(match)};
    if (!best || candidate_wins(candidate, *best)) best = std::move(candidate);
  };

  // The attachment frontier: the right root may hang off the left tree's
  // right spine, the left root off the right tree's left spine. Both keep
  // the union projective by construction.
  for (int site : right_spine(left.tree)) {
    consider(JoinDirection::RightUnderLeft, *right_root_token, *left.tree.token_at(site));
  }
  for (int site : left_spine(right.tree)) {
    consider(JoinDirection::LeftUnderRight, *left_root_token, *right.tree.token_at(site));
  }
  if (!best) return std::nullopt;

  const RelationLabel relation = best->match.entry->key.relation;
  ParseFragment merged =
      best->direction == JoinDirection::RightUnderLeft
          ? merge_fragments(left, right, right_root, best->attach_head, relation)
          : merge_fragments(left, right, left_root, best->attach_head, relation);
  JoinDecision decision{best->direction, best->attach_head, best->attached_root, relation,
                        std::move(best->match), /*heuristic=*/false};
  return std::make_pair(std::move(merged), std::move(decision));
}

JoinAllResult join_all(const DiscourseStore& store, const SynonymLexicon& lexicon,
                       const PartialParse& partial, const QueryFilter& filter) {
  JoinAllResult result;
  result.units = partial.fragments;
  if (result.units.size() < 2) return result;

  bool joined_any = true;
  while (joined_any && result.units.size() > 1) {
    joined_any = false;
    std::vector<ParseFragment> next;
    ParseFragment current = result.units.front();
    for (std::size_t i = 1; i < result.units.size(); ++i) {
      if (auto joined = try_join(store, lexicon, current, result.units[i], filter)) {
        current = std::move(joined->first);
        result.joins.push_back(std::move(joined->second));
        joined_any = true;
      } else {
        next.push_back(std::move(current));
        current = result.units[i];
      }
    }
    next.push_back(std::move(current));
    result.units = std::move(next);
  }
  return result;
}

HeuristicJoinResult heuristic_join(const PartialParse& partial) {
  if (partial.fragments.empty()) {
    throw ValidationError("heuristic_join: no fragments");
  }
  HeuristicJoinResult result;
  ParseFragment current = partial.fragments.front();
  for (std::size_t i = 1; i < partial.fragments.size(); ++i) {
    const ParseFragment& next = partial.fragments[i];
    const int current_root = tree_root(current.tree);
    const int next_root = tree_root(next.tree);
    const Pos current_pos = current.tree.token_at(current_root)->pos;
    const Pos next_pos = next.tree.token_at(next_root)->pos;

    JoinDecision decision;
    decision.heuristic = true;
    if ((current_pos == Pos::N || current_pos == Pos::PN) && next_pos == Pos::V) {
      // Noun-rooted unit right before a verb-rooted unit: treat it as the subject.
      decision.direction = JoinDirection::LeftUnderRight;
      decision.attach_head = next_root;
      decision.attached_root = current_root;
      decision.relation = RelationLabel::grammatical(GramRel::Subj);
      current = merge_fragments(current, next, current_root, next_root, decision.relation);
    } else {
      // Default rule: next unit's root under the last token of the current one.
      decision.direction = JoinDirection::RightUnderLeft;
      decision.attach_head = current.span_end;
      decision.attached_root = next_root;
      decision.relation = RelationLabel::direct();
      current = merge_fragments(current, next, next_root, decision.attach_head, decision.relation);
    }
    result.joins.push_back(std::move(decision));
  }
  result.tree = std::move(current.tree);
  return result;
}

// ---------------------------------------------------------------------------
// Full completion
// ---------------------------------------------------------------------------

CompletionResult complete(const DiscourseStore& store, const SynonymLexicon& lexicon,
                          const PartialParse& partial, const PipelineConfig& config,
                          const QueryFilter& filter) {
  if (!store.frozen()) throw StoreError("store is not frozen; freeze() before completing");

  CompletionResult result;
  PartialParse restructured;
  for (const auto& fragment : partial.fragments) {
    RestructureOutcome outcome = restructure_fragment(store, lexicon, fragment, config, filter);
    restructured.fragments.push_back(std::move(outcome.fragment));
    result.actions.insert(result.actions.end(),
                          std::make_move_iterator(outcome.actions.begin()),
                          std::make_move_iterator(outcome.actions.end()));
    result.skipped.insert(result.skipped.end(),
                          std::make_move_iterator(outcome.skipped.begin()),
                          std::make_move_iterator(outcome.skipped.end()));
  }

  JoinAllResult joined = join_all(store, lexicon, restructured, filter);
  result.joins = std::move(joined.joins);

  if (joined.units.size() == 1 && partial.fragments.size() > 1) {
    result.status = CompletionStatus::Unified;
    result.output = std::move(joined.units.front().tree);
  } else if (joined.units.size() > 1 && config.fallback) {
    HeuristicJoinResult fallback = heuristic_join(PartialParse{std::move(joined.units)});
    result.joins.insert(result.joins.end(),
                        std::make_move_iterator(fallback.joins.begin()),
                        std::make_move_iterator(fallback.joins.end()));
    result.status = CompletionStatus::Unified;
    result.output = std::move(fallback.tree);
  } else {
    PartialParse remaining{std::move(joined.units)};
    if (result.actions.empty() && result.joins.empty()) {
      result.status = CompletionStatus::Unchanged;
    } else {
      result.status = CompletionStatus::PartiallyJoined;
    }
    result.output = std::move(remaining);
  }
  return result;
}

}  // namespace parsemend
