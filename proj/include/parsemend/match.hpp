#pragma once

#include <optional>
#include <string>

#include "parsemend/lexicon.hpp"
#include "parsemend/store.hpp"

namespace parsemend {

/// Evidence quality, strictly ordered Identical > Synonym > PosBackoff > None.
/// Identical: exact key match. Synonym: exactly one side's lemma replaced by
/// a ring mate. PosBackoff: one side reduced to POS-only (relation still
/// exact) — a relaxation used for joining, not for disambiguation.
enum class MatchLevel : std::uint8_t { None = 0, PosBackoff = 1, Synonym = 2, Identical = 3 };

std::string_view to_string(MatchLevel level);

struct LemmaPos {
  std::string lemma;
  Pos pos = Pos::N;

  friend bool operator==(const LemmaPos&, const LemmaPos&) = default;
};

/// A modification pattern as it occurs in a tree: dependent word, relation,
/// head word.
struct CollocationTriple {
  LemmaPos modifier;
  RelationLabel relation;
  LemmaPos modifiee;

  CollocationKey key() const;
  std::string str() const;

  friend bool operator==(const CollocationTriple&, const CollocationTriple&) = default;
};

struct MatchResult {
  MatchLevel level = MatchLevel::None;
  std::optional<CollocationEntry> entry;  // absent iff level == None
  Rational score{0};                      // matched entry's preference value; 0 when None
};

/// True when `a` is strictly preferable: level desc, score desc, key asc.
bool better_match(const MatchResult& a, const MatchResult& b);

/// Highest achievable evidence level for the triple, with the best entry at
/// that level (ties: higher value, then lexicographically smaller key).
MatchResult match_collocation(const DiscourseStore& store, const SynonymLexicon& lexicon,
                              const LemmaPos& modifier, const RelationLabel& relation,
                              const LemmaPos& modifiee, const QueryFilter& filter = {});

MatchResult match_collocation(const DiscourseStore& store, const SynonymLexicon& lexicon,
                              const CollocationTriple& triple, const QueryFilter& filter = {});

MatchLevel match_level_only(const DiscourseStore& store, const SynonymLexicon& lexicon,
                            const CollocationTriple& triple, const QueryFilter& filter = {});

/// Best support for a (modifier, modifiee) pair over any relation; the
/// matched entry supplies the relation. PosBackoff candidates are only
/// produced when `allow_pos_backoff` is set (joining uses them,
/// restructuring does not). Non-collocable endpoints yield None.
MatchResult best_pair_match(const DiscourseStore& store, const SynonymLexicon& lexicon,
                            const LemmaPos& modifier, const LemmaPos& modifiee,
                            bool allow_pos_backoff, const QueryFilter& filter = {});

}  // namespace parsemend
