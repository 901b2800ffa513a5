#pragma once

#include <cstddef>
#include <vector>

#include "parsemend/match.hpp"

namespace parsemend {

struct ScoredCollocation {
  CollocationTriple triple;
  MatchResult match;
  Rational contribution{0};  // entry score for Identical, discounted for Synonym, else 0
};

struct CandidateScore {
  std::size_t candidate_index = 0;
  Rational total{0};  // always the sum of the contributions below
  std::vector<ScoredCollocation> per_collocation;
};

struct SelectionResult {
  std::size_t chosen = 0;
  std::vector<CandidateScore> scores;
  bool decided = false;  // true iff the maximum total is strict
};

/// One triple per edge between collocation-eligible tokens, ordered by
/// dependent index. Throws ValidationError on an invalid tree.
std::vector<CollocationTriple> extract_collocations(const DependencyTree& tree);

/// Sums discourse support over the candidate's collocations: full entry
/// score for Identical matches, `similar_discount` times the score for
/// Synonym matches, nothing for PosBackoff or None.
CandidateScore score_candidate(const DiscourseStore& store, const SynonymLexicon& lexicon,
                               const DependencyTree& tree, const Rational& similar_discount,
                               const QueryFilter& filter = {});

/// Picks the candidate with the strictly highest total. Any tie for the
/// maximum (including all-zero) falls back to candidate 0 with
/// decided = false.
SelectionResult select_parse(const DiscourseStore& store, const SynonymLexicon& lexicon,
                             const ParseForest& forest, const Rational& similar_discount,
                             const QueryFilter& filter = {});

}  // namespace parsemend
