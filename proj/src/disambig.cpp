#include "parsemend/disambig.hpp"

#include <algorithm>

#include "parsemend/errors.hpp"

namespace parsemend {

std::vector<CollocationTriple> extract_collocations(const DependencyTree& tree) {
  auto violations = validate_tree(tree);
  if (!violations.empty()) {
    throw ValidationError("extract_collocations: invalid tree: " + to_string(violations.front()));
  }
  std::vector<const DependencyEdge*> ordered;
  ordered.reserve(tree.edges.size());
  for (const auto& edge : tree.edges) ordered.push_back(&edge);
  std::sort(ordered.begin(), ordered.end(),
            [](const DependencyEdge* a, const DependencyEdge* b) {
              return a->dependent < b->dependent;
            });

  std::vector<CollocationTriple> out;
  for (const DependencyEdge* edge : ordered) {
    if (edge->head == 0) continue;
    const Token* dep = tree.token_at(edge->dependent);
    const Token* head = tree.token_at(edge->head);
    if (!is_collocation_pos(dep->pos) || !is_collocation_pos(head->pos)) continue;
    out.push_back({{dep->lemma, dep->pos}, edge->relation, {head->lemma, head->pos}});
  }
  return out;
}

CandidateScore score_candidate(const DiscourseStore& store, const SynonymLexicon& lexicon,
                               const DependencyTree& tree, const Rational& similar_discount,
                               const QueryFilter& filter) {
  CandidateScore score;
  for (const auto& triple : extract_collocations(tree)) {
    ScoredCollocation item;
    item.triple = triple;
    item.match = match_collocation(store, lexicon, triple, filter);
    switch (item.match.level) {
      case MatchLevel::Identical:
        item.contribution = item.match.score;
        break;
      case MatchLevel::Synonym:
        item.contribution = item.match.score * similar_discount;
        break;
      default:
        // POS backoff is a joining relaxation, not disambiguation evidence.
        item.contribution = Rational(0);
        break;
    }
    score.total += item.contribution;
    score.per_collocation.push_back(std::move(item));
  }
  return score;
}

SelectionResult select_parse(const DiscourseStore& store, const SynonymLexicon& lexicon,
                             const ParseForest& forest, const Rational& similar_discount,
                             const QueryFilter& filter) {
  if (forest.candidates.size() < 2) {
    throw ValidationError("select_parse: need at least 2 candidates");
  }
  SelectionResult result;
  for (std::size_t i = 0; i < forest.candidates.size(); ++i) {
    CandidateScore score =
        score_candidate(store, lexicon, forest.candidates[i], similar_discount, filter);
    score.candidate_index = i;
    result.scores.push_back(std::move(score));
  }

  std::size_t best = 0;
  bool strict = true;
  for (std::size_t i = 1; i < result.scores.size(); ++i) {
    if (result.scores[i].total > result.scores[best].total) {
      best = i;
      strict = true;
    } else if (result.scores[i].total == result.scores[best].total) {
      strict = false;
    }
  }
  // Any tie for the maximum falls back to parser emission order.
  result.decided = strict;
  result.chosen = strict ? best : 0;
  return result;
}

}  // namespace parsemend
