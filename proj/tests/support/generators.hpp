#pragma once

// Seeded random generators for property tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "parsemend/core.hpp"
#include "parsemend/lexicon.hpp"
#include "parsemend/store.hpp"

namespace parsemend::testing {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool rand_bool(Rng& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

inline Pos rand_content_pos(Rng& rng) {
  static const Pos pool[] = {Pos::N, Pos::N, Pos::V, Pos::V, Pos::AJ, Pos::AV, Pos::PN, Pos::DET};
  return pool[rand_int(rng, 0, 7)];
}

inline RelationLabel rand_relation(Rng& rng) {
  static const char* preps[] = {"of", "in", "to", "from", "on", "with", "up"};
  switch (rand_int(rng, 0, 5)) {
    case 0: return RelationLabel::grammatical(GramRel::Subj);
    case 1: return RelationLabel::grammatical(GramRel::Obj);
    case 2: return RelationLabel::grammatical(GramRel::Recipient);
    case 3: return RelationLabel::grammatical(GramRel::Direct);
    default: return RelationLabel::prep(preps[rand_int(rng, 0, 6)]);
  }
}

inline std::string rand_lemma(Rng& rng, int vocabulary) {
  return "w" + std::to_string(rand_int(rng, 0, vocabulary - 1));
}

inline Token rand_token(Rng& rng, int index, int vocabulary) {
  Token token;
  token.index = index;
  token.lemma = rand_lemma(rng, vocabulary);
  token.surface = token.lemma;
  token.pos = rand_content_pos(rng);
  return token;
}

/// Valid single-rooted tree: every token attaches to a previously placed
/// token (in a random placement order), so the result is acyclic with one
/// root, usually non-projective.
inline DependencyTree rand_valid_tree(Rng& rng, int n, int first_index = 1,
                                      int vocabulary = 12) {
  DependencyTree tree;
  for (int i = 0; i < n; ++i) tree.tokens.push_back(rand_token(rng, first_index + i, vocabulary));
  std::vector<int> order;
  for (int i = 0; i < n; ++i) order.push_back(first_index + i);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> placed;
  std::vector<DependencyEdge> edges;
  for (int index : order) {
    DependencyEdge edge;
    edge.dependent = index;
    edge.head = placed.empty() ? 0 : placed[static_cast<std::size_t>(
                                         rand_int(rng, 0, static_cast<int>(placed.size()) - 1))];
    edge.relation = rand_relation(rng);
    edge.ambiguous = rand_bool(rng, 0.3);
    edges.push_back(std::move(edge));
    placed.push_back(index);
  }
  std::sort(edges.begin(), edges.end(),
            [](const DependencyEdge& a, const DependencyEdge& b) {
              return a.dependent < b.dependent;
            });
  tree.edges = std::move(edges);
  return tree;
}

namespace detail {

/// Projective subtree over [lo,hi] rooted somewhere inside; children cover
/// the remainder as contiguous blocks.
inline void build_projective(Rng& rng, int lo, int hi, int head, const RelationLabel& relation,
                             std::vector<DependencyEdge>& edges) {
  if (lo > hi) return;
  const int root = rand_int(rng, lo, hi);
  DependencyEdge edge;
  edge.dependent = root;
  edge.head = head;
  edge.relation = relation;
  edge.ambiguous = rand_bool(rng, 0.2);
  edges.push_back(std::move(edge));
  int start = lo;
  while (start <= root - 1) {
    const int end = rand_int(rng, start, root - 1);
    build_projective(rng, start, end, root, rand_relation(rng), edges);
    start = end + 1;
  }
  start = root + 1;
  while (start <= hi) {
    const int end = rand_int(rng, start, hi);
    build_projective(rng, start, end, root, rand_relation(rng), edges);
    start = end + 1;
  }
}

}  // namespace detail

inline DependencyTree rand_projective_tree(Rng& rng, int n, int first_index = 1,
                                           int vocabulary = 12) {
  DependencyTree tree;
  for (int i = 0; i < n; ++i) tree.tokens.push_back(rand_token(rng, first_index + i, vocabulary));
  detail::build_projective(rng, first_index, first_index + n - 1, 0, RelationLabel::direct(),
                           tree.edges);
  std::sort(tree.edges.begin(), tree.edges.end(),
            [](const DependencyEdge& a, const DependencyEdge& b) {
              return a.dependent < b.dependent;
            });
  return tree;
}

inline PartialParse rand_partial_parse(Rng& rng, int tokens, int fragments, int vocabulary = 12) {
  // Random split points.
  std::vector<int> sizes(static_cast<std::size_t>(fragments), 1);
  for (int extra = tokens - fragments; extra > 0; --extra) {
    ++sizes[static_cast<std::size_t>(rand_int(rng, 0, fragments - 1))];
  }
  PartialParse partial;
  int begin = 1;
  for (int size : sizes) {
    ParseFragment fragment;
    fragment.span_begin = begin;
    fragment.span_end = begin + size - 1;
    fragment.tree = rand_projective_tree(rng, size, begin, vocabulary);
    partial.fragments.push_back(std::move(fragment));
    begin += size;
  }
  return partial;
}

/// Random store built by honest ingestion of small random trees.
inline DiscourseStore rand_store(Rng& rng, int sentences, int vocabulary = 12,
                                 std::optional<int> window = std::nullopt) {
  DiscourseStore store(window);
  for (int s = 1; s <= sentences; ++s) {
    store.ingest_tree(s, rand_projective_tree(rng, rand_int(rng, 2, 6), 1, vocabulary));
  }
  store.freeze();
  return store;
}

inline SynonymLexicon rand_lexicon(Rng& rng, int rings, int vocabulary = 12) {
  std::vector<std::vector<std::string>> specs;
  for (int r = 0; r < rings; ++r) {
    std::vector<std::string> ring;
    const int size = rand_int(rng, 2, 4);
    for (int i = 0; i < size; ++i) ring.push_back(rand_lemma(rng, vocabulary));
    specs.push_back(std::move(ring));
  }
  return SynonymLexicon(specs);
}

}  // namespace parsemend::testing
