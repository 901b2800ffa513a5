#include <doctest.h>

#include <sstream>

#include "parsemend/errors.hpp"
#include "parsemend/lexicon.hpp"
#include "parsemend/match.hpp"
#include "support/builders.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace parsemend;
using namespace parsemend::testing;

namespace {

DiscourseStore side_take_store() {
  // side -from-> take, as in the patent evidence sentence.
  DiscourseStore store;
  store.ingest_tree(44, evidence_tree({"side", Pos::N}, "from", {"take", Pos::V}));
  store.freeze();
  return store;
}

}  // namespace

TEST_CASE("identical match on an exact key") {
  DiscourseStore store = side_take_store();
  MatchResult match = match_collocation(store, {}, {"side", Pos::N}, rel("from"), {"take", Pos::V});
  CHECK(match.level == MatchLevel::Identical);
  CHECK(match.score == Rational(1));
  REQUIRE(match.entry);
  CHECK(match.entry->key.modifiee_lemma == "take");
}

TEST_CASE("synonym substitution on one side") {
  // Store holds desktop -on-> use; ring {use, utilize} licenses the query.
  DiscourseStore store;
  store.ingest_tree(1, evidence_tree({"desktop", Pos::N}, "on", {"use", Pos::V}));
  store.freeze();
  SynonymLexicon lexicon = make_lexicon({{"use", "utilize"}});
  MatchResult match =
      match_collocation(store, lexicon, {"desktop", Pos::N}, rel("on"), {"utilize", Pos::V});
  CHECK(match.level == MatchLevel::Synonym);
  CHECK(match.score == Rational(1));
  CHECK(match.entry->key.modifiee_lemma == "use");

  // Both-sides substitution is not licensed.
  SynonymLexicon both = make_lexicon({{"use", "utilize"}, {"desktop", "screen"}});
  MatchResult miss =
      match_collocation(store, both, {"screen", Pos::N}, rel("on"), {"utilize", Pos::V});
  CHECK(miss.level != MatchLevel::Synonym);
  CHECK(miss.level != MatchLevel::Identical);
}

TEST_CASE("pos backoff keeps the relation and one exact side") {
  DiscourseStore store = side_take_store();
  // Same relation, same modifiee, different modifier lemma of the same POS.
  MatchResult match =
      match_collocation(store, {}, {"edge", Pos::N}, rel("from"), {"take", Pos::V});
  CHECK(match.level == MatchLevel::PosBackoff);
  // Different relation: no match at all.
  MatchResult miss = match_collocation(store, {}, {"edge", Pos::N}, rel("of"), {"take", Pos::V});
  CHECK(miss.level == MatchLevel::None);
  // Wrong POS on the wildcarded side: no match.
  MatchResult wrong_pos =
      match_collocation(store, {}, {"edge", Pos::V}, rel("from"), {"take", Pos::V});
  CHECK(wrong_pos.level == MatchLevel::None);
}

TEST_CASE("empty store yields None with zero score") {
  DiscourseStore store;
  store.freeze();
  MatchResult match = match_collocation(store, {}, {"a", Pos::N}, rel("of"), {"b", Pos::N});
  CHECK(match.level == MatchLevel::None);
  CHECK(match.score == Rational(0));
  CHECK(!match.entry);
}

TEST_CASE("match_level_only agrees with match_collocation") {
  Rng rng(41);
  for (int round = 0; round < 300; ++round) {
    DiscourseStore store = rand_store(rng, rand_int(rng, 0, 8), 6);
    SynonymLexicon lexicon = rand_lexicon(rng, rand_int(rng, 0, 3), 6);
    CollocationTriple query{{rand_lemma(rng, 6), rand_content_pos(rng)},
                            rand_relation(rng),
                            {rand_lemma(rng, 6), rand_content_pos(rng)}};
    CHECK(match_level_only(store, lexicon, query) ==
          match_collocation(store, lexicon, query).level);
  }
}

TEST_CASE("unfrozen store queries are errors") {
  DiscourseStore store;
  CHECK_THROWS_AS(match_collocation(store, {}, {"a", Pos::N}, rel("of"), {"b", Pos::N}),
                  StoreError);
}

TEST_CASE("lexicon files parse rings with comments") {
  std::istringstream in("# comment\nuse utilize employ\n\nfolder directory # trailing\n");
  SynonymLexicon lexicon = SynonymLexicon::parse(in);
  CHECK(lexicon.ring_count() == 2);
  CHECK(lexicon.are_synonyms("use", "employ"));
  CHECK(lexicon.are_synonyms("employ", "use"));
  CHECK(lexicon.are_synonyms("use", "use"));
  CHECK(!lexicon.are_synonyms("use", "folder"));
  auto mates = lexicon.synonyms_of("use");
  CHECK(mates == std::vector<std::string>{"employ", "utilize"});
}

TEST_CASE("ring listing order never changes results") {
  DiscourseStore store;
  store.ingest_tree(1, evidence_tree({"desktop", Pos::N}, "on", {"use", Pos::V}));
  store.freeze();
  SynonymLexicon forward = make_lexicon({{"use", "utilize", "employ"}});
  SynonymLexicon backward = make_lexicon({{"employ", "utilize", "use"}});
  for (const auto* lemma : {"utilize", "employ"}) {
    MatchResult a = match_collocation(store, forward, {"desktop", Pos::N}, rel("on"),
                                      {std::string(lemma), Pos::V});
    MatchResult b = match_collocation(store, backward, {"desktop", Pos::N}, rel("on"),
                                      {std::string(lemma), Pos::V});
    CHECK(a.level == b.level);
    CHECK(a.score == b.score);
    CHECK(a.entry->key == b.entry->key);
  }
}

TEST_CASE("an identical entry is never downgraded") {
  Rng rng(43);
  for (int round = 0; round < 500; ++round) {
    std::vector<std::pair<int, DependencyTree>> sentences;
    const int base = rand_int(rng, 0, 6);
    for (int s = 1; s <= base; ++s) {
      sentences.emplace_back(s, rand_projective_tree(rng, rand_int(rng, 2, 5), 1, 6));
    }
    CollocationTriple query{{rand_lemma(rng, 6), rand_content_pos(rng)},
                            rand_relation(rng),
                            {rand_lemma(rng, 6), rand_content_pos(rng)}};
    // Inject the exact pattern as one more evidence sentence.
    sentences.emplace_back(base + 1,
                           evidence_tree(query.modifier, query.relation.str(), query.modifiee));
    DiscourseStore store;
    for (const auto& [id, tree] : sentences) store.ingest_tree(id, tree);
    store.freeze();
    SynonymLexicon lexicon = rand_lexicon(rng, rand_int(rng, 0, 3), 6);
    CHECK(match_collocation(store, lexicon, query).level == MatchLevel::Identical);
  }
}

TEST_CASE("adding evidence never lowers the result") {
  // Results are ordered by (level, score) lexicographically; more evidence
  // can only move a query up that order.
  Rng rng(47);
  for (int round = 0; round < 500; ++round) {
    std::vector<std::pair<int, DependencyTree>> sentences;
    const int base = rand_int(rng, 0, 6);
    for (int s = 1; s <= base; ++s) {
      sentences.emplace_back(s, rand_projective_tree(rng, rand_int(rng, 2, 5), 1, 6));
    }
    DiscourseStore before;
    for (const auto& [id, tree] : sentences) before.ingest_tree(id, tree);
    before.freeze();

    SynonymLexicon lexicon = rand_lexicon(rng, rand_int(rng, 0, 3), 6);
    CollocationTriple query{{rand_lemma(rng, 6), rand_content_pos(rng)},
                            rand_relation(rng),
                            {rand_lemma(rng, 6), rand_content_pos(rng)}};
    MatchResult old_match = match_collocation(before, lexicon, query);

    DiscourseStore after;
    for (const auto& [id, tree] : sentences) after.ingest_tree(id, tree);
    const int extra = rand_int(rng, 1, 4);
    for (int s = 0; s < extra; ++s) {
      after.ingest_tree(base + 1 + s, rand_projective_tree(rng, rand_int(rng, 2, 5), 1, 6));
    }
    after.freeze();
    MatchResult new_match = match_collocation(after, lexicon, query);

    CHECK(new_match.level >= old_match.level);
    if (new_match.level == old_match.level) CHECK(new_match.score >= old_match.score);
  }
}

TEST_CASE("matcher agrees with the exhaustive oracle") {
  Rng rng(53);
  for (int round = 0; round < 1500; ++round) {
    // Every 10th round uses a store of a few hundred entries and a large
    // lexicon; the rest stay small so collisions are common.
    const bool large = round % 10 == 0;
    const int vocabulary = large ? 14 : 6;
    DiscourseStore store = rand_store(rng, large ? 60 : rand_int(rng, 0, 10), vocabulary);
    SynonymLexicon lexicon =
        rand_lexicon(rng, large ? 50 : rand_int(rng, 0, 4), vocabulary);
    CollocationTriple query{{rand_lemma(rng, vocabulary), rand_content_pos(rng)},
                            rand_relation(rng),
                            {rand_lemma(rng, vocabulary), rand_content_pos(rng)}};
    MatchResult actual = match_collocation(store, lexicon, query);
    OracleMatch expected = match_oracle(store, lexicon, query);
    CHECK(actual.level == expected.level);
    CHECK(actual.score == expected.score);
    if (expected.key) {
      REQUIRE(actual.entry);
      CHECK(actual.entry->key == *expected.key);
    }

    // Pair matching against its own oracle, both with and without backoff.
    LemmaPos modifier{rand_lemma(rng, vocabulary), rand_content_pos(rng)};
    LemmaPos modifiee{rand_lemma(rng, vocabulary), rand_content_pos(rng)};
    for (bool backoff : {false, true}) {
      MatchResult pair = best_pair_match(store, lexicon, modifier, modifiee, backoff);
      OracleMatch pair_expected = pair_match_oracle(store, lexicon, modifier, modifiee, backoff);
      CHECK(pair.level == pair_expected.level);
      CHECK(pair.score == pair_expected.score);
      if (pair_expected.key) {
        REQUIRE(pair.entry);
        CHECK(pair.entry->key == *pair_expected.key);
      }
    }
  }
}
