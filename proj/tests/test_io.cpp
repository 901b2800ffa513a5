#include <doctest.h>

#include <sstream>

#include "parsemend/errors.hpp"
#include "parsemend/io.hpp"
#include "support/builders.hpp"
#include "support/generators.hpp"

using namespace parsemend;
using namespace parsemend::testing;

namespace {

const std::string kFixtures = PARSEMEND_FIXTURE_DIR;

Document rand_document(Rng& rng) {
  Document doc;
  doc.metadata["source"] = "generated";
  int sid = 0;
  const int records = rand_int(rng, 1, 8);
  for (int r = 0; r < records; ++r) {
    sid += rand_int(rng, 1, 5);
    switch (rand_int(rng, 0, 2)) {
      case 0:
        doc.records.push_back({sid, rand_projective_tree(rng, rand_int(rng, 1, 7), 1, 8)});
        break;
      case 1: {
        ParseForest forest;
        auto first = rand_projective_tree(rng, rand_int(rng, 2, 6), 1, 8);
        auto second = rand_projective_tree(rng, first.size(), 1, 8);
        second.tokens = first.tokens;
        if (rand_bool(rng, 0.5)) second.tokens[0].pos = Pos::V;  // POS may differ
        forest.candidates = {std::move(first), std::move(second)};
        doc.records.push_back({sid, std::move(forest)});
        break;
      }
      default:
        doc.records.push_back(
            {sid, rand_partial_parse(rng, rand_int(rng, 4, 9), rand_int(rng, 2, 3), 8)});
        break;
    }
  }
  return doc;
}

}  // namespace

TEST_CASE("fixture documents load and round-trip") {
  for (const char* name : {"magazine_patent.jsonl", "as400_manual.jsonl", "desktop_folder.jsonl"}) {
    Document doc = load_document(kFixtures + "/" + std::string(name));
    CHECK(!doc.records.empty());
    const std::string bytes = document_to_string(doc);
    std::istringstream in(bytes);
    Document again = parse_document(in, name);
    CHECK(again == doc);
    CHECK(document_to_string(again) == bytes);  // serialization is stable
  }
}

TEST_CASE("random documents round-trip") {
  Rng rng(89);
  for (int round = 0; round < 100; ++round) {
    Document doc = rand_document(rng);
    std::istringstream in(document_to_string(doc));
    Document again = parse_document(in, "mem");
    CHECK(again == doc);
  }
}

TEST_CASE("a span gap fails fast, naming the sentence") {
  std::istringstream in(R"({"id":7,"parse":{"kind":"incomplete","fragments":[
)" R"({"span":[1,1],"tree":{"tokens":[{"i":1,"s":"a","l":"a","p":"N"}],"edges":[{"d":1,"h":0,"r":"DIRECT"}]}},)"
                        R"({"span":[3,3],"tree":{"tokens":[{"i":3,"s":"b","l":"b","p":"V"}],"edges":[{"d":3,"h":0,"r":"DIRECT"}]}}]}})");
  std::string text = in.str();
  // JSON must be one record per line.
  text.erase(std::remove(text.begin(), text.end(), '\n'), text.end());
  std::istringstream fixed(text + "\n");
  try {
    parse_document(fixed, "gap");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    const std::string what = e.what();
    CHECK(what.find("span-gap") != std::string::npos);
    CHECK(what.find("sentence 7") != std::string::npos);
  }
}

TEST_CASE("unknown tags degrade with warnings") {
  std::istringstream in(
      R"({"id":1,"parse":{"kind":"complete","tree":{"tokens":[{"i":1,"s":"X","l":"x","p":"NNP"},{"i":2,"s":"y","l":"y","p":"V"}],"edges":[{"d":1,"h":2,"r":"Xcomp"},{"d":2,"h":0,"r":"DIRECT"}]}}})"
      "\n");
  std::vector<std::string> warnings;
  Document doc = parse_document(in, "mem", &warnings);
  REQUIRE(warnings.size() == 2);
  const Token& token = doc.records[0].tree().tokens[0];
  CHECK(token.pos == Pos::OTHER);
  CHECK(token.pos_raw == "NNP");  // preserved verbatim
  CHECK(doc.records[0].tree().edges[0].relation == RelationLabel::direct());

  // The degraded form round-trips, keeping the raw tag.
  std::istringstream again(document_to_string(doc));
  Document reparsed = parse_document(again, "mem");
  CHECK(reparsed == doc);

  // A raw payload on a known tag is dropped, so round-tripping still holds.
  std::istringstream stray(
      R"({"id":1,"parse":{"kind":"complete","tree":{"tokens":[{"i":1,"s":"a","l":"a","p":"N","raw":"NN"}],"edges":[{"d":1,"h":0,"r":"DIRECT"}]}}})"
      "\n");
  Document cleaned = parse_document(stray, "mem");
  CHECK(cleaned.records[0].tree().tokens[0].pos_raw.empty());
  std::istringstream rerun(document_to_string(cleaned));
  CHECK(parse_document(rerun, "mem") == cleaned);
}

TEST_CASE("metadata line round-trips and must come first") {
  std::istringstream bad(
      R"({"id":1,"parse":{"kind":"complete","tree":{"tokens":[{"i":1,"s":"a","l":"a","p":"N"}],"edges":[{"d":1,"h":0,"r":"DIRECT"}]}}})"
      "\n"
      R"({"metadata":{"k":"v"}})"
      "\n");
  CHECK_THROWS_AS(parse_document(bad, "mem"), IoError);
}

TEST_CASE("missing files and bad JSON raise IoError with location") {
  CHECK_THROWS_AS(load_document("/nonexistent/file.jsonl"), IoError);
  std::istringstream in("{not json\n");
  try {
    parse_document(in, "mem");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("mem:1") != std::string::npos);
  }
}

TEST_CASE("store snapshots round-trip byte-identically") {
  Rng rng(97);
  DiscourseStore store(100);
  for (int s = 1; s <= 12; ++s) {
    store.ingest_tree(s * 3, rand_projective_tree(rng, rand_int(rng, 2, 6), 1, 8));
  }
  store.freeze();
  const std::string bytes = store_to_string(store);
  std::istringstream in(bytes);
  DiscourseStore loaded = parse_store(in, "mem");
  CHECK(loaded.frozen());
  CHECK(loaded.window() == store.window());
  CHECK(store_to_string(loaded) == bytes);
  CHECK(loaded.entries() == store.entries());
  CHECK(loaded.pos_index() == store.pos_index());
}

TEST_CASE("unfrozen stores cannot be saved; corrupt snapshots cannot be loaded") {
  DiscourseStore store;
  std::ostringstream out;
  CHECK_THROWS_AS(save_store(store, out), StoreError);

  store.ingest_tree(1, evidence_tree({"a", Pos::N}, "of", {"b", Pos::N}));
  store.freeze();
  std::string bytes = store_to_string(store);
  // Tamper with the preference value.
  auto at = bytes.find("\"preference\":[1,1]");
  REQUIRE(at != std::string::npos);
  bytes.replace(at, 18, "\"preference\":[7,1]");
  std::istringstream in(bytes);
  CHECK_THROWS_AS(parse_store(in, "mem"), IoError);

  std::istringstream junk("{\"format\":\"other\"}");
  CHECK_THROWS_AS(parse_store(junk, "mem"), IoError);
}

TEST_CASE("column files convert to complete records") {
  std::vector<std::string> warnings;
  Document doc = convert_columns_file(kFixtures + "/sample_columns.txt", &warnings);
  CHECK(warnings.empty());
  REQUIRE(doc.records.size() == 2);
  CHECK(doc.records[0].id == 1);
  CHECK(doc.records[1].id == 2);
  CHECK(doc.records[0].is_complete());
  const DependencyTree& second = doc.records[1].tree();
  CHECK(second.token_at(3)->lemma == "cursor");
  const DependencyEdge* amb = second.edge_of(6);
  REQUIRE(amb);
  CHECK(amb->ambiguous);
  CHECK(amb->relation == *RelationLabel::parse("to"));
  CHECK(validate_document(doc).empty());
}

TEST_CASE("column conversion reports bad lines") {
  std::istringstream missing("1 You you PN 3\n");
  CHECK_THROWS_AS(convert_columns(missing, "mem"), IoError);
  std::istringstream not_int("x You you PN 3 SUBJ\n");
  CHECK_THROWS_AS(convert_columns(not_int, "mem"), IoError);
  std::istringstream invalid("1 a a N 2 DIRECT\n\n");  // head 2 does not exist
  CHECK_THROWS_AS(convert_columns(invalid, "mem"), IoError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(convert_columns(empty, "mem"), IoError);
}

TEST_CASE("config parsing keeps rationals exact and rejects junk") {
  PipelineConfig config = config_from_json(nlohmann::json::parse(
      R"({"window":150,"similar_discount":"1/4","retag_min_count":2,"retag_pos_ratio":"0.9","fallback":false,"samples_per_window":4})"));
  CHECK(config.window == 150);
  CHECK(config.similar_discount == Rational(1, 4));
  CHECK(config.retag_min_count == 2);
  CHECK(config.retag_pos_ratio == Rational(9, 10));
  CHECK(!config.fallback);
  CHECK(config.samples_per_window == 4);

  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"similar_discount":0.5})")),
                  IoError);  // floats are not exact
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"no_such_key":1})")), IoError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"retag_pos_ratio":"1/2"})")),
                  IoError);  // out of (1/2, 1]
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"window":0})")), IoError);
}

TEST_CASE("default config is valid") {
  CHECK(validate(PipelineConfig{}).empty());
  PipelineConfig config;
  config.similar_discount = Rational(3, 2);
  CHECK(!validate(config).empty());
}
