#include <doctest.h>

#include <algorithm>
#include <map>

#include "parsemend/analysis.hpp"
#include "parsemend/errors.hpp"
#include "support/builders.hpp"
#include "support/generators.hpp"

using namespace parsemend;
using namespace parsemend::testing;

namespace {

Document single_sentence_doc() {
  Document doc;
  doc.records.push_back(
      {1, make_tree({{"alpha", Pos::N}, {"beta", Pos::V}, {"gamma", Pos::AJ}},
                    {{1, 2, "SUBJ"}, {2, 0, "DIRECT"}, {3, 2, "DIRECT"}})});
  return doc;
}

CompletionResult fabricated(ReportCategory category) {
  CompletionResult result;
  auto tree = make_tree({{"a", Pos::N}}, {{1, 0, "DIRECT"}});
  switch (category) {
    case ReportCategory::Unified: {
      result.status = CompletionStatus::Unified;
      result.output = tree;
      JoinDecision join;
      join.heuristic = false;
      join.match.level = MatchLevel::Identical;
      result.joins.push_back(join);
      break;
    }
    case ReportCategory::PartiallyJoined: {
      result.status = CompletionStatus::PartiallyJoined;
      result.output = PartialParse{};
      result.actions.push_back(RetagAction{1, "a", Pos::V, Pos::N, {"a", Pos::N, 3, 3}});
      break;
    }
    case ReportCategory::Unchanged:
      result.status = CompletionStatus::Unchanged;
      result.output = PartialParse{};
      break;
  }
  return result;
}

}  // namespace

TEST_CASE("one sentence of distinct lemmas repeats nothing") {
  RepetitionReport report = repetition_stats(single_sentence_doc());
  CHECK(report.total.occurrences == 3);
  CHECK(report.total.repeated2 == Rational(0));
  CHECK(report.total.repeated5 == Rational(0));
  CHECK_THROWS_AS(repetition_stats(Document{}), ValidationError);
}

TEST_CASE("repetition percentages match an independent hand count") {
  // Ten synthetic sentences over a small vocabulary; the expectation is
  // recomputed here by direct counting over the same token stream.
  Rng rng(79);
  Document doc;
  for (int s = 1; s <= 10; ++s) {
    doc.records.push_back({s, rand_projective_tree(rng, rand_int(rng, 3, 7), 1, 8)});
  }
  RepetitionReport report = repetition_stats(doc);

  std::map<std::string, long> lemma_total;
  std::map<Pos, long> occurrences;
  std::map<Pos, long> rep2, rep5;
  long grand = 0;
  for (const auto& record : doc.records) {
    for (const auto& token : record.tree().tokens) {
      if (!is_content_pos(token.pos)) continue;
      ++lemma_total[token.lemma];
      ++grand;
    }
  }
  for (const auto& record : doc.records) {
    for (const auto& token : record.tree().tokens) {
      if (!is_content_pos(token.pos)) continue;
      ++occurrences[token.pos];
      if (lemma_total[token.lemma] >= 2) ++rep2[token.pos];
      if (lemma_total[token.lemma] >= 5) ++rep5[token.pos];
    }
  }
  CHECK(report.total.occurrences == grand);
  for (const auto& row : report.rows) {
    CHECK(row.occurrences == occurrences[row.pos]);
    if (row.occurrences > 0) {
      CHECK(row.repeated2 == Rational(rep2[row.pos], row.occurrences));
      CHECK(row.repeated5 == Rational(rep5[row.pos], row.occurrences));
      CHECK(row.content_share == Rational(row.occurrences, grand));
    }
  }
}

namespace {

/// Query sentence with one flagged PP attachment: mod -of-> obj, with the
/// verb as the only projective alternative site.
DependencyTree query_sentence(int i) {
  const std::string tag = std::to_string(i);
  return make_tree({{"subj" + tag, Pos::N},
                    {"verb" + tag, Pos::V},
                    {"obj" + tag, Pos::N},
                    {"mod" + tag, Pos::N}},
                   {{1, 2, "SUBJ"}, {2, 0, "DIRECT"}, {3, 2, "OBJ"}, {4, 3, "of", true}});
}

}  // namespace

TEST_CASE("window_rates reproduces a planted support density") {
  Document doc;
  int sid = 1;
  for (int i = 1; i <= 10; ++i) doc.records.push_back({sid++, query_sentence(i)});
  // Plant identical support for the current attachment of sentences 1..3.
  for (int i = 1; i <= 3; ++i) {
    const std::string tag = std::to_string(i);
    doc.records.push_back(
        {sid++, evidence_tree({"mod" + tag, Pos::N}, "of", {"obj" + tag, Pos::N})});
  }
  // Synonym-only support for sentence 4's current attachment.
  doc.records.push_back(
      {sid++, evidence_tree({"mod4syn", Pos::N}, "of", {"obj4", Pos::N})});
  SynonymLexicon lexicon = make_lexicon({{"mod4", "mod4syn"}});

  const int n = static_cast<int>(doc.records.size());
  WindowRateReport report = window_rates(doc, {n}, 8, lexicon);
  REQUIRE(report.points.size() == 1);
  const auto& point = report.points[0];
  CHECK(point.areas == 1);  // window == document: single sample
  CHECK(point.candidates == 20);  // 10 flagged edges x 2 candidate sites
  CHECK(point.identical_rate == Rational(3, 20));
  CHECK(point.similar_rate == Rational(4, 20));
  CHECK(point.identical_rate <= point.similar_rate);

  CHECK_THROWS_AS(window_rates(doc, {n + 1}, 8, lexicon), ValidationError);
}

TEST_CASE("identical sample areas produce identical per-area rates") {
  // Every sentence has the same content, so any area of >= 2 sentences
  // supports exactly the current attachment of each flagged edge.
  Document doc;
  for (int s = 1; s <= 8; ++s) doc.records.push_back({s, query_sentence(0)});
  WindowRateReport report = window_rates(doc, {4, 8}, 2);
  REQUIRE(report.points.size() == 2);
  CHECK(report.points[0].identical_rate == Rational(1, 2));
  CHECK(report.points[1].identical_rate == Rational(1, 2));
  CHECK(report.points[0].areas == 2);
  CHECK(report.points[1].areas == 1);
}

TEST_CASE("completion report renders the reference percentages") {
  std::vector<CompletionResult> text1;
  for (int i = 0; i < 18; ++i) text1.push_back(fabricated(ReportCategory::Unified));
  for (int i = 0; i < 12; ++i) text1.push_back(fabricated(ReportCategory::PartiallyJoined));
  for (int i = 0; i < 2; ++i) text1.push_back(fabricated(ReportCategory::Unchanged));
  CompletionReport report1 = completion_report(text1, 175);
  CHECK(report1.incomplete == 32);
  CHECK(percent_string(report1.unified_share()) == "56.3");
  CHECK(percent_string(report1.partially_joined_share()) == "37.5");
  CHECK(percent_string(report1.unchanged_share()) == "6.3");

  std::vector<CompletionResult> text2;
  for (int i = 0; i < 17; ++i) text2.push_back(fabricated(ReportCategory::Unified));
  for (int i = 0; i < 8; ++i) text2.push_back(fabricated(ReportCategory::PartiallyJoined));
  for (int i = 0; i < 6; ++i) text2.push_back(fabricated(ReportCategory::Unchanged));
  CompletionReport report2 = completion_report(text2, 354);
  CHECK(percent_string(report2.unified_share()) == "54.8");
  CHECK(percent_string(report2.partially_joined_share()) == "25.8");
  CHECK(percent_string(report2.unchanged_share()) == "19.4");

  const std::string text = render_text(report1);
  CHECK(text.find("56.3") != std::string::npos);
  CHECK(text.find("37.5") != std::string::npos);
  CHECK(text.find("6.3") != std::string::npos);
}

TEST_CASE("completion report is empty-safe and permutation-invariant") {
  CompletionReport empty = completion_report({}, 10);
  CHECK(empty.incomplete == 0);
  CHECK(percent_string(empty.unified_share()) == "0.0");

  Rng rng(83);
  std::vector<CompletionResult> results;
  for (int i = 0; i < 9; ++i) {
    results.push_back(fabricated(static_cast<ReportCategory>(i % 3)));
  }
  CompletionReport reference = completion_report(results, 20);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(results.begin(), results.end(), rng);
    CompletionReport shuffled = completion_report(results, 20);
    CHECK(shuffled.unified == reference.unified);
    CHECK(shuffled.partially_joined == reference.partially_joined);
    CHECK(shuffled.unchanged == reference.unchanged);
  }
}

TEST_CASE("classification separates discourse work from fallback work") {
  // Unified purely by heuristics, no actions: the discourse did nothing.
  CompletionResult heuristic_only;
  heuristic_only.status = CompletionStatus::Unified;
  heuristic_only.output = make_tree({{"a", Pos::N}}, {{1, 0, "DIRECT"}});
  JoinDecision join;
  join.heuristic = true;
  heuristic_only.joins.push_back(join);
  CHECK(classify(heuristic_only) == ReportCategory::Unchanged);

  // Same but with a retag: "partially joined or restructured".
  CompletionResult restructured = heuristic_only;
  restructured.actions.push_back(RetagAction{1, "a", Pos::V, Pos::N, {"a", Pos::N, 3, 3}});
  CHECK(classify(restructured) == ReportCategory::PartiallyJoined);

  // A discourse join that still needed the fallback to finish counts as Unified.
  CompletionResult mixed = heuristic_only;
  JoinDecision discourse;
  discourse.heuristic = false;
  discourse.match.level = MatchLevel::Synonym;
  mixed.joins.insert(mixed.joins.begin(), discourse);
  CHECK(classify(mixed) == ReportCategory::Unified);

  // A discourse join that did not unify is partial.
  CompletionResult partial;
  partial.status = CompletionStatus::PartiallyJoined;
  partial.output = PartialParse{};
  partial.joins.push_back(discourse);
  CHECK(classify(partial) == ReportCategory::PartiallyJoined);
}
