#include "parsemend/analysis.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "parsemend/disambig.hpp"
#include "parsemend/errors.hpp"
#include "parsemend/match.hpp"
#include "parsemend/store.hpp"

namespace parsemend {

// ---------------------------------------------------------------------------
// Lemma repetition
// ---------------------------------------------------------------------------

RepetitionReport repetition_stats(const Document& document) {
  if (document.records.empty()) throw ValidationError("repetition_stats: empty document");

  // Occurrences by (POS bucket, lemma) over complete parses; the repetition
  // test for a lemma pools its content-POS occurrences document-wide.
  std::map<Pos, std::map<std::string, long>> by_pos;
  std::map<std::string, long> lemma_total;
  for (const auto& record : document.records) {
    if (!record.is_complete()) continue;
    for (const auto& token : record.tree().tokens) {
      if (!is_content_pos(token.pos)) continue;
      ++by_pos[token.pos][token.lemma];
      ++lemma_total[token.lemma];
    }
  }

  long grand_total = 0;
  for (const auto& [pos, lemmas] : by_pos) {
    for (const auto& [lemma, count] : lemmas) grand_total += count;
  }

  RepetitionReport report;
  long total2 = 0, total5 = 0;
  const Pos order[] = {Pos::N, Pos::V, Pos::AJ, Pos::AV, Pos::PN};
  for (Pos pos : order) {
    RepetitionRow row;
    row.pos = pos;
    long repeated2 = 0, repeated5 = 0;
    if (auto it = by_pos.find(pos); it != by_pos.end()) {
      for (const auto& [lemma, count] : it->second) {
        row.occurrences += count;
        if (lemma_total[lemma] >= 2) repeated2 += count;
        if (lemma_total[lemma] >= 5) repeated5 += count;
      }
    }
    if (row.occurrences > 0) {
      row.repeated2 = Rational(repeated2, row.occurrences);
      row.repeated5 = Rational(repeated5, row.occurrences);
    }
    if (grand_total > 0) row.content_share = Rational(row.occurrences, grand_total);
    total2 += repeated2;
    total5 += repeated5;
    report.total.occurrences += row.occurrences;
    report.rows.push_back(std::move(row));
  }
  if (report.total.occurrences > 0) {
    report.total.repeated2 = Rational(total2, report.total.occurrences);
    report.total.repeated5 = Rational(total5, report.total.occurrences);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Collocation repetition vs. discourse size
// ---------------------------------------------------------------------------

namespace {

/// Candidate heads for a flagged dependent: its current head plus every
/// other token it could attach to while keeping the tree valid and
/// projective.
std::vector<int> attachment_candidates(const DependencyTree& tree, int dependent) {
  std::vector<int> out;
  const DependencyEdge* edge = tree.edge_of(dependent);
  out.push_back(edge->head);
  for (const auto& token : tree.tokens) {
    if (token.index == dependent || token.index == edge->head) continue;
    if (in_subtree(tree, token.index, dependent)) continue;
    DependencyTree probe = tree;
    for (auto& e : probe.edges) {
      if (e.dependent == dependent) {
        e.head = token.index;
        break;
      }
    }
    if (is_valid(probe) && is_projective(probe)) out.push_back(token.index);
  }
  return out;
}

struct AreaRates {
  long candidates = 0;
  long identical_hits = 0;
  long similar_hits = 0;
};

AreaRates area_rates(const std::vector<const SentenceRecord*>& area,
                     const SynonymLexicon& lexicon) {
  DiscourseStore store;
  for (const SentenceRecord* record : area) {
    if (record->is_complete()) store.ingest_tree(record->id, record->tree());
  }
  store.freeze();

  AreaRates rates;
  for (const SentenceRecord* record : area) {
    if (!record->is_complete()) continue;
    const DependencyTree& tree = record->tree();
    const QueryFilter filter{std::nullopt, record->id, std::nullopt};  // "elsewhere in the area"
    for (const auto& edge : tree.edges) {
      if (!edge.ambiguous || edge.head == 0) continue;
      const Token* dep = tree.token_at(edge.dependent);
      if (!is_collocation_pos(dep->pos)) continue;
      for (int head_index : attachment_candidates(tree, edge.dependent)) {
        const Token* head = tree.token_at(head_index);
        if (!is_collocation_pos(head->pos)) continue;
        const CollocationTriple triple{{dep->lemma, dep->pos}, edge.relation,
                                       {head->lemma, head->pos}};
        const MatchLevel level = match_level_only(store, lexicon, triple, filter);
        ++rates.candidates;
        if (level == MatchLevel::Identical) ++rates.identical_hits;
        if (level >= MatchLevel::Synonym) ++rates.similar_hits;
      }
    }
  }
  return rates;
}

}  // namespace

WindowRateReport window_rates(const Document& document, const std::vector<int>& windows,
                              int samples_per_window, const SynonymLexicon& lexicon) {
  const int n = static_cast<int>(document.records.size());
  if (samples_per_window < 1) throw ValidationError("window_rates: samples_per_window must be >= 1");

  WindowRateReport report;
  for (int window : windows) {
    if (window < 1 || window > n) {
      throw ValidationError("window_rates: window " + std::to_string(window) +
                            " exceeds the document (" + std::to_string(n) + " sentences)");
    }
    // Evenly spaced area starts, fixed stride from sentence 1.
    std::vector<int> starts;
    if (window == n || samples_per_window == 1) {
      starts.push_back(0);
    } else {
      const int span = n - window;
      const int stride = std::max(1, (span + samples_per_window - 2) / (samples_per_window - 1));
      for (int start = 0; start <= span; start += stride) starts.push_back(start);
    }

    WindowRatePoint point;
    point.window = window;
    Rational identical_sum{0};
    Rational similar_sum{0};
    int counted_areas = 0;
    for (int start : starts) {
      std::vector<const SentenceRecord*> area;
      for (int i = start; i < start + window; ++i) area.push_back(&document.records[i]);
      const AreaRates rates = area_rates(area, lexicon);
      point.candidates += rates.candidates;
      if (rates.candidates == 0) continue;  // nothing ambiguous in this area
      identical_sum += Rational(rates.identical_hits, rates.candidates);
      similar_sum += Rational(rates.similar_hits, rates.candidates);
      ++counted_areas;
    }
    point.areas = static_cast<int>(starts.size());
    if (counted_areas > 0) {
      point.identical_rate = identical_sum / counted_areas;
      point.similar_rate = similar_sum / counted_areas;
    }
    report.points.push_back(std::move(point));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Completion outcomes
// ---------------------------------------------------------------------------

ReportCategory classify(const CompletionResult& result) {
  bool discourse_join = false;
  for (const auto& join : result.joins) {
    if (!join.heuristic) {
      discourse_join = true;
      break;
    }
  }
  if (!discourse_join && result.actions.empty()) return ReportCategory::Unchanged;
  if (discourse_join && result.status == CompletionStatus::Unified) return ReportCategory::Unified;
  return ReportCategory::PartiallyJoined;
}

Rational CompletionReport::unified_share() const {
  return incomplete ? Rational(unified, incomplete) : Rational(0);
}
Rational CompletionReport::partially_joined_share() const {
  return incomplete ? Rational(partially_joined, incomplete) : Rational(0);
}
Rational CompletionReport::unchanged_share() const {
  return incomplete ? Rational(unchanged, incomplete) : Rational(0);
}

CompletionReport completion_report(const std::vector<CompletionResult>& results,
                                   long total_sentences) {
  CompletionReport report;
  report.sentences = total_sentences;
  report.incomplete = static_cast<long>(results.size());
  for (const auto& result : results) {
    switch (classify(result)) {
      case ReportCategory::Unified: ++report.unified; break;
      case ReportCategory::PartiallyJoined: ++report.partially_joined; break;
      case ReportCategory::Unchanged: ++report.unchanged; break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

std::string pos_label(Pos pos) {
  switch (pos) {
    case Pos::N: return "Noun";
    case Pos::V: return "Verb";
    case Pos::AJ: return "Adjective";
    case Pos::AV: return "Adverb";
    case Pos::PN: return "Pronoun";
    default: return std::string(to_string(pos));
  }
}

void row_out(std::ostringstream& out, const std::string& label, long occurrences,
             const std::string& share, const std::string& r2, const std::string& r5) {
  out << std::left << std::setw(12) << label << std::right << std::setw(12) << occurrences
      << std::setw(10) << share << std::setw(10) << r2 << std::setw(10) << r5 << "\n";
}

}  // namespace

std::string render_text(const RepetitionReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "POS" << std::right << std::setw(12) << "Occurrences"
      << std::setw(10) << "Share%" << std::setw(10) << ">=2%" << std::setw(10) << ">=5%" << "\n";
  for (const auto& row : report.rows) {
    row_out(out, pos_label(row.pos), row.occurrences, percent_string(row.content_share),
            percent_string(row.repeated2), percent_string(row.repeated5));
  }
  row_out(out, "Total", report.total.occurrences, "-", percent_string(report.total.repeated2),
          percent_string(report.total.repeated5));
  return out.str();
}

std::string render_text(const WindowRateReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "Window" << std::right << std::setw(7) << "Areas"
      << std::setw(12) << "Candidates" << std::setw(12) << "Identical" << std::setw(12)
      << "Similar" << "\n";
  for (const auto& point : report.points) {
    out << std::left << std::setw(8) << point.window << std::right << std::setw(7) << point.areas
        << std::setw(12) << point.candidates << std::setw(12)
        << decimal_string(point.identical_rate, 4) << std::setw(12)
        << decimal_string(point.similar_rate, 4) << "\n";
  }
  return out.str();
}

std::string render_text(const CompletionReport& report) {
  std::ostringstream out;
  out << "Sentences in discourse  " << report.sentences << "\n";
  out << "Incomplete parses       " << report.incomplete << "\n";
  out << "Unified                 " << report.unified << " (" << percent_string(report.unified_share())
      << "%)\n";
  out << "Partially joined        " << report.partially_joined << " ("
      << percent_string(report.partially_joined_share()) << "%)\n";
  out << "Unchanged               " << report.unchanged << " ("
      << percent_string(report.unchanged_share()) << "%)\n";
  return out.str();
}

nlohmann::json to_json(const RepetitionReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  auto row_json = [](const RepetitionRow& row, bool with_share) {
    nlohmann::json item;
    item["occurrences"] = row.occurrences;
    if (with_share) item["content_share_percent"] = percent_string(row.content_share);
    item["repeated_2_percent"] = percent_string(row.repeated2);
    item["repeated_5_percent"] = percent_string(row.repeated5);
    return item;
  };
  for (const auto& row : report.rows) {
    nlohmann::json item = row_json(row, true);
    item["pos"] = std::string(to_string(row.pos));
    rows.push_back(std::move(item));
  }
  nlohmann::json out;
  out["report"] = "repetition";
  out["rows"] = std::move(rows);
  out["total"] = row_json(report.total, false);
  return out;
}

nlohmann::json to_json(const WindowRateReport& report) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& point : report.points) {
    points.push_back({{"window", point.window},
                      {"areas", point.areas},
                      {"candidates", point.candidates},
                      {"identical_rate", decimal_string(point.identical_rate, 4)},
                      {"similar_rate", decimal_string(point.similar_rate, 4)}});
  }
  return {{"report", "window-rates"}, {"points", std::move(points)}};
}

nlohmann::json to_json(const CompletionReport& report) {
  return {{"report", "completion"},
          {"sentences", report.sentences},
          {"incomplete", report.incomplete},
          {"unified", report.unified},
          {"unified_percent", percent_string(report.unified_share())},
          {"partially_joined", report.partially_joined},
          {"partially_joined_percent", percent_string(report.partially_joined_share())},
          {"unchanged", report.unchanged},
          {"unchanged_percent", percent_string(report.unchanged_share())}};
}

}  // namespace parsemend
