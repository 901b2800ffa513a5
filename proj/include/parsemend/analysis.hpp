#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "parsemend/complete.hpp"
#include "parsemend/core.hpp"
#include "parsemend/lexicon.hpp"
#include "parsemend/rational.hpp"

namespace parsemend {

// ---------------------------------------------------------------------------
// Lemma repetition
// ---------------------------------------------------------------------------

struct RepetitionRow {
  Pos pos = Pos::N;
  long occurrences = 0;
  Rational content_share{0};  // of all content-word occurrences
  Rational repeated2{0};      // share of occurrences whose lemma occurs >= 2 times
  Rational repeated5{0};
};

struct RepetitionReport {
  std::vector<RepetitionRow> rows;  // N, V, AJ, AV, PN
  RepetitionRow total;              // content_share left at 0
};

/// Occurrence-weighted repetition over the complete-parse sentences; a lemma
/// "occurs k times" counts its content-POS occurrences document-wide.
RepetitionReport repetition_stats(const Document& document);

// ---------------------------------------------------------------------------
// Collocation repetition vs. discourse size
// ---------------------------------------------------------------------------

struct WindowRatePoint {
  int window = 0;
  int areas = 0;
  long candidates = 0;        // candidate triples counted across areas
  Rational identical_rate{0};
  Rational similar_rate{0};   // identical or synonym-level
};

struct WindowRateReport {
  std::vector<WindowRatePoint> points;
};

/// For each window size, averages over evenly spaced sample areas (fixed
/// stride from sentence 1) the fraction of ambiguous-attachment candidate
/// triples supported elsewhere in the area. Throws ValidationError when a
/// window exceeds the document.
WindowRateReport window_rates(const Document& document, const std::vector<int>& windows,
                              int samples_per_window, const SynonymLexicon& lexicon = {});

// ---------------------------------------------------------------------------
// Completion outcomes
// ---------------------------------------------------------------------------

enum class ReportCategory : std::uint8_t { Unified, PartiallyJoined, Unchanged };

/// Unified: unified with at least one discourse-driven join. Unchanged: no
/// actions and no discourse-driven joins (heuristic fallback alone does not
/// count). Everything else is PartiallyJoined.
ReportCategory classify(const CompletionResult& result);

struct CompletionReport {
  long sentences = 0;
  long incomplete = 0;
  long unified = 0;
  long partially_joined = 0;
  long unchanged = 0;

  Rational unified_share() const;
  Rational partially_joined_share() const;
  Rational unchanged_share() const;
};

CompletionReport completion_report(const std::vector<CompletionResult>& results,
                                   long total_sentences);

// ---------------------------------------------------------------------------
// Rendering: aligned text tables and structured records
// ---------------------------------------------------------------------------

std::string render_text(const RepetitionReport& report);
std::string render_text(const WindowRateReport& report);
std::string render_text(const CompletionReport& report);

nlohmann::json to_json(const RepetitionReport& report);
nlohmann::json to_json(const WindowRateReport& report);
nlohmann::json to_json(const CompletionReport& report);

}  // namespace parsemend
