#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parsemend/analysis.hpp"
#include "parsemend/complete.hpp"
#include "parsemend/disambig.hpp"

namespace parsemend {

struct StoreBuildResult {
  DiscourseStore store;  // frozen
  std::vector<std::pair<int, SelectionResult>> selections;
  std::vector<std::string> audit;
};

/// Phases 1-2: ingest complete parses, then select and ingest multi-parse
/// sentences in document order (each selection runs against a frozen copy of
/// the store built so far). Returns the frozen store.
StoreBuildResult build_store(const Document& document, const PipelineConfig& config,
                             const SynonymLexicon& lexicon = {});

struct PipelineOutcome {
  Document document;  // Multiple -> chosen Complete; Incomplete -> completed
  CompletionReport report;
  std::vector<std::pair<int, SelectionResult>> selections;
  std::vector<std::pair<int, CompletionResult>> completions;
  std::vector<std::string> audit;  // one line per decision, replay-sufficient
};

/// Full two-pass run: build the store from the document, freeze it, then
/// complete every incomplete record (in parallel; outputs are deterministic).
/// Completion of sentence s only ever sees the frozen store, window-filtered
/// around s when a window is configured.
PipelineOutcome run_pipeline(const Document& document, const PipelineConfig& config,
                             const SynonymLexicon& lexicon = {});

/// Phase 3 alone, against a prebuilt frozen store. `window_override`
/// replaces the store's window (0 disables it).
PipelineOutcome complete_document(const Document& document, const DiscourseStore& store,
                                  const PipelineConfig& config, const SynonymLexicon& lexicon = {},
                                  std::optional<int> window_override = std::nullopt);

}  // namespace parsemend
