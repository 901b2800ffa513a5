#include "parsemend/pipeline.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>
#include <thread>

#include "parsemend/errors.hpp"

namespace parsemend {

namespace {

void require_valid_document(const Document& document, const char* who) {
  auto violations = validate_document(document);
  if (!violations.empty()) {
    throw ValidationError(std::string(who) + ": invalid document: " +
                          to_string(violations.front()));
  }
}

std::string selection_line(int sentence_id, const SelectionResult& selection) {
  std::ostringstream out;
  out << "select s=" << sentence_id << " chosen=" << selection.chosen
      << " decided=" << (selection.decided ? 1 : 0) << " totals=";
  for (std::size_t i = 0; i < selection.scores.size(); ++i) {
    if (i) out << ",";
    out << ratio_string(selection.scores[i].total);
  }
  return out.str();
}

void completion_lines(int sentence_id, const CompletionResult& result,
                      std::vector<std::string>& audit) {
  const std::string prefix = "s=" + std::to_string(sentence_id) + " ";
  for (const auto& action : result.actions) audit.push_back(prefix + to_string(action));
  for (const auto& note : result.skipped) audit.push_back(prefix + "skip " + note);
  for (const auto& join : result.joins) audit.push_back(prefix + to_string(join));
  audit.push_back(prefix + "status " + std::string(to_string(result.status)));
}

}  // namespace

StoreBuildResult build_store(const Document& document, const PipelineConfig& config,
                             const SynonymLexicon& lexicon) {
  require_valid_document(document, "build_store");
  auto problems = validate(config);
  if (!problems.empty()) throw ValidationError("build_store: " + problems.front());

  DiscourseStore store(config.window);
  StoreBuildResult result{DiscourseStore{}, {}, {}};

  // Phase 1: complete parses feed the store directly.
  for (const auto& record : document.records) {
    if (record.is_complete()) store.ingest_tree(record.id, record.tree());
  }

  // Phase 2: multi-parse sentences are disambiguated in document order and
  // the chosen parse is added. Selection queries run against a frozen copy
  // of everything ingested so far; a sentence never supports itself.
  for (const auto& record : document.records) {
    if (!record.is_multiple()) continue;
    DiscourseStore view = store;
    view.freeze();
    const QueryFilter filter{record.id, record.id, std::nullopt};
    SelectionResult selection =
        select_parse(view, lexicon, record.forest(), config.similar_discount, filter);
    store.ingest_selected_parse(record.id, record.forest(), selection.chosen);
    result.audit.push_back(selection_line(record.id, selection));
    result.selections.emplace_back(record.id, std::move(selection));
  }

  store.freeze();
  result.store = std::move(store);
  return result;
}

namespace {

PipelineOutcome complete_phase(const Document& document, const DiscourseStore& store,
                               const PipelineConfig& config, const SynonymLexicon& lexicon,
                               std::optional<int> window_override,
                               StoreBuildResult build_result) {
  PipelineOutcome outcome;
  outcome.document = document;
  outcome.selections = std::move(build_result.selections);
  outcome.audit = std::move(build_result.audit);

  // Rewrite multi-parse records to their selected candidate.
  std::map<int, std::size_t> chosen_by_id;
  for (const auto& [id, selection] : outcome.selections) chosen_by_id[id] = selection.chosen;
  for (auto& record : outcome.document.records) {
    if (!record.is_multiple()) continue;
    auto it = chosen_by_id.find(record.id);
    if (it == chosen_by_id.end()) continue;  // store was prebuilt; leave the forest alone
    DependencyTree chosen = record.forest().candidates[it->second];
    record.parse = std::move(chosen);
  }

  // Phase 3: complete every incomplete record against the frozen store.
  // Sentences are independent, so they run in parallel; results land in
  // per-sentence slots and everything downstream walks them in order.
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < outcome.document.records.size(); ++i) {
    if (outcome.document.records[i].is_incomplete()) pending.push_back(i);
  }
  std::vector<CompletionResult> results(pending.size());
  const std::size_t workers =
      std::min<std::size_t>(pending.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> futures;
  for (std::size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < pending.size(); i += workers) {
        const SentenceRecord& record = outcome.document.records[pending[i]];
        const QueryFilter filter{record.id, std::nullopt, window_override};
        results[i] = complete(store, lexicon, record.partial(), config, filter);
      }
    }));
  }
  for (auto& future : futures) future.get();

  std::vector<CompletionResult> completed;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    SentenceRecord& record = outcome.document.records[pending[i]];
    completion_lines(record.id, results[i], outcome.audit);
    if (results[i].unified()) {
      record.parse = results[i].tree();
    } else {
      record.parse = results[i].partial();
    }
    outcome.completions.emplace_back(record.id, results[i]);
    completed.push_back(std::move(results[i]));
  }

  outcome.report =
      completion_report(completed, static_cast<long>(outcome.document.records.size()));
  return outcome;
}

}  // namespace

PipelineOutcome run_pipeline(const Document& document, const PipelineConfig& config,
                             const SynonymLexicon& lexicon) {
  StoreBuildResult build_result = build_store(document, config, lexicon);
  DiscourseStore store = std::move(build_result.store);
  build_result.store = DiscourseStore{};
  return complete_phase(document, store, config, lexicon, std::nullopt, std::move(build_result));
}

PipelineOutcome complete_document(const Document& document, const DiscourseStore& store,
                                  const PipelineConfig& config, const SynonymLexicon& lexicon,
                                  std::optional<int> window_override) {
  require_valid_document(document, "complete_document");
  if (!store.frozen()) throw StoreError("complete_document: store is not frozen");
  StoreBuildResult empty{DiscourseStore(), {}, {}};
  return complete_phase(document, store, config, lexicon, window_override, std::move(empty));
}

}  // namespace parsemend
