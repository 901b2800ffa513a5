// parsemend CLI: build a discourse store from parsed documents, pick among
// candidate parses, complete partial parses, and report corpus statistics.
//
// Subcommands:
//   build        ingest complete (and disambiguated) parses, write a store snapshot
//   disambiguate score multi-parse sentences against a store
//   complete     complete incomplete parses (with a store, or end-to-end)
//   report       render a completion results file as a table + JSON
//   analyze      lemma repetition and windowed collocation-repetition rates
//   convert      column-per-token file -> document JSONL

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "parsemend/analysis.hpp"
#include "parsemend/errors.hpp"
#include "parsemend/io.hpp"
#include "parsemend/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace parsemend;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct ConfigFlags {
  std::string config_path;
  std::optional<int> window;
  std::string similar_discount;
  std::optional<int> retag_min_count;
  std::string retag_pos_ratio;
  bool no_fallback = false;
  std::optional<int> samples;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--window", flags.window, "sentence window (0 = whole document)");
  cmd->add_option("--similar-discount", flags.similar_discount,
                  "weight of synonym-level evidence, e.g. 0.5 or 1/2");
  cmd->add_option("--retag-min-count", flags.retag_min_count,
                  "occurrences needed before retagging");
  cmd->add_option("--retag-pos-ratio", flags.retag_pos_ratio,
                  "dominance ratio needed before retagging, e.g. 0.8");
  cmd->add_flag("--no-fallback", flags.no_fallback, "disable heuristic joining");
  cmd->add_option("--samples", flags.samples, "sample areas per window size");
}

PipelineConfig resolve_config(const ConfigFlags& flags) {
  PipelineConfig config;
  if (!flags.config_path.empty()) config = load_config(flags.config_path);
  if (flags.window) config.window = *flags.window == 0 ? std::nullopt : flags.window;
  if (!flags.similar_discount.empty()) {
    auto value = rational_from_string(flags.similar_discount);
    if (!value) throw CLI::ValidationError("--similar-discount", "not a rational");
    config.similar_discount = *value;
  }
  if (flags.retag_min_count) config.retag_min_count = *flags.retag_min_count;
  if (!flags.retag_pos_ratio.empty()) {
    auto value = rational_from_string(flags.retag_pos_ratio);
    if (!value) throw CLI::ValidationError("--retag-pos-ratio", "not a rational");
    config.retag_pos_ratio = *value;
  }
  if (flags.no_fallback) config.fallback = false;
  if (flags.samples) config.samples_per_window = *flags.samples;
  auto problems = validate(config);
  if (!problems.empty()) throw CLI::ValidationError("config", problems.front());
  return config;
}

SynonymLexicon load_lexicon(const std::string& path) {
  if (path.empty()) return {};
  return SynonymLexicon::load(path);
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& warning : warnings) std::cerr << "warning: " << warning << "\n";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

// --- subcommand bodies ------------------------------------------------------

int cmd_build(const std::string& doc_path, const std::string& out_path,
              const std::string& synonyms, const ConfigFlags& flags) {
  const PipelineConfig config = resolve_config(flags);
  std::vector<std::string> warnings;
  const Document document = load_document(doc_path, &warnings);
  print_warnings(warnings);
  StoreBuildResult result = build_store(document, config, load_lexicon(synonyms));
  const fs::path out = out_path.empty() ? fs::path(doc_path + ".store.json") : fs::path(out_path);
  save_store(result.store, out);
  for (const auto& line : result.audit) std::cerr << line << "\n";
  std::cerr << "store: " << result.store.entries().size() << " entries, "
            << result.store.sentences().size() << " sentences -> " << out.string() << "\n";
  return kExitOk;
}

int cmd_disambiguate(const std::string& doc_path, const std::string& store_path,
                     const std::string& out_path, const std::string& synonyms,
                     const ConfigFlags& flags) {
  const PipelineConfig config = resolve_config(flags);
  std::vector<std::string> warnings;
  Document document = load_document(doc_path, &warnings);
  print_warnings(warnings);
  const DiscourseStore store = load_store(store_path);
  const SynonymLexicon lexicon = load_lexicon(synonyms);

  for (auto& record : document.records) {
    if (!record.is_multiple()) continue;
    const QueryFilter filter{record.id, record.id, flags.window};
    SelectionResult selection =
        select_parse(store, lexicon, record.forest(), config.similar_discount, filter);
    json totals = json::array();
    for (const auto& score : selection.scores) totals.push_back(ratio_string(score.total));
    std::cout << json{{"sentence", record.id},
                      {"chosen", selection.chosen},
                      {"decided", selection.decided},
                      {"totals", std::move(totals)}}
                     .dump()
              << "\n";
    DependencyTree chosen = record.forest().candidates[selection.chosen];
    record.parse = std::move(chosen);
  }
  if (!out_path.empty()) save_document(document, fs::path(out_path));
  return kExitOk;
}

int cmd_complete(const std::string& doc_path, const std::string& store_path,
                 const std::string& out_path, const std::string& results_path,
                 const std::string& audit_path, const std::string& synonyms,
                 const ConfigFlags& flags) {
  const PipelineConfig config = resolve_config(flags);
  std::vector<std::string> warnings;
  const Document document = load_document(doc_path, &warnings);
  print_warnings(warnings);
  const SynonymLexicon lexicon = load_lexicon(synonyms);

  PipelineOutcome outcome;
  if (store_path.empty()) {
    outcome = run_pipeline(document, config, lexicon);
  } else {
    const DiscourseStore store = load_store(store_path);
    outcome = complete_document(document, store, config, lexicon, flags.window);
  }

  const fs::path out =
      out_path.empty() ? fs::path(doc_path + ".completed.jsonl") : fs::path(out_path);
  const fs::path results =
      results_path.empty() ? fs::path(doc_path + ".results.jsonl") : fs::path(results_path);
  const fs::path audit =
      audit_path.empty() ? fs::path(doc_path + ".audit.log") : fs::path(audit_path);

  save_document(outcome.document, out);
  {
    std::ofstream results_out(results);
    if (!results_out) throw IoError("cannot write " + results.string());
    results_out << json{{"sentences", outcome.document.records.size()}}.dump() << "\n";
    for (const auto& [id, result] : outcome.completions) {
      long discourse_joins = 0, heuristic_joins = 0;
      for (const auto& join : result.joins) (join.heuristic ? heuristic_joins : discourse_joins)++;
      const char* category = "unchanged";
      switch (classify(result)) {
        case ReportCategory::Unified: category = "unified"; break;
        case ReportCategory::PartiallyJoined: category = "partially_joined"; break;
        case ReportCategory::Unchanged: category = "unchanged"; break;
      }
      results_out << json{{"sentence", id},
                          {"status", std::string(to_string(result.status))},
                          {"category", category},
                          {"actions", result.actions.size()},
                          {"discourse_joins", discourse_joins},
                          {"heuristic_joins", heuristic_joins}}
                         .dump()
                  << "\n";
    }
  }
  {
    std::ofstream audit_out(audit);
    if (!audit_out) throw IoError("cannot write " + audit.string());
    for (const auto& line : outcome.audit) audit_out << line << "\n";
  }
  std::cout << render_text(outcome.report);
  return kExitOk;
}

int cmd_report(const std::string& results_path, const std::string& out_path) {
  std::ifstream in(results_path);
  if (!in) throw IoError("cannot open results: " + results_path);
  CompletionReport report;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    json value;
    try {
      value = json::parse(line);
    } catch (const json::exception& e) {
      throw IoError(results_path + ":" + std::to_string(line_number) + ": bad JSON: " + e.what());
    }
    if (value.contains("sentences")) {
      report.sentences = value.at("sentences").get<long>();
      continue;
    }
    ++report.incomplete;
    const std::string category = value.at("category").get<std::string>();
    if (category == "unified") {
      ++report.unified;
    } else if (category == "partially_joined") {
      ++report.partially_joined;
    } else {
      ++report.unchanged;
    }
  }
  std::cout << render_text(report);
  const fs::path out =
      out_path.empty() ? fs::path(results_path + ".report.json") : fs::path(out_path);
  write_text(out, to_json(report).dump(2) + "\n");
  return kExitOk;
}

int cmd_analyze(const std::string& doc_path, const std::vector<int>& windows,
                const std::string& synonyms, const ConfigFlags& flags) {
  const PipelineConfig config = resolve_config(flags);
  std::vector<std::string> warnings;
  const Document document = load_document(doc_path, &warnings);
  print_warnings(warnings);
  const SynonymLexicon lexicon = load_lexicon(synonyms);

  const RepetitionReport repetition = repetition_stats(document);
  std::cout << render_text(repetition) << "\n";
  write_text(doc_path + ".repetition.txt", render_text(repetition));
  write_text(doc_path + ".repetition.json", to_json(repetition).dump(2) + "\n");

  if (!windows.empty()) {
    const WindowRateReport rates =
        window_rates(document, windows, config.samples_per_window, lexicon);
    std::cout << render_text(rates);
    write_text(doc_path + ".windows.txt", render_text(rates));
    write_text(doc_path + ".windows.json", to_json(rates).dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_convert(const std::string& columns_path, const std::string& out_path) {
  std::vector<std::string> warnings;
  const Document document = convert_columns_file(columns_path, &warnings);
  print_warnings(warnings);
  const fs::path out =
      out_path.empty() ? fs::path(columns_path + ".jsonl") : fs::path(out_path);
  save_document(document, out);
  std::cerr << "converted " << document.records.size() << " sentences -> " << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dependency parse post-processing: complete partial parses and pick among\n"
               "candidate parses by keeping word usage consistent across the document."};
  app.require_subcommand(1);

  std::string doc_path, store_path, out_path, results_path, audit_path, synonyms, columns_path;
  std::vector<int> windows;
  ConfigFlags flags;

  auto* build = app.add_subcommand("build", "Build a discourse store snapshot from a document");
  build->add_option("document", doc_path, "document JSONL")->required();
  build->add_option("-o,--output", out_path, "store snapshot path (default <doc>.store.json)");
  build->add_option("--synonyms", synonyms, "synonym lexicon file");
  add_config_flags(build, flags);

  auto* disambiguate =
      app.add_subcommand("disambiguate", "Score and select among candidate parses");
  disambiguate->add_option("document", doc_path, "document JSONL")->required();
  disambiguate->add_option("--store", store_path, "store snapshot")->required();
  disambiguate->add_option("-o,--output", out_path, "write document with selections applied");
  disambiguate->add_option("--synonyms", synonyms, "synonym lexicon file");
  add_config_flags(disambiguate, flags);

  auto* complete = app.add_subcommand("complete", "Complete incomplete parses");
  complete->add_option("document", doc_path, "document JSONL")->required();
  complete->add_option("--store", store_path,
                       "store snapshot; omitted = build from the document itself");
  complete->add_option("-o,--output", out_path, "completed document (default <doc>.completed.jsonl)");
  complete->add_option("--results", results_path, "results file (default <doc>.results.jsonl)");
  complete->add_option("--audit", audit_path, "audit log (default <doc>.audit.log)");
  complete->add_option("--synonyms", synonyms, "synonym lexicon file");
  add_config_flags(complete, flags);

  auto* report = app.add_subcommand("report", "Render a completion results file");
  report->add_option("results", results_path, "results JSONL from 'complete'")->required();
  report->add_option("-o,--output", out_path, "JSON report path (default <results>.report.json)");

  auto* analyze = app.add_subcommand("analyze", "Repetition and window-rate statistics");
  analyze->add_option("document", doc_path, "document JSONL")->required();
  analyze->add_option("--windows", windows, "window sizes in sentences")->delimiter(',');
  analyze->add_option("--synonyms", synonyms, "synonym lexicon file");
  add_config_flags(analyze, flags);

  auto* convert = app.add_subcommand("convert", "Column-per-token file -> document JSONL");
  convert->add_option("columns", columns_path, "column file")->required();
  convert->add_option("-o,--output", out_path, "output path (default <columns>.jsonl)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (build->parsed()) return cmd_build(doc_path, out_path, synonyms, flags);
    if (disambiguate->parsed()) {
      return cmd_disambiguate(doc_path, store_path, out_path, synonyms, flags);
    }
    if (complete->parsed()) {
      return cmd_complete(doc_path, store_path, out_path, results_path, audit_path, synonyms,
                          flags);
    }
    if (report->parsed()) return cmd_report(results_path, out_path);
    if (analyze->parsed()) return cmd_analyze(doc_path, windows, synonyms, flags);
    if (convert->parsed()) return cmd_convert(columns_path, out_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
