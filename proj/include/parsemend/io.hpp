#pragma once

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "parsemend/config.hpp"
#include "parsemend/core.hpp"
#include "parsemend/store.hpp"

namespace parsemend {

// Documents are stored as line-delimited JSON: an optional leading
// {"metadata": {...}} line, then one record per line:
//   {"id":1,"parse":{"kind":"complete","tree":{...}}}
//   {"id":2,"parse":{"kind":"multiple","candidates":[{...},...]}}
//   {"id":3,"parse":{"kind":"incomplete","fragments":[{"span":[a,b],"tree":{...}},...]}}
// Trees: {"tokens":[{"i":1,"s":"Fig.","l":"fig","p":"N"},...],
//         "edges":[{"d":1,"h":3,"r":"SUBJ"},...]}  ("amb":true / "raw":"..."
// only when set). Serialization is deterministic (sorted keys, no floats).

/// Parses and fully validates; unknown POS tags become OTHER (raw preserved)
/// and unknown relation labels become DIRECT, both with a warning. Invariant
/// violations fail fast with sentence ids and line numbers.
Document load_document(const std::filesystem::path& path,
                       std::vector<std::string>* warnings = nullptr);
Document parse_document(std::istream& in, const std::string& name,
                        std::vector<std::string>* warnings = nullptr);

void save_document(const Document& document, std::ostream& out);
void save_document(const Document& document, const std::filesystem::path& path);
std::string document_to_string(const Document& document);

nlohmann::json tree_to_json(const DependencyTree& tree);
nlohmann::json record_to_json(const SentenceRecord& record);

/// Versioned, deterministic store snapshot: byte-equal snapshots answer
/// queries identically. Only frozen stores can be saved; loading yields a
/// frozen store and re-checks the preference-value invariant.
void save_store(const DiscourseStore& store, std::ostream& out);
void save_store(const DiscourseStore& store, const std::filesystem::path& path);
std::string store_to_string(const DiscourseStore& store);
DiscourseStore load_store(const std::filesystem::path& path);
DiscourseStore parse_store(std::istream& in, const std::string& name);

/// Column-per-token format (blank-line separated sentences, '#' comments):
///   INDEX SURFACE LEMMA POS HEAD RELATION [amb]
/// Every sentence becomes a Complete record with ids 1..n.
Document convert_columns(std::istream& in, const std::string& name,
                         std::vector<std::string>* warnings = nullptr);
Document convert_columns_file(const std::filesystem::path& path,
                              std::vector<std::string>* warnings = nullptr);

/// Config file is a JSON object; rationals are strings ("1/2", "0.8") or
/// integers so values stay exact. Unknown keys are rejected.
PipelineConfig config_from_json(const nlohmann::json& value);
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace parsemend
