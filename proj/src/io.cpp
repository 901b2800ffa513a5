#include "parsemend/io.hpp"

#include <fstream>
#include <sstream>

#include "parsemend/errors.hpp"

namespace parsemend {

using nlohmann::json;

namespace {

constexpr const char* kStoreFormat = "parsemend-store";
constexpr int kStoreVersion = 1;

void warn(std::vector<std::string>* warnings, const std::string& message) {
  if (warnings) warnings->push_back(message);
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& message) {
  throw IoError(name + ":" + std::to_string(line) + ": " + message);
}

Pos parse_pos(const std::string& tag, std::string& raw_out, const std::string& where,
              std::vector<std::string>* warnings) {
  if (auto pos = pos_from_string(tag)) return *pos;
  warn(warnings, where + ": unknown POS tag '" + tag + "' mapped to OTHER");
  raw_out = tag;
  return Pos::OTHER;
}

RelationLabel parse_relation(const std::string& text, const std::string& where,
                             std::vector<std::string>* warnings) {
  if (auto relation = RelationLabel::parse(text)) return *relation;
  warn(warnings, where + ": unknown relation '" + text + "' mapped to DIRECT");
  return RelationLabel::direct();
}

// --- tree JSON -------------------------------------------------------------

json token_to_json(const Token& token) {
  json out;
  out["i"] = token.index;
  out["s"] = token.surface;
  out["l"] = token.lemma;
  out["p"] = std::string(to_string(token.pos));
  if (token.pos == Pos::OTHER && !token.pos_raw.empty()) out["raw"] = token.pos_raw;
  return out;
}

json edge_to_json(const DependencyEdge& edge) {
  json out;
  out["d"] = edge.dependent;
  out["h"] = edge.head;
  out["r"] = edge.relation.str();
  if (edge.ambiguous) out["amb"] = true;
  return out;
}

Token token_from_json(const json& value, const std::string& where,
                      std::vector<std::string>* warnings) {
  Token token;
  token.index = value.at("i").get<int>();
  token.surface = value.at("s").get<std::string>();
  token.lemma = value.at("l").get<std::string>();
  token.pos = parse_pos(value.at("p").get<std::string>(), token.pos_raw, where, warnings);
  // The raw payload only means something for OTHER; on known tags it would
  // not survive re-serialization, so it is dropped up front.
  if (value.contains("raw") && token.pos == Pos::OTHER) {
    token.pos_raw = value.at("raw").get<std::string>();
  }
  return token;
}

DependencyEdge edge_from_json(const json& value, const std::string& where,
                              std::vector<std::string>* warnings) {
  DependencyEdge edge;
  edge.dependent = value.at("d").get<int>();
  edge.head = value.at("h").get<int>();
  edge.relation = parse_relation(value.at("r").get<std::string>(), where, warnings);
  edge.ambiguous = value.value("amb", false);
  return edge;
}

DependencyTree tree_from_json(const json& value, const std::string& where,
                              std::vector<std::string>* warnings) {
  DependencyTree tree;
  for (const auto& item : value.at("tokens")) {
    tree.tokens.push_back(token_from_json(item, where, warnings));
  }
  for (const auto& item : value.at("edges")) {
    tree.edges.push_back(edge_from_json(item, where, warnings));
  }
  return tree;
}

json fragment_to_json(const ParseFragment& fragment) {
  json out;
  out["span"] = {fragment.span_begin, fragment.span_end};
  out["tree"] = tree_to_json(fragment.tree);
  return out;
}

ParseFragment fragment_from_json(const json& value, const std::string& where,
                                 std::vector<std::string>* warnings) {
  ParseFragment fragment;
  const auto& span = value.at("span");
  fragment.span_begin = span.at(0).get<int>();
  fragment.span_end = span.at(1).get<int>();
  fragment.tree = tree_from_json(value.at("tree"), where, warnings);
  return fragment;
}

SentenceRecord record_from_json(const json& value, const std::string& where,
                                std::vector<std::string>* warnings) {
  SentenceRecord record;
  record.id = value.at("id").get<int>();
  const auto& parse = value.at("parse");
  const std::string kind = parse.at("kind").get<std::string>();
  if (kind == "complete") {
    record.parse = tree_from_json(parse.at("tree"), where, warnings);
  } else if (kind == "multiple") {
    ParseForest forest;
    for (const auto& item : parse.at("candidates")) {
      forest.candidates.push_back(tree_from_json(item, where, warnings));
    }
    record.parse = std::move(forest);
  } else if (kind == "incomplete") {
    PartialParse partial;
    for (const auto& item : parse.at("fragments")) {
      partial.fragments.push_back(fragment_from_json(item, where, warnings));
    }
    record.parse = std::move(partial);
  } else {
    throw IoError(where + ": unknown parse kind '" + kind + "'");
  }
  return record;
}

}  // namespace

json tree_to_json(const DependencyTree& tree) {
  json tokens = json::array();
  for (const auto& token : tree.tokens) tokens.push_back(token_to_json(token));
  json edges = json::array();
  for (const auto& edge : tree.edges) edges.push_back(edge_to_json(edge));
  return {{"tokens", std::move(tokens)}, {"edges", std::move(edges)}};
}

json record_to_json(const SentenceRecord& record) {
  json parse;
  if (record.is_complete()) {
    parse["kind"] = "complete";
    parse["tree"] = tree_to_json(record.tree());
  } else if (record.is_multiple()) {
    parse["kind"] = "multiple";
    json candidates = json::array();
    for (const auto& tree : record.forest().candidates) candidates.push_back(tree_to_json(tree));
    parse["candidates"] = std::move(candidates);
  } else {
    parse["kind"] = "incomplete";
    json fragments = json::array();
    for (const auto& fragment : record.partial().fragments) {
      fragments.push_back(fragment_to_json(fragment));
    }
    parse["fragments"] = std::move(fragments);
  }
  return {{"id", record.id}, {"parse", std::move(parse)}};
}

Document parse_document(std::istream& in, const std::string& name,
                        std::vector<std::string>* warnings) {
  Document document;
  std::string line;
  int line_number = 0;
  std::map<int, int> line_of_sentence;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    json value;
    try {
      value = json::parse(line);
    } catch (const json::exception& e) {
      fail(name, line_number, std::string("bad JSON: ") + e.what());
    }
    try {
      if (value.contains("metadata") && !value.contains("id")) {
        if (line_number != 1 || !document.metadata.empty()) {
          fail(name, line_number, "metadata line must be the first line");
        }
        for (const auto& [key, item] : value.at("metadata").items()) {
          document.metadata[key] = item.get<std::string>();
        }
        continue;
      }
      const std::string where = name + ":" + std::to_string(line_number);
      SentenceRecord record = record_from_json(value, where, warnings);
      line_of_sentence[record.id] = line_number;
      document.records.push_back(std::move(record));
    } catch (const json::exception& e) {
      fail(name, line_number, std::string("bad record: ") + e.what());
    }
  }

  auto violations = validate_document(document);
  if (!violations.empty()) {
    std::ostringstream out;
    out << name << ": document is invalid:";
    for (const auto& violation : violations) {
      out << "\n  " << to_string(violation);
      // Best effort: point at the offending line.
      for (const auto& [id, at_line] : line_of_sentence) {
        if (violation.detail.find("sentence " + std::to_string(id) + ":") != std::string::npos) {
          out << " (line " << at_line << ")";
          break;
        }
      }
    }
    throw IoError(out.str());
  }
  return document;
}

Document load_document(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open document: " + path.string());
  return parse_document(in, path.string(), warnings);
}

void save_document(const Document& document, std::ostream& out) {
  if (!document.metadata.empty()) {
    json meta;
    for (const auto& [key, value] : document.metadata) meta[key] = value;
    out << json{{"metadata", std::move(meta)}}.dump() << "\n";
  }
  for (const auto& record : document.records) {
    out << record_to_json(record).dump() << "\n";
  }
}

void save_document(const Document& document, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write document: " + path.string());
  save_document(document, out);
}

std::string document_to_string(const Document& document) {
  std::ostringstream out;
  save_document(document, out);
  return out.str();
}

// ---------------------------------------------------------------------------
// Store snapshots
// ---------------------------------------------------------------------------

namespace {

json refs_to_json(const std::vector<InstanceRef>& refs) {
  json out = json::array();
  for (const auto& ref : refs) out.push_back({ref.sentence_id, ref.token_index});
  return out;
}

std::vector<InstanceRef> refs_from_json(const json& value) {
  std::vector<InstanceRef> out;
  for (const auto& item : value) {
    out.push_back({item.at(0).get<int>(), item.at(1).get<int>()});
  }
  return out;
}

}  // namespace

void save_store(const DiscourseStore& store, std::ostream& out) {
  if (!store.frozen()) throw StoreError("only frozen stores can be saved");
  json snapshot;
  snapshot["format"] = kStoreFormat;
  snapshot["version"] = kStoreVersion;
  if (store.window()) {
    snapshot["window"] = *store.window();
  } else {
    snapshot["window"] = nullptr;
  }
  snapshot["sentences"] = json::array();
  for (int id : store.sentences()) snapshot["sentences"].push_back(id);

  json pos_index = json::object();
  for (const auto& [lemma, profile] : store.pos_index()) {
    json tags = json::object();
    for (const auto& [pos, refs] : profile.instances) {
      tags[std::string(to_string(pos))] = refs_to_json(refs);
    }
    pos_index[lemma] = std::move(tags);
  }
  snapshot["pos_index"] = std::move(pos_index);

  json entries = json::array();
  for (const auto& [key, entry] : store.entries()) {
    entries.push_back({{"modifier", key.modifier_lemma},
                       {"modifier_pos", std::string(to_string(key.modifier_pos))},
                       {"relation", key.relation.str()},
                       {"modifiee", key.modifiee_lemma},
                       {"modifiee_pos", std::string(to_string(key.modifiee_pos))},
                       {"definite", refs_to_json(entry.definite_instances)},
                       {"ambiguous", refs_to_json(entry.ambiguous_instances)},
                       {"preference", {entry.preference_value.numerator(),
                                       entry.preference_value.denominator()}}});
  }
  snapshot["entries"] = std::move(entries);
  out << snapshot.dump() << "\n";
}

void save_store(const DiscourseStore& store, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write store snapshot: " + path.string());
  save_store(store, out);
}

std::string store_to_string(const DiscourseStore& store) {
  std::ostringstream out;
  save_store(store, out);
  return out.str();
}

DiscourseStore parse_store(std::istream& in, const std::string& name) {
  json snapshot;
  try {
    in >> snapshot;
  } catch (const json::exception& e) {
    throw IoError(name + ": bad store snapshot: " + e.what());
  }
  try {
    if (snapshot.at("format").get<std::string>() != kStoreFormat) {
      throw IoError(name + ": not a store snapshot");
    }
    if (snapshot.at("version").get<int>() != kStoreVersion) {
      throw IoError(name + ": unsupported store snapshot version");
    }
    std::optional<int> window;
    if (!snapshot.at("window").is_null()) window = snapshot.at("window").get<int>();

    std::set<int> sentences;
    for (const auto& id : snapshot.at("sentences")) sentences.insert(id.get<int>());

    std::map<std::string, PosProfile> pos_index;
    for (const auto& [lemma, tags] : snapshot.at("pos_index").items()) {
      PosProfile profile;
      for (const auto& [tag, refs] : tags.items()) {
        auto pos = pos_from_string(tag);
        if (!pos) throw IoError(name + ": unknown POS tag in snapshot: " + tag);
        profile.instances[*pos] = refs_from_json(refs);
      }
      pos_index[lemma] = std::move(profile);
    }

    std::vector<CollocationEntry> entries;
    for (const auto& item : snapshot.at("entries")) {
      CollocationEntry entry;
      auto modifier_pos = pos_from_string(item.at("modifier_pos").get<std::string>());
      auto modifiee_pos = pos_from_string(item.at("modifiee_pos").get<std::string>());
      auto relation = RelationLabel::parse(item.at("relation").get<std::string>());
      if (!modifier_pos || !modifiee_pos || !relation) {
        throw IoError(name + ": bad entry key in snapshot");
      }
      entry.key = {item.at("modifier").get<std::string>(), *modifier_pos, *relation,
                   item.at("modifiee").get<std::string>(), *modifiee_pos};
      entry.definite_instances = refs_from_json(item.at("definite"));
      entry.ambiguous_instances = refs_from_json(item.at("ambiguous"));
      entry.preference_value = Rational(item.at("preference").at(0).get<std::int64_t>(),
                                        item.at("preference").at(1).get<std::int64_t>());
      entries.push_back(std::move(entry));
    }
    return DiscourseStore::restore(window, std::move(sentences), std::move(pos_index),
                                   std::move(entries));
  } catch (const json::exception& e) {
    throw IoError(name + ": bad store snapshot: " + e.what());
  }
}

DiscourseStore load_store(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open store snapshot: " + path.string());
  return parse_store(in, path.string());
}

// ---------------------------------------------------------------------------
// Column format
// ---------------------------------------------------------------------------

Document convert_columns(std::istream& in, const std::string& name,
                         std::vector<std::string>* warnings) {
  Document document;
  DependencyTree tree;
  int line_number = 0;
  int next_id = 1;

  auto flush = [&](int at_line) {
    if (tree.tokens.empty()) return;
    auto violations = validate_tree(tree);
    if (!violations.empty()) {
      fail(name, at_line,
           "sentence ending here is invalid: " + to_string(violations.front()));
    }
    document.records.push_back({next_id++, std::move(tree)});
    tree = {};
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> cols;
    std::string col;
    while (fields >> col) cols.push_back(col);
    if (cols.empty()) {
      flush(line_number);
      continue;
    }
    if (cols.size() < 6) {
      fail(name, line_number, "expected INDEX SURFACE LEMMA POS HEAD RELATION [amb]");
    }
    const std::string where = name + ":" + std::to_string(line_number);
    Token token;
    DependencyEdge edge;
    try {
      token.index = std::stoi(cols[0]);
      edge.head = std::stoi(cols[4]);
    } catch (const std::exception&) {
      fail(name, line_number, "INDEX and HEAD must be integers");
    }
    token.surface = cols[1];
    token.lemma = cols[2];
    token.pos = parse_pos(cols[3], token.pos_raw, where, warnings);
    edge.dependent = token.index;
    edge.relation = parse_relation(cols[5], where, warnings);
    edge.ambiguous = cols.size() > 6 && (cols[6] == "amb" || cols[6] == "1" || cols[6] == "y");
    tree.tokens.push_back(std::move(token));
    tree.edges.push_back(std::move(edge));
  }
  flush(line_number);

  if (document.records.empty()) throw IoError(name + ": no sentences found");
  return document;
}

Document convert_columns_file(const std::filesystem::path& path,
                              std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open column file: " + path.string());
  return convert_columns(in, path.string(), warnings);
}

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

namespace {

Rational rational_field(const json& value, const std::string& key) {
  const json& item = value.at(key);
  if (item.is_number_integer()) return Rational(item.get<std::int64_t>());
  if (item.is_string()) {
    if (auto parsed = rational_from_string(item.get<std::string>())) return *parsed;
    throw IoError("config: cannot parse rational '" + item.get<std::string>() + "' for " + key);
  }
  throw IoError("config: " + key + " must be an integer or a string like \"1/2\" or \"0.8\"" +
                " (floats are not exact)");
}

}  // namespace

PipelineConfig config_from_json(const json& value) {
  PipelineConfig config;
  for (const auto& [key, item] : value.items()) {
    if (key == "window") {
      if (!item.is_null()) config.window = item.get<int>();
    } else if (key == "similar_discount") {
      config.similar_discount = rational_field(value, key);
    } else if (key == "retag_min_count") {
      config.retag_min_count = item.get<int>();
    } else if (key == "retag_pos_ratio") {
      config.retag_pos_ratio = rational_field(value, key);
    } else if (key == "fallback") {
      config.fallback = item.get<bool>();
    } else if (key == "samples_per_window") {
      config.samples_per_window = item.get<int>();
    } else {
      throw IoError("config: unknown key '" + key + "'");
    }
  }
  auto problems = validate(config);
  if (!problems.empty()) throw IoError("config: " + problems.front());
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path.string());
  json value;
  try {
    in >> value;
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": bad config JSON: " + e.what());
  }
  return config_from_json(value);
}

std::vector<std::string> validate(const PipelineConfig& config) {
  std::vector<std::string> out;
  if (config.window && *config.window < 1) out.push_back("window must be >= 1");
  if (config.similar_discount < Rational(0) || config.similar_discount > Rational(1)) {
    out.push_back("similar_discount must be in [0,1]");
  }
  if (config.retag_min_count < 1) out.push_back("retag_min_count must be >= 1");
  if (config.retag_pos_ratio <= Rational(1, 2) || config.retag_pos_ratio > Rational(1)) {
    out.push_back("retag_pos_ratio must be in (1/2, 1]");
  }
  if (config.samples_per_window < 1) out.push_back("samples_per_window must be >= 1");
  return out;
}

}  // namespace parsemend
