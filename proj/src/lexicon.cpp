#include "parsemend/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "parsemend/errors.hpp"

namespace parsemend {

namespace {

std::string lowercased(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return text;
}

}  // namespace

SynonymLexicon::SynonymLexicon(const std::vector<std::vector<std::string>>& rings) {
  for (const auto& ring : rings) {
    std::set<std::string> members;
    for (const auto& lemma : ring) {
      if (!lemma.empty()) members.insert(lowercased(lemma));
    }
    if (members.size() < 2) continue;  // a single-member ring carries no information
    const std::size_t id = rings_.size();
    for (const auto& lemma : members) ring_ids_[lemma].push_back(id);
    rings_.push_back(std::move(members));
  }
}

SynonymLexicon SynonymLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open synonym lexicon: " + path.string());
  return parse(in);
}

SynonymLexicon SynonymLexicon::parse(std::istream& in) {
  std::vector<std::vector<std::string>> rings;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> ring;
    std::string lemma;
    while (fields >> lemma) ring.push_back(lemma);
    if (!ring.empty()) rings.push_back(std::move(ring));
  }
  return SynonymLexicon(rings);
}

std::vector<std::string> SynonymLexicon::synonyms_of(const std::string& lemma) const {
  std::set<std::string> mates;
  auto it = ring_ids_.find(lemma);
  if (it != ring_ids_.end()) {
    for (std::size_t id : it->second) {
      for (const auto& member : rings_[id]) {
        if (member != lemma) mates.insert(member);
      }
    }
  }
  return {mates.begin(), mates.end()};
}

bool SynonymLexicon::are_synonyms(const std::string& a, const std::string& b) const {
  if (a == b) return true;
  auto it = ring_ids_.find(a);
  if (it == ring_ids_.end()) return false;
  for (std::size_t id : it->second) {
    if (rings_[id].count(b)) return true;
  }
  return false;
}

}  // namespace parsemend
