#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace parsemend {

/// Thesaurus synonym rings. Membership is symmetric and reflexive within a
/// ring; a lemma may sit in several rings. Results never depend on the
/// listing order inside a ring.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;
  explicit SynonymLexicon(const std::vector<std::vector<std::string>>& rings);

  /// One ring per line, whitespace-separated lowercase lemmas, '#' comments.
  static SynonymLexicon load(const std::filesystem::path& path);
  static SynonymLexicon parse(std::istream& in);

  /// Ring mates of `lemma`, excluding the lemma itself; sorted, deduplicated.
  std::vector<std::string> synonyms_of(const std::string& lemma) const;

  /// Reflexive: are_synonyms(x, x) is always true.
  bool are_synonyms(const std::string& a, const std::string& b) const;

  std::size_t ring_count() const { return rings_.size(); }
  const std::vector<std::set<std::string>>& rings() const { return rings_; }

 private:
  std::vector<std::set<std::string>> rings_;
  std::map<std::string, std::vector<std::size_t>> ring_ids_;
};

}  // namespace parsemend
