#include "parsemend/store.hpp"

#include <algorithm>
#include <sstream>

#include "parsemend/errors.hpp"

namespace parsemend {

// ---------------------------------------------------------------------------
// PosProfile
// ---------------------------------------------------------------------------

int PosProfile::count(Pos pos) const {
  auto it = instances.find(pos);
  return it == instances.end() ? 0 : static_cast<int>(it->second.size());
}

int PosProfile::total() const {
  int sum = 0;
  for (const auto& [pos, refs] : instances) sum += static_cast<int>(refs.size());
  return sum;
}

std::optional<std::pair<Pos, int>> PosProfile::dominant() const {
  std::optional<std::pair<Pos, int>> best;
  for (const auto& [pos, refs] : instances) {
    const int count = static_cast<int>(refs.size());
    if (!best || count > best->second) best = {pos, count};
  }
  return best;
}

// ---------------------------------------------------------------------------
// CollocationKey
// ---------------------------------------------------------------------------

std::string CollocationKey::str() const {
  std::ostringstream out;
  out << modifier_lemma << "/" << to_string(modifier_pos) << " -" << relation.str() << "-> "
      << modifiee_lemma << "/" << to_string(modifiee_pos);
  return out.str();
}

std::strong_ordering CollocationKey::operator<=>(const CollocationKey& other) const {
  if (auto c = modifier_lemma <=> other.modifier_lemma; c != 0) return c;
  if (auto c = modifier_pos <=> other.modifier_pos; c != 0) return c;
  if (auto c = relation <=> other.relation; c != 0) return c;
  if (auto c = modifiee_lemma <=> other.modifiee_lemma; c != 0) return c;
  return modifiee_pos <=> other.modifiee_pos;
}

// ---------------------------------------------------------------------------
// DiscourseStore
// ---------------------------------------------------------------------------

DiscourseStore::DiscourseStore(std::optional<int> window) : window_(window) {}

void DiscourseStore::require_frozen() const {
  if (!frozen_) throw StoreError("store is not frozen; freeze() before querying");
}

void DiscourseStore::require_unfrozen() const {
  if (frozen_) throw StoreError("store frozen");
}

void DiscourseStore::ingest_tree(int sentence_id, const DependencyTree& tree) {
  require_unfrozen();
  if (sentences_.count(sentence_id)) {
    throw StoreError("sentence " + std::to_string(sentence_id) + " already ingested");
  }
  auto violations = validate_tree(tree);
  if (!violations.empty()) {
    throw ValidationError("ingest_tree: invalid tree: " + to_string(violations.front()));
  }
  sentences_.insert(sentence_id);
  ingest_edges(sentence_id, tree, nullptr);
}

void DiscourseStore::ingest_selected_parse(int sentence_id, const ParseForest& forest,
                                           std::size_t chosen) {
  require_unfrozen();
  if (chosen >= forest.candidates.size()) {
    throw ValidationError("ingest_selected_parse: candidate index out of range");
  }
  auto violations = validate_forest(forest);
  if (!violations.empty()) {
    throw ValidationError("ingest_selected_parse: invalid forest: " + to_string(violations.front()));
  }
  if (sentences_.count(sentence_id)) {
    throw StoreError("sentence " + std::to_string(sentence_id) + " already ingested");
  }

  // An edge is contested when its key is missing from some other candidate.
  const DependencyTree& tree = forest.candidates[chosen];
  std::vector<std::set<CollocationKey>> other_keys;
  for (std::size_t c = 0; c < forest.candidates.size(); ++c) {
    if (c == chosen) continue;
    std::set<CollocationKey> keys;
    const DependencyTree& candidate = forest.candidates[c];
    for (const auto& edge : candidate.edges) {
      if (edge.head == 0) continue;
      const Token* dep = candidate.token_at(edge.dependent);
      const Token* head = candidate.token_at(edge.head);
      if (!is_collocation_pos(dep->pos) || !is_collocation_pos(head->pos)) continue;
      keys.insert({dep->lemma, dep->pos, edge.relation, head->lemma, head->pos});
    }
    other_keys.push_back(std::move(keys));
  }
  std::set<CollocationKey> contested;
  for (const auto& edge : tree.edges) {
    if (edge.head == 0) continue;
    const Token* dep = tree.token_at(edge.dependent);
    const Token* head = tree.token_at(edge.head);
    if (!is_collocation_pos(dep->pos) || !is_collocation_pos(head->pos)) continue;
    CollocationKey key{dep->lemma, dep->pos, edge.relation, head->lemma, head->pos};
    for (const auto& keys : other_keys) {
      if (!keys.count(key)) {
        contested.insert(key);
        break;
      }
    }
  }

  sentences_.insert(sentence_id);
  ingest_edges(sentence_id, tree, &contested);
}

void DiscourseStore::ingest_edges(int sentence_id, const DependencyTree& tree,
                                  const std::set<CollocationKey>* force_ambiguous) {
  for (const auto& token : tree.tokens) {
    pos_index_[token.lemma].instances[token.pos].push_back({sentence_id, token.index});
  }
  for (const auto& edge : tree.edges) {
    if (edge.head == 0) continue;
    const Token* dep = tree.token_at(edge.dependent);
    const Token* head = tree.token_at(edge.head);
    if (!is_collocation_pos(dep->pos) || !is_collocation_pos(head->pos)) continue;
    CollocationKey key{dep->lemma, dep->pos, edge.relation, head->lemma, head->pos};
    const bool ambiguous =
        edge.ambiguous || (force_ambiguous && force_ambiguous->count(key));
    auto [it, inserted] = entries_.try_emplace(key);
    if (inserted) it->second.key = key;
    CollocationEntry& entry = it->second;
    const InstanceRef ref{sentence_id, edge.dependent};
    if (ambiguous) {
      entry.ambiguous_instances.push_back(ref);
      entry.preference_value += Rational(1, 10);
    } else {
      entry.definite_instances.push_back(ref);
      entry.preference_value += Rational(1);
    }
  }
}

DiscourseStore& DiscourseStore::freeze() {
  if (frozen_) return *this;
  frozen_ = true;
  // Canonical instance order makes the frozen state a function of the
  // ingested multiset alone, whatever order ingestion happened in.
  for (auto& [lemma, profile] : pos_index_) {
    for (auto& [pos, refs] : profile.instances) std::sort(refs.begin(), refs.end());
  }
  keys_by_modifier_.clear();
  keys_by_modifiee_.clear();
  for (auto& [key, entry] : entries_) {
    std::sort(entry.definite_instances.begin(), entry.definite_instances.end());
    std::sort(entry.ambiguous_instances.begin(), entry.ambiguous_instances.end());
    keys_by_modifier_[key.modifier_lemma].push_back(key);
    keys_by_modifiee_[key.modifiee_lemma].push_back(key);
  }
  return *this;
}

std::optional<int> DiscourseStore::effective_window(const QueryFilter& filter) const {
  if (filter.window_override) {
    if (*filter.window_override <= 0) return std::nullopt;  // 0 disables
    return *filter.window_override;
  }
  return window_;
}

namespace {

void filter_refs(std::vector<InstanceRef>& refs, std::optional<int> focus,
                 std::optional<int> window, std::optional<int> exclude) {
  std::erase_if(refs, [&](const InstanceRef& ref) {
    if (exclude && ref.sentence_id == *exclude) return true;
    if (focus && window &&
        (ref.sentence_id < *focus - *window || ref.sentence_id > *focus + *window)) {
      return true;
    }
    return false;
  });
}

}  // namespace

PosProfile DiscourseStore::pos_profile(const std::string& lemma, const QueryFilter& filter) const {
  require_frozen();
  auto it = pos_index_.find(lemma);
  if (it == pos_index_.end()) return {};
  PosProfile profile = it->second;
  const auto window = effective_window(filter);
  for (auto& [pos, refs] : profile.instances) {
    filter_refs(refs, filter.focus_sentence, window, filter.exclude_sentence);
  }
  std::erase_if(profile.instances, [](const auto& item) { return item.second.empty(); });
  return profile;
}

std::optional<CollocationEntry> DiscourseStore::filtered(const CollocationEntry& entry,
                                                         const QueryFilter& filter) const {
  CollocationEntry copy = entry;
  const auto window = effective_window(filter);
  filter_refs(copy.definite_instances, filter.focus_sentence, window, filter.exclude_sentence);
  filter_refs(copy.ambiguous_instances, filter.focus_sentence, window, filter.exclude_sentence);
  if (copy.definite_instances.empty() && copy.ambiguous_instances.empty()) return std::nullopt;
  copy.preference_value = Rational(static_cast<std::int64_t>(copy.definite_instances.size())) +
                          Rational(static_cast<std::int64_t>(copy.ambiguous_instances.size()), 10);
  return copy;
}

std::vector<CollocationEntry> DiscourseStore::collocations_for(const std::string& lemma, Side side,
                                                               const QueryFilter& filter) const {
  require_frozen();
  const auto& index = side == Side::Modifier ? keys_by_modifier_ : keys_by_modifiee_;
  std::vector<CollocationEntry> out;
  auto it = index.find(lemma);
  if (it == index.end()) return out;
  for (const auto& key : it->second) {
    if (auto entry = filtered(entries_.at(key), filter)) out.push_back(std::move(*entry));
  }
  std::sort(out.begin(), out.end(), [](const CollocationEntry& a, const CollocationEntry& b) {
    if (a.preference_value != b.preference_value) return a.preference_value > b.preference_value;
    return a.key < b.key;
  });
  return out;
}

std::optional<CollocationEntry> DiscourseStore::entry_for(const CollocationKey& key,
                                                          const QueryFilter& filter) const {
  require_frozen();
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return filtered(it->second, filter);
}

const std::map<CollocationKey, CollocationEntry>& DiscourseStore::entries() const {
  require_frozen();
  return entries_;
}

const std::map<std::string, PosProfile>& DiscourseStore::pos_index() const {
  require_frozen();
  return pos_index_;
}

DiscourseStore DiscourseStore::restore(std::optional<int> window, std::set<int> sentences,
                                       std::map<std::string, PosProfile> pos_index,
                                       std::vector<CollocationEntry> entries) {
  DiscourseStore store(window);
  store.sentences_ = std::move(sentences);
  store.pos_index_ = std::move(pos_index);
  for (auto& entry : entries) {
    const Rational expected =
        Rational(static_cast<std::int64_t>(entry.definite_instances.size())) +
        Rational(static_cast<std::int64_t>(entry.ambiguous_instances.size()), 10);
    if (entry.preference_value != expected) {
      throw IoError("store snapshot corrupt: preference value mismatch for " + entry.key.str());
    }
    CollocationKey key = entry.key;
    store.entries_.emplace(std::move(key), std::move(entry));
  }
  store.freeze();
  return store;
}

}  // namespace parsemend
