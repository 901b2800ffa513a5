#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "parsemend/core.hpp"
#include "parsemend/rational.hpp"

namespace parsemend {

/// One occurrence of a lemma in the discourse.
struct InstanceRef {
  int sentence_id = 0;
  int token_index = 0;

  friend bool operator==(const InstanceRef&, const InstanceRef&) = default;
  auto operator<=>(const InstanceRef&) const = default;
};

/// How a lemma was tagged across the ingested complete parses.
struct PosProfile {
  std::map<Pos, std::vector<InstanceRef>> instances;

  int count(Pos pos) const;
  int total() const;
  bool empty() const { return instances.empty(); }
  /// Highest-count tag (ties broken by enum order); nullopt when empty.
  std::optional<std::pair<Pos, int>> dominant() const;

  friend bool operator==(const PosProfile&, const PosProfile&) = default;
};

/// Identity of a modification pattern: modifier (dependent) word, relation,
/// modifiee (head) word. Endpoint POS is never PUNC or OTHER.
struct CollocationKey {
  std::string modifier_lemma;
  Pos modifier_pos = Pos::N;
  RelationLabel relation;
  std::string modifiee_lemma;
  Pos modifiee_pos = Pos::N;

  std::string str() const;

  friend bool operator==(const CollocationKey&, const CollocationKey&) = default;
  std::strong_ordering operator<=>(const CollocationKey& other) const;
};

/// Accumulated evidence for one pattern. A definite occurrence is worth 1,
/// an ambiguous one 1/10; preference_value maintains exactly
///   |definite| + |ambiguous|/10
/// in rational arithmetic.
struct CollocationEntry {
  CollocationKey key;
  std::vector<InstanceRef> definite_instances;
  std::vector<InstanceRef> ambiguous_instances;
  Rational preference_value{0};

  friend bool operator==(const CollocationEntry&, const CollocationEntry&) = default;
};

enum class Side { Modifier, Modifiee };

/// Query-time scoping. `focus_sentence` enables the store's sentence window
/// (instances outside [focus-w, focus+w] are ignored); `exclude_sentence`
/// drops that sentence's own instances; `window_override` replaces the
/// store's window for this query (0 = unwindowed).
struct QueryFilter {
  std::optional<int> focus_sentence;
  std::optional<int> exclude_sentence;
  std::optional<int> window_override;
};

/// Discourse information accumulated from complete parses: a POS profile per
/// lemma plus scored collocation entries, indexed from both sides.
///
/// Life cycle: single-writer build phase (ingest_*), then freeze(), then
/// read-only queries. Queries on an unfrozen store and ingestion into a
/// frozen one throw StoreError. Frozen stores are immutable and freely
/// shareable across threads. Ingestion is order-independent: the frozen
/// state depends only on the multiset of ingested sentences.
class DiscourseStore {
 public:
  explicit DiscourseStore(std::optional<int> window = std::nullopt);

  /// Indexes every token's POS occurrence and every edge between
  /// collocation-eligible tokens (definite unless flagged ambiguous).
  void ingest_tree(int sentence_id, const DependencyTree& tree);

  /// Like ingest_tree on the chosen candidate, except edges whose key is
  /// absent from at least one other candidate are stored as ambiguous
  /// regardless of their flag.
  void ingest_selected_parse(int sentence_id, const ParseForest& forest,
                             std::size_t chosen);

  /// Idempotent; enables queries. Returns *this.
  DiscourseStore& freeze();
  bool frozen() const { return frozen_; }

  std::optional<int> window() const { return window_; }
  const std::set<int>& sentences() const { return sentences_; }

  /// Aggregated POS evidence for a lemma; unknown lemma -> empty profile.
  PosProfile pos_profile(const std::string& lemma, const QueryFilter& filter = {}) const;

  /// All entries with `lemma` on the requested side, filtered, sorted by
  /// (preference_value desc, key asc).
  std::vector<CollocationEntry> collocations_for(const std::string& lemma, Side side,
                                                 const QueryFilter& filter = {}) const;

  /// Exact-key lookup; nullopt when absent or filtered empty.
  std::optional<CollocationEntry> entry_for(const CollocationKey& key,
                                            const QueryFilter& filter = {}) const;

  /// Whole-store view for serialization and reporting (frozen only).
  const std::map<CollocationKey, CollocationEntry>& entries() const;
  const std::map<std::string, PosProfile>& pos_index() const;

  /// Rebuilds a frozen store from snapshot parts; validates the
  /// preference-value invariant. Used by snapshot loading.
  static DiscourseStore restore(std::optional<int> window, std::set<int> sentences,
                                std::map<std::string, PosProfile> pos_index,
                                std::vector<CollocationEntry> entries);

 private:
  void require_frozen() const;
  void require_unfrozen() const;
  void ingest_edges(int sentence_id, const DependencyTree& tree,
                    const std::set<CollocationKey>* force_ambiguous);
  std::optional<CollocationEntry> filtered(const CollocationEntry& entry,
                                           const QueryFilter& filter) const;
  std::optional<int> effective_window(const QueryFilter& filter) const;

  bool frozen_ = false;
  std::optional<int> window_;
  std::set<int> sentences_;
  std::map<std::string, PosProfile> pos_index_;
  std::map<CollocationKey, CollocationEntry> entries_;
  // Dual views over entries_, keyed by each side's lemma; built at freeze().
  std::map<std::string, std::vector<CollocationKey>> keys_by_modifier_;
  std::map<std::string, std::vector<CollocationKey>> keys_by_modifiee_;
};

}  // namespace parsemend
