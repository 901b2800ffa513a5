#include "parsemend/match.hpp"

#include <sstream>

namespace parsemend {

std::string_view to_string(MatchLevel level) {
  switch (level) {
    case MatchLevel::Identical: return "identical";
    case MatchLevel::Synonym: return "synonym";
    case MatchLevel::PosBackoff: return "pos-backoff";
    case MatchLevel::None: return "none";
  }
  return "none";
}

CollocationKey CollocationTriple::key() const {
  return {modifier.lemma, modifier.pos, relation, modifiee.lemma, modifiee.pos};
}

std::string CollocationTriple::str() const { return key().str(); }

bool better_match(const MatchResult& a, const MatchResult& b) {
  if (a.level != b.level) return a.level > b.level;
  if (a.score != b.score) return a.score > b.score;
  if (a.entry && b.entry) return a.entry->key < b.entry->key;
  return false;
}

namespace {

MatchResult as_result(MatchLevel level, std::optional<CollocationEntry> entry) {
  if (!entry) return {};
  MatchResult result;
  result.level = level;
  result.score = entry->preference_value;
  result.entry = std::move(entry);
  return result;
}

/// Best of `candidates` under (value desc, key asc); empty -> nullopt.
void keep_best(std::optional<CollocationEntry>& best, std::optional<CollocationEntry> candidate) {
  if (!candidate) return;
  if (!best || candidate->preference_value > best->preference_value ||
      (candidate->preference_value == best->preference_value && candidate->key < best->key)) {
    best = std::move(candidate);
  }
}

}  // namespace

MatchResult match_collocation(const DiscourseStore& store, const SynonymLexicon& lexicon,
                              const LemmaPos& modifier, const RelationLabel& relation,
                              const LemmaPos& modifiee, const QueryFilter& filter) {
  const CollocationKey exact{modifier.lemma, modifier.pos, relation, modifiee.lemma, modifiee.pos};

  if (auto entry = store.entry_for(exact, filter)) {
    return as_result(MatchLevel::Identical, std::move(entry));
  }

  // One side replaced by a ring mate, the rest unchanged.
  std::optional<CollocationEntry> best;
  for (const auto& synonym : lexicon.synonyms_of(modifier.lemma)) {
    CollocationKey key = exact;
    key.modifier_lemma = synonym;
    keep_best(best, store.entry_for(key, filter));
  }
  for (const auto& synonym : lexicon.synonyms_of(modifiee.lemma)) {
    CollocationKey key = exact;
    key.modifiee_lemma = synonym;
    keep_best(best, store.entry_for(key, filter));
  }
  if (best) return as_result(MatchLevel::Synonym, std::move(best));

  // One side reduced to POS only; the relation still has to match exactly.
  for (const auto& entry : store.collocations_for(modifier.lemma, Side::Modifier, filter)) {
    if (entry.key.modifier_pos == modifier.pos && entry.key.relation == relation &&
        entry.key.modifiee_pos == modifiee.pos) {
      keep_best(best, entry);
    }
  }
  for (const auto& entry : store.collocations_for(modifiee.lemma, Side::Modifiee, filter)) {
    if (entry.key.modifiee_pos == modifiee.pos && entry.key.relation == relation &&
        entry.key.modifier_pos == modifier.pos) {
      keep_best(best, entry);
    }
  }
  if (best) return as_result(MatchLevel::PosBackoff, std::move(best));

  return {};
}

MatchResult match_collocation(const DiscourseStore& store, const SynonymLexicon& lexicon,
                              const CollocationTriple& triple, const QueryFilter& filter) {
  return match_collocation(store, lexicon, triple.modifier, triple.relation, triple.modifiee,
                           filter);
}

MatchLevel match_level_only(const DiscourseStore& store, const SynonymLexicon& lexicon,
                            const CollocationTriple& triple, const QueryFilter& filter) {
  return match_collocation(store, lexicon, triple, filter).level;
}

MatchResult best_pair_match(const DiscourseStore& store, const SynonymLexicon& lexicon,
                            const LemmaPos& modifier, const LemmaPos& modifiee,
                            bool allow_pos_backoff, const QueryFilter& filter) {
  if (!is_collocation_pos(modifier.pos) || !is_collocation_pos(modifiee.pos)) return {};

  std::optional<CollocationEntry> best;

  // Identical: both sides exact, any relation.
  for (const auto& entry : store.collocations_for(modifier.lemma, Side::Modifier, filter)) {
    if (entry.key.modifier_pos == modifier.pos && entry.key.modifiee_lemma == modifiee.lemma &&
        entry.key.modifiee_pos == modifiee.pos) {
      keep_best(best, entry);
    }
  }
  if (best) return as_result(MatchLevel::Identical, std::move(best));

  // Synonym: exactly one side's lemma substituted.
  for (const auto& synonym : lexicon.synonyms_of(modifier.lemma)) {
    for (const auto& entry : store.collocations_for(synonym, Side::Modifier, filter)) {
      if (entry.key.modifier_pos == modifier.pos && entry.key.modifiee_lemma == modifiee.lemma &&
          entry.key.modifiee_pos == modifiee.pos) {
        keep_best(best, entry);
      }
    }
  }
  {
    const auto modifiee_synonyms = lexicon.synonyms_of(modifiee.lemma);
    if (!modifiee_synonyms.empty()) {
      for (const auto& entry : store.collocations_for(modifier.lemma, Side::Modifier, filter)) {
        if (entry.key.modifier_pos != modifier.pos || entry.key.modifiee_pos != modifiee.pos) {
          continue;
        }
        for (const auto& synonym : modifiee_synonyms) {
          if (entry.key.modifiee_lemma == synonym) {
            keep_best(best, entry);
            break;
          }
        }
      }
    }
  }
  if (best) return as_result(MatchLevel::Synonym, std::move(best));

  if (!allow_pos_backoff) return {};

  // POS backoff: one side exact, the other reduced to its POS.
  for (const auto& entry : store.collocations_for(modifier.lemma, Side::Modifier, filter)) {
    if (entry.key.modifier_pos == modifier.pos && entry.key.modifiee_pos == modifiee.pos) {
      keep_best(best, entry);
    }
  }
  for (const auto& entry : store.collocations_for(modifiee.lemma, Side::Modifiee, filter)) {
    if (entry.key.modifiee_pos == modifiee.pos && entry.key.modifier_pos == modifier.pos) {
      keep_best(best, entry);
    }
  }
  if (best) return as_result(MatchLevel::PosBackoff, std::move(best));

  return {};
}

}  // namespace parsemend
