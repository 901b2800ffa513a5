#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace parsemend {

// ---------------------------------------------------------------------------
// Part-of-speech tags
// ---------------------------------------------------------------------------

enum class Pos : std::uint8_t { N, PN, V, AJ, AV, CJ, PP, DET, PUNC, OTHER };

std::string_view to_string(Pos pos);

/// Exact tag name ("N", "PN", ...); anything else -> nullopt.
std::optional<Pos> pos_from_string(std::string_view tag);

/// Eligible as a collocation endpoint (everything except PUNC and OTHER).
bool is_collocation_pos(Pos pos);

/// Open-class categories (N, PN, V, AJ, AV) used by the repetition report.
bool is_content_pos(Pos pos);

// ---------------------------------------------------------------------------
// Relation labels
// ---------------------------------------------------------------------------

enum class GramRel : std::uint8_t { Subj, Obj, Recipient, Direct };

/// Edge label: a grammatical role (SUBJ, OBJ, RECIPIENT, DIRECT) or a
/// preposition lemma ("of", "from", ...). Prep lemmas are non-empty and
/// lowercase. Ordered by rendered form, which is total and deterministic.
class RelationLabel {
 public:
  RelationLabel() = default;  // DIRECT

  static RelationLabel grammatical(GramRel rel);
  static RelationLabel prep(std::string lemma);  // throws ValidationError
  static RelationLabel direct() { return RelationLabel(); }

  /// "SUBJ"/"OBJ"/"RECIPIENT"/"DIRECT" or a lowercase prep lemma; junk -> nullopt.
  static std::optional<RelationLabel> parse(std::string_view text);

  bool is_prep() const { return is_prep_; }
  GramRel gram() const { return gram_; }
  const std::string& prep_lemma() const { return prep_; }
  std::string str() const;

  friend bool operator==(const RelationLabel&, const RelationLabel&) = default;
  std::strong_ordering operator<=>(const RelationLabel& other) const;

 private:
  bool is_prep_ = false;
  GramRel gram_ = GramRel::Direct;
  std::string prep_;
};

// ---------------------------------------------------------------------------
// Tokens, edges, trees
// ---------------------------------------------------------------------------

struct Token {
  int index = 0;  // 1-based position within the sentence
  std::string surface;
  std::string lemma;  // lowercase
  Pos pos = Pos::OTHER;
  std::string pos_raw;  // original tag, kept verbatim when pos == OTHER

  friend bool operator==(const Token&, const Token&) = default;
};

struct DependencyEdge {
  int dependent = 0;
  int head = 0;  // 0 marks the root edge
  RelationLabel relation;
  bool ambiguous = false;

  friend bool operator==(const DependencyEdge&, const DependencyEdge&) = default;
};

/// A per-sentence (or per-fragment) parse: tokens over a contiguous index
/// range plus one edge per token. Instances are immutable values; all
/// invariants are checked by validate_tree, never by constructors.
struct DependencyTree {
  std::vector<Token> tokens;  // ascending contiguous indices
  std::vector<DependencyEdge> edges;

  bool empty() const { return tokens.empty(); }
  int size() const { return static_cast<int>(tokens.size()); }
  int first_index() const { return tokens.empty() ? 0 : tokens.front().index; }
  int last_index() const { return tokens.empty() ? 0 : tokens.back().index; }

  /// Token with the given sentence index, or nullptr. Total on invalid trees.
  const Token* token_at(int index) const;
  /// Edge whose dependent is `index`, or nullptr.
  const DependencyEdge* edge_of(int index) const;

  friend bool operator==(const DependencyTree&, const DependencyTree&) = default;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// One broken invariant; `rule` is a stable identifier, `indices` the
/// offending token positions.
struct Violation {
  std::string rule;
  std::vector<int> indices;
  std::string detail;
};

std::string to_string(const Violation& violation);

/// Pure and total: reports every broken DependencyTree invariant and never
/// throws, whatever the edge list looks like.
std::vector<Violation> validate_tree(const DependencyTree& tree);

bool is_valid(const DependencyTree& tree);

/// True iff no two edges cross and every subtree's yield is a contiguous
/// interval. Throws ValidationError when the tree itself is invalid.
bool is_projective(const DependencyTree& tree);

// Navigation helpers; all require a valid tree.
int tree_root(const DependencyTree& tree);
std::optional<int> head_of(const DependencyTree& tree, int dependent);
/// Head chain from the root down to `target`, inclusive.
std::vector<int> spine_to(const DependencyTree& tree, int target);
std::vector<int> left_spine(const DependencyTree& tree);   // root .. first token
std::vector<int> right_spine(const DependencyTree& tree);  // root .. last token
bool in_subtree(const DependencyTree& tree, int candidate, int subtree_root);

// ---------------------------------------------------------------------------
// Fragments, forests, documents
// ---------------------------------------------------------------------------

/// One fragment of an incomplete parse: a tree over exactly the tokens of a
/// contiguous span of the parent sentence.
struct ParseFragment {
  int span_begin = 0;
  int span_end = 0;  // inclusive
  DependencyTree tree;

  friend bool operator==(const ParseFragment&, const ParseFragment&) = default;
};

std::vector<Violation> validate_fragment(const ParseFragment& fragment);

/// Ordered fragments over disjoint contiguous spans jointly covering 1..n.
struct PartialParse {
  std::vector<ParseFragment> fragments;

  friend bool operator==(const PartialParse&, const PartialParse&) = default;
};

std::vector<Violation> validate_partial(const PartialParse& partial);

/// Two or more candidate parses over the identical token sequence (surfaces
/// and lemmas equal; POS tags may differ per candidate), in parser emission
/// order.
struct ParseForest {
  std::vector<DependencyTree> candidates;

  friend bool operator==(const ParseForest&, const ParseForest&) = default;
};

std::vector<Violation> validate_forest(const ParseForest& forest);

struct SentenceRecord {
  int id = 0;
  std::variant<DependencyTree, ParseForest, PartialParse> parse;

  bool is_complete() const { return std::holds_alternative<DependencyTree>(parse); }
  bool is_multiple() const { return std::holds_alternative<ParseForest>(parse); }
  bool is_incomplete() const { return std::holds_alternative<PartialParse>(parse); }

  const DependencyTree& tree() const { return std::get<DependencyTree>(parse); }
  const ParseForest& forest() const { return std::get<ParseForest>(parse); }
  const PartialParse& partial() const { return std::get<PartialParse>(parse); }

  friend bool operator==(const SentenceRecord&, const SentenceRecord&) = default;
};

struct Document {
  std::vector<SentenceRecord> records;
  std::map<std::string, std::string> metadata;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Aggregates violations of every record (rule names prefixed with the
/// sentence id in `detail`).
std::vector<Violation> validate_document(const Document& document);

}  // namespace parsemend
