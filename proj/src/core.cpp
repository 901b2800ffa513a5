#include "parsemend/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "parsemend/errors.hpp"

namespace parsemend {

// ---------------------------------------------------------------------------
// Pos
// ---------------------------------------------------------------------------

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::N: return "N";
    case Pos::PN: return "PN";
    case Pos::V: return "V";
    case Pos::AJ: return "AJ";
    case Pos::AV: return "AV";
    case Pos::CJ: return "CJ";
    case Pos::PP: return "PP";
    case Pos::DET: return "DET";
    case Pos::PUNC: return "PUNC";
    case Pos::OTHER: return "OTHER";
  }
  return "OTHER";
}

std::optional<Pos> pos_from_string(std::string_view tag) {
  static const std::map<std::string_view, Pos> table = {
      {"N", Pos::N},   {"PN", Pos::PN},   {"V", Pos::V},       {"AJ", Pos::AJ},
      {"AV", Pos::AV}, {"CJ", Pos::CJ},   {"PP", Pos::PP},     {"DET", Pos::DET},
      {"PUNC", Pos::PUNC}, {"OTHER", Pos::OTHER},
  };
  auto it = table.find(tag);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool is_collocation_pos(Pos pos) { return pos != Pos::PUNC && pos != Pos::OTHER; }

bool is_content_pos(Pos pos) {
  switch (pos) {
    case Pos::N:
    case Pos::PN:
    case Pos::V:
    case Pos::AJ:
    case Pos::AV:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// RelationLabel
// ---------------------------------------------------------------------------

namespace {

std::string_view gram_name(GramRel rel) {
  switch (rel) {
    case GramRel::Subj: return "SUBJ";
    case GramRel::Obj: return "OBJ";
    case GramRel::Recipient: return "RECIPIENT";
    case GramRel::Direct: return "DIRECT";
  }
  return "DIRECT";
}

bool all_lower(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char c) {
    return !std::isupper(c);
  });
}

}  // namespace

RelationLabel RelationLabel::grammatical(GramRel rel) {
  RelationLabel label;
  label.gram_ = rel;
  return label;
}

RelationLabel RelationLabel::prep(std::string lemma) {
  if (lemma.empty() || !all_lower(lemma)) {
    throw ValidationError("prep relation lemma must be non-empty lowercase: '" + lemma + "'");
  }
  RelationLabel label;
  label.is_prep_ = true;
  label.prep_ = std::move(lemma);
  return label;
}

std::optional<RelationLabel> RelationLabel::parse(std::string_view text) {
  if (text == "SUBJ") return grammatical(GramRel::Subj);
  if (text == "OBJ") return grammatical(GramRel::Obj);
  if (text == "RECIPIENT") return grammatical(GramRel::Recipient);
  if (text == "DIRECT") return grammatical(GramRel::Direct);
  if (!text.empty() && all_lower(text)) return prep(std::string(text));
  return std::nullopt;
}

std::string RelationLabel::str() const {
  if (is_prep_) return prep_;
  return std::string(gram_name(gram_));
}

std::strong_ordering RelationLabel::operator<=>(const RelationLabel& other) const {
  // Rendered forms are unique (grammatical names are uppercase, preps
  // lowercase), so the string order is a total order.
  return str() <=> other.str();
}

// ---------------------------------------------------------------------------
// DependencyTree accessors (total even for invalid trees)
// ---------------------------------------------------------------------------

const Token* DependencyTree::token_at(int index) const {
  if (tokens.empty()) return nullptr;
  const int offset = index - tokens.front().index;
  if (offset >= 0 && offset < static_cast<int>(tokens.size()) &&
      tokens[static_cast<std::size_t>(offset)].index == index) {
    return &tokens[static_cast<std::size_t>(offset)];
  }
  for (const auto& token : tokens) {
    if (token.index == index) return &token;
  }
  return nullptr;
}

const DependencyEdge* DependencyTree::edge_of(int index) const {
  for (const auto& edge : edges) {
    if (edge.dependent == index) return &edge;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// validate_tree
// ---------------------------------------------------------------------------

std::string to_string(const Violation& violation) {
  std::ostringstream out;
  out << violation.rule;
  if (!violation.indices.empty()) {
    out << " [";
    for (std::size_t i = 0; i < violation.indices.size(); ++i) {
      if (i) out << ",";
      out << violation.indices[i];
    }
    out << "]";
  }
  if (!violation.detail.empty()) out << ": " << violation.detail;
  return out.str();
}

std::vector<Violation> validate_tree(const DependencyTree& tree) {
  std::vector<Violation> out;
  if (tree.tokens.empty()) {
    out.push_back({"no-tokens", {}, "tree has no tokens"});
    return out;
  }

  std::set<int> indices;
  int prev = tree.tokens.front().index - 1;
  for (const auto& token : tree.tokens) {
    if (token.index < 1) out.push_back({"bad-index", {token.index}, "token index must be >= 1"});
    if (token.index != prev + 1) {
      out.push_back({"index-gap", {prev, token.index}, "token indices must be contiguous ascending"});
    }
    prev = token.index;
    if (token.lemma.empty()) out.push_back({"empty-lemma", {token.index}, "token lemma is empty"});
    indices.insert(token.index);
  }

  std::map<int, int> dependent_count;
  int root_count = 0;
  std::vector<int> roots;
  std::map<int, int> head_by_dependent;
  for (const auto& edge : tree.edges) {
    if (edge.dependent == edge.head) {
      out.push_back({"self-loop", {edge.dependent}, "edge head equals dependent"});
      continue;
    }
    if (!indices.count(edge.dependent)) {
      out.push_back({"unknown-dependent", {edge.dependent}, "edge dependent is not a token"});
      continue;
    }
    if (edge.head != 0 && !indices.count(edge.head)) {
      out.push_back({"unknown-head", {edge.dependent, edge.head}, "edge head is not a token"});
      continue;
    }
    if (++dependent_count[edge.dependent] == 2) {
      out.push_back({"duplicate-dependent", {edge.dependent}, "token is dependent of several edges"});
    }
    if (dependent_count[edge.dependent] == 1) head_by_dependent[edge.dependent] = edge.head;
    if (edge.head == 0) {
      ++root_count;
      roots.push_back(edge.dependent);
    }
  }
  for (int index : indices) {
    if (!dependent_count.count(index)) {
      out.push_back({"missing-dependent", {index}, "token is dependent of no edge"});
    }
  }
  if (root_count == 0) out.push_back({"missing-root", {}, "no edge has head 0"});
  if (root_count > 1) out.push_back({"multiple-roots", roots, "several edges have head 0"});

  // Cycle check over the (first) head assignment of each dependent.
  std::map<int, int> color;  // 0/absent = white, 1 = in progress, 2 = done
  for (int start : indices) {
    if (color[start] != 0) continue;
    std::vector<int> chain;
    int node = start;
    while (node != 0 && head_by_dependent.count(node) && color[node] == 0) {
      color[node] = 1;
      chain.push_back(node);
      node = head_by_dependent[node];
    }
    if (node != 0 && color.count(node) && color[node] == 1) {
      // `node` is on the current chain: everything from it onward is a cycle.
      auto cycle_start = std::find(chain.begin(), chain.end(), node);
      std::vector<int> cycle(cycle_start, chain.end());
      std::sort(cycle.begin(), cycle.end());
      out.push_back({"cycle", cycle, "head chain loops"});
    }
    for (int visited : chain) color[visited] = 2;
  }

  return out;
}

bool is_valid(const DependencyTree& tree) { return validate_tree(tree).empty(); }

// ---------------------------------------------------------------------------
// Projectivity
// ---------------------------------------------------------------------------

namespace {

struct TreeShape {
  int first = 0;
  std::vector<int> heads;                  // by offset; 0 = root
  std::vector<std::vector<int>> children;  // by offset, token indices
  int root = 0;

  int offset(int index) const { return index - first; }
};

TreeShape shape_of(const DependencyTree& tree) {
  TreeShape shape;
  shape.first = tree.first_index();
  const std::size_t n = tree.tokens.size();
  shape.heads.assign(n, 0);
  shape.children.assign(n, {});
  for (const auto& edge : tree.edges) {
    const int off = edge.dependent - shape.first;
    shape.heads[static_cast<std::size_t>(off)] = edge.head;
    if (edge.head == 0) {
      shape.root = edge.dependent;
    } else {
      shape.children[static_cast<std::size_t>(edge.head - shape.first)].push_back(edge.dependent);
    }
  }
  return shape;
}

void require_valid(const DependencyTree& tree, const char* who) {
  auto violations = validate_tree(tree);
  if (!violations.empty()) {
    throw ValidationError(std::string(who) + ": invalid tree: " + to_string(violations.front()));
  }
}

}  // namespace

bool is_projective(const DependencyTree& tree) {
  require_valid(tree, "is_projective");
  const auto shape = shape_of(tree);
  const int n = tree.size();

  // Contiguous-yield condition, bottom-up over the token count of subtrees.
  std::vector<int> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n)),
      cnt(static_cast<std::size_t>(n));
  // Iterative post-order from the root.
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<int> stack = {shape.root};
  while (!stack.empty()) {
    int node = stack.back();
    stack.pop_back();
    order.push_back(node);
    for (int child : shape.children[static_cast<std::size_t>(shape.offset(node))]) {
      stack.push_back(child);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int node = *it;
    const auto off = static_cast<std::size_t>(shape.offset(node));
    lo[off] = hi[off] = node;
    cnt[off] = 1;
    for (int child : shape.children[off]) {
      const auto coff = static_cast<std::size_t>(shape.offset(child));
      lo[off] = std::min(lo[off], lo[coff]);
      hi[off] = std::max(hi[off], hi[coff]);
      cnt[off] += cnt[coff];
    }
    if (hi[off] - lo[off] + 1 != cnt[off]) return false;
  }

  // Pairwise edge crossing (root edges excluded); strict overlap only, so
  // edges sharing an endpoint never cross.
  for (std::size_t a = 0; a < tree.edges.size(); ++a) {
    if (tree.edges[a].head == 0) continue;
    const int l1 = std::min(tree.edges[a].dependent, tree.edges[a].head);
    const int r1 = std::max(tree.edges[a].dependent, tree.edges[a].head);
    for (std::size_t b = a + 1; b < tree.edges.size(); ++b) {
      if (tree.edges[b].head == 0) continue;
      const int l2 = std::min(tree.edges[b].dependent, tree.edges[b].head);
      const int r2 = std::max(tree.edges[b].dependent, tree.edges[b].head);
      const bool cross = (l1 < l2 && l2 < r1 && r1 < r2) || (l2 < l1 && l1 < r2 && r2 < r1);
      if (cross) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Navigation
// ---------------------------------------------------------------------------

int tree_root(const DependencyTree& tree) {
  for (const auto& edge : tree.edges) {
    if (edge.head == 0) return edge.dependent;
  }
  throw ValidationError("tree_root: tree has no root edge");
}

std::optional<int> head_of(const DependencyTree& tree, int dependent) {
  const DependencyEdge* edge = tree.edge_of(dependent);
  if (!edge || edge->head == 0) return std::nullopt;
  return edge->head;
}

std::vector<int> spine_to(const DependencyTree& tree, int target) {
  std::vector<int> path = {target};
  int node = target;
  std::size_t guard = tree.tokens.size() + 1;
  while (auto head = head_of(tree, node)) {
    node = *head;
    path.push_back(node);
    if (--guard == 0) throw ValidationError("spine_to: head chain loops");
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> left_spine(const DependencyTree& tree) {
  return spine_to(tree, tree.first_index());
}

std::vector<int> right_spine(const DependencyTree& tree) {
  return spine_to(tree, tree.last_index());
}

bool in_subtree(const DependencyTree& tree, int candidate, int subtree_root) {
  int node = candidate;
  std::size_t guard = tree.tokens.size() + 1;
  while (true) {
    if (node == subtree_root) return true;
    auto head = head_of(tree, node);
    if (!head) return false;
    node = *head;
    if (--guard == 0) return false;
  }
}

// ---------------------------------------------------------------------------
// Fragments / partial parses / forests / documents
// ---------------------------------------------------------------------------

std::vector<Violation> validate_fragment(const ParseFragment& fragment) {
  std::vector<Violation> out = validate_tree(fragment.tree);
  if (fragment.span_begin < 1 || fragment.span_end < fragment.span_begin) {
    out.push_back({"bad-span", {fragment.span_begin, fragment.span_end}, "span bounds out of order"});
    return out;
  }
  if (fragment.tree.first_index() != fragment.span_begin ||
      fragment.tree.last_index() != fragment.span_end) {
    out.push_back({"span-mismatch",
                   {fragment.span_begin, fragment.span_end},
                   "fragment tree does not cover exactly its span"});
  }
  return out;
}

std::vector<Violation> validate_partial(const PartialParse& partial) {
  std::vector<Violation> out;
  if (partial.fragments.size() < 2) {
    out.push_back({"too-few-fragments", {}, "a partial parse has at least 2 fragments"});
  }
  int expected = 1;
  for (const auto& fragment : partial.fragments) {
    auto frag_violations = validate_fragment(fragment);
    out.insert(out.end(), frag_violations.begin(), frag_violations.end());
    if (fragment.span_begin != expected) {
      out.push_back({"span-gap",
                     {expected, fragment.span_begin},
                     "fragment spans must cover the sentence with no gaps"});
    }
    expected = fragment.span_end + 1;
  }
  return out;
}

std::vector<Violation> validate_forest(const ParseForest& forest) {
  std::vector<Violation> out;
  if (forest.candidates.size() < 2) {
    out.push_back({"too-few-candidates", {}, "a parse forest has at least 2 candidates"});
    return out;
  }
  for (const auto& candidate : forest.candidates) {
    auto tree_violations = validate_tree(candidate);
    out.insert(out.end(), tree_violations.begin(), tree_violations.end());
  }
  const auto& base = forest.candidates.front().tokens;
  for (std::size_t c = 1; c < forest.candidates.size(); ++c) {
    const auto& tokens = forest.candidates[c].tokens;
    bool same = tokens.size() == base.size();
    if (same) {
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].index != base[i].index || tokens[i].surface != base[i].surface ||
            tokens[i].lemma != base[i].lemma) {
          same = false;
          break;
        }
      }
    }
    if (!same) {
      out.push_back({"candidate-token-mismatch",
                     {static_cast<int>(c)},
                     "candidates must share the token sequence"});
    }
  }
  return out;
}

std::vector<Violation> validate_document(const Document& document) {
  std::vector<Violation> out;
  if (document.records.empty()) {
    out.push_back({"empty-document", {}, "document has no records"});
    return out;
  }
  int prev_id = 0;
  for (const auto& record : document.records) {
    const std::string where = "sentence " + std::to_string(record.id);
    if (record.id <= prev_id) {
      out.push_back({"id-order", {record.id}, where + ": ids must be strictly increasing"});
    }
    prev_id = record.id;
    std::vector<Violation> inner;
    if (record.is_complete()) {
      inner = validate_tree(record.tree());
    } else if (record.is_multiple()) {
      inner = validate_forest(record.forest());
    } else {
      inner = validate_partial(record.partial());
    }
    for (auto& violation : inner) {
      violation.detail = where + ": " + violation.detail;
      out.push_back(std::move(violation));
    }
  }
  return out;
}

}  // namespace parsemend
