#pragma once

// Elementary trees, multi-component sets and grammars, plus the textual
// `.mcg` format. Everything here is an immutable value once built.

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mctag {

/// True if `text` is usable as a token, label or identifier: nonempty, no
/// whitespace, none of the reserved characters `( ) ! * @ ' #`.
bool is_valid_symbol(std::string_view text);

/// A terminal symbol.
struct Token {
  std::string text;

  Token() = default;
  explicit Token(std::string t);

  friend auto operator<=>(const Token&, const Token&) = default;
  friend bool operator==(const Token&, const Token&) = default;
};

using Sentence = std::vector<Token>;

/// Splits on whitespace. Throws std::invalid_argument on a malformed token.
Sentence tokenize(std::string_view text);
std::string join(const Sentence& s, std::string_view sep = " ");

/// A nonterminal category name.
struct NodeLabel {
  std::string name;

  NodeLabel() = default;
  explicit NodeLabel(std::string n);

  friend auto operator<=>(const NodeLabel&, const NodeLabel&) = default;
  friend bool operator==(const NodeLabel&, const NodeLabel&) = default;
};

/// Path of 1-based child indices from the root. The root is the empty path
/// and prints as `e`. Ordering is preorder (a prefix sorts first).
class GornAddress {
 public:
  GornAddress() = default;
  explicit GornAddress(std::vector<int> path);

  static GornAddress parse(std::string_view text);

  const std::vector<int>& path() const { return path_; }
  bool is_root() const { return path_.empty(); }
  std::size_t depth() const { return path_.size(); }

  GornAddress child(int index) const;
  std::string to_string() const;

  friend auto operator<=>(const GornAddress&, const GornAddress&) = default;
  friend bool operator==(const GornAddress&, const GornAddress&) = default;

 private:
  std::vector<int> path_;
};

enum class NodeKind { internal, substitution, foot, terminal, epsilon };
enum class AdjunctionConstraint { allowed, null, obligatory };
enum class TreeClass { initial, auxiliary };

std::string_view to_string(NodeKind kind);
std::string_view to_string(TreeClass cls);

struct TreeNode {
  std::string label;  // category, or token text for terminal leaves
  NodeKind kind = NodeKind::internal;
  AdjunctionConstraint constraint = AdjunctionConstraint::allowed;
  std::vector<TreeNode> children;

  static TreeNode internal(std::string label, std::vector<TreeNode> children,
                           AdjunctionConstraint c = AdjunctionConstraint::allowed);
  static TreeNode slot(std::string label);
  static TreeNode foot(std::string label);
  static TreeNode terminal(std::string token);
  static TreeNode epsilon();

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct ElementaryTree {
  std::string name;
  TreeClass tree_class = TreeClass::initial;
  TreeNode root;

  friend bool operator==(const ElementaryTree&, const ElementaryTree&) = default;
};

struct ElementarySet {
  std::string name;
  std::vector<ElementaryTree> components;
  std::optional<Token> anchor;

  bool is_singleton() const { return components.size() == 1; }
  const ElementaryTree* component(std::string_view component_name) const;
  /// Terminal tokens over all components, in component then preorder order.
  Sentence terminals() const;

  friend bool operator==(const ElementarySet&, const ElementarySet&) = default;
};

struct Grammar {
  std::string name;
  NodeLabel start;
  std::vector<ElementarySet> sets;

  const ElementarySet* find_set(std::string_view set_name) const;

  /// No auxiliary component anywhere.
  bool substitution_only() const;
  /// Every set has at least one terminal leaf.
  bool lexicalized() const;

  friend bool operator==(const Grammar&, const Grammar&) = default;
};

/// Syntax or well-formedness failure while reading a grammar file.
class GrammarError : public std::runtime_error {
 public:
  GrammarError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct Violation {
  std::string set;
  std::string component;  // empty for grammar-level problems
  GornAddress address;
  std::string message;

  std::string to_string() const;
};

/// Every well-formedness problem of `g`; empty iff `g` is valid.
std::vector<Violation> validate_grammar(const Grammar& g);

/// Reads a grammar and rejects it unless validate_grammar finds no problem.
Grammar parse_grammar(std::string_view text);
/// Syntax-only read; well-formedness is left to validate_grammar.
Grammar parse_grammar_unvalidated(std::string_view text);
std::string serialize_grammar(const Grammar& g);

/// S-expression form of a single tree, as used inside grammar files.
TreeNode parse_tree(std::string_view text);
std::string serialize_tree(const TreeNode& root);

Grammar load_grammar_file(const std::string& path);
std::string read_text_file(const std::string& path);

class AddressError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Node at `address` below `root`. Works for any node type exposing
/// `children` (elementary and derived trees alike).
template <class Node>
const Node& node_at(const Node& root, const GornAddress& address) {
  const Node* node = &root;
  for (int index : address.path()) {
    if (index < 1 || static_cast<std::size_t>(index) > node->children.size())
      throw AddressError("address " + address.to_string() + " out of range");
    node = &node->children[static_cast<std::size_t>(index - 1)];
  }
  return *node;
}

inline const TreeNode& node_at(const ElementaryTree& t, const GornAddress& a) {
  return node_at(t.root, a);
}

struct AddressedKind {
  GornAddress address;
  NodeKind kind;

  friend bool operator==(const AddressedKind&, const AddressedKind&) = default;
};

template <class Node>
void collect_addresses(const Node& node, const GornAddress& at,
                       std::vector<AddressedKind>& out) {
  out.push_back({at, node.kind});
  for (std::size_t i = 0; i < node.children.size(); ++i)
    collect_addresses(node.children[i], at.child(static_cast<int>(i + 1)), out);
}

/// Preorder list of every node's address and kind.
template <class Node>
std::vector<AddressedKind> addresses_of(const Node& root) {
  std::vector<AddressedKind> out;
  collect_addresses(root, GornAddress{}, out);
  return out;
}

inline std::vector<AddressedKind> addresses_of(const ElementaryTree& t) {
  return addresses_of(t.root);
}

template <class Node>
void collect_yield(const Node& node, Sentence& out) {
  if (node.kind == NodeKind::terminal) {
    out.emplace_back(node.label);
    return;
  }
  for (const auto& c : node.children) collect_yield(c, out);
}

/// Left-to-right terminal frontier. Slots, feet and epsilon leaves add nothing.
template <class Node>
Sentence yield_of(const Node& root) {
  Sentence out;
  collect_yield(root, out);
  return out;
}

inline Sentence yield_of(const ElementaryTree& t) { return yield_of(t.root); }

}  // namespace mctag
