#pragma once

// Substitution, adjunction and tree-local attachment of multi-component sets.
// Derived trees and derivation records are values; every operation returns a
// new value and leaves its inputs untouched.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mctag/grammar.hpp"

namespace mctag {

/// One component of one set occurrence. Occurrence ids number set
/// occurrences, so all components of a set share the id.
struct Occurrence {
  int id = 0;
  std::string set;
  std::string component;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct Provenance {
  Occurrence occurrence;
  GornAddress address;  // within the occurrence's elementary tree

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct DerivedNode {
  std::string label;
  NodeKind kind = NodeKind::internal;
  AdjunctionConstraint constraint = AdjunctionConstraint::allowed;
  std::vector<DerivedNode> children;
  Provenance origin;
  bool adjoined = false;  // an auxiliary tree has been spliced in here

  friend bool operator==(const DerivedNode&, const DerivedNode&) = default;
};

class DerivedTree {
 public:
  DerivedTree() = default;
  DerivedTree(const ElementaryTree& tree, Occurrence occurrence);

  const DerivedNode& root() const { return root_; }

  /// Unfilled substitution slots and unsatisfied obligatory-adjunction nodes.
  std::vector<GornAddress> pending() const;
  bool has_foot() const;

  /// Derived address of the node contributed by `occurrence_id` at elementary
  /// address `address` of `component`, if that node is still in the tree.
  std::optional<GornAddress> locate(int occurrence_id, std::string_view component,
                                    const GornAddress& address) const;

  friend bool operator==(const DerivedTree&, const DerivedTree&) = default;

 private:
  friend DerivedTree substitute(const DerivedTree&, const GornAddress&, const ElementaryTree&,
                                const Occurrence&);
  friend DerivedTree adjoin(const DerivedTree&, const GornAddress&, const ElementaryTree&,
                            const Occurrence&);
  DerivedNode root_;
};

inline Sentence yield_of(const DerivedTree& t) { return yield_of(t.root()); }
inline const DerivedNode& node_at(const DerivedTree& t, const GornAddress& a) {
  return node_at(t.root(), a);
}
inline std::vector<AddressedKind> addresses_of(const DerivedTree& t) {
  return addresses_of(t.root());
}

bool is_complete(const DerivedTree& t);

class CompositionError : public std::runtime_error {
 public:
  enum class Kind {
    target_not_slot,
    target_not_adjoinable,
    label_mismatch,
    slot_filled,
    wrong_tree_class,
    na_violation,
    double_adjunction,
    locality_violation,
    malformed_edge,
    dangling_set,
    dangling_occurrence,
    address_out_of_range,
    incomplete,
  };

  CompositionError(Kind kind, const std::string& message);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(CompositionError::Kind kind);

/// Replaces the substitution slot at derived address `at` with `tree`.
DerivedTree substitute(const DerivedTree& host, const GornAddress& at, const ElementaryTree& tree,
                       const Occurrence& occurrence);

/// Splices auxiliary tree `aux` in at derived address `at`; the excised
/// subtree moves under the foot.
DerivedTree adjoin(const DerivedTree& host, const GornAddress& at, const ElementaryTree& aux,
                   const Occurrence& occurrence);

enum class Operation { substitution, adjunction };
std::string_view to_string(Operation op);

struct ComponentAttachment {
  std::string component;         // child component
  int parent = 0;                // parent set occurrence
  std::string parent_component;  // elementary tree of the parent receiving it
  GornAddress address;           // elementary address in that tree
  Operation op = Operation::substitution;

  friend bool operator==(const ComponentAttachment&, const ComponentAttachment&) = default;
};

/// One derivation step: a whole set occurrence attached into its parent.
struct AttachmentEdge {
  std::string set;
  int child = 0;
  std::vector<ComponentAttachment> targets;

  /// Parent occurrence; meaningful once locality has been checked.
  int parent() const { return targets.empty() ? 0 : targets.front().parent; }

  friend bool operator==(const AttachmentEdge&, const AttachmentEdge&) = default;
};

struct DerivationTree {
  std::string root_set;
  int root_id = 1;
  std::vector<AttachmentEdge> edges;

  /// Number of set occurrences.
  std::size_t size() const { return edges.size() + 1; }
  std::optional<std::string> set_of(int occurrence_id) const;
  const AttachmentEdge* edge_of(int child_id) const;

  /// Occurrences renumbered in derivation-tree preorder, edges sorted by
  /// (parent, address). Structurally equal derivations have equal forms.
  DerivationTree canonical() const;

  friend bool operator==(const DerivationTree&, const DerivationTree&) = default;
};

struct DerivationState {
  DerivedTree tree;
  DerivationTree record;
};

/// Fresh derivation rooted in singleton initial set `root_set`, whose root
/// label must equal the start symbol.
DerivationState start_derivation(const Grammar& g, std::string_view root_set, int root_id = 1);

/// Attaches every component of `edge.set` into one elementary tree of one
/// parent occurrence, in increasing address order. Atomic.
DerivationState attach_set(const Grammar& g, const DerivationState& state,
                           const AttachmentEdge& edge);

/// Rebuilds the derived tree of a complete record. Edge order is irrelevant.
DerivedTree replay(const Grammar& g, const DerivationTree& d);

/// Graphviz rendering: one node per set occurrence, one edge per component.
std::string to_dot(const DerivationTree& d, std::string_view graph_name = "derivation");

}  // namespace mctag
