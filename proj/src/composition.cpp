#include "mctag/composition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace mctag {

namespace {

DerivedNode instantiate(const TreeNode& node, const Occurrence& occ, const GornAddress& at) {
  DerivedNode out{node.label, node.kind, node.constraint, {}, {occ, at}, false};
  out.children.reserve(node.children.size());
  for (std::size_t i = 0; i < node.children.size(); ++i)
    out.children.push_back(instantiate(node.children[i], occ, at.child(static_cast<int>(i + 1))));
  return out;
}

DerivedNode& mutable_node_at(DerivedNode& root, const GornAddress& at) {
  DerivedNode* node = &root;
  for (int index : at.path()) {
    if (index < 1 || static_cast<std::size_t>(index) > node->children.size())
      throw CompositionError(CompositionError::Kind::address_out_of_range,
                             "address " + at.to_string() + " out of range");
    node = &node->children[static_cast<std::size_t>(index - 1)];
  }
  return *node;
}

DerivedNode* find_foot(DerivedNode& node) {
  if (node.kind == NodeKind::foot) return &node;
  for (auto& c : node.children)
    if (auto* f = find_foot(c)) return f;
  return nullptr;
}

void collect_pending(const DerivedNode& node, const GornAddress& at, std::vector<GornAddress>& out) {
  if (node.kind == NodeKind::substitution ||
      (node.kind == NodeKind::internal && node.constraint == AdjunctionConstraint::obligatory &&
       !node.adjoined))
    out.push_back(at);
  for (std::size_t i = 0; i < node.children.size(); ++i)
    collect_pending(node.children[i], at.child(static_cast<int>(i + 1)), out);
}

bool contains_foot(const DerivedNode& node) {
  if (node.kind == NodeKind::foot) return true;
  return std::any_of(node.children.begin(), node.children.end(), contains_foot);
}

bool find_origin(const DerivedNode& node, int id, std::string_view component,
                 const GornAddress& address, std::vector<int>& path) {
  const auto& o = node.origin;
  if (o.occurrence.id == id && o.occurrence.component == component && o.address == address)
    return true;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(static_cast<int>(i + 1));
    if (find_origin(node.children[i], id, component, address, path)) return true;
    path.pop_back();
  }
  return false;
}

[[noreturn]] void fail(CompositionError::Kind kind, const std::string& msg) {
  throw CompositionError(kind, msg);
}

}  // namespace

DerivedTree::DerivedTree(const ElementaryTree& tree, Occurrence occurrence)
    : root_(instantiate(tree.root, occurrence, {})) {}

std::vector<GornAddress> DerivedTree::pending() const {
  std::vector<GornAddress> out;
  collect_pending(root_, {}, out);
  return out;
}

bool DerivedTree::has_foot() const { return contains_foot(root_); }

std::optional<GornAddress> DerivedTree::locate(int occurrence_id, std::string_view component,
                                               const GornAddress& address) const {
  std::vector<int> path;
  if (find_origin(root_, occurrence_id, component, address, path)) return GornAddress(path);
  return std::nullopt;
}

bool is_complete(const DerivedTree& t) { return t.pending().empty() && !t.has_foot(); }

CompositionError::CompositionError(Kind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

std::string_view to_string(CompositionError::Kind kind) {
  using K = CompositionError::Kind;
  switch (kind) {
    case K::target_not_slot: return "target-not-a-slot";
    case K::target_not_adjoinable: return "target-not-adjoinable";
    case K::label_mismatch: return "label-mismatch";
    case K::slot_filled: return "slot-already-filled";
    case K::wrong_tree_class: return "wrong-tree-class";
    case K::na_violation: return "NA-violation";
    case K::double_adjunction: return "double-adjunction";
    case K::locality_violation: return "locality-violation";
    case K::malformed_edge: return "malformed-edge";
    case K::dangling_set: return "dangling-set";
    case K::dangling_occurrence: return "dangling-occurrence";
    case K::address_out_of_range: return "address-out-of-range";
    case K::incomplete: return "incomplete-derivation";
  }
  return "?";
}

std::string_view to_string(Operation op) {
  return op == Operation::substitution ? "sub" : "adj";
}

DerivedTree substitute(const DerivedTree& host, const GornAddress& at, const ElementaryTree& tree,
                       const Occurrence& occurrence) {
  using K = CompositionError::Kind;
  if (tree.tree_class != TreeClass::initial)
    fail(K::wrong_tree_class, "auxiliary tree " + tree.name + " cannot be substituted");
  DerivedTree out = host;
  DerivedNode& target = mutable_node_at(out.root_, at);
  if (target.kind != NodeKind::substitution)
    fail(K::target_not_slot, "node at " + at.to_string() + " is " +
                                 std::string(to_string(target.kind)));
  if (target.label != tree.root.label)
    fail(K::label_mismatch, "slot " + target.label + " vs root " + tree.root.label);
  target = instantiate(tree.root, occurrence, {});
  return out;
}

DerivedTree adjoin(const DerivedTree& host, const GornAddress& at, const ElementaryTree& aux,
                   const Occurrence& occurrence) {
  using K = CompositionError::Kind;
  if (aux.tree_class != TreeClass::auxiliary)
    fail(K::wrong_tree_class, "initial tree " + aux.name + " cannot be adjoined");
  DerivedTree out = host;
  DerivedNode& target = mutable_node_at(out.root_, at);
  if (target.kind != NodeKind::internal)
    fail(K::target_not_adjoinable, "node at " + at.to_string() + " is " +
                                       std::string(to_string(target.kind)));
  if (target.constraint == AdjunctionConstraint::null)
    fail(K::na_violation, "node at " + at.to_string() + " forbids adjunction");
  if (target.adjoined)
    fail(K::double_adjunction, "node at " + at.to_string() + " already has an adjunction");
  if (target.label != aux.root.label)
    fail(K::label_mismatch, "node " + target.label + " vs auxiliary root " + aux.root.label);

  DerivedNode excised = std::move(target);
  excised.adjoined = true;
  target = instantiate(aux.root, occurrence, {});
  *find_foot(target) = std::move(excised);
  return out;
}

// ---------------------------------------------------------- derivation records

std::optional<std::string> DerivationTree::set_of(int occurrence_id) const {
  if (occurrence_id == root_id) return root_set;
  if (const auto* e = edge_of(occurrence_id)) return e->set;
  return std::nullopt;
}

const AttachmentEdge* DerivationTree::edge_of(int child_id) const {
  for (const auto& e : edges)
    if (e.child == child_id) return &e;
  return nullptr;
}

DerivationTree DerivationTree::canonical() const {
  std::map<int, std::vector<const AttachmentEdge*>> children;
  for (const auto& e : edges) children[e.parent()].push_back(&e);
  auto first_target = [](const AttachmentEdge* e) {
    auto it = std::min_element(e->targets.begin(), e->targets.end(),
                               [](const auto& a, const auto& b) { return a.address < b.address; });
    return std::tie(it->parent_component, it->address);
  };
  for (auto& [_, list] : children)
    std::sort(list.begin(), list.end(), [&](const AttachmentEdge* a, const AttachmentEdge* b) {
      return first_target(a) < first_target(b);
    });

  std::map<int, int> renumber;
  int next = 1;
  std::function<void(int)> visit = [&](int id) {
    renumber[id] = next++;
    if (auto it = children.find(id); it != children.end())
      for (const auto* e : it->second) visit(e->child);
  };
  visit(root_id);

  DerivationTree out{root_set, 1, {}};
  for (const auto& e : edges) {
    AttachmentEdge c = e;
    c.child = renumber.count(e.child) ? renumber[e.child] : e.child;
    for (auto& t : c.targets)
      if (renumber.count(t.parent)) t.parent = renumber[t.parent];
    std::sort(c.targets.begin(), c.targets.end(),
              [](const auto& a, const auto& b) { return a.address < b.address; });
    out.edges.push_back(std::move(c));
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.targets.front().parent, a.targets.front().parent_component,
                    a.targets.front().address, a.child) <
           std::tie(b.targets.front().parent, b.targets.front().parent_component,
                    b.targets.front().address, b.child);
  });
  return out;
}

DerivationState start_derivation(const Grammar& g, std::string_view root_set, int root_id) {
  using K = CompositionError::Kind;
  const auto* s = g.find_set(root_set);
  if (!s) fail(K::dangling_set, "no set named " + std::string(root_set));
  if (!s->is_singleton() || s->components[0].tree_class != TreeClass::initial ||
      s->components[0].root.label != g.start.name)
    fail(K::wrong_tree_class, "derivation root " + s->name +
                                  " must be a singleton initial tree rooted in " + g.start.name);
  const auto& c = s->components[0];
  return {DerivedTree(c, {root_id, s->name, c.name}), {s->name, root_id, {}}};
}

DerivationState attach_set(const Grammar& g, const DerivationState& state,
                           const AttachmentEdge& edge) {
  using K = CompositionError::Kind;
  const auto* set = g.find_set(edge.set);
  if (!set) fail(K::dangling_set, "no set named " + edge.set);
  if (state.record.set_of(edge.child))
    fail(K::malformed_edge, "occurrence id " + std::to_string(edge.child) + " already in use");
  if (edge.targets.size() != set->components.size())
    fail(K::malformed_edge, "set " + set->name + " needs one target per component");
  std::set<std::string> seen;
  for (const auto& t : edge.targets)
    if (!set->component(t.component) || !seen.insert(t.component).second)
      fail(K::malformed_edge, "bad or repeated component '" + t.component + "'");

  const auto& first = edge.targets.front();
  std::set<GornAddress> addresses;
  for (const auto& t : edge.targets) {
    if (t.parent != first.parent || t.parent_component != first.parent_component)
      fail(K::locality_violation, "components of " + set->name +
                                      " target more than one elementary tree");
    if (!addresses.insert(t.address).second)
      fail(K::locality_violation, "two components of " + set->name + " target address " +
                                      t.address.to_string());
  }

  auto parent_set_name = state.record.set_of(first.parent);
  if (!parent_set_name)
    fail(K::dangling_occurrence, "no occurrence #" + std::to_string(first.parent));
  const auto* parent_set = g.find_set(*parent_set_name);
  if (!parent_set) fail(K::dangling_set, "no set named " + *parent_set_name);
  const auto* host_tree = parent_set->component(first.parent_component);
  if (!host_tree)
    fail(K::dangling_occurrence, "set " + parent_set->name + " has no component " +
                                     first.parent_component);

  auto ordered = edge.targets;
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.address < b.address; });

  DerivedTree tree = state.tree;
  for (const auto& t : ordered) {
    const TreeNode* elem = nullptr;
    try {
      elem = &node_at(host_tree->root, t.address);
    } catch (const AddressError& e) {
      fail(K::address_out_of_range, e.what());
    }
    const auto& comp = *set->component(t.component);
    Occurrence occ{edge.child, set->name, comp.name};
    auto where = tree.locate(t.parent, t.parent_component, t.address);
    if (t.op == Operation::substitution) {
      if (elem->kind != NodeKind::substitution)
        fail(K::target_not_slot, "elementary node " + t.address.to_string() + " of " +
                                     host_tree->name + " is not a substitution slot");
      if (!where) fail(K::slot_filled, "slot " + t.address.to_string() + " already filled");
      tree = substitute(tree, *where, comp, occ);
    } else {
      if (elem->kind != NodeKind::internal)
        fail(K::target_not_adjoinable, "elementary node " + t.address.to_string() + " of " +
                                           host_tree->name + " is " +
                                           std::string(to_string(elem->kind)));
      if (!where)
        fail(K::address_out_of_range, "node " + t.address.to_string() + " of " +
                                          host_tree->name + " is not in the derived tree");
      tree = adjoin(tree, *where, comp, occ);
    }
  }
  DerivationState out{std::move(tree), state.record};
  out.record.edges.push_back(edge);
  return out;
}

DerivedTree replay(const Grammar& g, const DerivationTree& d) {
  using K = CompositionError::Kind;
  DerivationState state = start_derivation(g, d.root_set, d.root_id);
  std::vector<bool> done(d.edges.size(), false);
  std::size_t remaining = d.edges.size();
  while (remaining > 0) {
    bool progress = false;
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
      if (done[i] || d.edges[i].targets.empty()) continue;
      if (!state.record.set_of(d.edges[i].parent())) continue;
      state = attach_set(g, state, d.edges[i]);
      done[i] = true;
      --remaining;
      progress = true;
    }
    if (!progress)
      fail(K::dangling_occurrence, "derivation record has edges unreachable from the root");
  }
  if (!is_complete(state.tree)) fail(K::incomplete, "replayed derivation is not complete");
  return std::move(state.tree);
}

std::string to_dot(const DerivationTree& d, std::string_view graph_name) {
  auto node_name = [&](int id) {
    return "\"" + d.set_of(id).value_or("?") + "#" + std::to_string(id) + "\"";
  };
  std::string out = "digraph " + std::string(graph_name) + " {\n";
  out += "  " + node_name(d.root_id) + ";\n";
  for (const auto& e : d.edges) out += "  " + node_name(e.child) + ";\n";
  for (const auto& e : d.edges)
    for (const auto& t : e.targets)
      out += "  " + node_name(t.parent) + " -> " + node_name(e.child) + " [label=\"" +
             t.component + "@" + t.address.to_string() + ":" + std::string(to_string(t.op)) +
             "\"];\n";
  out += "}\n";
  return out;
}

}  // namespace mctag
