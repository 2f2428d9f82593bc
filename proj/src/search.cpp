#include "mctag/search.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace mctag {

namespace {

constexpr int kUndecided = -1;
constexpr int kClosed = -2;  // not a site, or adjunction declined
constexpr int kGap = -1;
constexpr int kInfinite = INT_MAX / 4;

struct CNode {
  int label = -1;  // nonterminal id, or token id for terminal leaves
  NodeKind kind = NodeKind::internal;
  AdjunctionConstraint constraint = AdjunctionConstraint::allowed;
  std::vector<int> children;
  GornAddress address;
};

struct CTree {
  TreeClass tree_class = TreeClass::initial;
  int root_label = -1;
  std::vector<CNode> nodes;  // preorder; nodes[0] is the root
  int offset = 0;            // position of this tree's decisions in a set block

  bool is_adjunction_site(int n) const {
    const auto& node = nodes[static_cast<std::size_t>(n)];
    return node.kind == NodeKind::internal && node.constraint != AdjunctionConstraint::null;
  }
  bool is_site(int n) const {
    return is_adjunction_site(n) || nodes[static_cast<std::size_t>(n)].kind == NodeKind::substitution;
  }
};

struct CSet {
  std::vector<CTree> components;
  int block = 0;  // decisions per occurrence
  std::vector<int> tokens;
  bool root_candidate = false;
};

class CompiledGrammar {
 public:
  explicit CompiledGrammar(const Grammar& g) : grammar_(g) {
    for (const auto& s : g.sets) {
      CSet cs;
      for (const auto& c : s.components) {
        CTree ct;
        ct.tree_class = c.tree_class;
        ct.offset = cs.block;
        flatten(c.root, {}, ct);
        ct.root_label = ct.nodes[0].label;
        cs.block += static_cast<int>(ct.nodes.size());
        for (const auto& n : ct.nodes)
          if (n.kind == NodeKind::terminal) cs.tokens.push_back(n.label);
        cs.components.push_back(std::move(ct));
      }
      cs.root_candidate = s.is_singleton() && s.components[0].tree_class == TreeClass::initial &&
                          s.components[0].root.label == g.start.name;
      sets_.push_back(std::move(cs));
    }
    compute_min_yields();
  }

  const Grammar& grammar() const { return grammar_; }
  const std::vector<CSet>& sets() const { return sets_; }
  int min_slot_yield(int label) const { return min_yield_[static_cast<std::size_t>(label)]; }

  std::optional<int> token_id(const std::string& text) const {
    auto it = tokens_.find(text);
    if (it == tokens_.end()) return std::nullopt;
    return it->second;
  }

 private:
  int intern(std::map<std::string, int>& table, const std::string& s) {
    auto [it, inserted] = table.try_emplace(s, static_cast<int>(table.size()));
    return it->second;
  }

  int flatten(const TreeNode& node, const GornAddress& at, CTree& out) {
    int index = static_cast<int>(out.nodes.size());
    CNode cn;
    cn.kind = node.kind;
    cn.constraint = node.constraint;
    cn.address = at;
    if (node.kind == NodeKind::terminal) cn.label = intern(tokens_, node.label);
    else if (node.kind != NodeKind::epsilon) cn.label = intern(labels_, node.label);
    out.nodes.push_back(std::move(cn));
    std::vector<int> kids;
    for (std::size_t i = 0; i < node.children.size(); ++i)
      kids.push_back(flatten(node.children[i], at.child(static_cast<int>(i + 1)), out));
    out.nodes[static_cast<std::size_t>(index)].children = std::move(kids);
    return index;
  }

  // Least number of terminals any initial set rooted in a label can add.
  void compute_min_yields() {
    min_yield_.assign(labels_.size(), kInfinite);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& s : sets_) {
        long long total = static_cast<long long>(s.tokens.size());
        for (const auto& c : s.components)
          for (const auto& n : c.nodes)
            if (n.kind == NodeKind::substitution) total += min_yield_[static_cast<std::size_t>(n.label)];
        int bounded = static_cast<int>(std::min<long long>(total, kInfinite));
        for (const auto& c : s.components) {
          if (c.tree_class != TreeClass::initial) continue;
          auto& slot = min_yield_[static_cast<std::size_t>(c.root_label)];
          if (bounded < slot) {
            slot = bounded;
            changed = true;
          }
        }
      }
    }
  }

  const Grammar& grammar_;
  std::vector<CSet> sets_;
  std::map<std::string, int> labels_;
  std::map<std::string, int> tokens_;
  std::vector<int> min_yield_;
};

struct Occ {
  int set = 0;
  int parent = -1;
  int parent_component = -1;
  int offset = 0;
};

struct Site {
  int occ = -1;
  int component = -1;
  int node = -1;
};

struct Frame {
  int occ;
  int component;
  int node;
  const Frame* next;
};

class Enumerator {
 public:
  Enumerator(const CompiledGrammar& cg, const SearchBudget& budget,
             const std::optional<Sentence>& target, const DerivationVisitor& visit)
      : cg_(cg), budget_(budget), visit_(visit) {
    usable_.assign(cg_.sets().size(), true);
    if (target) {
      has_target_ = true;
      for (const auto& tok : *target) {
        auto id = cg_.token_id(tok.text);
        if (!id) {
          unreachable_target_ = true;
          return;
        }
        target_.push_back(*id);
      }
      for (std::size_t s = 0; s < cg_.sets().size(); ++s)
        for (int tok : cg_.sets()[s].tokens)
          if (std::find(target_.begin(), target_.end(), tok) == target_.end()) usable_[s] = false;
    }
  }

  SearchStats run() {
    if (unreachable_target_) return stats_;
    for (std::size_t s = 0; s < cg_.sets().size() && !stats_.stopped; ++s) {
      if (!cg_.sets()[s].root_candidate || !usable_[s]) continue;
      push_occ(static_cast<int>(s), -1, -1);
      search();
      pop_occ();
    }
    return stats_;
  }

 private:
  // ---- state

  int& decision(int occ, int component, int node) {
    const auto& o = occs_[static_cast<std::size_t>(occ)];
    const auto& t = cg_.sets()[static_cast<std::size_t>(o.set)].components[static_cast<std::size_t>(component)];
    return decisions_[static_cast<std::size_t>(o.offset + t.offset + node)];
  }

  const CTree& tree(int occ, int component) const {
    return cg_.sets()[static_cast<std::size_t>(occs_[static_cast<std::size_t>(occ)].set)]
        .components[static_cast<std::size_t>(component)];
  }

  static int encode(int occ, int component) { return occ * 64 + component; }
  static int code_occ(int code) { return code / 64; }
  static int code_component(int code) { return code % 64; }

  void push_occ(int set, int parent, int parent_component) {
    const auto& cs = cg_.sets()[static_cast<std::size_t>(set)];
    occs_.push_back({set, parent, parent_component, static_cast<int>(decisions_.size())});
    for (const auto& t : cs.components)
      for (int n = 0; n < static_cast<int>(t.nodes.size()); ++n)
        decisions_.push_back(t.is_site(n) ? kUndecided : kClosed);
  }

  void pop_occ() {
    decisions_.resize(static_cast<std::size_t>(occs_.back().offset));
    occs_.pop_back();
  }

  // ---- frontier walk

  struct Walk {
    std::vector<int> pattern;
    int terminals = 0;
    long long min_future = 0;
    Site first;
  };

  void gap(Walk& w) const {
    if (w.pattern.empty() || w.pattern.back() != kGap) w.pattern.push_back(kGap);
  }

  void note(Walk& w, int occ, int component, int node) const {
    if (w.first.occ < 0) w.first = {occ, component, node};
  }

  void visit(Walk& w, int occ, int component, int node, const Frame* frames) {
    const auto& t = tree(occ, component);
    const auto& n = t.nodes[static_cast<std::size_t>(node)];
    int d = decision(occ, component, node);
    switch (n.kind) {
      case NodeKind::terminal:
        w.pattern.push_back(n.label);
        ++w.terminals;
        return;
      case NodeKind::epsilon:
        return;
      case NodeKind::foot:
        visit_below(w, frames->occ, frames->component, frames->node, frames->next);
        return;
      case NodeKind::substitution:
        if (d == kUndecided) {
          note(w, occ, component, node);
          gap(w);
          w.min_future += cg_.min_slot_yield(n.label);
        } else {
          visit(w, code_occ(d), code_component(d), 0, frames);
        }
        return;
      case NodeKind::internal:
        if (d == kUndecided) {
          note(w, occ, component, node);
          gap(w);
          visit_below(w, occ, component, node, frames);
          gap(w);
        } else if (d >= 0) {
          Frame f{occ, component, node, frames};
          visit(w, code_occ(d), code_component(d), 0, &f);
        } else {
          visit_below(w, occ, component, node, frames);
        }
        return;
    }
  }

  void visit_below(Walk& w, int occ, int component, int node, const Frame* frames) {
    for (int c : tree(occ, component).nodes[static_cast<std::size_t>(node)].children)
      visit(w, occ, component, c, frames);
  }

  // Wildcard match of the partial frontier against the target.
  bool matches(const std::vector<int>& pattern) const {
    const std::size_t n = target_.size();
    std::vector<char> cur(n + 1, 0), nxt(n + 1, 0);
    cur[0] = 1;
    for (int sym : pattern) {
      std::fill(nxt.begin(), nxt.end(), 0);
      if (sym == kGap) {
        char any = 0;
        for (std::size_t j = 0; j <= n; ++j) {
          any = any || cur[j];
          nxt[j] = any;
        }
      } else {
        for (std::size_t j = 0; j < n; ++j)
          if (cur[j] && target_[j] == sym) nxt[j + 1] = 1;
      }
      std::swap(cur, nxt);
    }
    return cur[n] != 0;
  }

  // ---- search

  void search() {
    if (stats_.stopped) return;
    if (budget_.node_budget && stats_.states >= *budget_.node_budget) {
      stats_.exhausted = false;
      stats_.stopped = true;
      return;
    }
    ++stats_.states;

    Walk w;
    visit(w, 0, 0, 0, nullptr);
    long long lower = w.terminals + w.min_future;
    if (lower > budget_.max_yield) return;
    if (has_target_ && (lower > static_cast<long long>(target_.size()) || !matches(w.pattern)))
      return;
    if (static_cast<int>(occs_.size()) > budget_.max_sets) {
      stats_.exhausted = false;  // viable but cut by the occurrence cap
      return;
    }
    if (w.first.occ < 0) {
      if (!visit_(record())) stats_.stopped = true;
      return;
    }
    expand(w.first);
  }

  void expand(const Site& site) {
    const auto& t = tree(site.occ, site.component);
    const auto& n = t.nodes[static_cast<std::size_t>(site.node)];
    const bool substitution = n.kind == NodeKind::substitution;
    int& slot = decision(site.occ, site.component, site.node);

    if (!substitution && n.constraint != AdjunctionConstraint::obligatory) {
      slot = kClosed;
      search();
      decision(site.occ, site.component, site.node) = kUndecided;
      if (stats_.stopped) return;
    }

    const TreeClass wanted = substitution ? TreeClass::initial : TreeClass::auxiliary;
    for (std::size_t s = 0; s < cg_.sets().size(); ++s) {
      if (!usable_[s]) continue;
      const auto& cs = cg_.sets()[s];
      for (std::size_t k = 0; k < cs.components.size(); ++k) {
        const auto& comp = cs.components[k];
        if (comp.tree_class != wanted || comp.root_label != n.label) continue;
        std::vector<int> placement(cs.components.size(), -1);
        placement[k] = site.node;
        place_rest(site, static_cast<int>(s), placement, 0);
        if (stats_.stopped) return;
      }
    }
  }

  // Assigns the remaining components of `set` to distinct undecided sites of
  // the same elementary tree, then recurses into the search.
  void place_rest(const Site& site, int set, std::vector<int>& placement, std::size_t next) {
    const auto& cs = cg_.sets()[static_cast<std::size_t>(set)];
    while (next < placement.size() && placement[next] >= 0) ++next;
    if (next == placement.size()) {
      commit(site, set, placement);
      return;
    }
    const auto& comp = cs.components[next];
    const auto& host = tree(site.occ, site.component);
    for (int n = 0; n < static_cast<int>(host.nodes.size()); ++n) {
      if (decision(site.occ, site.component, n) != kUndecided) continue;
      if (std::find(placement.begin(), placement.end(), n) != placement.end()) continue;
      const auto& hn = host.nodes[static_cast<std::size_t>(n)];
      if (hn.label != comp.root_label) continue;
      bool ok = comp.tree_class == TreeClass::initial ? hn.kind == NodeKind::substitution
                                                      : host.is_adjunction_site(n);
      if (!ok) continue;
      placement[next] = n;
      place_rest(site, set, placement, next + 1);
      placement[next] = -1;
      if (stats_.stopped) return;
    }
  }

  void commit(const Site& site, int set, const std::vector<int>& placement) {
    int child = static_cast<int>(occs_.size());
    push_occ(set, site.occ, site.component);
    for (std::size_t k = 0; k < placement.size(); ++k)
      decision(site.occ, site.component, placement[k]) = encode(child, static_cast<int>(k));
    search();
    for (int n : placement) decision(site.occ, site.component, n) = kUndecided;
    pop_occ();
  }

  DerivationTree record() {
    const Grammar& g = cg_.grammar();
    DerivationTree d;
    d.root_set = g.sets[static_cast<std::size_t>(occs_[0].set)].name;
    d.root_id = 1;
    for (int o = 1; o < static_cast<int>(occs_.size()); ++o) {
      const auto& occ = occs_[static_cast<std::size_t>(o)];
      const auto& set = g.sets[static_cast<std::size_t>(occ.set)];
      const auto& parent = occs_[static_cast<std::size_t>(occ.parent)];
      const auto& parent_set = g.sets[static_cast<std::size_t>(parent.set)];
      const auto& host = tree(occ.parent, occ.parent_component);
      AttachmentEdge e{set.name, o + 1, {}};
      for (int n = 0; n < static_cast<int>(host.nodes.size()); ++n) {
        int d_code = decision(occ.parent, occ.parent_component, n);
        if (d_code < 0 || code_occ(d_code) != o) continue;
        const auto& hn = host.nodes[static_cast<std::size_t>(n)];
        e.targets.push_back({set.components[static_cast<std::size_t>(code_component(d_code))].name,
                             occ.parent + 1,
                             parent_set.components[static_cast<std::size_t>(occ.parent_component)].name,
                             hn.address,
                             hn.kind == NodeKind::substitution ? Operation::substitution
                                                               : Operation::adjunction});
      }
      d.edges.push_back(std::move(e));
    }
    return d;
  }

  const CompiledGrammar& cg_;
  SearchBudget budget_;
  const DerivationVisitor& visit_;
  std::vector<int> target_;
  bool has_target_ = false;
  bool unreachable_target_ = false;
  std::vector<bool> usable_;
  std::vector<Occ> occs_;
  std::vector<int> decisions_;
  SearchStats stats_;
};

std::optional<int> derivation_size_factor(const Grammar& g);

void require_bounded(const Grammar& g) {
  if (!search_bounded(g))
    throw SearchError("grammar " + g.name +
                      " is not lexicalized; exhaustive recognition is not guaranteed");
}

std::optional<int> derivation_size_factor(const Grammar& g) {
  CompiledGrammar cg(g);
  std::set<std::string> slot_labels;
  for (const auto& s : g.sets)
    for (const auto& c : s.components)
      for (const auto& a : addresses_of(c))
        if (a.kind == NodeKind::substitution) slot_labels.insert(node_at(c, a.address).label);

  // Terminal-free sets must be substitution-only and unable to vanish; those
  // with a single slot form unit chains, which must be acyclic.
  std::map<std::string, std::set<std::string>> unit_edges;
  for (std::size_t i = 0; i < g.sets.size(); ++i) {
    const auto& s = g.sets[i];
    if (!s.terminals().empty()) continue;
    bool root_only = s.is_singleton() && s.components[0].tree_class == TreeClass::initial &&
                     s.components[0].root.label == g.start.name &&
                     !slot_labels.count(g.start.name);
    std::vector<std::string> slots;
    for (const auto& c : s.components) {
      if (c.tree_class != TreeClass::initial) return std::nullopt;
      for (const auto& a : addresses_of(c))
        if (a.kind == NodeKind::substitution) slots.push_back(node_at(c, a.address).label);
    }
    if (slots.empty() && !root_only) return std::nullopt;
    for (const auto& c : cg.sets()[i].components)
      for (const auto& n : c.nodes)
        if (n.kind == NodeKind::substitution && cg.min_slot_yield(n.label) < 1) return std::nullopt;
    if (slots.size() == 1)
      for (const auto& c : s.components) unit_edges[c.root.label].insert(slots.front());
  }

  // Longest unit chain, by depth-first search with cycle detection.
  std::map<std::string, int> longest;
  std::set<std::string> on_path;
  bool cyclic = false;
  std::function<int(const std::string&)> chain = [&](const std::string& label) -> int {
    if (auto it = longest.find(label); it != longest.end()) return it->second;
    if (!on_path.insert(label).second) {
      cyclic = true;
      return 0;
    }
    int best = 0;
    if (auto it = unit_edges.find(label); it != unit_edges.end())
      for (const auto& next : it->second) best = std::max(best, 1 + chain(next));
    on_path.erase(label);
    return longest[label] = best;
  };
  int units = 0;
  for (const auto& [label, _] : unit_edges) units = std::max(units, chain(label));
  if (cyclic) return std::nullopt;
  return units + 1;
}

}  // namespace

bool search_bounded(const Grammar& g) { return derivation_size_factor(g).has_value(); }

SearchBudget complete_budget(const Grammar& g, int length) {
  if (g.lexicalized()) return {std::max(1, length), length, std::nullopt};
  auto factor = derivation_size_factor(g);
  if (!factor) throw SearchError("grammar " + g.name + " has no complete derivation bound");
  // Leaves are lexical, so at most `length` of them; branching terminal-free
  // sets number fewer than the leaves, and unit chains between them are
  // bounded by `factor`. One more for a terminal-free root.
  return {2 * std::max(1, length) * *factor + 1, length, std::nullopt};
}

SearchStats for_each_derivation(const Grammar& g, const SearchBudget& budget,
                                const std::optional<Sentence>& target,
                                const DerivationVisitor& visit) {
  CompiledGrammar cg(g);
  SearchBudget b = budget;
  if (target) b.max_yield = std::min(b.max_yield, static_cast<int>(target->size()));
  return Enumerator(cg, b, target, visit).run();
}

SearchResult enumerate_derivations(const Grammar& g, const SearchBudget& budget,
                                   const std::optional<Sentence>& target) {
  SearchResult out;
  auto stats = for_each_derivation(g, budget, target, [&](const DerivationTree& d) {
    out.derivations.push_back(d);
    return true;
  });
  out.exhausted = stats.exhausted;
  out.states = stats.states;
  return out;
}

Recognition recognize(const Grammar& g, const Sentence& s) {
  auto w = search_witness(g, s, [](const DerivationTree&) { return true; });
  return {w.witness.has_value(), w.witness, w.exhausted};
}

WitnessResult search_witness(const Grammar& g, const Sentence& s, const DerivationPredicate& pred) {
  require_bounded(g);
  WitnessResult out;
  auto stats = for_each_derivation(g, complete_budget(g, static_cast<int>(s.size())), s,
                                   [&](const DerivationTree& d) {
                                     ++out.derivations_seen;
                                     if (!pred(d)) return true;
                                     out.witness = d;
                                     return false;
                                   });
  out.exhausted = stats.exhausted;
  return out;
}

std::optional<DerivationTree> find_witness(const Grammar& g, const Sentence& s,
                                           const DerivationPredicate& pred) {
  return search_witness(g, s, pred).witness;
}

std::vector<Sentence> generate_language(const Grammar& g, int max_len) {
  require_bounded(g);
  if (max_len < 0) throw SearchError("negative length bound");
  std::set<Sentence> seen;
  auto budget = complete_budget(g, max_len);
  for_each_derivation(g, budget, std::nullopt, [&](const DerivationTree& d) {
    seen.insert(yield_of(replay(g, d)));
    return true;
  });
  std::vector<Sentence> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const Sentence& a, const Sentence& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace mctag
