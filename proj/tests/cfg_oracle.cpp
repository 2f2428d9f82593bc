#include "cfg_oracle.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace oracle {

namespace {

struct Symbol {
  bool terminal;
  std::string text;
  auto operator<=>(const Symbol&) const = default;
};

using Form = std::vector<Symbol>;

void frontier(const mctag::TreeNode& n, Form& out) {
  switch (n.kind) {
    case mctag::NodeKind::terminal:
      out.push_back({true, n.label});
      break;
    case mctag::NodeKind::substitution:
      out.push_back({false, n.label});
      break;
    case mctag::NodeKind::epsilon:
      break;
    case mctag::NodeKind::foot:
      throw std::invalid_argument("foot node in a context-free grammar");
    case mctag::NodeKind::internal:
      for (const auto& c : n.children) frontier(c, out);
      break;
  }
}

}  // namespace

std::set<mctag::Sentence> expand_cfg(const mctag::Grammar& g, int max_len) {
  std::multimap<std::string, Form> rules;
  for (const auto& s : g.sets)
    for (const auto& t : s.components) {
      if (t.tree_class != mctag::TreeClass::initial)
        throw std::invalid_argument("auxiliary tree in a context-free grammar");
      Form rhs;
      frontier(t.root, rhs);
      rules.emplace(t.root.label, rhs);
    }

  // Shortest terminal yield per nonterminal, for pruning.
  std::map<std::string, int> shortest;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [lhs, rhs] : rules) {
      long len = 0;
      for (const auto& sym : rhs) {
        if (sym.terminal) {
          ++len;
        } else if (auto it = shortest.find(sym.text); it != shortest.end()) {
          len += it->second;
        } else {
          len = -1;
          break;
        }
      }
      if (len < 0) continue;
      auto it = shortest.find(lhs);
      if (it == shortest.end() || len < it->second) {
        shortest[lhs] = static_cast<int>(len);
        changed = true;
      }
    }
  }
  auto lower_bound = [&](const Form& f) {
    long len = 0;
    for (const auto& sym : f) {
      if (sym.terminal) {
        ++len;
      } else {
        auto it = shortest.find(sym.text);
        if (it == shortest.end()) return long{max_len} + 1;
        len += it->second;
      }
    }
    return len;
  };

  std::set<mctag::Sentence> language;
  std::set<Form> seen;
  std::vector<Form> stack{{{false, g.start.name}}};
  while (!stack.empty()) {
    Form f = std::move(stack.back());
    stack.pop_back();
    if (lower_bound(f) > max_len || !seen.insert(f).second) continue;
    std::size_t i = 0;
    while (i < f.size() && f[i].terminal) ++i;
    if (i == f.size()) {
      mctag::Sentence s;
      for (const auto& sym : f) s.emplace_back(sym.text);
      language.insert(s);
      continue;
    }
    auto [lo, hi] = rules.equal_range(f[i].text);
    for (auto it = lo; it != hi; ++it) {
      Form next(f.begin(), f.begin() + static_cast<long>(i));
      next.insert(next.end(), it->second.begin(), it->second.end());
      next.insert(next.end(), f.begin() + static_cast<long>(i) + 1, f.end());
      stack.push_back(std::move(next));
    }
  }
  return language;
}

}  // namespace oracle
