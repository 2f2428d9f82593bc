#include "mctag/phenomena.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mctag {

namespace {

ElementaryTree make_tree(std::string name, TreeClass cls, std::string_view sexpr) {
  return {std::move(name), cls, parse_tree(sexpr)};
}

ElementarySet single(std::string name, TreeClass cls, std::string_view sexpr) {
  ElementarySet s;
  s.components.push_back(make_tree(name, cls, sexpr));
  s.name = std::move(name);
  return s;
}

ElementarySet initial(std::string name, std::string_view sexpr) {
  return single(std::move(name), TreeClass::initial, sexpr);
}

const std::vector<std::string>& animals() {
  static const std::vector<std::string> words{"rat", "cat", "dog", "fox", "owl", "hen", "ant"};
  return words;
}

const std::vector<std::string>& relative_verbs() {
  static const std::vector<std::string> words{"chased", "saw", "bit", "fed", "met", "hit"};
  return words;
}

void check_center_depth(int k) {
  if (k < 0 || k > kMaxCenterDepth)
    throw std::out_of_range("center-embedding depth must be in 0.." +
                            std::to_string(kMaxCenterDepth));
}

}  // namespace

Grammar build_fsg_fig1() {
  Grammar g{"fig1_fsg", NodeLabel("S"), {}};
  g.sets.push_back(initial("s", "(S 'the (XP!))"));
  g.sets.push_back(initial("xp", "(XP 'dog (YP!))"));
  g.sets.push_back(initial("yp", "(YP 'likes (ZP!))"));
  g.sets.push_back(initial("zp", "(ZP 'icecream)"));
  return g;
}

Grammar build_cfg_fig2() {
  Grammar g{"fig2_cfg", NodeLabel("S"), {}};
  g.sets.push_back(initial("s", "(S (NP!) (VP!))"));
  g.sets.push_back(initial("vp", "(VP (V!) (NP!))"));
  g.sets.push_back(initial("np1", "(NP (DET!) (N!))"));
  g.sets.push_back(initial("np2", "(NP 'icecream)"));
  g.sets.push_back(initial("det", "(DET 'the)"));
  g.sets.push_back(initial("n", "(N 'dog)"));
  g.sets.push_back(initial("v", "(V 'likes)"));
  return g;
}

Grammar build_fsg_center_embedding(int m) {
  check_center_depth(m);
  Grammar g{"fsg_center_m" + std::to_string(m), NodeLabel("S"), {}};
  auto a = [](int j) { return "A" + std::to_string(j); };
  auto b = [](int j) { return "B" + std::to_string(j); };
  auto r = [](int j) { return "R" + std::to_string(j); };

  g.sets.push_back(initial("s", "(S 'the (A0!))"));
  // A<j>: a noun at embedding level j has just been read.
  for (int j = 0; j <= m; ++j)
    for (const auto& w : animals())
      g.sets.push_back(initial("a" + std::to_string(j) + "_" + w,
                               "(" + a(j) + " '" + w + " (" + b(j) + "!))"));
  // B<j>: either open level j+1 or start the verb block with j verbs owed.
  for (int j = 0; j < m; ++j)
    g.sets.push_back(initial("b" + std::to_string(j) + "_the",
                             "(" + b(j) + " 'the (" + a(j + 1) + "!))"));
  g.sets.push_back(initial("b0_ate", "(B0 'ate (O!))"));
  for (int j = 1; j <= m; ++j)
    for (const auto& v : relative_verbs())
      g.sets.push_back(initial("b" + std::to_string(j) + "_" + v,
                               "(" + b(j) + " '" + v + " (" + r(j - 1) + "!))"));
  // R<i>: i relative verbs still owed before the main verb.
  for (int i = 1; i < m; ++i)
    for (const auto& v : relative_verbs())
      g.sets.push_back(initial("r" + std::to_string(i) + "_" + v,
                               "(" + r(i) + " '" + v + " (" + r(i - 1) + "!))"));
  if (m >= 1) g.sets.push_back(initial("r0_ate", "(R0 'ate (O!))"));
  g.sets.push_back(initial("o", "(O 'the (OB!))"));
  g.sets.push_back(initial("ob", "(OB 'cheese)"));
  return g;
}

Grammar build_cfg_center_embedding() {
  Grammar g{"cfg_center", NodeLabel("S"), {}};
  g.sets.push_back(initial("s", "(S (NP!) (VP!))"));
  g.sets.push_back(initial("vp", "(VP (V!) (NP!))"));
  g.sets.push_back(initial("np", "(NP (DET!) (N!))"));
  g.sets.push_back(initial("np_rc", "(NP (DET!) (N!) (RC!))"));
  g.sets.push_back(initial("rc", "(RC (NP!) (RV!))"));
  g.sets.push_back(initial("det", "(DET 'the)"));
  for (const auto& w : animals()) g.sets.push_back(initial("n_" + w, "(N '" + w + ")"));
  g.sets.push_back(initial("n_cheese", "(N 'cheese)"));
  g.sets.push_back(initial("v_ate", "(V 'ate)"));
  for (const auto& v : relative_verbs()) g.sets.push_back(initial("rv_" + v, "(RV '" + v + ")"));
  return g;
}

Sentence center_sentence(int k) {
  check_center_depth(k);
  Sentence s;
  for (int i = 0; i <= k; ++i) {
    s.emplace_back("the");
    s.emplace_back(animals()[static_cast<std::size_t>(i)]);
  }
  for (int i = k; i >= 1; --i) s.emplace_back(relative_verbs()[static_cast<std::size_t>(i - 1)]);
  s.emplace_back("ate");
  s.emplace_back("the");
  s.emplace_back("cheese");
  return s;
}

Grammar build_anbn_tag() {
  Grammar g{"anbn_tag", NodeLabel("S"), {}};
  g.sets.push_back(initial("alpha", "(S eps)"));
  g.sets.push_back(single("beta", TreeClass::auxiliary, "(S 'a (S*) 'b)"));
  return g;
}

// ------------------------------------------------------------------ scrambling

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  std::vector<int> sorted = mapping_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i + 1))
      throw std::invalid_argument("not a permutation of 1..n");
}

Permutation Permutation::identity(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 1);
  return Permutation(std::move(m));
}

std::vector<Permutation> Permutation::all(int n) {
  std::vector<Permutation> out;
  auto m = identity(n).mapping();
  do {
    out.emplace_back(m);
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(mapping_[i]);
  }
  return out;
}

ScramblingInstance::ScramblingInstance(int d, Permutation p) : depth(d), perm(std::move(p)) {
  if (depth < 0 || depth + 1 > kMaxScramblingVerbs)
    throw std::out_of_range("scrambling depth must be in 0.." +
                            std::to_string(kMaxScramblingVerbs - 1));
  if (perm.size() != depth + 1)
    throw std::invalid_argument("permutation size must be depth + 1");
}

Sentence scrambling_string(const ScramblingInstance& inst) {
  Sentence s;
  const int n = inst.verbs();
  for (int i = 1; i <= n; ++i) s.emplace_back("n" + std::to_string(inst.perm(i)));
  for (int i = n; i >= 1; --i) s.emplace_back("v" + std::to_string(i));
  return s;
}

Grammar build_scrambling_fragment(int max_verbs) {
  if (max_verbs < 1 || max_verbs > kMaxScramblingVerbs)
    throw std::out_of_range("scrambling fragment supports 1.." +
                            std::to_string(kMaxScramblingVerbs) + " verbs");
  Grammar g{"scrambling_n" + std::to_string(max_verbs), NodeLabel("S"), {}};
  for (int i = 1; i <= max_verbs; ++i) {
    auto n = std::to_string(i);
    g.sets.push_back(initial("alpha_n" + n, "(N 'n" + n + ")"));
  }
  // Each verb either heads the innermost clause, wraps a lower clause as a
  // single auxiliary tree, or splits its argument from the verb so the two
  // can land at different places of one host tree.
  for (int i = 1; i <= max_verbs; ++i) {
    auto v = "'v" + std::to_string(i);
    g.sets.push_back(initial("inner_v" + std::to_string(i), "(S (N!) (S (V " + v + ")))"));
    g.sets.push_back(single("embed_v" + std::to_string(i), TreeClass::auxiliary,
                            "(S (N!) (S (S*) (V " + v + ")))"));
  }
  for (int i = 1; i <= max_verbs; ++i) {
    auto v = "'v" + std::to_string(i);
    ElementarySet s;
    s.name = "scr_v" + std::to_string(i);
    s.anchor = Token("v" + std::to_string(i));
    s.components.push_back(make_tree("arg", TreeClass::auxiliary, "(S (N!) (S*))"));
    s.components.push_back(make_tree("verb", TreeClass::auxiliary, "(S (S*) (V " + v + "))"));
    g.sets.push_back(std::move(s));
  }
  return g;
}

}  // namespace mctag
