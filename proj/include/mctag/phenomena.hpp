#pragma once

// Builders for the grammar fragments under study and the test sentences that
// probe them.

#include <string>
#include <vector>

#include "mctag/grammar.hpp"

namespace mctag {

/// Right-linear chain grammar: (S 'the XP!) (XP 'dog YP!) (YP 'likes ZP!) (ZP 'icecream).
Grammar build_fsg_fig1();

/// Phrase-structure grammar for "the dog likes icecream" with NP and VP constituents.
Grammar build_cfg_fig2();

/// Largest depth the center-embedding builders and sentences support.
inline constexpr int kMaxCenterDepth = 6;

/// Right-linear grammar accepting center_sentence(k) exactly for k <= m. The
/// embedding depth is tracked by distinct nonterminals.
Grammar build_fsg_center_embedding(int m);

/// Recursive relative-clause grammar accepting center_sentence(k) for all k.
Grammar build_cfg_center_embedding();

/// The rat sentence with `k` nested object relatives:
/// k = 1 gives "the rat the cat chased ate the cheese".
Sentence center_sentence(int k);

/// TAG for a^n b^n: an epsilon initial tree and (S 'a (S*) 'b).
Grammar build_anbn_tag();

/// Bijection on {1..n}, stored 1-based.
class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping);
  static Permutation identity(int n);
  /// All permutations of {1..n} in lexicographic order.
  static std::vector<Permutation> all(int n);

  int size() const { return static_cast<int>(mapping_.size()); }
  int operator()(int i) const { return mapping_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& mapping() const { return mapping_; }
  /// Dash-joined, e.g. "2-1-3".
  std::string to_string() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> mapping_;
};

inline constexpr int kMaxScramblingVerbs = 4;

/// A clause with `depth` embedded clauses (depth + 1 verbs) whose argument
/// nouns are ordered by `perm`.
struct ScramblingInstance {
  int depth = 0;
  Permutation perm = Permutation::identity(1);

  ScramblingInstance(int depth, Permutation perm);
  int verbs() const { return depth + 1; }
};

/// [n_perm(1) ... n_perm(n), v_n ... v_1].
Sentence scrambling_string(const ScramblingInstance& inst);

/// Tree-local MC-TAG for verb-final clause embedding with long-distance
/// scrambling, over nouns n1..n<max_verbs> and verbs v1..v<max_verbs>.
Grammar build_scrambling_fragment(int max_verbs);

}  // namespace mctag
