#pragma once

// Bounded exhaustive enumeration of derivations. The enumerator builds
// derivation trees top-down, deciding attachment sites in derived-tree
// preorder and cutting any partial derivation whose committed frontier can no
// longer match the target.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mctag/composition.hpp"
#include "mctag/grammar.hpp"

namespace mctag {

struct SearchBudget {
  int max_sets = 1;    // set occurrences per derivation
  int max_yield = 0;   // frontier length
  std::optional<std::size_t> node_budget;  // explored search states
};

struct SearchResult {
  std::vector<DerivationTree> derivations;
  bool exhausted = true;  // the budget covered the whole space of the query
  std::size_t states = 0;
};

class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every set occurrence except a root-only one contributes a terminal, so
/// derivation size is bounded by yield length and recognition is decidable.
/// A terminal-free set is tolerated only if it is a singleton initial tree
/// that can be nothing but the derivation root.
bool search_bounded(const Grammar& g);

/// Smallest budget that is complete for strings of length `length`.
SearchBudget complete_budget(const Grammar& g, int length);

using DerivationVisitor = std::function<bool(const DerivationTree&)>;  // false stops

struct SearchStats {
  bool exhausted = true;
  bool stopped = false;  // the visitor asked to stop
  std::size_t states = 0;
};

/// Streams every derivation within `budget` (whose yield equals `target`, if
/// given) to `visit` in a deterministic order.
SearchStats for_each_derivation(const Grammar& g, const SearchBudget& budget,
                                const std::optional<Sentence>& target,
                                const DerivationVisitor& visit);

SearchResult enumerate_derivations(const Grammar& g, const SearchBudget& budget,
                                   const std::optional<Sentence>& target = std::nullopt);

struct Recognition {
  bool recognized = false;
  std::optional<DerivationTree> witness;
  bool exhausted = true;
};

Recognition recognize(const Grammar& g, const Sentence& s);

using DerivationPredicate = std::function<bool(const DerivationTree&)>;

struct WitnessResult {
  std::optional<DerivationTree> witness;
  std::size_t derivations_seen = 0;  // derivations of the string examined
  bool exhausted = true;
};

/// First derivation of `s` satisfying `pred`. When none exists the search has
/// gone through every derivation of `s`.
WitnessResult search_witness(const Grammar& g, const Sentence& s, const DerivationPredicate& pred);

std::optional<DerivationTree> find_witness(const Grammar& g, const Sentence& s,
                                           const DerivationPredicate& pred);

/// All yields of length <= max_len, ordered by length then lexicographically.
std::vector<Sentence> generate_language(const Grammar& g, int max_len);

}  // namespace mctag
