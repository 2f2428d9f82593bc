#pragma once

// Naive language generator for substitution-only grammars, written against
// the plain tree data only. Each initial tree is read as a rewrite rule
// root -> frontier and sentential forms are expanded leftmost-first.

#include <set>
#include <vector>

#include "mctag/grammar.hpp"

namespace oracle {

std::set<mctag::Sentence> expand_cfg(const mctag::Grammar& g, int max_len);

}  // namespace oracle
