#pragma once

// The two experiments: bounded center embedding and scrambling under the
// strong co-occurrence constraint, with their CSV, text and DOT reports.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mctag/composition.hpp"
#include "mctag/grammar.hpp"
#include "mctag/phenomena.hpp"

namespace mctag {

struct NounAttachment {
  int noun = 0;               // i of n<i>
  std::optional<int> verb;    // j of the v<j>-anchored parent set, if any
  int parent_occurrence = 0;
};

struct CooccurrenceVerdict {
  std::vector<NounAttachment> nouns;  // ordered by noun index
  bool ok = false;
};

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Each noun n<i> must be composed, in the derivation tree, directly into a
/// set anchored by v<i>.
CooccurrenceVerdict check_cooccurrence(const Grammar& g, const DerivationTree& d,
                                       const ScramblingInstance& inst);

struct MatrixRow {
  Permutation perm = Permutation::identity(1);
  Sentence string;
  bool string_derivable = false;
  bool cooccurrence_derivable = false;
  std::optional<int> witness_size;  // set occurrences in the witness
  bool exhausted = false;
  std::optional<DerivationTree> witness;
  std::size_t derivations = 0;  // derivations of the string examined
};

struct DerivabilityMatrix {
  std::string grammar;
  int depth = 0;
  std::vector<MatrixRow> rows;  // permutations in lexicographic order

  bool reportable() const;
};

inline constexpr int kMaxMatrixDepth = 3;

/// One row per permutation of depth + 1 nouns. Rows run on `threads`
/// workers (0 picks the hardware concurrency).
DerivabilityMatrix scramble_matrix(const Grammar& g, int depth, unsigned threads = 0);

struct DepthOutcome {
  int depth = 0;
  bool outcome = false;
  bool exhausted = true;
};

enum class Property { P, Q };

struct PropertyReport {
  Property property = Property::P;
  std::string grammar;
  std::vector<DepthOutcome> outcomes;
  std::optional<int> crash_depth;  // least failing depth

  bool reportable() const;
};

inline constexpr int kMaxScanDepth = 5;

/// Recognizes center_sentence(k) for k = 0..max_depth.
PropertyReport center_embed_scan(const Grammar& g, int max_depth);

/// Collapses matrices to per-depth outcomes: a depth succeeds when every
/// permutation has a co-occurrence witness.
PropertyReport property_q_report(const std::string& grammar,
                                 const std::vector<DerivabilityMatrix>& matrices);

enum class ReportFormat { csv, text, dot_witnesses };

struct ReportFile {
  std::string name;
  std::string content;
};

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kMatrixCsvHeader =
    "depth,permutation,string,string_derivable,cooccurrence_derivable,witness_size,exhausted";
inline constexpr const char* kPropertyCsvHeader = "grammar,property,depth,outcome,crash_depth";

/// csv and text give one file; dot_witnesses gives one file per witness.
/// Partial (non-exhausted) results are refused unless `allow_partial`.
std::vector<ReportFile> emit_report(const DerivabilityMatrix& m, ReportFormat format,
                                    bool allow_partial = false);
std::vector<ReportFile> emit_report(const PropertyReport& r, ReportFormat format,
                                    bool allow_partial = false);

}  // namespace mctag
