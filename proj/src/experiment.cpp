#include "mctag/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <iomanip>
#include <sstream>
#include <thread>

#include "mctag/search.hpp"

namespace mctag {

namespace {

// i from a token "<prefix><i>", e.g. n3 -> 3.
std::optional<int> indexed(const std::string& token, char prefix) {
  if (token.size() < 2 || token.front() != prefix) return std::nullopt;
  int value = 0;
  auto [end, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), value);
  if (ec != std::errc{} || end != token.data() + token.size() || value < 1) return std::nullopt;
  return value;
}

std::optional<int> noun_index(const ElementarySet& s) {
  auto terms = s.terminals();
  if (terms.size() != 1) return std::nullopt;
  return indexed(terms.front().text, 'n');
}

std::optional<int> verb_index(const ElementarySet& s) {
  if (s.anchor) return indexed(s.anchor->text, 'v');
  for (const auto& t : s.terminals())
    if (auto j = indexed(t.text, 'v')) return j;
  return std::nullopt;
}

const char* flag(bool b) { return b ? "true" : "false"; }

void require_reportable(bool reportable, bool allow_partial) {
  if (!reportable && !allow_partial)
    throw ReportError("results are partial (search not exhausted); pass --allow-partial to emit them");
}

std::string matrix_csv(const DerivabilityMatrix& m) {
  std::string out = std::string(kMatrixCsvHeader) + "\n";
  for (const auto& r : m.rows) {
    out += std::to_string(m.depth) + "," + r.perm.to_string() + "," + join(r.string) + "," +
           flag(r.string_derivable) + "," + flag(r.cooccurrence_derivable) + "," +
           (r.witness_size ? std::to_string(*r.witness_size) : "") + "," + flag(r.exhausted) + "\n";
  }
  return out;
}

std::string matrix_text(const DerivabilityMatrix& m) {
  std::size_t width = std::string("string").size();
  for (const auto& r : m.rows) width = std::max(width, join(r.string).size());
  std::ostringstream os;
  os << "grammar " << m.grammar << ", depth " << m.depth << " (" << m.depth + 1 << " verbs)\n";
  os << std::left << std::setw(12) << "permutation" << std::setw(static_cast<int>(width + 2))
     << "string" << std::setw(8) << "string" << std::setw(14) << "co-occurrence" << std::setw(9)
     << "witness" << "exhausted\n";
  std::size_t both = 0;
  for (const auto& r : m.rows) {
    os << std::left << std::setw(12) << r.perm.to_string()
       << std::setw(static_cast<int>(width + 2)) << join(r.string) << std::setw(8)
       << (r.string_derivable ? "yes" : "no") << std::setw(14)
       << (r.cooccurrence_derivable ? "yes" : "no") << std::setw(9)
       << (r.witness_size ? std::to_string(*r.witness_size) : "-")
       << (r.exhausted ? "yes" : "no") << "\n";
    if (r.cooccurrence_derivable) ++both;
  }
  os << both << "/" << m.rows.size() << " permutations keep the co-occurrence constraint\n";
  return os.str();
}

std::string property_name(Property p) { return p == Property::P ? "P" : "Q"; }

std::string property_csv(const PropertyReport& r) {
  std::string out = std::string(kPropertyCsvHeader) + "\n";
  std::string crash = r.crash_depth ? std::to_string(*r.crash_depth) : "";
  for (const auto& o : r.outcomes)
    out += r.grammar + "," + property_name(r.property) + "," + std::to_string(o.depth) + "," +
           flag(o.outcome) + "," + crash + "\n";
  return out;
}

std::string property_text(const PropertyReport& r) {
  std::ostringstream os;
  os << "property " << property_name(r.property) << " over grammar " << r.grammar << "\n";
  for (const auto& o : r.outcomes)
    os << "  depth " << o.depth << ": " << (o.outcome ? "derived" : "FAILS")
       << (o.exhausted ? "" : " (search not exhausted)") << "\n";
  os << "crash depth: " << (r.crash_depth ? std::to_string(*r.crash_depth) : "none") << "\n";
  return os.str();
}

std::optional<int> least_failure(const std::vector<DepthOutcome>& outcomes) {
  for (const auto& o : outcomes)
    if (!o.outcome) return o.depth;
  return std::nullopt;
}

}  // namespace

CooccurrenceVerdict check_cooccurrence(const Grammar& g, const DerivationTree& d,
                                       const ScramblingInstance& inst) {
  const Sentence expected = scrambling_string(inst);
  if (yield_of(replay(g, d)) != expected)
    throw ExperimentError("derivation yield differs from '" + join(expected) + "'");

  std::vector<std::optional<NounAttachment>> found(static_cast<std::size_t>(inst.verbs()));
  auto consider = [&](const std::string& set_name, std::optional<int> parent) {
    const auto* s = g.find_set(set_name);
    if (!s) throw ExperimentError("derivation uses unknown set " + set_name);
    auto i = noun_index(*s);
    if (!i || *i > inst.verbs()) return;
    NounAttachment a{*i, std::nullopt, parent.value_or(0)};
    if (parent) {
      const auto* ps = g.find_set(d.set_of(*parent).value_or(""));
      if (ps) a.verb = verb_index(*ps);
    }
    found[static_cast<std::size_t>(*i - 1)] = a;
  };
  consider(d.root_set, std::nullopt);
  for (const auto& e : d.edges) consider(e.set, e.parent());

  CooccurrenceVerdict v;
  v.ok = true;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (!found[i])
      throw ExperimentError("no occurrence of noun n" + std::to_string(i + 1) + " in derivation");
    v.nouns.push_back(*found[i]);
    if (found[i]->verb != static_cast<int>(i + 1)) v.ok = false;
  }
  return v;
}

bool DerivabilityMatrix::reportable() const {
  return std::all_of(rows.begin(), rows.end(), [](const MatrixRow& r) { return r.exhausted; });
}

bool PropertyReport::reportable() const {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [](const DepthOutcome& o) { return o.exhausted; });
}

DerivabilityMatrix scramble_matrix(const Grammar& g, int depth, unsigned threads) {
  if (depth < 0 || depth > kMaxMatrixDepth)
    throw ExperimentError("matrix depth must be in 0.." + std::to_string(kMaxMatrixDepth));
  if (!g.lexicalized())
    throw SearchError("grammar " + g.name + " is not lexicalized");

  DerivabilityMatrix m{g.name, depth, {}};
  for (auto& p : Permutation::all(depth + 1)) {
    MatrixRow row;
    row.string = scrambling_string(ScramblingInstance(depth, p));
    row.perm = std::move(p);
    m.rows.push_back(std::move(row));
  }

  auto fill = [&](MatrixRow& row) {
    ScramblingInstance inst(depth, row.perm);
    auto w = search_witness(g, row.string, [&](const DerivationTree& d) {
      return check_cooccurrence(g, d, inst).ok;
    });
    row.derivations = w.derivations_seen;
    row.string_derivable = w.derivations_seen > 0;
    row.cooccurrence_derivable = w.witness.has_value();
    if (w.witness) row.witness_size = static_cast<int>(w.witness->size());
    row.witness = std::move(w.witness);
    row.exhausted = w.exhausted;
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(m.rows.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < m.rows.size(); i = next++) fill(m.rows[i]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return m;
}

PropertyReport center_embed_scan(const Grammar& g, int max_depth) {
  if (max_depth < 0 || max_depth > kMaxScanDepth)
    throw ExperimentError("scan depth must be in 0.." + std::to_string(kMaxScanDepth));
  PropertyReport r{Property::P, g.name, {}, std::nullopt};
  for (int k = 0; k <= max_depth; ++k) {
    auto rec = recognize(g, center_sentence(k));
    r.outcomes.push_back({k, rec.recognized, rec.exhausted});
  }
  r.crash_depth = least_failure(r.outcomes);
  return r;
}

PropertyReport property_q_report(const std::string& grammar,
                                 const std::vector<DerivabilityMatrix>& matrices) {
  PropertyReport r{Property::Q, grammar, {}, std::nullopt};
  for (const auto& m : matrices) {
    bool all = std::all_of(m.rows.begin(), m.rows.end(),
                           [](const MatrixRow& row) { return row.cooccurrence_derivable; });
    r.outcomes.push_back({m.depth, all, m.reportable()});
  }
  std::sort(r.outcomes.begin(), r.outcomes.end(),
            [](const auto& a, const auto& b) { return a.depth < b.depth; });
  r.crash_depth = least_failure(r.outcomes);
  return r;
}

std::vector<ReportFile> emit_report(const DerivabilityMatrix& m, ReportFormat format,
                                    bool allow_partial) {
  require_reportable(m.reportable(), allow_partial);
  std::string stem = m.grammar + "_depth" + std::to_string(m.depth);
  switch (format) {
    case ReportFormat::csv:
      return {{stem + ".csv", matrix_csv(m)}};
    case ReportFormat::text:
      return {{stem + ".txt", matrix_text(m)}};
    case ReportFormat::dot_witnesses: {
      std::vector<ReportFile> files;
      for (const auto& r : m.rows) {
        if (!r.witness) continue;
        std::string perm = r.perm.to_string();
        std::string graph = "witness_d" + std::to_string(m.depth) + "_" + perm;
        std::replace(graph.begin(), graph.end(), '-', '_');
        files.push_back({"depth" + std::to_string(m.depth) + "_" + perm + ".dot",
                         to_dot(*r.witness, graph)});
      }
      return files;
    }
  }
  return {};
}

std::vector<ReportFile> emit_report(const PropertyReport& r, ReportFormat format,
                                    bool allow_partial) {
  require_reportable(r.reportable(), allow_partial);
  std::string stem = r.grammar + "_property_" + property_name(r.property);
  switch (format) {
    case ReportFormat::csv:
      return {{stem + ".csv", property_csv(r)}};
    case ReportFormat::text:
      return {{stem + ".txt", property_text(r)}};
    case ReportFormat::dot_witnesses:
      throw ReportError("property reports carry no witnesses");
  }
  return {};
}

}  // namespace mctag
