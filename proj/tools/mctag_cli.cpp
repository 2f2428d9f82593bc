// mctag: command-line front end for the grammar workbench.
//
// Exit status: 0 success (or string recognized), 1 string not recognized,
// 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mctag/experiment.hpp"
#include "mctag/grammar.hpp"
#include "mctag/search.hpp"

namespace fs = std::filesystem;
using namespace mctag;

namespace {

constexpr int kUsageError = 2;

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

std::string describe(const DerivationTree& d) {
  std::string out = "  " + d.root_set + "#" + std::to_string(d.root_id) + " (root)\n";
  for (const auto& e : d.edges) {
    out += "  " + e.set + "#" + std::to_string(e.child) + " ->";
    for (const auto& t : e.targets)
      out += " " + t.component + ":" + std::string(to_string(t.op)) + "@#" +
             std::to_string(t.parent) + "/" + t.parent_component + "@" + t.address.to_string();
    out += "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree-local MC-TAG workbench: recognition, generation and the "
               "center-embedding and scrambling experiments"};
  app.require_subcommand(1);

  std::string grammar_path, text, csv_path, dot_dir, dot_path;
  int max_len = 0, depth = 0, max_depth = 0;
  unsigned threads = 0;
  bool allow_partial = false;

  auto* recognize_cmd = app.add_subcommand("recognize", "Decide whether a string is derivable");
  recognize_cmd->add_option("--grammar", grammar_path, "Grammar file (.mcg)")->required();
  recognize_cmd->add_option("--string", text, "Whitespace-separated tokens")->required();
  recognize_cmd->add_option("--dot", dot_path, "Write the witness derivation as DOT");

  auto* derive_cmd = app.add_subcommand("derive", "List every derivation of a string");
  derive_cmd->add_option("--grammar", grammar_path, "Grammar file (.mcg)")->required();
  derive_cmd->add_option("--string", text, "Whitespace-separated tokens")->required();
  derive_cmd->add_option("--dot-dir", dot_dir, "Write one DOT file per derivation");

  auto* generate_cmd = app.add_subcommand("generate", "Print the language up to a length");
  generate_cmd->add_option("--grammar", grammar_path, "Grammar file (.mcg)")->required();
  generate_cmd->add_option("--max-len", max_len, "Maximum string length")
      ->required()
      ->check(CLI::NonNegativeNumber);

  auto* matrix_cmd = app.add_subcommand("scramble-matrix", "Derivability matrix for one depth");
  matrix_cmd->add_option("--grammar", grammar_path, "Grammar file (.mcg)")->required();
  matrix_cmd->add_option("--depth", depth, "Embedded clauses (verbs - 1)")
      ->required()
      ->check(CLI::Range(0, kMaxMatrixDepth));
  matrix_cmd->add_option("--csv", csv_path, "Write the matrix as CSV");
  matrix_cmd->add_option("--dot-dir", dot_dir, "Write co-occurrence witnesses as DOT");
  matrix_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  matrix_cmd->add_flag("--allow-partial", allow_partial, "Emit results of a truncated search");

  auto* center_cmd = app.add_subcommand("center-embed", "Center-embedding depth scan");
  center_cmd->add_option("--grammar", grammar_path, "Grammar file (.mcg)")->required();
  center_cmd->add_option("--max-depth", max_depth, "Deepest embedding to try")
      ->required()
      ->check(CLI::Range(0, kMaxScanDepth));
  center_cmd->add_option("--csv", csv_path, "Write the report as CSV");
  center_cmd->add_flag("--allow-partial", allow_partial, "Emit results of a truncated search");

  auto* validate_cmd = app.add_subcommand("validate", "Check a grammar file");
  validate_cmd->add_option("--grammar", grammar_path, "Grammar file (.mcg)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (*validate_cmd) {
      Grammar g = parse_grammar_unvalidated(read_text_file(grammar_path));
      auto problems = validate_grammar(g);
      for (const auto& v : problems) std::cerr << grammar_path << ": " << v.to_string() << "\n";
      if (!problems.empty()) return kUsageError;
      std::cout << g.name << ": " << g.sets.size() << " sets, start " << g.start.name
                << (g.substitution_only() ? ", substitution-only" : "")
                << (g.lexicalized() ? ", lexicalized" : "") << "\n";
      return 0;
    }

    Grammar g = load_grammar_file(grammar_path);

    if (*recognize_cmd) {
      auto r = recognize(g, tokenize(text));
      if (!r.recognized) {
        std::cout << "not recognized\n";
        return 1;
      }
      std::cout << "recognized\n" << describe(*r.witness);
      if (!dot_path.empty()) write_file(dot_path, to_dot(*r.witness));
      return 0;
    }

    if (*derive_cmd) {
      Sentence s = tokenize(text);
      if (!search_bounded(g))
        throw SearchError("grammar " + g.name + " is not lexicalized");
      auto result = enumerate_derivations(g, complete_budget(g, static_cast<int>(s.size())), s);
      std::cout << result.derivations.size() << " derivation(s)"
                << (result.exhausted ? "" : " (search not exhausted)") << "\n";
      for (std::size_t i = 0; i < result.derivations.size(); ++i) {
        std::cout << "derivation " << i + 1 << ":\n" << describe(result.derivations[i]);
        if (!dot_dir.empty())
          write_file(fs::path(dot_dir) / ("derivation_" + std::to_string(i + 1) + ".dot"),
                     to_dot(result.derivations[i]));
      }
      return result.derivations.empty() ? 1 : 0;
    }

    if (*generate_cmd) {
      for (const auto& s : generate_language(g, max_len))
        std::cout << (s.empty() ? "<empty>" : join(s)) << "\n";
      return 0;
    }

    if (*matrix_cmd) {
      auto m = scramble_matrix(g, depth, threads);
      std::cout << emit_report(m, ReportFormat::text, allow_partial).front().content;
      if (!csv_path.empty())
        write_file(csv_path, emit_report(m, ReportFormat::csv, allow_partial).front().content);
      if (!dot_dir.empty())
        for (const auto& f : emit_report(m, ReportFormat::dot_witnesses, allow_partial))
          write_file(fs::path(dot_dir) / f.name, f.content);
      return 0;
    }

    if (*center_cmd) {
      auto r = center_embed_scan(g, max_depth);
      std::cout << emit_report(r, ReportFormat::text, allow_partial).front().content;
      if (!csv_path.empty())
        write_file(csv_path, emit_report(r, ReportFormat::csv, allow_partial).front().content);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
