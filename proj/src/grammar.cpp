#include "mctag/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mctag {

bool is_valid_symbol(std::string_view text) {
  if (text.empty()) return false;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) return false;
    switch (ch) {
      case '(': case ')': case '!': case '*': case '@': case '\'': case '#':
        return false;
      default:
        break;
    }
  }
  return true;
}

Token::Token(std::string t) : text(std::move(t)) {
  if (!is_valid_symbol(text)) throw std::invalid_argument("invalid token '" + text + "'");
}

NodeLabel::NodeLabel(std::string n) : name(std::move(n)) {
  if (!is_valid_symbol(name)) throw std::invalid_argument("invalid label '" + name + "'");
}

Sentence tokenize(std::string_view text) {
  Sentence out;
  std::string word;
  std::istringstream in{std::string(text)};
  while (in >> word) out.emplace_back(word);
  return out;
}

std::string join(const Sentence& s, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += sep;
    out += s[i].text;
  }
  return out;
}

GornAddress::GornAddress(std::vector<int> path) : path_(std::move(path)) {
  for (int i : path_)
    if (i < 1) throw std::invalid_argument("Gorn indices are 1-based");
}

GornAddress GornAddress::parse(std::string_view text) {
  if (text == "e") return {};
  std::vector<int> path;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    if (dot == std::string_view::npos) dot = text.size();
    std::string_view part = text.substr(pos, dot - pos);
    if (part.empty() || !std::all_of(part.begin(), part.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("malformed Gorn address '" + std::string(text) + "'");
    path.push_back(std::stoi(std::string(part)));
    pos = dot + 1;
  }
  return GornAddress(std::move(path));
}

GornAddress GornAddress::child(int index) const {
  auto p = path_;
  p.push_back(index);
  return GornAddress(std::move(p));
}

std::string GornAddress::to_string() const {
  if (path_.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path_[i]);
  }
  return out;
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::internal: return "internal";
    case NodeKind::substitution: return "substitution-slot";
    case NodeKind::foot: return "foot";
    case NodeKind::terminal: return "terminal-leaf";
    case NodeKind::epsilon: return "epsilon-leaf";
  }
  return "?";
}

std::string_view to_string(TreeClass cls) {
  return cls == TreeClass::initial ? "initial" : "auxiliary";
}

TreeNode TreeNode::internal(std::string label, std::vector<TreeNode> children,
                            AdjunctionConstraint c) {
  return {std::move(label), NodeKind::internal, c, std::move(children)};
}
TreeNode TreeNode::slot(std::string label) {
  return {std::move(label), NodeKind::substitution, AdjunctionConstraint::allowed, {}};
}
TreeNode TreeNode::foot(std::string label) {
  return {std::move(label), NodeKind::foot, AdjunctionConstraint::allowed, {}};
}
TreeNode TreeNode::terminal(std::string token) {
  return {std::move(token), NodeKind::terminal, AdjunctionConstraint::allowed, {}};
}
TreeNode TreeNode::epsilon() {
  return {"eps", NodeKind::epsilon, AdjunctionConstraint::allowed, {}};
}

const ElementaryTree* ElementarySet::component(std::string_view component_name) const {
  for (const auto& c : components)
    if (c.name == component_name) return &c;
  return nullptr;
}

Sentence ElementarySet::terminals() const {
  Sentence out;
  for (const auto& c : components) {
    auto y = yield_of(c);
    out.insert(out.end(), y.begin(), y.end());
  }
  return out;
}

const ElementarySet* Grammar::find_set(std::string_view set_name) const {
  for (const auto& s : sets)
    if (s.name == set_name) return &s;
  return nullptr;
}

bool Grammar::substitution_only() const {
  for (const auto& s : sets)
    for (const auto& c : s.components)
      if (c.tree_class == TreeClass::auxiliary) return false;
  return true;
}

bool Grammar::lexicalized() const {
  return std::all_of(sets.begin(), sets.end(),
                     [](const ElementarySet& s) { return !s.terminals().empty(); });
}

GrammarError::GrammarError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

std::string Violation::to_string() const {
  std::string where = set;
  if (!component.empty()) where += "/" + component + "@" + address.to_string();
  return where + ": " + message;
}

// ---------------------------------------------------------------- validation

namespace {

void check_nodes(const TreeNode& node, const GornAddress& at, const ElementarySet& set,
                 const ElementaryTree& tree, int& feet, std::vector<Violation>& out) {
  auto report = [&](std::string msg) { out.push_back({set.name, tree.name, at, std::move(msg)}); };
  if (node.kind != NodeKind::epsilon && !is_valid_symbol(node.label))
    report("invalid symbol '" + node.label + "'");
  if (node.kind != NodeKind::internal) {
    if (!node.children.empty()) report(std::string(to_string(node.kind)) + " node has children");
    if (node.constraint != AdjunctionConstraint::allowed)
      report("adjunction constraint on a non-internal node");
  } else if (node.children.empty()) {
    report("internal node without children");
  }
  if (node.kind == NodeKind::foot) {
    ++feet;
    if (tree.tree_class == TreeClass::initial) report("foot node in initial tree");
    else if (node.label != tree.root.label)
      report("foot label " + node.label + " differs from root label " + tree.root.label);
  }
  for (std::size_t i = 0; i < node.children.size(); ++i)
    check_nodes(node.children[i], at.child(static_cast<int>(i + 1)), set, tree, feet, out);
}

}  // namespace

std::vector<Violation> validate_grammar(const Grammar& g) {
  std::vector<Violation> out;
  if (!is_valid_symbol(g.name)) out.push_back({g.name, "", {}, "invalid grammar name"});
  if (!is_valid_symbol(g.start.name)) out.push_back({g.name, "", {}, "invalid start symbol"});

  std::set<std::string> set_names;
  bool has_start_tree = false;
  for (const auto& s : g.sets) {
    if (!is_valid_symbol(s.name)) out.push_back({s.name, "", {}, "invalid set name"});
    if (!set_names.insert(s.name).second) out.push_back({s.name, "", {}, "duplicate set name"});
    if (s.components.empty()) out.push_back({s.name, "", {}, "set has no components"});

    std::set<std::string> component_names;
    for (const auto& c : s.components) {
      if (!component_names.insert(c.name).second)
        out.push_back({s.name, c.name, {}, "duplicate component name"});
      if (c.root.kind != NodeKind::internal)
        out.push_back({s.name, c.name, {}, "root node is not internal"});
      int feet = 0;
      check_nodes(c.root, {}, s, c, feet, out);
      if (c.tree_class == TreeClass::auxiliary && feet != 1)
        out.push_back({s.name, c.name, {},
                       feet == 0 ? "auxiliary tree without foot node" : "multiple foot nodes"});
    }
    if (s.anchor) {
      auto terms = s.terminals();
      if (std::find(terms.begin(), terms.end(), *s.anchor) == terms.end())
        out.push_back({s.name, s.components.empty() ? "" : s.components.front().name, {},
                       "anchor '" + s.anchor->text + "' absent from components"});
    }
    if (s.is_singleton() && s.components[0].tree_class == TreeClass::initial &&
        s.components[0].root.label == g.start.name)
      has_start_tree = true;
  }
  if (!has_start_tree)
    out.push_back({g.name, "", {}, "no singleton initial set rooted in start symbol " + g.start.name});
  return out;
}

// ------------------------------------------------------------------- parsing

namespace {

struct Lexeme {
  enum Kind { open, close, atom, end } kind;
  std::string text;
  int line;
  int column;
};

std::vector<Lexeme> lex(std::string_view text) {
  std::vector<Lexeme> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++i;
  };
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') advance();
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      advance();
    } else if (ch == '(' || ch == ')') {
      out.push_back({ch == '(' ? Lexeme::open : Lexeme::close, std::string(1, ch), line, column});
      advance();
    } else {
      Lexeme lx{Lexeme::atom, "", line, column};
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '(' && text[i] != ')' && text[i] != '#') {
        lx.text += text[i];
        advance();
      }
      out.push_back(std::move(lx));
    }
  }
  out.push_back({Lexeme::end, "", line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexemes_(lex(text)) {}

  const Lexeme& peek() const { return lexemes_[pos_]; }
  const Lexeme& next() {
    const Lexeme& lx = lexemes_[pos_];
    if (lx.kind != Lexeme::end) ++pos_;
    return lx;
  }
  bool at_end() const { return peek().kind == Lexeme::end; }

  [[noreturn]] void fail(const Lexeme& at, const std::string& msg) const {
    throw GrammarError(msg, at.line, at.column);
  }

  std::string identifier(const char* what) {
    const Lexeme& lx = next();
    if (lx.kind != Lexeme::atom || !is_valid_symbol(lx.text))
      fail(lx, std::string("expected ") + what);
    return lx.text;
  }

  TreeClass tree_class() {
    const Lexeme& lx = next();
    if (lx.kind == Lexeme::atom && lx.text == "initial") return TreeClass::initial;
    if (lx.kind == Lexeme::atom && lx.text == "auxiliary") return TreeClass::auxiliary;
    fail(lx, "expected 'initial' or 'auxiliary'");
  }

  TreeNode leaf_atom(const Lexeme& lx) {
    const std::string& t = lx.text;
    if (t == "eps") return TreeNode::epsilon();
    if (t.size() > 1 && t.front() == '\'') {
      auto tok = t.substr(1);
      if (!is_valid_symbol(tok)) fail(lx, "invalid terminal '" + tok + "'");
      return TreeNode::terminal(tok);
    }
    if (t.size() > 1 && (t.back() == '!' || t.back() == '*')) {
      auto label = t.substr(0, t.size() - 1);
      if (!is_valid_symbol(label)) fail(lx, "invalid label '" + label + "'");
      return t.back() == '!' ? TreeNode::slot(label) : TreeNode::foot(label);
    }
    fail(lx, "expected a leaf ('token, eps, Label! or Label*), got '" + t + "'");
  }

  TreeNode node() {
    const Lexeme& lx = next();
    if (lx.kind == Lexeme::atom) return leaf_atom(lx);
    if (lx.kind != Lexeme::open) fail(lx, "expected '(' or a leaf");

    const Lexeme& head = next();
    if (head.kind != Lexeme::atom) fail(head, "expected a node label after '('");
    std::string label = head.text;
    if (!label.empty() && (label.back() == '!' || label.back() == '*')) {
      TreeNode leaf = leaf_atom(head);
      if (next().kind != Lexeme::close) fail(head, "slot and foot nodes take no children");
      return leaf;
    }
    auto constraint = AdjunctionConstraint::allowed;
    if (auto at = label.find('@'); at != std::string::npos) {
      auto suffix = label.substr(at + 1);
      if (suffix == "na") constraint = AdjunctionConstraint::null;
      else if (suffix == "oa") constraint = AdjunctionConstraint::obligatory;
      else fail(head, "unknown adjunction constraint '@" + suffix + "'");
      label.resize(at);
    }
    if (!is_valid_symbol(label)) fail(head, "invalid label '" + label + "'");
    std::vector<TreeNode> children;
    while (peek().kind != Lexeme::close) {
      if (at_end()) fail(peek(), "unbalanced parentheses");
      children.push_back(node());
    }
    next();
    if (children.empty()) fail(head, "internal node without children");
    return TreeNode::internal(label, std::move(children), constraint);
  }

  struct Location {
    int line;
    int column;
  };

  Grammar grammar(bool validate) {
    Grammar g;
    bool have_name = false, have_start = false;
    std::map<std::string, Location> set_at;
    std::map<std::pair<std::string, std::string>, Location> component_at;
    bool in_set = false;

    while (!at_end()) {
      const Lexeme& kw = next();
      if (kw.kind != Lexeme::atom) fail(kw, "expected a keyword");
      if (kw.text == "grammar") {
        if (have_name) fail(kw, "duplicate 'grammar' line");
        g.name = identifier("grammar name");
        have_name = true;
      } else if (kw.text == "start") {
        if (have_start) fail(kw, "duplicate 'start' line");
        g.start = NodeLabel(identifier("start symbol"));
        have_start = true;
      } else if (kw.text == "tree") {
        ElementarySet s;
        s.name = identifier("tree name");
        auto cls = tree_class();
        s.components.push_back({s.name, cls, node()});
        if (set_at.count(s.name)) fail(kw, "duplicate set name '" + s.name + "'");
        set_at[s.name] = {kw.line, kw.column};
        component_at[{s.name, s.name}] = {kw.line, kw.column};
        g.sets.push_back(std::move(s));
        in_set = false;
      } else if (kw.text == "set") {
        ElementarySet s;
        s.name = identifier("set name");
        if (set_at.count(s.name)) fail(kw, "duplicate set name '" + s.name + "'");
        set_at[s.name] = {kw.line, kw.column};
        if (peek().kind == Lexeme::atom && peek().text == "anchor") {
          next();
          const Lexeme& a = next();
          if (a.kind != Lexeme::atom || a.text.size() < 2 || a.text.front() != '\'' ||
              !is_valid_symbol(a.text.substr(1)))
            fail(a, "expected a quoted anchor token");
          s.anchor = Token(a.text.substr(1));
        }
        g.sets.push_back(std::move(s));
        in_set = true;
      } else if (kw.text == "component") {
        if (!in_set) fail(kw, "'component' outside a set");
        auto& s = g.sets.back();
        std::string name = identifier("component name");
        auto cls = tree_class();
        component_at[{s.name, name}] = {kw.line, kw.column};
        s.components.push_back({name, cls, node()});
      } else {
        fail(kw, "unknown keyword '" + kw.text + "'");
      }
    }
    if (!have_name) fail(peek(), "missing 'grammar' line");
    if (!have_start) fail(peek(), "missing 'start' line");

    auto problems = validate ? validate_grammar(g) : std::vector<Violation>{};
    if (!problems.empty()) {
      const auto& v = problems.front();
      Location loc{1, 1};
      if (auto it = component_at.find({v.set, v.component}); it != component_at.end())
        loc = it->second;
      else if (auto it2 = set_at.find(v.set); it2 != set_at.end())
        loc = it2->second;
      throw GrammarError(v.to_string(), loc.line, loc.column);
    }
    return g;
  }

 private:
  std::vector<Lexeme> lexemes_;
  std::size_t pos_ = 0;
};

void write_tree(const TreeNode& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::terminal: out += "'" + n.label; return;
    case NodeKind::epsilon: out += "eps"; return;
    case NodeKind::substitution: out += "(" + n.label + "!)"; return;
    case NodeKind::foot: out += "(" + n.label + "*)"; return;
    case NodeKind::internal: break;
  }
  out += "(" + n.label;
  if (n.constraint == AdjunctionConstraint::null) out += "@na";
  if (n.constraint == AdjunctionConstraint::obligatory) out += "@oa";
  for (const auto& c : n.children) {
    out += ' ';
    write_tree(c, out);
  }
  out += ')';
}

}  // namespace

Grammar parse_grammar(std::string_view text) { return Parser(text).grammar(true); }

Grammar parse_grammar_unvalidated(std::string_view text) { return Parser(text).grammar(false); }

TreeNode parse_tree(std::string_view text) {
  Parser p(text);
  TreeNode root = p.node();
  if (!p.at_end()) p.fail(p.peek(), "trailing input after tree");
  return root;
}

std::string serialize_tree(const TreeNode& root) {
  std::string out;
  write_tree(root, out);
  return out;
}

std::string serialize_grammar(const Grammar& g) {
  std::string out = "grammar " + g.name + "\nstart " + g.start.name + "\n";
  bool last_was_set = true;
  for (const auto& s : g.sets) {
    bool sugar = s.is_singleton() && !s.anchor && s.components[0].name == s.name;
    if (sugar) {
      if (last_was_set) out += '\n';
      const auto& c = s.components[0];
      out += "tree " + s.name + " " + std::string(to_string(c.tree_class)) + " " +
             serialize_tree(c.root) + "\n";
    } else {
      out += "\nset " + s.name;
      if (s.anchor) out += " anchor '" + s.anchor->text;
      out += '\n';
      for (const auto& c : s.components)
        out += "  component " + c.name + " " + std::string(to_string(c.tree_class)) + " " +
               serialize_tree(c.root) + "\n";
    }
    last_was_set = !sugar;
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Grammar load_grammar_file(const std::string& path) { return parse_grammar(read_text_file(path)); }

}  // namespace mctag
