#include <doctest.h>

#include <set>

#include "mctag/grammar.hpp"
#include "mctag/phenomena.hpp"

using namespace mctag;

namespace {

const char* kDogGrammar = R"(grammar fig2_cfg
start S
tree s   initial (S (NP!) (VP!))
tree vp  initial (VP (V!) (NP!))
tree np1 initial (NP (DET!) (N!))
tree np2 initial (NP 'icecream)
tree det initial (DET 'the)
tree n   initial (N 'dog)
tree v   initial (V 'likes)
)";

GornAddress at(const char* text) { return GornAddress::parse(text); }

}  // namespace

TEST_CASE("gorn addresses") {
  CHECK(at("e").is_root());
  CHECK(at("2.1").path() == std::vector<int>{2, 1});
  CHECK(at("2.1").to_string() == "2.1");
  CHECK(at("e").child(3).to_string() == "3");
  CHECK(at("1") < at("1.1"));
  CHECK(at("1.2") < at("2"));
  CHECK_THROWS(GornAddress::parse("0"));
  CHECK_THROWS(GornAddress::parse("1..2"));
  CHECK_THROWS(GornAddress::parse(""));
}

TEST_CASE("tokens and symbols") {
  CHECK(tokenize("  the dog\tlikes  ") == Sentence{Token("the"), Token("dog"), Token("likes")});
  CHECK(tokenize("").empty());
  CHECK(join(tokenize("a b c")) == "a b c");
  CHECK_THROWS(Token("two words"));
  CHECK_FALSE(is_valid_symbol(""));
}

TEST_CASE("parse the phrase-structure grammar") {
  Grammar g = parse_grammar(kDogGrammar);
  CHECK(g.name == "fig2_cfg");
  CHECK(g.start.name == "S");
  CHECK(g.sets.size() == 7);
  CHECK(g.substitution_only());
  CHECK_FALSE(g.lexicalized());
  CHECK(g == build_cfg_fig2());
  CHECK(validate_grammar(g).empty());
}

TEST_CASE("tree syntax") {
  auto t = parse_tree("(S@oa (NP!) NP! (S*) 'a eps (VP@na 'b))");
  CHECK(t.constraint == AdjunctionConstraint::obligatory);
  REQUIRE(t.children.size() == 6);
  CHECK(t.children[0].kind == NodeKind::substitution);
  CHECK(t.children[1].kind == NodeKind::substitution);
  CHECK(t.children[2].kind == NodeKind::foot);
  CHECK(t.children[3].kind == NodeKind::terminal);
  CHECK(t.children[3].label == "a");
  CHECK(t.children[4].kind == NodeKind::epsilon);
  CHECK(t.children[5].constraint == AdjunctionConstraint::null);
  CHECK(parse_tree(serialize_tree(t)) == t);
  CHECK_THROWS_AS(parse_tree("(S)"), GrammarError);
  CHECK_THROWS_AS(parse_tree("(S 'a"), GrammarError);
  CHECK_THROWS_AS(parse_tree("(S 'a) 'b"), GrammarError);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_grammar("grammar g\nstart S\ntree s initial (S 'a\n");
    FAIL("expected an error");
  } catch (const GrammarError& e) {
    CHECK(e.line() >= 3);
  }
  try {
    parse_grammar("grammar g\nstart S\ntree s sideways (S 'a)\n");
    FAIL("expected an error");
  } catch (const GrammarError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_grammar("grammar g\nstart S\n"), GrammarError);
  CHECK_THROWS_AS(parse_grammar("grammar g\nstart S\ntree s initial (S 'a)\n  component c initial (S 'b)\n"),
                  GrammarError);
  // comments are ignored
  CHECK(parse_grammar("# header\ngrammar g # name\nstart S\ntree s initial (S 'a) # tail\n").sets.size() == 1);
}

TEST_CASE("validation") {
  SUBCASE("foot label differs from root") {
    Grammar g = parse_grammar_unvalidated(
        "grammar g\nstart S\ntree s initial (S 'a)\ntree b auxiliary (S 'b (VP*))\n");
    auto v = validate_grammar(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].set == "b");
    CHECK(v[0].component == "b");
    CHECK(v[0].address == at("2"));
    CHECK_THROWS_AS(parse_grammar(serialize_grammar(g)), GrammarError);
  }
  SUBCASE("anchor without a matching leaf") {
    Grammar g = parse_grammar_unvalidated(
        "grammar g\nstart S\ntree s initial (S 'a)\n"
        "set x anchor 'v1\n  component c auxiliary (S (N!) (S*))\n");
    auto v = validate_grammar(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].set == "x");
  }
  SUBCASE("other violations") {
    auto count = [](const char* body) {
      return validate_grammar(parse_grammar_unvalidated(std::string("grammar g\nstart S\n") + body))
          .size();
    };
    CHECK(count("tree s initial (S 'a)\ntree b auxiliary (S 'b)\n") == 1);
    CHECK(count("tree s initial (S 'a)\ntree b auxiliary (S (S*) (S*))\n") == 1);
    CHECK(count("tree s initial (S (S*) 'a)\n") >= 1);
    CHECK_THROWS_AS(parse_grammar_unvalidated("grammar g\nstart S\ntree s initial (S 'a)\ntree s initial (S 'b)\n"),
                    GrammarError);
    Grammar twice = parse_grammar("grammar g\nstart S\ntree s initial (S 'a)\n");
    twice.sets.push_back(twice.sets[0]);
    CHECK(validate_grammar(twice).size() == 1);
    CHECK(count("tree t initial (T 'a)\n") == 1);  // no start tree
    CHECK(count("tree s initial (S 'a)\nset x\n  component c initial (N 'n)\n  component c initial (N 'm)\n") == 1);
  }
}

TEST_CASE("node_at") {
  const Grammar g = build_cfg_fig2();
  const auto& s = g.sets[0].components[0];
  CHECK(node_at(s, at("e")).label == "S");
  CHECK(node_at(s, at("e")).kind == NodeKind::internal);
  CHECK(node_at(s, at("1")).label == "NP");
  CHECK(node_at(s, at("1")).kind == NodeKind::substitution);
  CHECK_THROWS_AS(node_at(s, at("9.9")), AddressError);
}

TEST_CASE("addresses_of") {
  auto single = addresses_of(parse_tree("(S 'a)"));
  REQUIRE(single.size() == 2);
  CHECK(single[0].address.is_root());
  CHECK(single[0].kind == NodeKind::internal);
  CHECK(single[1].kind == NodeKind::terminal);

  auto aux = addresses_of(parse_tree("(S 'b (S*))"));
  CHECK(aux.size() == 3);
  CHECK(std::count_if(aux.begin(), aux.end(), [](auto& a) { return a.kind == NodeKind::foot; }) == 1);

  // the four chain rules rendered as one tree
  auto chain = parse_tree("(S 'the (XP 'dog (YP 'likes (ZP 'icecream))))");
  auto all = addresses_of(chain);
  CHECK(all.size() == 8);
  std::set<GornAddress> distinct;
  for (const auto& a : all) {
    distinct.insert(a.address);
    CHECK_NOTHROW(node_at(chain, a.address));
    CHECK(node_at(chain, a.address).kind == a.kind);
  }
  CHECK(distinct.size() == all.size());
  CHECK(std::is_sorted(all.begin(), all.end(),
                       [](auto& x, auto& y) { return x.address < y.address; }));
}

TEST_CASE("yield_of") {
  CHECK(yield_of(parse_tree("(S eps)")).empty());
  CHECK(yield_of(parse_tree("(S (N!) 'v1)")) == tokenize("v1"));
  CHECK(yield_of(parse_tree("(S 'the (XP 'dog (YP 'likes (ZP 'icecream))))")) ==
        tokenize("the dog likes icecream"));
}

TEST_CASE("round trip of every builder") {
  std::vector<Grammar> all{build_fsg_fig1(),           build_cfg_fig2(),
                           build_fsg_center_embedding(0), build_fsg_center_embedding(2),
                           build_cfg_center_embedding(), build_anbn_tag(),
                           build_scrambling_fragment(4)};
  for (const auto& g : all) {
    CAPTURE(g.name);
    std::string text = serialize_grammar(g);
    Grammar back = parse_grammar(text);
    CHECK(back == g);
    CHECK(serialize_grammar(back) == text);
    CHECK(validate_grammar(g).empty());
  }
}
