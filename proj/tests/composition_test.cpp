#include <doctest.h>

#include <algorithm>
#include <random>

#include "mctag/composition.hpp"
#include "mctag/phenomena.hpp"
#include "mctag/search.hpp"
#include "splice_property.hpp"

using namespace mctag;

namespace {

using K = CompositionError::Kind;

ElementaryTree tree(const char* name, TreeClass cls, const char* sexpr) {
  return {name, cls, parse_tree(sexpr)};
}
ElementaryTree init(const char* sexpr) { return tree("t", TreeClass::initial, sexpr); }
ElementaryTree aux(const char* sexpr) { return tree("b", TreeClass::auxiliary, sexpr); }

DerivedTree host(const char* sexpr) { return DerivedTree(init(sexpr), {1, "h", "h"}); }
Occurrence occ(int id) { return {id, "x", "x"}; }
GornAddress at(const char* text) { return GornAddress::parse(text); }

template <typename F>
K kind_of(F&& f) {
  try {
    f();
  } catch (const CompositionError& e) {
    return e.kind();
  }
  FAIL("no CompositionError");
  return K::incomplete;
}

ComponentAttachment target(const char* component, int parent, const char* parent_component,
                           const char* address, Operation op) {
  return {component, parent, parent_component, at(address), op};
}

}  // namespace

TEST_CASE("substitute") {
  auto h = host("(S (NP!) (VP 'sleeps))");
  auto t = substitute(h, at("1"), init("(NP 'John)"), occ(2));
  CHECK(yield_of(t) == tokenize("John sleeps"));
  CHECK(is_complete(t));
  CHECK(node_at(t, at("1")).origin.occurrence.id == 2);
  CHECK(node_at(t, at("2")).origin.occurrence.id == 1);
  CHECK(yield_of(h) == tokenize("sleeps"));  // host untouched

  CHECK(kind_of([&] { substitute(h, at("2"), init("(VP 'runs)"), occ(2)); }) == K::target_not_slot);
  CHECK(kind_of([&] { substitute(h, at("1"), init("(VP 'runs)"), occ(2)); }) == K::label_mismatch);
  CHECK(kind_of([&] { substitute(h, at("1"), aux("(NP 'a (NP*))"), occ(2)); }) ==
        K::wrong_tree_class);
  CHECK(kind_of([&] { substitute(t, at("1"), init("(NP 'Mary)"), occ(3)); }) == K::target_not_slot);
  CHECK(kind_of([&] { substitute(h, at("7"), init("(NP 'Mary)"), occ(3)); }) ==
        K::address_out_of_range);
}

TEST_CASE("adjoin") {
  auto t = adjoin(host("(S 'a)"), at("e"), aux("(S 'b (S*))"), occ(2));
  CHECK(yield_of(t) == tokenize("b a"));
  CHECK_FALSE(node_at(t, at("e")).adjoined);
  CHECK(node_at(t, at("2")).adjoined);  // the host node, now under the foot
  CHECK(node_at(t, at("2")).origin.occurrence.id == 1);
  CHECK(is_complete(t));

  CHECK(kind_of([] { adjoin(host("(S@na 'a)"), at("e"), aux("(S 'b (S*))"), occ(2)); }) ==
        K::na_violation);
  CHECK(kind_of([&] { adjoin(t, at("2"), aux("(S 'c (S*))"), occ(3)); }) == K::double_adjunction);
  CHECK(yield_of(adjoin(t, at("e"), aux("(S 'c (S*))"), occ(3))) == tokenize("c b a"));
  CHECK(kind_of([] { adjoin(host("(S 'a)"), at("e"), aux("(VP 'b (VP*))"), occ(2)); }) ==
        K::label_mismatch);
  CHECK(kind_of([] { adjoin(host("(S 'a)"), at("e"), init("(S 'b)"), occ(2)); }) ==
        K::wrong_tree_class);
  CHECK(kind_of([] { adjoin(host("(S (NP!))"), at("1"), aux("(NP 'b (NP*))"), occ(2)); }) ==
        K::target_not_adjoinable);
  CHECK(kind_of([] { adjoin(host("(S 'a)"), at("1"), aux("(S 'b (S*))"), occ(2)); }) ==
        K::target_not_adjoinable);
}

TEST_CASE("obligatory adjunction") {
  auto h = host("(S@oa eps)");
  CHECK_FALSE(is_complete(h));
  CHECK(h.pending() == std::vector<GornAddress>{at("e")});
  auto t = adjoin(h, at("e"), aux("(S 'a (S*) 'b)"), occ(2));
  CHECK(yield_of(t) == tokenize("a b"));
  CHECK(is_complete(t));
}

TEST_CASE("completeness") {
  CHECK(is_complete(host("(S 'a)")));
  CHECK_FALSE(is_complete(host("(S (NP!) 'v)")));
  CHECK_FALSE(is_complete(DerivedTree(aux("(S 'b (S*))"), occ(1))));
}

TEST_CASE("randomized yield splicing") {
  auto r = oracle::run_splice_property(1000, 20240601u);
  CHECK(r.applications == 1000);
  CHECK(r.substitutions > 100);
  CHECK(r.adjunctions > 100);
  for (const auto& f : r.failures) FAIL_CHECK(f);
}

TEST_CASE("attach_set") {
  Grammar g = parse_grammar(R"(grammar g
start S
tree s initial (S (N!) (S (V 'v)))
tree other initial (S (N!) 'w)
tree n initial (N 'n)
tree m initial (N 'm)
set pair anchor 'p
  component arg auxiliary (S (N!) (S*))
  component verb auxiliary (S (S*) (V 'p))
)");
  auto st = start_derivation(g, "s");
  CHECK(st.record.size() == 1);

  SUBCASE("singleton substitution") {
    auto next = attach_set(g, st, {"n", 2, {target("n", 1, "s", "1", Operation::substitution)}});
    CHECK(yield_of(next.tree) == tokenize("n v"));
    CHECK(next.tree == substitute(st.tree, at("1"), g.find_set("n")->components[0], {2, "n", "n"}));
    CHECK(next.record.size() == 2);
  }
  SUBCASE("two components into one tree") {
    AttachmentEdge e{"pair", 2,
                     {target("arg", 1, "s", "e", Operation::adjunction),
                      target("verb", 1, "s", "2", Operation::adjunction)}};
    auto next = attach_set(g, st, e);
    CHECK(next.record.edges.size() == 1);
    CHECK(next.record.edges[0].targets.size() == 2);
    CHECK(next.tree.pending().size() == 2);
    auto a = attach_set(g, next, {"n", 3, {target("n", 2, "arg", "1", Operation::substitution)}});
    auto b = attach_set(g, a, {"m", 4, {target("m", 1, "s", "1", Operation::substitution)}});
    CHECK(is_complete(b.tree));
    CHECK(yield_of(b.tree) == tokenize("n m v p"));
    CHECK(to_dot(b.record) ==
          "digraph derivation {\n  \"s#1\";\n  \"pair#2\";\n  \"n#3\";\n  \"m#4\";\n"
          "  \"s#1\" -> \"pair#2\" [label=\"arg@e:adj\"];\n"
          "  \"s#1\" -> \"pair#2\" [label=\"verb@2:adj\"];\n"
          "  \"pair#2\" -> \"n#3\" [label=\"n@1:sub\"];\n"
          "  \"s#1\" -> \"m#4\" [label=\"m@1:sub\"];\n}\n");
  }
  SUBCASE("locality") {
    auto two = attach_set(g, st, {"pair", 2,
                                  {target("arg", 1, "s", "e", Operation::adjunction),
                                   target("verb", 1, "s", "2", Operation::adjunction)}});
    AttachmentEdge split{"pair", 3,
                         {target("arg", 1, "s", "2", Operation::adjunction),
                          target("verb", 2, "verb", "e", Operation::adjunction)}};
    CHECK(kind_of([&] { attach_set(g, two, split); }) == K::locality_violation);
    AttachmentEdge across{"pair", 3,
                          {target("arg", 2, "arg", "e", Operation::adjunction),
                           target("verb", 2, "verb", "e", Operation::adjunction)}};
    CHECK(kind_of([&] { attach_set(g, two, across); }) == K::locality_violation);
    AttachmentEdge same{"pair", 3,
                        {target("arg", 1, "s", "2", Operation::adjunction),
                         target("verb", 1, "s", "2", Operation::adjunction)}};
    CHECK(kind_of([&] { attach_set(g, two, same); }) == K::locality_violation);
  }
  SUBCASE("elementary addresses, not derived ones") {
    auto two = attach_set(g, st, {"pair", 2,
                                  {target("arg", 1, "s", "e", Operation::adjunction),
                                   target("verb", 1, "s", "2", Operation::adjunction)}});
    // s@e and s@2 already carry adjunctions, though the derived tree has grown there
    CHECK(kind_of([&] {
            attach_set(g, two, {"pair", 3,
                                {target("arg", 1, "s", "e", Operation::adjunction),
                                 target("verb", 1, "s", "2", Operation::adjunction)}});
          }) == K::double_adjunction);
    CHECK(kind_of([&] {
            attach_set(g, two, {"pair", 3,
                                {target("arg", 2, "verb", "e", Operation::adjunction),
                                 target("verb", 2, "arg", "e", Operation::adjunction)}});
          }) == K::locality_violation);
    CHECK(kind_of([&] {
            attach_set(g, two, {"pair", 3,
                                {target("arg", 2, "verb", "e", Operation::adjunction),
                                 target("verb", 2, "verb", "1", Operation::adjunction)}});
          }) == K::target_not_adjoinable);
  }
  SUBCASE("atomic failure") {
    AttachmentEdge bad{"pair", 2,
                       {target("arg", 1, "s", "e", Operation::adjunction),
                        target("verb", 1, "s", "2.1", Operation::adjunction)}};
    const auto before = st;
    CHECK_THROWS_AS(attach_set(g, st, bad), CompositionError);
    CHECK(st.tree == before.tree);
    CHECK(st.record == before.record);
  }
  SUBCASE("malformed edges") {
    CHECK(kind_of([&] { attach_set(g, st, {"nope", 2, {}}); }) == K::dangling_set);
    CHECK(kind_of([&] {
            attach_set(g, st, {"n", 1, {target("n", 1, "s", "1", Operation::substitution)}});
          }) == K::malformed_edge);
    CHECK(kind_of([&] {
            attach_set(g, st, {"pair", 2, {target("arg", 1, "s", "e", Operation::adjunction)}});
          }) == K::malformed_edge);
    CHECK(kind_of([&] {
            attach_set(g, st, {"n", 2, {target("n", 9, "s", "1", Operation::substitution)}});
          }) == K::dangling_occurrence);
    CHECK(kind_of([&] {
            attach_set(g, st, {"n", 2, {target("n", 1, "s", "2", Operation::substitution)}});
          }) == K::target_not_slot);
    auto filled = attach_set(g, st, {"n", 2, {target("n", 1, "s", "1", Operation::substitution)}});
    CHECK(kind_of([&] {
            attach_set(g, filled, {"m", 3, {target("m", 1, "s", "1", Operation::substitution)}});
          }) == K::slot_filled);
  }
  SUBCASE("derivation root") {
    CHECK(kind_of([&] { start_derivation(g, "n"); }) == K::wrong_tree_class);
    CHECK(kind_of([&] { start_derivation(g, "pair"); }) == K::wrong_tree_class);
    CHECK(kind_of([&] { start_derivation(g, "missing"); }) == K::dangling_set);
  }
}

TEST_CASE("replay") {
  Grammar one = parse_grammar("grammar g\nstart S\ntree s initial (S 'a)\n");
  CHECK(replay(one, {"s", 1, {}}) == DerivedTree(one.sets[0].components[0], {1, "s", "s"}));

  Grammar fig2 = build_cfg_fig2();
  auto r = recognize(fig2, tokenize("the dog likes icecream"));
  REQUIRE(r.witness);
  CHECK(yield_of(replay(fig2, *r.witness)) == tokenize("the dog likes icecream"));

  DerivationTree broken = *r.witness;
  broken.edges.pop_back();
  CHECK(kind_of([&] { replay(fig2, broken); }) == K::incomplete);
  broken = *r.witness;
  broken.edges.front().set = "ghost";
  CHECK_THROWS_AS(replay(fig2, broken), CompositionError);
  broken = *r.witness;
  broken.edges.front().targets.front().parent = 99;
  CHECK(kind_of([&] { replay(fig2, broken); }) == K::dangling_occurrence);
}

TEST_CASE("replay ignores edge order") {
  std::mt19937 rng(7);
  Grammar g = build_scrambling_fragment(3);
  auto all = enumerate_derivations(g, complete_budget(g, 6), tokenize("n2 n3 n1 v3 v2 v1"));
  REQUIRE(all.exhausted);
  REQUIRE(!all.derivations.empty());
  for (const auto& d : all.derivations) {
    const DerivedTree reference = replay(g, d);
    CHECK(replay(g, d) == reference);
    for (int k = 0; k < 5; ++k) {
      DerivationTree shuffled = d;
      std::shuffle(shuffled.edges.begin(), shuffled.edges.end(), rng);
      CHECK(replay(g, shuffled) == reference);
    }
    CHECK(d.canonical().canonical() == d.canonical());
  }
}
