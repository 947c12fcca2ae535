#include "doctest.h"
#include "oracles.hpp"
#include "whcube/error.hpp"
#include "whcube/simplicial.hpp"
#include "whcube/words.hpp"

using namespace whcube;

namespace {

SimplicialComplex subdivided(const char* word) {
  return subdivide(whitehead_graph(make_cyclic_word(parse_word(word))));
}

SimplicialComplex hollow_triangle() {
  SimplicialComplex s;
  s.add_simplex({1, 2});
  s.add_simplex({2, 3});
  s.add_simplex({1, 3});
  return s;
}

}  // namespace

TEST_CASE("add_simplex closes downward and dedups") {
  SimplicialComplex s;
  s.add_simplex({3, 1, 2, 1});
  CHECK(s.size() == 7);
  CHECK(s.has_simplex({1, 3}));
  CHECK(s.dimension() == 2);
  CHECK(s.simplices().front() == Simplex{1});
  CHECK(s.simplices().back() == Simplex{1, 2, 3});
}

TEST_CASE("components") {
  CHECK(components(oracle::cycle(4)).size() == 1);
  SimplicialComplex two;
  two.add_simplex({1, 2});
  two.add_simplex({5, 6});
  auto c = components(two);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == std::vector<int>{1, 2});
  CHECK(c[1] == std::vector<int>{5, 6});
  CHECK(components(subdivided("ababbabbb")).size() == 1);
}

TEST_CASE("remove_open_star") {
  auto p = remove_open_star(oracle::cycle(4), std::set<int>{1});
  CHECK(p.simplex_set() == oracle::path(3, 2).simplex_set());

  auto q = remove_open_star(oracle::path(3), std::set<int>{2});
  CHECK(q.vertices() == std::vector<int>{1, 3});
  CHECK(q.edges().empty());

  // octahedron minus a vertex: the opposite vertex coned over the equator
  auto o = remove_open_star(oracle::octahedron(), std::set<int>{0});
  SimplicialComplex cone;
  for (int b : {1, 4})
    for (int c : {2, 5}) cone.add_simplex({3, b, c});
  CHECK(o.simplex_set() == cone.simplex_set());
  CHECK(oracle::b0(o) == 1);
  for (const auto& s : o.simplex_set()) CHECK(std::find(s.begin(), s.end(), 0) == s.end());

  SimplicialComplex edge;
  edge.add_vertex(1);
  edge.add_vertex(3);
  CHECK_THROWS_AS(remove_open_star(hollow_triangle(), edge), Error);
}

TEST_CASE("is_cut_set") {
  const auto wh = subdivided("ababbabbb");
  const int b = letter_vertex(2);
  CHECK(is_cut_set(wh, {b}));
  CHECK(is_cut_set(oracle::cycle(4), {1, 3}));
  const auto whp = subdivided("aBaab");
  for (int v : whp.vertices()) CHECK_FALSE(is_cut_set(whp, {v}));
  try {
    is_cut_set(oracle::cycle(4), {1, 2});
    FAIL("expected adjacency error");
  } catch (const Error& e) {
    CHECK(e.code() == "simplicial.adjacent");
  }
}

TEST_CASE("min_cut_cardinality") {
  auto c = min_cut_cardinality(oracle::cycle(4), 3);
  REQUIRE(c);
  CHECK(c->k == 2);
  CHECK(c->vertices == std::vector<int>{1, 3});

  auto w = min_cut_cardinality(subdivided("ababbabbb"), 2);
  REQUIRE(w);
  CHECK(w->k == 1);

  // only antipodal pairs are non-adjacent; each leaves a 4-cycle
  CHECK_FALSE(min_cut_cardinality(oracle::octahedron(), 2));
  for (int i = 0; i < 3; ++i) CHECK(oracle::b0_without(oracle::octahedron(), {i, i + 3}) == 1);

  SimplicialComplex two;
  two.add_vertex(1);
  two.add_vertex(2);
  CHECK_THROWS_AS(min_cut_cardinality(two, 2), Error);
}

TEST_CASE("min_cut_cardinality agrees with brute force on random graphs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = oracle::random_flag(rng, 7, 0.35, true);
    auto got = min_cut_cardinality(s, 3);
    // brute force: smallest independent set whose deletion disconnects
    std::optional<int> best;
    const auto vs = s.vertices();
    for (unsigned mask = 1; mask < (1u << vs.size()); ++mask) {
      std::set<int> cut;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (mask & (1u << i)) cut.insert(vs[i]);
      if (cut.size() > 3) continue;
      bool indep = true;
      for (int x : cut)
        for (int y : cut)
          if (x < y && s.has_simplex({x, y})) indep = false;
      if (!indep || oracle::b0_without(s, cut) < 2) continue;
      if (!best || static_cast<int>(cut.size()) < *best) best = static_cast<int>(cut.size());
    }
    CHECK(got.has_value() == best.has_value());
    if (got && best) CHECK(got->k == *best);
  }
}

TEST_CASE("find_cut_simplex") {
  auto w = find_cut_simplex(subdivided("ababbabbb"));
  REQUIRE(w);
  CHECK(w->size() == 1);
  // 4-cycle: 4 vertices leave paths, 4 edges leave an edge
  CHECK_FALSE(find_cut_simplex(oracle::cycle(4)));
  CHECK_FALSE(find_cut_simplex(subdivided("aBaab")));
  // brute-force confirmation for the subdivided Whitehead graph of w'
  const auto s = subdivided("aBaab");
  CHECK(s.vertices().size() == 9);
  for (const auto& sigma : s.simplex_set())
    CHECK(oracle::b0_without(s, std::set<int>(sigma.begin(), sigma.end())) == 1);
}

TEST_CASE("connected_sum") {
  SUBCASE("cone on the link leaves B with the open star of b removed") {
    std::mt19937 rng(3);
    for (int t = 0; t < 20; ++t) {
      auto sp = oracle::random_splice(rng, 7, 3, 0.4, true);
      SimplicialComplex cone;
      cone.add_vertex(sp.vb);
      const auto link = sp.b.link(sp.vb);
      for (const auto& sigma : link.simplex_set()) {
        Simplex s = sigma;
        s.push_back(sp.vb);
        cone.add_simplex(s);
      }
      std::map<int, int> id;
      for (int v : link.vertices()) id[v] = v;
      auto sum = connected_sum(cone, sp.vb, sp.b, sp.vb, id);
      CHECK(isomorphism(sum.complex, remove_open_star(sp.b, std::set<int>{sp.vb}), false).has_value());
      CHECK(oracle::b0(sum.complex) == oracle::b0_without(sp.b, {sp.vb}));
    }
  }
  SUBCASE("two 4-cycles give a 4-cycle") {
    auto a = oracle::cycle(4, 1);
    auto b = oracle::cycle(4, 11);
    auto sum = connected_sum(a, 1, b, 11, {{2, 12}, {4, 14}});
    CHECK(sum.complex.vertices().size() == 4);
    CHECK(isomorphism(sum.complex, oracle::cycle(4), false).has_value());
  }
  SUBCASE("bad link map") {
    auto a = oracle::cycle(4, 1);
    auto b = oracle::path(3, 11);
    try {
      connected_sum(a, 1, b, 12, {{2, 11}});
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.code() == "simplicial.bad_link_map");
    }
  }
}

TEST_CASE("flagness") {
  CHECK_FALSE(is_flag(hollow_triangle()));
  auto filled = flag_complete(hollow_triangle());
  CHECK(filled.has_simplex({1, 2, 3}));
  CHECK(is_flag(oracle::cycle(4)));
  CHECK(is_flag(oracle::octahedron()));
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    auto s = oracle::random_flag(rng, 8, 0.5, false);
    CHECK(is_flag(s));
    CHECK(flag_complete(s.vertices(), s.edges()).simplex_set() == s.simplex_set());
  }
}

TEST_CASE("reduced_h0_classes") {
  CHECK(reduced_h0_classes(oracle::cycle(4)).empty());
  SimplicialComplex two;
  two.add_simplex({1, 2});
  two.add_vertex(5);
  auto c2 = reduced_h0_classes(two);
  REQUIRE(c2.size() == 1);
  CHECK(c2[0].support == std::set<int>{5});
  two.add_vertex(7);
  auto c3 = reduced_h0_classes(two);
  CHECK(c3.size() == 3);
  for (const auto& c : c3) CHECK_FALSE(c.value(1));
}

TEST_CASE("isomorphism") {
  CHECK(isomorphism(oracle::cycle(4), oracle::cycle(4, 10), false));
  CHECK_FALSE(isomorphism(oracle::cycle(4), oracle::path(4), false));
  // Whitehead graph of w' is simple: compare it unsubdivided with the template
  auto g = whitehead_graph(make_cyclic_word(parse_word("aBaab")));
  SimplicialComplex wh;
  for (auto [a, b] : g.edges) wh.add_simplex({a, b});
  SimplicialComplex templ;
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}})
    templ.add_simplex({a, b});
  CHECK(wh.edges().size() == 5);
  CHECK(isomorphism(wh, templ, false));
  SimplicialComplex a = oracle::cycle(4), b = oracle::cycle(4);
  a.set_label(1, 7);
  b.set_label(2, 7);
  auto m = isomorphism(a, b, true);
  REQUIRE(m);
  CHECK(m->at(1) == 2);
  b.set_label(2, 8);
  CHECK_FALSE(isomorphism(a, b, true));
}

TEST_CASE("splicing lemmas on random instances") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 80; ++t) {
    auto sp = oracle::random_splice(rng, 7, 4, 0.4, t % 2 == 0);
    auto sum = connected_sum(sp.a, sp.va, sp.b, sp.vb, sp.phi).complex;
    CHECK(oracle::b0(sum) == betti0(sum));
    if (betti0(sp.b) == 1 && betti0(sum) > 1) CHECK(is_cut_set(sp.a, {sp.va}));
    bool a_cut = oracle::b0_without(sp.a, {sp.va}) >= 2;
    if (!a_cut) CHECK(betti0(sum) == betti0(sp.b));
  }
}

TEST_CASE("json and dot round trip") {
  auto s = oracle::octahedron();
  s.set_label(0, 42);
  auto back = simplicial_from_json(to_json(s));
  CHECK(back == s);
  CHECK(to_dot(s).find("label=\"42\"") != std::string::npos);
}
