#include "hkrank/graph.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace hkrank;

namespace {

Graph relabel_randomly(const Graph& g, std::mt19937& rng) {
  std::vector<Vertex> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < g.order(); ++i) labels.push_back("v" + std::to_string(i));
  Graph h(labels);
  for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
  return h;
}

}  // namespace

TEST_CASE("H_2 is the six-cycle") {
  const Graph g = build_hk(2);
  CHECK(g.order() == 6);
  CHECK(g.size() == 6);
  CHECK(is_connected(g));
  CHECK(is_bipartite(g));
  CHECK(is_isomorphic(g, build_cycle(6)));
}

TEST_CASE("H_k edge count and adjacency rule") {
  for (int k = 2; k <= 9; ++k) {
    const Graph g = build_hk(k);
    CHECK(g.size() == static_cast<std::size_t>(2 * k + k * (k - 1)));
    for (int i = 1; i <= k; ++i) {
      for (int j = 1; j <= k; ++j) {
        for (int p = 0; p < 3; ++p) {
          for (int q = 0; q < 3; ++q) {
            const bool expect = (i == j && std::abs(p - q) == 1) || (i != j && p == 0 && q == 2) ||
                                (i != j && p == 2 && q == 0);
            CHECK(g.adjacent(hk_index(i, p), hk_index(j, q)) == expect);
          }
        }
      }
    }
  }
  CHECK(build_hk(3).size() == 12);
  CHECK(build_hk(3).label(hk_index(2, 1)) == "2_1");
  CHECK(parse_hk_label("3_2").i == 3);
}

TEST_CASE("destruction") {
  CHECK(is_bipartite(destroy(build_hk(2), "1_1")));
  for (int k = 3; k <= 5; ++k) {
    CHECK(is_isomorphic(destroy(build_hk(k), hk_index(1, 1)), build_hk(k - 1)));
  }
  for (int k = 3; k <= 4; ++k) {
    CHECK(is_bipartite(destroy(build_hk(k), hk_index(1, 0))));
    CHECK(is_bipartite(destroy(build_hk(k), hk_index(2, 2))));
  }
  const Graph g = build_hk(4);
  CHECK(delete_vertices(g, {}) == g);
  CHECK(destroy(g, hk_index(1, 1)).order() == 9);
}

TEST_CASE("layered constructions") {
  for (int k = 2; k <= 5; ++k) CHECK(build_lk(build_path(3), k) == build_hk(k));
  const Graph clebsch = build_lk(build_cycle(4), 4);
  CHECK(clebsch.order() == 16);
  CHECK(degree_sequence(clebsch) == std::vector<std::size_t>(16, 5));
  CHECK(build_lk2(build_cycle(4), complement(build_cycle(4)), 3) == build_lk(build_cycle(4), 3));
  const Graph two = build_lk2(build_empty(1), build_empty(1), 2);
  CHECK(two.order() == 2);
  CHECK(two.size() == 0);
  CHECK(is_isomorphic(build_lk2(build_qls(2, {1}), build_qls(2, {2}), 4), build_qls(4, {1, 4})));
  CHECK(is_isomorphic(clebsch, build_qls(4, {1, 4})));
}

TEST_CASE("binary string graphs") {
  const Graph cube = build_qls(3, {1});
  CHECK(cube.order() == 8);
  CHECK(cube.size() == 12);
  CHECK(is_bipartite(cube));
  CHECK(is_bipartite(build_qls(3, {1, 3})));
  CHECK(is_bipartite(build_qls(5, {1, 5})));
  CHECK_FALSE(is_bipartite(build_qls(4, {1, 4})));
  const Graph edge = build_qls(1, {1});
  CHECK(edge.order() == 2);
  CHECK(edge.size() == 1);
}

TEST_CASE("Petersen graph and the Clebsch destruction") {
  const Graph p = build_petersen();
  CHECK(p.order() == 10);
  CHECK(p.size() == 15);
  CHECK(degree_sequence(p) == std::vector<std::size_t>(10, 3));
  const Graph clebsch = build_lk(build_cycle(4), 4);
  for (Vertex v = 0; v < clebsch.order(); ++v) CHECK(is_isomorphic(destroy(clebsch, v), p));
}

TEST_CASE("isomorphism search") {
  std::mt19937 rng(3);
  for (const Graph& g : {build_hk(4), build_petersen(), build_qls(4, {1, 4}), build_hk(7)}) {
    const Graph h = relabel_randomly(g, rng);
    const auto phi = find_isomorphism(g, h);
    REQUIRE(phi.has_value());
    CHECK(is_isomorphism(g, h, *phi));
  }
  const Graph triangles = make_graph({"a", "b", "c", "d", "e", "f"},
                                     {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"d", "e"}, {"e", "f"}, {"d", "f"}});
  CHECK_FALSE(is_isomorphic(build_cycle(6), triangles));
  CHECK_FALSE(is_isomorphic(build_hk(3), build_cycle(9)));
}

TEST_CASE("balancing families") {
  const auto [s1, s2] = hk_balancing_families(3);
  const Graph g = build_hk(3);
  CHECK(s1.automorphisms.size() == 3);
  CHECK(s2.automorphisms.size() == 6);
  CHECK(balancing_violations(g, s1).empty());
  CHECK(balancing_violations(g, s2).empty());
  for (const auto& fam : {s1, s2}) {
    for (const auto& sigma : fam.automorphisms) CHECK(is_automorphism(g, sigma));
  }
  // count of automorphisms sending 1_1 to 2_1
  int count = 0;
  for (const auto& sigma : s2.automorphisms) count += sigma(hk_index(1, 1)) == hk_index(2, 1);
  CHECK(count == 2);
  count = 0;
  for (const auto& sigma : s1.automorphisms) count += sigma(hk_index(1, 0)) == hk_index(3, 0);
  CHECK(count == 1);

  const Automorphism refl = hk_reflection(3);
  for (int j = 1; j <= 3; ++j) {
    CHECK(refl(hk_index(j, 0)) == hk_index(j, 2));
    CHECK(refl(hk_index(j, 2)) == hk_index(j, 0));
    CHECK(refl(hk_index(j, 1)) == hk_index(j, 1));
  }
  // a non-balancing family: the identity alone
  BalancingFamily bad{s1.partition, {Automorphism{std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 8}}}};
  CHECK_FALSE(balancing_violations(g, bad).empty());
}

TEST_CASE("symmetrization") {
  const Graph g = build_hk(3);
  const auto [s1, s2] = hk_balancing_families(3);
  const RationalVector constant(9, ratio(2, 7));
  CHECK(symmetrize(g, s2, constant) == constant);
  RationalVector e(9, Rational(0));
  e[hk_index(1, 0)] = 1;
  const auto avg = symmetrize(g, s2, e);
  for (int j = 1; j <= 3; ++j) {
    CHECK(avg[hk_index(j, 0)] == ratio(1, 6));
    CHECK(avg[hk_index(j, 2)] == ratio(1, 6));
    CHECK(avg[hk_index(j, 1)] == 0);
  }
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 13);
  for (int k : {3, 5}) {
    const Graph h = build_hk(k);
    const auto fams = hk_balancing_families(k);
    for (int t = 0; t < 50; ++t) {
      RationalVector x(3 * k);
      for (auto& q : x) q = ratio(num(rng), den(rng));
      CHECK(symmetrize(h, fams.first, x) == automorphism_average(fams.first, x));
      CHECK(symmetrize(h, fams.second, x) == automorphism_average(fams.second, x));
    }
  }
}

TEST_CASE("graph JSON round trip") {
  const Graph g = build_hk(4);
  CHECK(graph_from_json(to_json(g)) == g);
  CHECK_THROWS(graph_from_json(nlohmann::json{{"labels", {"a"}}, {"edges", {{"a", "b"}}}}));
  Graph h({"x", "y"});
  CHECK_THROWS(h.add_edge(0, 0));
  CHECK_THROWS(h.add_edge(0, 5));
}
