#include "hkrank/graph.hpp"
#include "hkrank/polytopes.hpp"

#include <doctest.h>

#include <algorithm>

using namespace hkrank;

namespace {

// every subset, kept when no edge lies inside
std::vector<VertexSet> brute_stable_sets(const Graph& g) {
  std::vector<VertexSet> out;
  const VertexSet all = VertexSet(1) << g.order();
  for (VertexSet s = 0; s < all; ++s) {
    bool ok = true;
    for (auto [u, v] : g.edges()) {
      if ((s >> u & 1) && (s >> v & 1)) ok = false;
    }
    if (ok) out.push_back(s);
  }
  return out;
}

std::vector<VertexSet> brute_maximal(const Graph& g) {
  const auto sets = brute_stable_sets(g);
  std::vector<VertexSet> out;
  for (VertexSet s : sets) {
    bool maximal = true;
    for (VertexSet t : sets) {
      if (t != s && (t & s) == s) maximal = false;
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("stable set enumeration matches brute force") {
  for (const Graph& g : {build_hk(2), build_hk(3), build_hk(4), build_petersen(), build_cycle(7), build_empty(3)}) {
    auto got = enumerate_stable_sets(g).sets;
    std::sort(got.begin(), got.end());
    CHECK(got == brute_stable_sets(g));
  }
  CHECK(enumerate_stable_sets(build_hk(2)).sets.size() == 18);
  CHECK(enumerate_stable_sets(build_empty(3)).sets.size() == 8);
  CHECK_THROWS(enumerate_stable_sets(build_cycle(40)));
}

TEST_CASE("independence numbers") {
  for (int k = 2; k <= 8; ++k) CHECK(alpha(build_hk(k)) == static_cast<std::size_t>(k + 1));
  CHECK(alpha(build_complete(5)) == 1);
  CHECK(alpha(build_lk(build_cycle(4), 4)) == 5);
  CHECK(alpha(build_petersen()) == 4);

  // the two maximum sets of H_2
  const Graph g = build_hk(2);
  std::vector<VertexSet> maximum;
  for (VertexSet s : enumerate_stable_sets(g).sets) {
    if (members(s).size() == 3) maximum.push_back(s);
  }
  std::sort(maximum.begin(), maximum.end());
  std::vector<VertexSet> expect = {to_vertex_set({hk_index(1, 0), hk_index(1, 2), hk_index(2, 1)}),
                                   to_vertex_set({hk_index(1, 1), hk_index(2, 0), hk_index(2, 2)})};
  std::sort(expect.begin(), expect.end());
  CHECK(maximum == expect);
}

TEST_CASE("maximal stable sets and their classification") {
  for (int k = 2; k <= 4; ++k) {
    auto got = maximal_stable_sets(build_hk(k));
    std::sort(got.begin(), got.end());
    CHECK(got == brute_maximal(build_hk(k)));
  }
  for (int k = 2; k <= 8; ++k) {
    const auto c = classify_maximal_stable_sets(k);
    CHECK(c.ok());
    CHECK(c.class_two.size() == static_cast<std::size_t>(k));
    CHECK(c.class_one.size() + c.class_two.size() == maximal_stable_sets(build_hk(k)).size());
    std::vector<Vertex> middle;
    for (int i = 1; i <= k; ++i) middle.push_back(hk_index(i, 1));
    CHECK(std::find(c.class_one.begin(), c.class_one.end(), to_vertex_set(middle)) != c.class_one.end());
  }
  CHECK_THROWS(classify_maximal_stable_sets(9));
}

TEST_CASE("B inequality and the symmetric inequality") {
  const auto b = b_inequality(3, 1, 2);
  CHECK(std::count(b.coeffs.begin(), b.coeffs.end(), Rational(1)) == 5);
  CHECK(b.rhs == 2);
  CHECK(b.coeffs[hk_index(1, 1)] == 0);
  CHECK(b.coeffs[hk_index(1, 2)] == 0);
  CHECK(b.coeffs[hk_index(2, 0)] == 0);
  CHECK(b.coeffs[hk_index(2, 1)] == 0);
  CHECK_THROWS(b_inequality(3, 2, 2));

  for (int k = 2; k <= 6; ++k) {
    const Graph g = build_hk(k);
    CHECK(is_facet(g, b_inequality(k, 1, 2)));
    CHECK(is_facet(g, b_inequality(k, k, 1)));
    CHECK(is_valid(g, symmetric_inequality(k)));
    CHECK(is_valid(g, nonnegativity(g.order(), 0)));
  }
  for (int k = 3; k <= 6; ++k) {
    // w(k-1, k-2) form: k-1 on outer triples, k-2 on the middle
    const auto s = symmetric_inequality(k);
    for (int i = 1; i <= k; ++i) {
      CHECK(s.coeffs[hk_index(i, 0)] == k - 1);
      CHECK(s.coeffs[hk_index(i, 1)] == k - 2);
      CHECK(s.coeffs[hk_index(i, 2)] == k - 1);
    }
    CHECK(s.rhs == k * (k - 1));
  }
  // a tightened rhs is not valid, a relaxed one is valid but not a facet
  auto tight = b_inequality(4, 1, 2);
  tight.rhs -= 1;
  CHECK_FALSE(is_valid(build_hk(4), tight));
  auto loose = b_inequality(4, 1, 2);
  loose.rhs += 1;
  CHECK(is_valid(build_hk(4), loose));
  CHECK_FALSE(is_facet(build_hk(4), loose));
}

TEST_CASE("cone(FRAC) membership") {
  const Graph g = build_hk(3);
  for (VertexSet s : enumerate_stable_sets(g).sets) {
    RationalVector v{1};
    const auto chi = incidence(s, g.order());
    v.insert(v.end(), chi.begin(), chi.end());
    CHECK(cone_frac_member(g, v));
  }
  CHECK(cone_frac_member(g, RationalVector(10, Rational(0))));
  RationalVector half(10, ratio(1, 2));
  half[0] = 1;
  CHECK(cone_frac_member(g, half));
  RationalVector edge_violation(10, Rational(0));
  edge_violation[0] = 1;
  edge_violation[1 + hk_index(1, 0)] = ratio(2, 3);
  edge_violation[1 + hk_index(1, 1)] = ratio(2, 3);
  CHECK_FALSE(cone_frac_member(g, edge_violation));
  RationalVector negative(10, Rational(0));
  negative[1] = -1;
  CHECK_FALSE(cone_frac_member(g, negative));
}

TEST_CASE("inequality JSON round trip") {
  const Graph g = build_hk(4);
  const auto b = b_inequality(4, 2, 3);
  CHECK(inequality_from_json(g, to_json(g, b)) == b);
}
