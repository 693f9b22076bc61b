#ifndef HKRANK_POLYTOPES_HPP
#define HKRANK_POLYTOPES_HPP

#include "hkrank/graph.hpp"
#include "hkrank/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hkrank {

/// Largest graph the brute-force routines accept.
inline constexpr std::size_t kEnumerationGuard = 34;

/// Stable sets are bit masks over vertex indices.
using VertexSet = std::uint64_t;

struct StableSetList {
  std::vector<VertexSet> sets;
};

std::vector<Vertex> members(VertexSet s);
VertexSet to_vertex_set(const std::vector<Vertex>& vertices);
RationalVector incidence(VertexSet s, std::size_t n);
bool is_stable(const Graph& g, VertexSet s);

/// Streams every stable set (including the empty set) exactly once. Branches on
/// the lowest-degree remaining vertex. Throws std::length_error above the guard.
void for_each_stable_set(const Graph& g, const std::function<void(VertexSet)>& visit);
StableSetList enumerate_stable_sets(const Graph& g);
std::size_t alpha(const Graph& g);
std::vector<VertexSet> maximal_stable_sets(const Graph& g);

struct MaximalSetClassification {
  int k = 0;
  std::vector<VertexSet> class_one;   // size k, one vertex per triple, misses [k]_0 or [k]_2
  std::vector<VertexSet> class_two;   // ([k]_1 \ {j_1}) u {j_0, j_2}
  std::vector<VertexSet> unclassified;
  bool ok() const { return unclassified.empty(); }
};

/// Requires 2 <= k <= 8.
MaximalSetClassification classify_maximal_stable_sets(int k);

struct LinearInequality {
  RationalVector coeffs;
  Rational rhs;

  Rational lhs(std::span<const Rational> x) const { return dot(coeffs, x); }
  bool satisfied_by(std::span<const Rational> x) const { return lhs(x) <= rhs; }
  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
};

/// sum of x_i over B_{j,j'} = V \ {j_1, j_2, j'_0, j'_1} at most k-1. Throws if j == j'.
LinearInequality b_inequality(int k, int j, int j_prime);
/// (k-1) on [k]_0 u [k]_2, (k-2) on [k]_1, right-hand side k(k-1).
LinearInequality symmetric_inequality(int k);
/// -x_v <= 0
LinearInequality nonnegativity(std::size_t n, Vertex v);

bool is_valid(const Graph& g, const LinearInequality& ineq);
/// Affine rank of the tight incidence vectors (number of affinely independent points).
std::size_t tight_affine_rank(const Graph& g, const LinearInequality& ineq);
/// Valid, not the trivial 0 <= 0, and |V| affinely independent tight points.
bool is_facet(const Graph& g, const LinearInequality& ineq);

/// [lambda; x] with lambda >= 0, 0 <= x_i <= lambda and x_i + x_j <= lambda on edges.
bool cone_frac_member(const Graph& g, std::span<const Rational> vec);

nlohmann::json to_json(const Graph& g, const LinearInequality& ineq);
LinearInequality inequality_from_json(const Graph& g, const nlohmann::json& j);

}  // namespace hkrank

#endif
