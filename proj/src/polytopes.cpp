#include "hkrank/polytopes.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hkrank {

namespace {

void check_guard(const Graph& g) {
  if (g.order() > kEnumerationGuard)
    throw std::length_error("graph has " + std::to_string(g.order()) + " vertices; enumeration guard is " +
                            std::to_string(kEnumerationGuard));
}

std::vector<VertexSet> closed_neighbourhoods(const Graph& g) {
  std::vector<VertexSet> out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    VertexSet m = VertexSet{1} << v;
    for (Vertex w : g.neighbors(v)) m |= VertexSet{1} << w;
    out[v] = m;
  }
  return out;
}

void branch(const std::vector<VertexSet>& closed, VertexSet chosen, VertexSet open,
            const std::function<void(VertexSet)>& visit) {
  if (open == 0) {
    visit(chosen);
    return;
  }
  Vertex pick = 0;
  int best = -1;
  for (VertexSet rest = open; rest != 0; rest &= rest - 1) {
    const Vertex v = static_cast<Vertex>(std::countr_zero(rest));
    const int deg = std::popcount(closed[v] & open);
    if (best == -1 || deg < best) {
      best = deg;
      pick = v;
    }
  }
  const VertexSet bit = VertexSet{1} << pick;
  branch(closed, chosen | bit, open & ~closed[pick], visit);
  branch(closed, chosen, open & ~bit, visit);
}

}  // namespace

std::vector<Vertex> members(VertexSet s) {
  std::vector<Vertex> out;
  for (; s != 0; s &= s - 1) out.push_back(static_cast<Vertex>(std::countr_zero(s)));
  return out;
}

VertexSet to_vertex_set(const std::vector<Vertex>& vertices) {
  VertexSet s = 0;
  for (Vertex v : vertices) {
    if (v >= 64) throw std::out_of_range("vertex index too large for a bit set");
    s |= VertexSet{1} << v;
  }
  return s;
}

RationalVector incidence(VertexSet s, std::size_t n) {
  RationalVector x(n, Rational(0));
  for (Vertex v : members(s)) {
    if (v >= n) throw std::out_of_range("set member outside the vertex range");
    x[v] = 1;
  }
  return x;
}

bool is_stable(const Graph& g, VertexSet s) {
  const auto vs = members(s);
  for (std::size_t a = 0; a < vs.size(); ++a) {
    if (vs[a] >= g.order()) return false;
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      if (vs[b] >= g.order() || g.adjacent(vs[a], vs[b])) return false;
    }
  }
  return true;
}

void for_each_stable_set(const Graph& g, const std::function<void(VertexSet)>& visit) {
  check_guard(g);
  const VertexSet all = g.order() == 64 ? ~VertexSet{0} : (VertexSet{1} << g.order()) - 1;
  branch(closed_neighbourhoods(g), 0, all, visit);
}

StableSetList enumerate_stable_sets(const Graph& g) {
  StableSetList out;
  for_each_stable_set(g, [&](VertexSet s) { out.sets.push_back(s); });
  std::sort(out.sets.begin(), out.sets.end());
  return out;
}

std::size_t alpha(const Graph& g) {
  int best = 0;
  for_each_stable_set(g, [&](VertexSet s) { best = std::max(best, std::popcount(s)); });
  return static_cast<std::size_t>(best);
}

std::vector<VertexSet> maximal_stable_sets(const Graph& g) {
  const auto closed = closed_neighbourhoods(g);
  const VertexSet all = (VertexSet{1} << g.order()) - 1;
  std::vector<VertexSet> out;
  for_each_stable_set(g, [&](VertexSet s) {
    VertexSet dominated = 0;
    for (Vertex v : members(s)) dominated |= closed[v];
    if (dominated == all) out.push_back(s);
  });
  std::sort(out.begin(), out.end());
  return out;
}

MaximalSetClassification classify_maximal_stable_sets(int k) {
  if (k < 2 || k > 8) throw std::invalid_argument("classification supports 2 <= k <= 8");
  const Graph g = build_hk(k);
  MaximalSetClassification out;
  out.k = k;
  VertexSet layer[3] = {0, 0, 0};
  for (int i = 1; i <= k; ++i) {
    for (int p = 0; p < 3; ++p) layer[p] |= VertexSet{1} << hk_index(i, p);
  }
  std::vector<VertexSet> class_two_shapes;
  for (int j = 1; j <= k; ++j) {
    class_two_shapes.push_back((layer[1] & ~(VertexSet{1} << hk_index(j, 1))) | (VertexSet{1} << hk_index(j, 0)) |
                               (VertexSet{1} << hk_index(j, 2)));
  }
  for (VertexSet s : maximal_stable_sets(g)) {
    bool one_per_triple = true;
    for (int i = 1; i <= k; ++i) {
      const VertexSet triple = VertexSet{7} << hk_index(i, 0);
      if (std::popcount(s & triple) != 1) one_per_triple = false;
    }
    const bool first = std::popcount(s) == k && one_per_triple && ((s & layer[0]) == 0 || (s & layer[2]) == 0);
    const bool second = std::popcount(s) == k + 1 &&
                        std::find(class_two_shapes.begin(), class_two_shapes.end(), s) != class_two_shapes.end();
    if (first && !second) {
      out.class_one.push_back(s);
    } else if (second && !first) {
      out.class_two.push_back(s);
    } else {
      out.unclassified.push_back(s);
    }
  }
  return out;
}

LinearInequality b_inequality(int k, int j, int j_prime) {
  if (k < 2) throw std::invalid_argument("H_k requires k >= 2");
  if (j == j_prime) throw std::invalid_argument("B_{j,j'} requires j != j'");
  if (j < 1 || j > k || j_prime < 1 || j_prime > k) throw std::invalid_argument("index outside [k]");
  LinearInequality ineq{RationalVector(3 * k, Rational(1)), Rational(k - 1)};
  ineq.coeffs[hk_index(j, 1)] = 0;
  ineq.coeffs[hk_index(j, 2)] = 0;
  ineq.coeffs[hk_index(j_prime, 0)] = 0;
  ineq.coeffs[hk_index(j_prime, 1)] = 0;
  return ineq;
}

LinearInequality symmetric_inequality(int k) {
  if (k < 2) throw std::invalid_argument("H_k requires k >= 2");
  LinearInequality ineq{RationalVector(3 * k), Rational(k * (k - 1))};
  for (int i = 1; i <= k; ++i) {
    ineq.coeffs[hk_index(i, 0)] = k - 1;
    ineq.coeffs[hk_index(i, 1)] = k - 2;
    ineq.coeffs[hk_index(i, 2)] = k - 1;
  }
  return ineq;
}

LinearInequality nonnegativity(std::size_t n, Vertex v) {
  if (v >= n) throw std::out_of_range("vertex outside dimension");
  LinearInequality ineq{RationalVector(n, Rational(0)), Rational(0)};
  ineq.coeffs[v] = -1;
  return ineq;
}

namespace {

void check_dimension(const Graph& g, const LinearInequality& ineq) {
  if (ineq.coeffs.size() != g.order()) throw std::invalid_argument("inequality dimension does not match graph");
}

Rational set_value(const LinearInequality& ineq, VertexSet s) {
  Rational sum = 0;
  for (Vertex v : members(s)) sum += ineq.coeffs[v];
  return sum;
}

// Row-echelon basis that accepts vectors one at a time.
class IncrementalRank {
 public:
  explicit IncrementalRank(std::size_t dim) : dim_(dim) {}
  std::size_t rank() const { return rows_.size(); }

  void insert(RationalVector v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t col = pivots_[r];
      if (v[col] == 0) continue;
      const Rational f = v[col] / rows_[r][col];
      for (std::size_t c = col; c < dim_; ++c) v[c] -= f * rows_[r][c];
    }
    for (std::size_t c = 0; c < dim_; ++c) {
      if (v[c] != 0) {
        rows_.push_back(std::move(v));
        pivots_.push_back(c);
        return;
      }
    }
  }

 private:
  std::size_t dim_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

bool is_valid(const Graph& g, const LinearInequality& ineq) {
  check_dimension(g, ineq);
  bool ok = true;
  for_each_stable_set(g, [&](VertexSet s) {
    if (ok && set_value(ineq, s) > ineq.rhs) ok = false;
  });
  return ok;
}

std::size_t tight_affine_rank(const Graph& g, const LinearInequality& ineq) {
  check_dimension(g, ineq);
  const std::size_t n = g.order();
  IncrementalRank basis(n);
  std::optional<RationalVector> anchor;
  for_each_stable_set(g, [&](VertexSet s) {
    if (basis.rank() + 1 >= n + 1 || set_value(ineq, s) != ineq.rhs) return;
    RationalVector x = incidence(s, n);
    if (!anchor) {
      anchor = std::move(x);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] -= (*anchor)[i];
    basis.insert(std::move(x));
  });
  return anchor ? basis.rank() + 1 : 0;
}

bool is_facet(const Graph& g, const LinearInequality& ineq) {
  check_dimension(g, ineq);
  if (std::all_of(ineq.coeffs.begin(), ineq.coeffs.end(), [](const Rational& q) { return q == 0; })) return false;
  return is_valid(g, ineq) && tight_affine_rank(g, ineq) == g.order();
}

bool cone_frac_member(const Graph& g, std::span<const Rational> vec) {
  if (vec.size() != g.order() + 1) throw std::invalid_argument("cone vector must have length |V|+1");
  const Rational& lambda = vec[0];
  if (lambda < 0) return false;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (vec[v + 1] < 0 || vec[v + 1] > lambda) return false;
  }
  for (auto [u, v] : g.edges()) {
    if (vec[u + 1] + vec[v + 1] > lambda) return false;
  }
  return true;
}

nlohmann::json to_json(const Graph& g, const LinearInequality& ineq) {
  check_dimension(g, ineq);
  nlohmann::json coeffs = nlohmann::json::object();
  for (Vertex v = 0; v < g.order(); ++v) {
    if (ineq.coeffs[v] != 0) coeffs[g.label(v)] = to_string(ineq.coeffs[v]);
  }
  return {{"coeffs", coeffs}, {"rhs", to_string(ineq.rhs)}};
}

LinearInequality inequality_from_json(const Graph& g, const nlohmann::json& j) {
  LinearInequality ineq{RationalVector(g.order(), Rational(0)), parse_rational(j.at("rhs").get<std::string>())};
  for (const auto& [label, value] : j.at("coeffs").items()) {
    ineq.coeffs[g.index(label)] = parse_rational(value.get<std::string>());
  }
  return ineq;
}

}  // namespace hkrank
