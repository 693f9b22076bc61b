#ifndef HKRANK_GRAPH_HPP
#define HKRANK_GRAPH_HPP

#include "hkrank/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hkrank {

using Vertex = std::size_t;

/// Simple undirected graph over a fixed, ordered list of string labels.
/// Vertex indices follow label order; builders below fix that order so that
/// coordinate vectors indexed by vertex are reproducible.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<std::string> labels);

  std::size_t order() const { return labels_.size(); }
  std::size_t size() const { return edge_count_; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Vertex v) const { return labels_.at(v); }
  std::optional<Vertex> find(std::string_view label) const;
  /// Throws std::out_of_range for unknown labels.
  Vertex index(std::string_view label) const;

  /// Throws std::invalid_argument on self-loops or out-of-range endpoints. Idempotent.
  void add_edge(Vertex u, Vertex v);
  bool adjacent(Vertex u, Vertex v) const { return matrix_[u * order() + v] != 0; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }

  /// Edges as (u, v) with u < v, sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// Same labels in the same order and the same edge set.
  friend bool operator==(const Graph& g, const Graph& h);

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<char> matrix_;
  std::size_t edge_count_ = 0;
};

Graph make_graph(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& edges);

// ---- H_k ----------------------------------------------------------------

/// Vertex i_p of H_k, i in [1, k], p in {0, 1, 2}.
struct HkLabel {
  int i = 1;
  int p = 0;
  friend bool operator==(const HkLabel&, const HkLabel&) = default;
};

std::string to_string(HkLabel v);
/// Parses "i_p"; throws std::invalid_argument.
HkLabel parse_hk_label(std::string_view text);
/// Position of i_p in the order 1_0, 1_1, 1_2, 2_0, ...
constexpr Vertex hk_index(int i, int p) { return static_cast<Vertex>(3 * (i - 1) + p); }
constexpr HkLabel hk_label_at(Vertex v) { return {static_cast<int>(v / 3) + 1, static_cast<int>(v % 3)}; }

/// H_k on 3k vertices: paths i_0 - i_1 - i_2 plus i_0 ~ j_2 for i != j. Requires k >= 2.
Graph build_hk(int k);

// ---- other families --------------------------------------------------------

Graph build_path(int vertices);  // labels "0".."n-1"
Graph build_cycle(int vertices);
Graph build_complete(int vertices);
Graph build_empty(int vertices);
Graph build_petersen();  // Kneser graph K(5,2), labels "ab"
Graph complement(const Graph& g);

/// L_k(G): vertices i_p; i_p ~ j_q iff (i == j and pq in E) or (i != j, p != q, pq not in E).
Graph build_lk(const Graph& base, int k);
/// L_k(G1, G2): i_p ~ j_q iff (i == j and pq in E(G1)) or (i != j and pq in E(G2)).
/// Requires identical label lists.
Graph build_lk2(const Graph& g1, const Graph& g2, int k);
/// Q_{l,S}: binary strings of length l, adjacent iff Hamming distance is in S.
Graph build_qls(int l, const std::set<int>& distances);

// ---- deletion / destruction --------------------------------------------------

Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep);
Graph delete_vertices(const Graph& g, const std::vector<Vertex>& removed);
/// G minus v and all its neighbours.
Graph destroy(const Graph& g, Vertex v);
Graph destroy(const Graph& g, std::string_view label);

bool is_bipartite(const Graph& g);
bool is_connected(const Graph& g);
std::vector<std::size_t> degree_sequence(const Graph& g);  // sorted descending

// ---- isomorphism / automorphisms ------------------------------------------

/// Backtracking search with degree and adjacency-consistency pruning; returns
/// phi with {u, v} in E(g) iff {phi(u), phi(v)} in E(h).
std::optional<std::vector<Vertex>> find_isomorphism(const Graph& g, const Graph& h);
bool is_isomorphic(const Graph& g, const Graph& h);
bool is_isomorphism(const Graph& g, const Graph& h, const std::vector<Vertex>& phi);

struct Automorphism {
  std::vector<Vertex> image;  // image[v] = sigma(v)
  Vertex operator()(Vertex v) const { return image.at(v); }
};

bool is_automorphism(const Graph& g, const Automorphism& sigma);
Automorphism compose(const Automorphism& outer, const Automorphism& inner);  // outer o inner
/// sigma(x)_i = x_{sigma(i)}
RationalVector apply(const Automorphism& sigma, std::span<const Rational> x);

/// Automorphisms that spread every block of a vertex partition evenly onto itself.
struct BalancingFamily {
  std::vector<std::vector<Vertex>> partition;
  std::vector<Automorphism> automorphisms;
};

/// Empty when fam is a valid balancing family for g; otherwise one message per violation.
std::vector<std::string> balancing_violations(const Graph& g, const BalancingFamily& fam);

/// Rotations sigma_1^j (blocks [k]_0, [k]_1, [k]_2) and rotations composed with the
/// reflection j_p -> j_{2-p} (blocks [k]_0 u [k]_2, [k]_1).
std::pair<BalancingFamily, BalancingFamily> hk_balancing_families(int k);
Automorphism hk_rotation(int k);
Automorphism hk_reflection(int k);

/// Block average sum_l avg_{A_l}(x) chi_{A_l}. Throws on dimension mismatch.
RationalVector symmetrize(const Graph& g, const BalancingFamily& fam, std::span<const Rational> x);
/// (1/|S|) sum_sigma sigma(x).
RationalVector automorphism_average(const BalancingFamily& fam, std::span<const Rational> x);

// ---- serialization ---------------------------------------------------------

nlohmann::json to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace hkrank

#endif
