#include "hkrank/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <queue>
#include <stdexcept>

namespace hkrank {

Graph::Graph(std::vector<std::string> labels) : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  index_.reserve(n);
  for (Vertex v = 0; v < n; ++v) {
    if (!index_.emplace(labels_[v], v).second) throw std::invalid_argument("duplicate vertex label: " + labels_[v]);
  }
  adj_.resize(n);
  matrix_.assign(n * n, 0);
}

std::optional<Vertex> Graph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vertex Graph::index(std::string_view label) const {
  auto v = find(label);
  if (!v) throw std::out_of_range("unknown vertex: " + std::string(label));
  return *v;
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= order() || v >= order()) throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loop at " + labels_[u]);
  if (adjacent(u, v)) return;
  matrix_[u * order() + v] = 1;
  matrix_[v * order() + u] = 1;
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
  ++edge_count_;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

bool operator==(const Graph& g, const Graph& h) { return g.labels_ == h.labels_ && g.matrix_ == h.matrix_; }

Graph make_graph(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& edges) {
  Graph g(std::move(labels));
  for (const auto& [u, v] : edges) g.add_edge(g.index(u), g.index(v));
  return g;
}

std::string to_string(HkLabel v) { return std::to_string(v.i) + "_" + std::to_string(v.p); }

HkLabel parse_hk_label(std::string_view text) {
  auto us = text.find('_');
  if (us == std::string_view::npos) throw std::invalid_argument("not an i_p label: " + std::string(text));
  HkLabel out;
  auto [p1, e1] = std::from_chars(text.data(), text.data() + us, out.i);
  auto [p2, e2] = std::from_chars(text.data() + us + 1, text.data() + text.size(), out.p);
  if (e1 != std::errc() || e2 != std::errc() || p1 != text.data() + us || p2 != text.data() + text.size() || out.i < 1 ||
      out.p < 0 || out.p > 2)
    throw std::invalid_argument("not an i_p label: " + std::string(text));
  return out;
}

Graph build_hk(int k) {
  if (k < 2) throw std::invalid_argument("H_k requires k >= 2");
  std::vector<std::string> labels;
  labels.reserve(3 * k);
  for (int i = 1; i <= k; ++i) {
    for (int p = 0; p < 3; ++p) labels.push_back(to_string(HkLabel{i, p}));
  }
  Graph g(std::move(labels));
  for (int i = 1; i <= k; ++i) {
    g.add_edge(hk_index(i, 0), hk_index(i, 1));
    g.add_edge(hk_index(i, 1), hk_index(i, 2));
    for (int j = 1; j <= k; ++j) {
      if (i != j) g.add_edge(hk_index(i, 0), hk_index(j, 2));
    }
  }
  return g;
}

namespace {

std::vector<std::string> numbered_labels(int n) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  std::vector<std::string> labels;
  for (int v = 0; v < n; ++v) labels.push_back(std::to_string(v));
  return labels;
}

}  // namespace

Graph build_path(int vertices) {
  Graph g(numbered_labels(vertices));
  for (int v = 0; v + 1 < vertices; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph build_cycle(int vertices) {
  if (vertices < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  Graph g = build_path(vertices);
  g.add_edge(vertices - 1, 0);
  return g;
}

Graph build_complete(int vertices) {
  Graph g(numbered_labels(vertices));
  for (int u = 0; u < vertices; ++u) {
    for (int v = u + 1; v < vertices; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph build_empty(int vertices) { return Graph(numbered_labels(vertices)); }

Graph build_petersen() {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      labels.push_back(std::to_string(a) + std::to_string(b));
      pairs.emplace_back(a, b);
    }
  }
  Graph g(std::move(labels));
  for (std::size_t u = 0; u < pairs.size(); ++u) {
    for (std::size_t v = u + 1; v < pairs.size(); ++v) {
      auto [a, b] = pairs[u];
      auto [c, d] = pairs[v];
      if (a != c && a != d && b != c && b != d) g.add_edge(u, v);
    }
  }
  return g;
}

Graph complement(const Graph& g) {
  Graph out(g.labels());
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v = u + 1; v < g.order(); ++v) {
      if (!g.adjacent(u, v)) out.add_edge(u, v);
    }
  }
  return out;
}

namespace {

template <class Adjacent>
Graph layered(const std::vector<std::string>& base_labels, int k, Adjacent adjacent) {
  if (k < 2) throw std::invalid_argument("layered construction requires k >= 2");
  const std::size_t m = base_labels.size();
  std::vector<std::string> labels;
  labels.reserve(k * m);
  for (int i = 1; i <= k; ++i) {
    for (const auto& p : base_labels) labels.push_back(std::to_string(i) + "_" + p);
  }
  Graph g(std::move(labels));
  for (std::size_t u = 0; u < g.order(); ++u) {
    for (std::size_t v = u + 1; v < g.order(); ++v) {
      if (adjacent(u / m, u % m, v / m, v % m)) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace

Graph build_lk(const Graph& base, int k) {
  return layered(base.labels(), k, [&](std::size_t i, Vertex p, std::size_t j, Vertex q) {
    if (i == j) return base.adjacent(p, q);
    return p != q && !base.adjacent(p, q);
  });
}

Graph build_lk2(const Graph& g1, const Graph& g2, int k) {
  if (g1.labels() != g2.labels()) throw std::invalid_argument("L_k(G1, G2) requires identical vertex sets");
  return layered(g1.labels(), k, [&](std::size_t i, Vertex p, std::size_t j, Vertex q) {
    return i == j ? g1.adjacent(p, q) : g2.adjacent(p, q);
  });
}

Graph build_qls(int l, const std::set<int>& distances) {
  if (l < 1 || l > 20) throw std::invalid_argument("Q_{l,S} requires 1 <= l <= 20");
  if (distances.empty()) throw std::invalid_argument("Q_{l,S} requires nonempty S");
  for (int s : distances) {
    if (s < 1 || s > l) throw std::invalid_argument("Q_{l,S} requires S within [1, l]");
  }
  const std::size_t n = std::size_t{1} << l;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::string s(l, '0');
    for (int b = 0; b < l; ++b) {
      if (v >> (l - 1 - b) & 1U) s[b] = '1';
    }
    labels.push_back(std::move(s));
  }
  Graph g(std::move(labels));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (distances.contains(std::popcount(u ^ v))) g.add_edge(u, v);
    }
  }
  return g;
}

Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep) {
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (Vertex v : keep) labels.push_back(g.label(v));
  Graph out(std::move(labels));
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = a + 1; b < keep.size(); ++b) {
      if (g.adjacent(keep[a], keep[b])) out.add_edge(a, b);
    }
  }
  return out;
}

Graph delete_vertices(const Graph& g, const std::vector<Vertex>& removed) {
  std::vector<char> gone(g.order(), 0);
  for (Vertex v : removed) {
    if (v >= g.order()) throw std::out_of_range("unknown vertex index " + std::to_string(v));
    gone[v] = 1;
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!gone[v]) keep.push_back(v);
  }
  return induced_subgraph(g, keep);
}

Graph destroy(const Graph& g, Vertex v) {
  if (v >= g.order()) throw std::out_of_range("unknown vertex index " + std::to_string(v));
  std::vector<Vertex> removed = g.neighbors(v);
  removed.push_back(v);
  return delete_vertices(g, removed);
}

Graph destroy(const Graph& g, std::string_view label) { return destroy(g, g.index(label)); }

bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.order(), -1);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::queue<Vertex> queue;
    queue.push(s);
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop();
      for (Vertex w : g.neighbors(u)) {
        if (side[w] == -1) {
          side[w] = 1 - side[u];
          queue.push(w);
        } else if (side[w] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_connected(const Graph& g) {
  if (g.order() == 0) return true;
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.order();
}

std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> out;
  for (Vertex v = 0; v < g.order(); ++v) out.push_back(g.degree(v));
  std::sort(out.rbegin(), out.rend());
  return out;
}

bool is_automorphism(const Graph& g, const Automorphism& sigma) {
  return sigma.image.size() == g.order() && is_isomorphism(g, g, sigma.image);
}

Automorphism compose(const Automorphism& outer, const Automorphism& inner) {
  if (outer.image.size() != inner.image.size()) throw std::invalid_argument("composing maps of different size");
  Automorphism out;
  out.image.resize(inner.image.size());
  for (Vertex v = 0; v < inner.image.size(); ++v) out.image[v] = outer(inner(v));
  return out;
}

RationalVector apply(const Automorphism& sigma, std::span<const Rational> x) {
  if (x.size() != sigma.image.size()) throw std::invalid_argument("dimension mismatch");
  RationalVector out(x.size());
  for (Vertex i = 0; i < x.size(); ++i) out[i] = x[sigma(i)];
  return out;
}

std::vector<std::string> balancing_violations(const Graph& g, const BalancingFamily& fam) {
  std::vector<std::string> out;
  if (fam.automorphisms.empty()) out.push_back("empty automorphism family");
  std::vector<int> block_of(g.order(), -1);
  for (std::size_t b = 0; b < fam.partition.size(); ++b) {
    for (Vertex v : fam.partition[b]) {
      if (v >= g.order()) {
        out.push_back("partition mentions unknown vertex");
        return out;
      }
      if (block_of[v] != -1) out.push_back("vertex " + g.label(v) + " in two blocks");
      block_of[v] = static_cast<int>(b);
    }
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (block_of[v] == -1) out.push_back("vertex " + g.label(v) + " not covered by the partition");
  }
  if (!out.empty()) return out;
  for (std::size_t s = 0; s < fam.automorphisms.size(); ++s) {
    const auto& sigma = fam.automorphisms[s];
    if (!is_automorphism(g, sigma)) {
      out.push_back("map " + std::to_string(s) + " is not an automorphism");
      continue;
    }
    for (Vertex v = 0; v < g.order(); ++v) {
      if (block_of[sigma(v)] != block_of[v]) {
        out.push_back("map " + std::to_string(s) + " moves " + g.label(v) + " out of its block");
        break;
      }
    }
  }
  if (!out.empty()) return out;
  for (const auto& block : fam.partition) {
    if (fam.automorphisms.size() % block.size() != 0) {
      out.push_back("family size not divisible by block size " + std::to_string(block.size()));
      continue;
    }
    const std::size_t expected = fam.automorphisms.size() / block.size();
    for (Vertex i : block) {
      for (Vertex j : block) {
        std::size_t count = 0;
        for (const auto& sigma : fam.automorphisms) count += sigma(i) == j;
        if (count != expected) {
          out.push_back("|{sigma : sigma(" + g.label(i) + ") = " + g.label(j) + "}| = " + std::to_string(count) +
                        ", expected " + std::to_string(expected));
        }
      }
    }
  }
  return out;
}

Automorphism hk_rotation(int k) {
  Automorphism sigma;
  sigma.image.resize(3 * k);
  for (int j = 1; j <= k; ++j) {
    for (int p = 0; p < 3; ++p) sigma.image[hk_index(j, p)] = hk_index(j % k + 1, p);
  }
  return sigma;
}

Automorphism hk_reflection(int k) {
  Automorphism sigma;
  sigma.image.resize(3 * k);
  for (int j = 1; j <= k; ++j) {
    for (int p = 0; p < 3; ++p) sigma.image[hk_index(j, p)] = hk_index(j, 2 - p);
  }
  return sigma;
}

std::pair<BalancingFamily, BalancingFamily> hk_balancing_families(int k) {
  if (k < 2) throw std::invalid_argument("H_k requires k >= 2");
  const Automorphism rotation = hk_rotation(k);
  const Automorphism reflection = hk_reflection(k);

  std::vector<Automorphism> rotations;
  Automorphism power = rotation;
  for (int j = 1; j <= k; ++j) {
    rotations.push_back(power);
    power = compose(rotation, power);
  }

  BalancingFamily s1;
  s1.partition.resize(3);
  for (int i = 1; i <= k; ++i) {
    for (int p = 0; p < 3; ++p) s1.partition[p].push_back(hk_index(i, p));
  }
  s1.automorphisms = rotations;

  BalancingFamily s2;
  s2.partition.resize(2);
  for (int i = 1; i <= k; ++i) {
    s2.partition[0].push_back(hk_index(i, 0));
    s2.partition[0].push_back(hk_index(i, 2));
    s2.partition[1].push_back(hk_index(i, 1));
  }
  for (const auto& r : rotations) {
    s2.automorphisms.push_back(compose(r, reflection));
    s2.automorphisms.push_back(r);  // reflection squared is the identity
  }
  return {std::move(s1), std::move(s2)};
}

RationalVector symmetrize(const Graph& g, const BalancingFamily& fam, std::span<const Rational> x) {
  if (x.size() != g.order()) throw std::invalid_argument("dimension mismatch");
  RationalVector out(x.size());
  for (const auto& block : fam.partition) {
    if (block.empty()) continue;
    Rational sum = 0;
    for (Vertex v : block) sum += x[v];
    Rational avg = sum / static_cast<long>(block.size());
    for (Vertex v : block) out[v] = avg;
  }
  return out;
}

RationalVector automorphism_average(const BalancingFamily& fam, std::span<const Rational> x) {
  if (fam.automorphisms.empty()) throw std::invalid_argument("empty automorphism family");
  RationalVector out(x.size(), Rational(0));
  for (const auto& sigma : fam.automorphisms) out = add(out, apply(sigma, x));
  return scale(Rational(1, static_cast<long>(fam.automorphisms.size())), out);
}

nlohmann::json to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({g.label(u), g.label(v)});
  return {{"vertices", g.labels()}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
  Graph g(j.at("vertices").get<std::vector<std::string>>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair of labels");
    g.add_edge(g.index(e[0].get<std::string>()), g.index(e[1].get<std::string>()));
  }
  return g;
}

}  // namespace hkrank
