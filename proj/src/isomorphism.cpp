#include "hkrank/graph.hpp"

#include <algorithm>
#include <numeric>

namespace hkrank {

namespace {

struct Matcher {
  const Graph& g;
  const Graph& h;
  std::vector<Vertex> order;       // g-vertices in matching order
  std::vector<Vertex> phi;         // g -> h, or npos
  std::vector<char> used;          // h-vertices already taken
  std::vector<std::size_t> g_profile, h_profile;
  static constexpr Vertex npos = static_cast<Vertex>(-1);

  Matcher(const Graph& g_, const Graph& h_) : g(g_), h(h_), phi(g_.order(), npos), used(h_.order(), 0) {
    g_profile = profile(g);
    h_profile = profile(h);
    build_order();
  }

  // degree plus the sorted multiset of neighbour degrees, folded into one key
  static std::vector<std::size_t> profile(const Graph& x) {
    std::vector<std::size_t> out(x.order());
    for (Vertex v = 0; v < x.order(); ++v) {
      std::vector<std::size_t> nd;
      for (Vertex w : x.neighbors(v)) nd.push_back(x.degree(w));
      std::sort(nd.begin(), nd.end());
      std::size_t key = x.degree(v);
      for (std::size_t d : nd) key = key * 1000003U + d + 1;
      out[v] = key;
    }
    return out;
  }

  // BFS-like order: next vertex is the one with most already-ordered neighbours
  void build_order() {
    const std::size_t n = g.order();
    std::vector<char> placed(n, 0);
    std::vector<std::size_t> links(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
      Vertex best = npos;
      for (Vertex v = 0; v < n; ++v) {
        if (placed[v]) continue;
        if (best == npos || links[v] > links[best] || (links[v] == links[best] && g.degree(v) > g.degree(best)))
          best = v;
      }
      placed[best] = 1;
      order.push_back(best);
      for (Vertex w : g.neighbors(best)) ++links[w];
    }
  }

  bool consistent(Vertex u, Vertex x) const {
    if (g_profile[u] != h_profile[x]) return false;
    for (Vertex v = 0; v < g.order(); ++v) {
      if (phi[v] == npos) continue;
      if (g.adjacent(u, v) != h.adjacent(x, phi[v])) return false;
    }
    return true;
  }

  bool search(std::size_t depth) {
    if (depth == order.size()) return true;
    const Vertex u = order[depth];
    for (Vertex x = 0; x < h.order(); ++x) {
      if (used[x] || !consistent(u, x)) continue;
      phi[u] = x;
      used[x] = 1;
      if (search(depth + 1)) return true;
      phi[u] = npos;
      used[x] = 0;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Vertex>> find_isomorphism(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.size() != h.size()) return std::nullopt;
  if (degree_sequence(g) != degree_sequence(h)) return std::nullopt;
  Matcher m(g, h);
  auto gp = m.g_profile;
  auto hp = m.h_profile;
  std::sort(gp.begin(), gp.end());
  std::sort(hp.begin(), hp.end());
  if (gp != hp) return std::nullopt;
  if (!m.search(0)) return std::nullopt;
  return m.phi;
}

bool is_isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

bool is_isomorphism(const Graph& g, const Graph& h, const std::vector<Vertex>& phi) {
  if (g.order() != h.order() || phi.size() != g.order()) return false;
  std::vector<char> hit(h.order(), 0);
  for (Vertex x : phi) {
    if (x >= h.order() || hit[x]) return false;
    hit[x] = 1;
  }
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v = u + 1; v < g.order(); ++v) {
      if (g.adjacent(u, v) != h.adjacent(phi[u], phi[v])) return false;
    }
  }
  return true;
}

}  // namespace hkrank
