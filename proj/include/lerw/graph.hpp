#pragma once

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lerw/lattice.hpp"

namespace lerw {

// Explicit adjacency-list graph for the small-graph machinery (Dirichlet
// solves, Laplacian walks, exact oracles). Torus experiments at scale use
// the implicit geometry in lattice.hpp/walker.hpp instead.
class FiniteGraph {
 public:
  FiniteGraph() = default;
  explicit FiniteGraph(int n) : adj_(n) {}

  int size() const { return static_cast<int>(adj_.size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }

  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("self loop");
    if (u < 0 || v < 0 || u >= size() || v >= size())
      throw std::invalid_argument("edge endpoint out of range");
    if (std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end()) return;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }

  bool connected() const {
    if (size() == 0) return false;
    std::vector<char> seen(size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj_[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == size();
  }

  static FiniteGraph path(int n) {
    FiniteGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
  }

  static FiniteGraph cycle(int n) {
    FiniteGraph g = path(n);
    if (n > 2) g.add_edge(n - 1, 0);
    return g;
  }

  static FiniteGraph complete(int n) {
    FiniteGraph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
  }

  static FiniteGraph torus(const TorusParams& t) {
    if (t.volume > 1000000)
      throw std::invalid_argument("explicit torus graph limited to 10^6 vertices");
    FiniteGraph g(static_cast<int>(t.volume));
    for (std::int64_t i = 0; i < t.volume; ++i) {
      TorusPoint p = decode(i, t);
      for (const auto& q : lerw::neighbors(p, t)) {
        std::int64_t j = encode(q, t);
        if (i < j) g.add_edge(static_cast<int>(i), static_cast<int>(j));
      }
    }
    return g;
  }

  // One "u v" pair per line, 0-based. Blank lines and '#' comments allowed.
  static FiniteGraph from_edge_list(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    int maxv = -1;
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      int u, v;
      if (!(ls >> u)) continue;
      if (!(ls >> v)) throw std::invalid_argument("edge list: odd token count");
      if (u < 0 || v < 0) throw std::invalid_argument("edge list: negative vertex");
      edges.emplace_back(u, v);
      maxv = std::max({maxv, u, v});
    }
    FiniteGraph g(maxv + 1);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

 private:
  std::vector<std::vector<int>> adj_;
};

}  // namespace lerw
