#include "spinmod/random_graphs.hpp"

#include <string>

namespace spinmod {

DualGraph random_dual_graph(std::mt19937_64& rng, const RandomGraphBounds& bounds) {
  auto below = [&rng](std::uint64_t n) { return rng() % n; };
  const std::size_t n = 1 + below(bounds.max_vertices);
  std::vector<Vertex> vertices;
  for (std::size_t v = 0; v < n; ++v)
    vertices.push_back({"V" + std::to_string(v + 1), static_cast<int>(below(bounds.max_genus + 1))});

  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({below(v), v});
  const std::size_t target = n - 1 + below(bounds.max_edges - (n - 1) + 1);
  while (edges.size() < target) {
    const VertexId a = below(n);
    const VertexId b = below(n);
    if (a == b && !bounds.allow_loops) continue;
    edges.push_back({a, b});
  }
  return DualGraph(std::move(vertices), std::move(edges));
}

}  // namespace spinmod
