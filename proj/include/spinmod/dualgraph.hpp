#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace spinmod {

using VertexId = std::size_t;
using EdgeId = std::size_t;

/// Sorted, duplicate-free list of edge (node) indices.
using EdgeSet = std::vector<EdgeId>;

struct Vertex {
  std::string name;
  int genus = 0;
};

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  bool is_loop() const { return u == v; }
};

/// Connected components of an abstract multigraph, as sorted vertex lists
/// ordered by their smallest vertex.
std::vector<std::vector<VertexId>> connected_components(std::size_t vertex_count,
                                                        const std::vector<Edge>& edges);

/// First Betti number E - V + (#components).
long betti_number(std::size_t vertex_count, const std::vector<Edge>& edges);

/// Dual graph of a nodal curve: vertices are irreducible components weighted
/// by geometric genus, edges are nodes. Edge ids follow insertion order.
class DualGraph {
 public:
  /// Throws InputError on duplicate names, negative genus, dangling edges or a
  /// disconnected graph.
  DualGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

  /// Parses {"vertices":[{"id":..,"genus":..}],"edges":[[a,b],...]}.
  static DualGraph from_json(const nlohmann::json& j);
  static DualGraph from_file(const std::string& path);
  nlohmann::ordered_json to_json() const;

  /// Two components of genera g1, g2 joined by delta nodes.
  static DualGraph two_component(int g1, int g2, std::size_t delta);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Number of edge endpoints at v; a loop contributes 2.
  int valence(VertexId v) const;
  bool has_loops() const;

  /// Arithmetic genus: sum of vertex genera plus b1 of the graph.
  int genus() const;
  bool is_stable() const;
  /// Degree of the dualizing sheaf on each component: 2 g_v - 2 + valence.
  std::vector<int> canonical_multidegree() const;

  /// Validates and normalizes an edge subset (sorts, rejects unknown ids and
  /// duplicates).
  EdgeSet checked_subset(std::vector<EdgeId> subset) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

/// The blow-up X of a curve at a node subset: every blown node is replaced by
/// an exceptional genus-0 vertex of valence 2.
class BlowUpGraph {
 public:
  BlowUpGraph(DualGraph base, EdgeSet blown);

  const DualGraph& base() const { return base_; }
  const EdgeSet& blown() const { return blown_; }

  /// Vertices of X: base vertices first, then one exceptional vertex per blown
  /// node in edge-id order.
  std::size_t vertex_count() const { return base_.vertex_count() + blown_.size(); }
  bool is_exceptional(VertexId v) const { return v >= base_.vertex_count(); }
  int vertex_genus(VertexId v) const;
  const std::vector<Edge>& edges() const { return edges_; }

  /// Arithmetic genus of X.
  int genus() const;

  /// Edges of X-tilde: the unblown nodes.
  std::vector<Edge> normalization_edges() const;
  /// Connected components of X-tilde (lists of base vertex ids).
  std::vector<std::vector<VertexId>> normalization_components() const;

  /// Contracts the exceptional vertices back to nodes.
  DualGraph contract() const;

 private:
  DualGraph base_;
  EdgeSet blown_;
  std::vector<Edge> edges_;
};

/// Graph whose vertices are the connected components of X-tilde and whose
/// edges are the exceptional components of X.
struct SigmaGraph {
  std::vector<std::vector<VertexId>> components;
  std::vector<Edge> edges;

  std::size_t vertex_count() const { return components.size(); }
  long b1() const { return betti_number(components.size(), edges); }
};

BlowUpGraph blow_up(const DualGraph& g, std::vector<EdgeId> subset);
SigmaGraph sigma_graph(const BlowUpGraph& x);

}  // namespace spinmod
