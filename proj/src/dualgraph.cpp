#include "spinmod/dualgraph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <unordered_map>

#include "spinmod/errors.hpp"

namespace spinmod {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<std::vector<VertexId>> connected_components(std::size_t vertex_count,
                                                        const std::vector<Edge>& edges) {
  DisjointSets sets(vertex_count);
  for (const auto& e : edges) sets.unite(e.u, e.v);
  std::vector<std::vector<VertexId>> out;
  std::unordered_map<std::size_t, std::size_t> slot;
  for (VertexId v = 0; v < vertex_count; ++v) {
    const auto root = sets.find(v);
    auto [it, inserted] = slot.try_emplace(root, out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(v);
  }
  return out;
}

long betti_number(std::size_t vertex_count, const std::vector<Edge>& edges) {
  const auto cc = connected_components(vertex_count, edges).size();
  return static_cast<long>(edges.size()) - static_cast<long>(vertex_count) + static_cast<long>(cc);
}

DualGraph::DualGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.empty()) throw InputError("curve has no components");
  std::set<std::string> names;
  for (const auto& v : vertices_) {
    if (v.genus < 0) throw InputError("negative genus on component '" + v.name + "'");
    if (!names.insert(v.name).second) throw InputError("duplicate component id '" + v.name + "'");
  }
  for (const auto& e : edges_)
    if (e.u >= vertices_.size() || e.v >= vertices_.size())
      throw InputError("edge endpoint out of range");
  if (connected_components(vertices_.size(), edges_).size() != 1)
    throw InputError("dual graph is not connected");
}

DualGraph DualGraph::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw InputError("curve file must be an object with 'vertices' and 'edges'");
  const auto& jv = j.at("vertices");
  const auto& je = j.at("edges");
  if (!jv.is_array() || !je.is_array()) throw InputError("'vertices' and 'edges' must be arrays");

  std::vector<Vertex> vertices;
  std::unordered_map<std::string, VertexId> index;
  for (const auto& item : jv) {
    if (!item.is_object() || !item.contains("id") || !item.contains("genus") ||
        !item.at("id").is_string() || !item.at("genus").is_number_integer())
      throw InputError("each vertex needs a string 'id' and an integer 'genus'");
    Vertex v{item.at("id").get<std::string>(), item.at("genus").get<int>()};
    index.emplace(v.name, vertices.size());
    vertices.push_back(std::move(v));
  }
  std::vector<Edge> edges;
  for (const auto& item : je) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_string())
      throw InputError("each edge must be a pair of vertex ids");
    const auto a = index.find(item[0].get<std::string>());
    const auto b = index.find(item[1].get<std::string>());
    if (a == index.end() || b == index.end())
      throw InputError("edge references unknown vertex");
    edges.push_back({a->second, b->second});
  }
  return DualGraph(std::move(vertices), std::move(edges));
}

DualGraph DualGraph::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open curve file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON in '") + path + "': " + e.what());
  }
  return from_json(j);
}

nlohmann::ordered_json DualGraph::to_json() const {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : vertices_) j["vertices"].push_back({{"id", v.name}, {"genus", v.genus}});
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : edges_)
    j["edges"].push_back({vertices_[e.u].name, vertices_[e.v].name});
  return j;
}

DualGraph DualGraph::two_component(int g1, int g2, std::size_t delta) {
  std::vector<Edge> edges(delta, Edge{0, 1});
  return DualGraph({{"C1", g1}, {"C2", g2}}, std::move(edges));
}

int DualGraph::valence(VertexId v) const {
  int val = 0;
  for (const auto& e : edges_) val += (e.u == v) + (e.v == v);
  return val;
}

bool DualGraph::has_loops() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
}

int DualGraph::genus() const {
  int g = 0;
  for (const auto& v : vertices_) g += v.genus;
  return g + static_cast<int>(betti_number(vertices_.size(), edges_));
}

bool DualGraph::is_stable() const {
  for (VertexId v = 0; v < vertices_.size(); ++v)
    if (vertices_[v].genus == 0 && valence(v) < 3) return false;
  return true;
}

std::vector<int> DualGraph::canonical_multidegree() const {
  std::vector<int> deg(vertices_.size());
  for (VertexId v = 0; v < vertices_.size(); ++v) deg[v] = 2 * vertices_[v].genus - 2 + valence(v);
  return deg;
}

EdgeSet DualGraph::checked_subset(std::vector<EdgeId> subset) const {
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
    throw InputError("duplicate edge id in node subset");
  if (!subset.empty() && subset.back() >= edges_.size())
    throw InputError("unknown edge id " + std::to_string(subset.back()));
  return subset;
}

BlowUpGraph::BlowUpGraph(DualGraph base, EdgeSet blown)
    : base_(std::move(base)), blown_(base_.checked_subset(std::move(blown))) {
  const auto& be = base_.edges();
  std::size_t next = 0;
  for (EdgeId id = 0; id < be.size(); ++id) {
    if (next < blown_.size() && blown_[next] == id) {
      const VertexId ex = base_.vertex_count() + next;
      edges_.push_back({be[id].u, ex});
      edges_.push_back({ex, be[id].v});
      ++next;
    } else {
      edges_.push_back(be[id]);
    }
  }
}

int BlowUpGraph::vertex_genus(VertexId v) const {
  return is_exceptional(v) ? 0 : base_.vertices()[v].genus;
}

int BlowUpGraph::genus() const {
  int g = 0;
  for (VertexId v = 0; v < vertex_count(); ++v) g += vertex_genus(v);
  return g + static_cast<int>(betti_number(vertex_count(), edges_));
}

std::vector<Edge> BlowUpGraph::normalization_edges() const {
  std::vector<Edge> out;
  std::size_t next = 0;
  for (EdgeId id = 0; id < base_.edge_count(); ++id) {
    if (next < blown_.size() && blown_[next] == id) {
      ++next;
      continue;
    }
    out.push_back(base_.edges()[id]);
  }
  return out;
}

std::vector<std::vector<VertexId>> BlowUpGraph::normalization_components() const {
  return connected_components(base_.vertex_count(), normalization_edges());
}

DualGraph BlowUpGraph::contract() const {
  std::vector<int> valence(vertex_count(), 0);
  for (const auto& e : edges_) {
    ++valence[e.u];
    ++valence[e.v];
  }
  std::vector<Edge> fused;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (is_exceptional(e.v) && !is_exceptional(e.u)) {
      // u - E - w: the next edge leaves the same exceptional vertex
      const Edge& f = edges_.at(i + 1);
      if (f.u != e.v || valence[e.v] != 2)
        throw ConsistencyError("exceptional vertex does not have valence 2");
      fused.push_back({e.u, f.v});
      ++i;
    } else {
      fused.push_back(e);
    }
  }
  return DualGraph(base_.vertices(), std::move(fused));
}

BlowUpGraph blow_up(const DualGraph& g, std::vector<EdgeId> subset) {
  return BlowUpGraph(g, std::move(subset));
}

SigmaGraph sigma_graph(const BlowUpGraph& x) {
  SigmaGraph sigma;
  sigma.components = x.normalization_components();
  std::vector<std::size_t> owner(x.base().vertex_count());
  for (std::size_t c = 0; c < sigma.components.size(); ++c)
    for (auto v : sigma.components[c]) owner[v] = c;
  for (auto id : x.blown()) {
    const auto& e = x.base().edges()[id];
    sigma.edges.push_back({owner[e.u], owner[e.v]});
  }
  return sigma;
}

}  // namespace spinmod
