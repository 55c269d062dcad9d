#include "spinmod/spinenum.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "spinmod/errors.hpp"

namespace spinmod {

namespace {

void check_count_bounds(const DualGraph& g) {
  if (g.edge_count() > kMaxSupportEdges)
    throw LimitError("support enumeration is capped at " + std::to_string(kMaxSupportEdges) +
                     " nodes");
  if (g.genus() > 31) throw LimitError("genus above 31 overflows 64-bit root counts");
}

EdgeSet mask_to_set(std::uint64_t mask) {
  EdgeSet out;
  for (EdgeId i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1) out.push_back(i);
  return out;
}

bool support_order(const SpinSupport& a, const SpinSupport& b) {
  if (a.delta.size() != b.delta.size()) return a.delta.size() < b.delta.size();
  return a.delta < b.delta;
}

SpinSupport describe_checked(const DualGraph& g, EdgeSet delta) {
  SpinSupport s;
  s.component_degree = support_degrees(g, delta);
  for (int d : s.component_degree)
    if (d % 2 != 0) throw InputError("odd component degree");

  const BlowUpGraph x(g, delta);
  const auto components = x.normalization_components();
  const auto edges = x.normalization_edges();
  for (const auto& comp : components) {
    int genus_sum = 0;
    for (auto v : comp) genus_sum += g.vertices()[v].genus;
    long inner_edges = 0;
    for (const auto& e : edges)
      if (std::binary_search(comp.begin(), comp.end(), e.u)) ++inner_edges;
    // each component of X-tilde is connected: b1 = E - V + 1
    const long b1 = inner_edges - static_cast<long>(comp.size()) + 1;
    s.root_exponent += 2 * genus_sum + static_cast<int>(b1);
  }
  s.multiplicity_exponent = static_cast<int>(sigma_graph(x).b1());

  if (is_two_smooth_component(g)) {
    const bool full = delta.size() == g.edge_count();
    s.singular = full && g.edge_count() >= 2;
    s.automorphism_order = full ? 2 : 1;
  }
  s.delta = std::move(delta);
  return s;
}

}  // namespace

nlohmann::ordered_json SpinTable::to_json() const {
  nlohmann::ordered_json j;
  j["genus"] = genus;
  j["weighted_total"] = weighted_total;
  j["supports"] = nlohmann::ordered_json::array();
  for (const auto& s : supports) {
    nlohmann::ordered_json row;
    row["delta"] = s.delta;
    row["root_count"] = s.root_count();
    row["multiplicity"] = s.multiplicity();
    if (s.singular) row["singular"] = *s.singular;
    if (s.automorphism_order) row["automorphism_order"] = *s.automorphism_order;
    j["supports"].push_back(std::move(row));
  }
  return j;
}

bool is_two_smooth_component(const DualGraph& g) {
  return g.vertex_count() == 2 && !g.has_loops();
}

std::vector<int> support_degrees(const DualGraph& g, const EdgeSet& delta) {
  auto deg = g.canonical_multidegree();
  for (auto id : delta) {
    const auto& e = g.edges().at(id);
    --deg[e.u];
    --deg[e.v];
  }
  return deg;
}

bool is_valid_support(const DualGraph& g, const EdgeSet& delta) {
  const auto deg = support_degrees(g, delta);
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d % 2 == 0; });
}

std::vector<EdgeSet> valid_supports(const DualGraph& g) {
  std::vector<EdgeSet> out;
  for (auto& s : spin_supports(g)) out.push_back(std::move(s.delta));
  return out;
}

std::uint64_t root_count(const DualGraph& g, std::vector<EdgeId> delta) {
  check_count_bounds(g);
  return describe_checked(g, g.checked_subset(std::move(delta))).root_count();
}

std::uint64_t multiplicity(const DualGraph& g, std::vector<EdgeId> delta) {
  check_count_bounds(g);
  return describe_checked(g, g.checked_subset(std::move(delta))).multiplicity();
}

SpinSupport describe_support(const DualGraph& g, std::vector<EdgeId> delta) {
  check_count_bounds(g);
  return describe_checked(g, g.checked_subset(std::move(delta)));
}

std::vector<SpinSupport> spin_supports(const DualGraph& g, unsigned jobs) {
  check_count_bounds(g);
  const std::uint64_t total = std::uint64_t{1} << g.edge_count();
  jobs = std::max(1u, jobs);

  auto scan = [&g](std::uint64_t begin, std::uint64_t end) {
    std::vector<SpinSupport> found;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      EdgeSet delta = mask_to_set(mask);
      if (is_valid_support(g, delta)) found.push_back(describe_checked(g, std::move(delta)));
    }
    return found;
  };

  std::vector<SpinSupport> all;
  if (jobs == 1) {
    all = scan(0, total);
  } else {
    std::vector<std::future<std::vector<SpinSupport>>> parts;
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (std::uint64_t begin = 0; begin < total; begin += chunk)
      parts.push_back(std::async(std::launch::async, scan, begin, std::min(total, begin + chunk)));
    for (auto& p : parts) {
      auto part = p.get();
      std::move(part.begin(), part.end(), std::back_inserter(all));
    }
  }
  std::sort(all.begin(), all.end(), support_order);
  return all;
}

SpinTable spin_table(const DualGraph& g, unsigned jobs) {
  SpinTable table;
  table.genus = g.genus();
  table.supports = spin_supports(g, jobs);
  for (const auto& s : table.supports) table.weighted_total += s.weighted();
  const std::uint64_t expected = std::uint64_t{1} << (2 * table.genus);
  if (table.weighted_total != expected)
    throw ConsistencyError("weighted support total " + std::to_string(table.weighted_total) +
                           " differs from 2^(2g) = " + std::to_string(expected));
  return table;
}

std::uint64_t singular_spin_count(const DualGraph& g) {
  if (!is_two_smooth_component(g) || g.edge_count() < 2)
    throw InputError("singular spin count needs two smooth components and at least two nodes");
  std::vector<EdgeId> all(g.edge_count());
  std::iota(all.begin(), all.end(), EdgeId{0});
  return root_count(g, std::move(all));
}

}  // namespace spinmod
