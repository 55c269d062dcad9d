#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "spinmod/dualgraph.hpp"

namespace spinmod {

/// Largest node count accepted by the support enumeration (2^delta subsets).
inline constexpr std::size_t kMaxSupportEdges = 20;

/// One support of limit square roots of the dualizing sheaf.
struct SpinSupport {
  EdgeSet delta;
  /// Degree of (pi^* omega)|_v minus the exceptional attachment points at v,
  /// per base vertex. Even on every vertex for a valid support.
  std::vector<int> component_degree;
  int root_exponent = 0;
  int multiplicity_exponent = 0;
  /// Only filled for curves with two smooth components.
  std::optional<bool> singular;
  std::optional<int> automorphism_order;

  std::uint64_t root_count() const { return std::uint64_t{1} << root_exponent; }
  std::uint64_t multiplicity() const { return std::uint64_t{1} << multiplicity_exponent; }
  std::uint64_t weighted() const { return root_count() * multiplicity(); }
};

struct SpinTable {
  int genus = 0;
  std::vector<SpinSupport> supports;
  std::uint64_t weighted_total = 0;

  nlohmann::ordered_json to_json() const;
};

/// Two vertices joined only by nodes (no loops).
bool is_two_smooth_component(const DualGraph& g);

/// Per-vertex degree 2 g_v - 2 + valence_v - e_v(delta).
std::vector<int> support_degrees(const DualGraph& g, const EdgeSet& delta);
bool is_valid_support(const DualGraph& g, const EdgeSet& delta);

/// All valid supports, sorted by (|delta|, lexicographic edge ids). Enumerates
/// every subset of the nodes.
std::vector<EdgeSet> valid_supports(const DualGraph& g);

/// Number of square roots on X-tilde: prod over components K of
/// 2^(2 sum g_v + b1(K)). Throws InputError("odd component degree") when
/// delta is not a valid support.
std::uint64_t root_count(const DualGraph& g, std::vector<EdgeId> delta);

/// 2^{b1(Sigma_X)}.
std::uint64_t multiplicity(const DualGraph& g, std::vector<EdgeId> delta);

SpinSupport describe_support(const DualGraph& g, std::vector<EdgeId> delta);

/// Supports with their counts, without asserting the degree identity.
std::vector<SpinSupport> spin_supports(const DualGraph& g, unsigned jobs = 1);

/// Full table; throws ConsistencyError if the weighted total is not 2^{2g}.
SpinTable spin_table(const DualGraph& g, unsigned jobs = 1);

/// |S_C^sing| for a curve with two smooth components and at least two nodes.
std::uint64_t singular_spin_count(const DualGraph& g);

}  // namespace spinmod
