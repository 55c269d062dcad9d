#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinmod/dualgraph.hpp"
#include "spinmod/localalgebra.hpp"
#include "spinmod/scalars.hpp"

namespace spinmod {

/// Largest node count accepted by exhaustive torsor checks.
inline constexpr std::size_t kMaxTorsorDelta = 6;

/// Stable curve with two smooth components of genera g1, g2 >= 1 meeting in
/// delta nodes. Aut(C) = {id} is assumed, not checked.
class TwoComponentCurve {
 public:
  TwoComponentCurve(int g1, int g2, std::size_t delta);

  int g1() const { return g1_; }
  int g2() const { return g2_; }
  std::size_t delta() const { return delta_; }
  int genus() const { return g1_ + g2_ + static_cast<int>(delta_) - 1; }
  /// Rank of J_2(C^nu) = (Z/2)^{2(g1+g2)}.
  unsigned j2_rank() const { return static_cast<unsigned>(2 * (g1_ + g2_)); }
  std::uint64_t j2_order() const { return std::uint64_t{1} << j2_rank(); }
  DualGraph to_dual_graph() const { return DualGraph::two_component(g1_, g2_, delta_); }

 private:
  int g1_;
  int g2_;
  std::size_t delta_;
};

/// Candidate twister on a curve: a multidegree (one entry per component) and
/// gluing data (one nonzero scalar per node, up to a global scalar).
struct Twister {
  std::vector<int> multidegree;
  std::vector<Rational> gluing;
};

/// Checks the twister characterization: T_i has degree -n_i on C_i and
/// degree #(C_i . C_v) on every other C_v, the multidegrees sum to zero and
/// the product of the gluing data is a constant vector. Throws InputError on
/// arity mismatch.
bool check_twister_tuple(const DualGraph& g, const std::vector<Twister>& tuple);

/// (T_{C_1}, T_{C_2}) with gluing data v and v^{-1}.
std::vector<Twister> canonical_twister_pair(const TwoComponentCurve& c,
                                            const std::vector<Rational>& direction);

/// Proper subsets I of the nodes, ordered by (|I|, lexicographic).
std::vector<EdgeSet> proper_node_subsets(std::size_t delta);

/// Torsor coordinates of one enriched spin curve supported on X_I.
struct EnrichedSpinLabel {
  EdgeSet support;                 // I, 0-based node indices
  std::vector<FqElem> direction;   // alpha_{h+2}, ..., alpha_delta
  std::uint64_t j2 = 0;            // element of (Z/2)^{2(g1+g2)}
  std::uint64_t signs = 0;         // element of (Z/2)^{delta-|I|-1}

  bool operator==(const EnrichedSpinLabel&) const = default;
};

/// delta - |I| - 1: dimension of the torus and rank of the sign factor.
std::size_t torus_dimension(std::size_t delta, const EdgeSet& support);

/// 2^{2(g1+g2)} * 2^k * (q-1)^k with k the torus dimension.
std::uint64_t stratum_label_count(const TwoComponentCurve& c, const EdgeSet& support,
                                  std::uint64_t q);

/// Labels of a stratum in a fixed enumeration order (j2 slowest, then signs,
/// then direction entries 1..q-1 in mixed radix).
EnrichedSpinLabel decode_label(const TwoComponentCurve& c, const EdgeSet& support,
                               const PrimeField& field, std::uint64_t rank);
std::uint64_t encode_label(const TwoComponentCurve& c, const EnrichedSpinLabel& label,
                           const PrimeField& field);

struct EnrichedCount {
  std::vector<std::pair<EdgeSet, std::uint64_t>> strata;
  std::uint64_t total = 0;
};

EnrichedCount enriched_count(const TwoComponentCurve& c, std::uint64_t q);

/// A point of the exceptional P^{delta-1} in the copy indexed by xi.
struct StratumPoint {
  std::uint64_t xi_index = 0;
  ProjectivePoint<Fq2Elem> coordinates;
  std::uint64_t incidence = 0;

  bool operator==(const StratumPoint&) const = default;
};

/// x_i = 0 on I, 1 on the first node outside I, and +-(canonical root of
/// alpha_i) on the remaining nodes. Throws InputError on a zero direction
/// entry or a malformed label.
StratumPoint chi_map(const EnrichedSpinLabel& label, const TwoComponentCurve& c,
                     const PrimeField& field);

struct TorsorReport {
  EdgeSet support;
  std::uint64_t q = 0;
  std::uint64_t label_count = 0;
  std::uint64_t image_size = 0;
  std::uint64_t predicted_points_per_xi = 0;
  std::uint64_t expected_points_per_xi = 0;  // 2^k (q-1)^k
  bool injective = true;
  bool image_matches_prediction = true;
  bool cardinality_matches = true;
  bool action_free_transitive = true;
  bool action_transported = true;
  std::string witness;

  bool passed() const {
    return injective && image_matches_prediction && cardinality_matches &&
           action_free_transitive && action_transported;
  }
  nlohmann::ordered_json to_json() const;
};

/// Exhaustive check that chi_map is a bijection from the labels of stratum I
/// onto the F_q-direction points of incidence pattern I, with the label group
/// acting freely and transitively. Partitions by j2 run on `jobs` threads.
TorsorReport verify_torsor_bijection(const TwoComponentCurve& c, const EdgeSet& support,
                                     std::uint64_t q, unsigned jobs = 1);

/// Name of the blow-up X_I ("C" for I empty, nodes numbered from 1).
std::string support_name(const EdgeSet& support);

nlohmann::ordered_json stratification_report(const TwoComponentCurve& c,
                                             std::optional<std::uint64_t> q = std::nullopt);
std::string stratification_text(const TwoComponentCurve& c,
                                std::optional<std::uint64_t> q = std::nullopt);

/// Sum over proper I of (q-1)^{delta-|I|-1}, and (q^delta - 1)/(q - 1).
std::pair<std::uint64_t, std::uint64_t> hyperplane_stratification_counts(std::size_t delta,
                                                                         std::uint64_t q);

}  // namespace spinmod
