#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinmod/poly.hpp"
#include "spinmod/scalars.hpp"

namespace spinmod {

/// Largest node count accepted by the symbolic chart computations.
inline constexpr std::size_t kMaxSymbolicDelta = 8;

/// Variable universe of the local model at a singular spin curve with delta
/// nodes: t_i (deformation coordinates upstairs), w_ij = t_i t_j for i <= j,
/// and the chart coordinates alpha_is for i != s. Indices are 0-based here;
/// printed names are 1-based ("t1", "w12", "a21").
class LocalVariables {
 public:
  explicit LocalVariables(std::size_t delta);

  std::size_t delta() const { return delta_; }
  std::size_t size() const { return names_.size(); }
  std::size_t t(std::size_t i) const;
  /// Symmetric in (i, j).
  std::size_t w(std::size_t i, std::size_t j) const;
  std::size_t alpha(std::size_t i, std::size_t s) const;
  const std::vector<std::string>& names() const { return names_; }

  Poly var(std::size_t index) const { return Poly::variable(size(), index); }
  Poly one() const { return Poly::constant(size(), 1); }

 private:
  std::size_t delta_;
  std::size_t w_offset_;
  std::size_t alpha_offset_;
  std::vector<std::string> names_;
};

/// Generators of the local equations of D_X at a singular spin curve:
/// w_ii w_jj - w_ij^2 (i < j) followed by w_ii w_jj w_kk - w_ij w_jk w_ik
/// (i < j < k), each block in lexicographic index order.
struct IdealPresentation {
  LocalVariables vars;
  std::vector<Poly> generators;

  std::size_t delta() const { return vars.delta(); }
  std::size_t quadric_count() const;
  std::size_t cubic_count() const;
  std::vector<std::string> generator_strings() const;
};

IdealPresentation dx_ideal(std::size_t delta);

/// The substitution w_ij = t_i t_j for i <= j.
std::map<std::size_t, Poly> invariant_substitution(const LocalVariables& vars);

struct InvariantCheckReport {
  std::size_t delta = 0;
  unsigned degree_bound = 0;
  /// (a) every generator vanishes under w_ij = t_i t_j.
  bool generators_vanish = true;
  std::vector<std::string> nonvanishing_generators;
  /// (b) every even monomial of degree <= bound is a product of the t_i t_j.
  bool even_monomials_expressible = true;
  std::size_t even_monomials_checked = 0;
  std::vector<std::string> inexpressible_monomials;
  /// (c) odd monomials change sign under t -> -t.
  bool odd_monomials_not_invariant = true;
  std::size_t odd_monomials_checked = 0;

  /// Informational: in each w-degree d (t-degree 2d <= bound), the dimension
  /// of the kernel of w_ij -> t_i t_j against the span of generator multiples.
  struct RelationDegree {
    unsigned w_degree = 0;
    std::size_t kernel_dimension = 0;
    std::size_t generated_dimension = 0;
  };
  std::vector<RelationDegree> relations;

  bool passed() const {
    return generators_vanish && even_monomials_expressible && odd_monomials_not_invariant;
  }
  /// Whether the generators span all relations through the bound. Not
  /// implied by passed().
  bool relations_generated() const;
  nlohmann::ordered_json to_json() const;
};

/// Requires delta >= 2 and an even bound >= 2.
InvariantCheckReport invariant_presentation_check(std::size_t delta, unsigned degree_bound);

/// Affine chart U_s of the blow-up of D_X at (w_11, ..., w_1delta). Its
/// coordinates are alpha_is (i != s) and w_ss.
struct Chart {
  std::size_t center = 0;  // s, 0-based
  std::vector<std::size_t> coordinates;
  /// w_ij -> polynomial in the chart coordinates, for every i <= j.
  std::map<std::size_t, Poly> substitution;
  /// Generators after substitution; all zero.
  std::vector<Poly> residuals;

  Poly apply(const Poly& p) const { return p.substitute(substitution); }
  bool residuals_vanish() const;
};

/// One chart per s; throws ConsistencyError if a residual is nonzero.
std::vector<Chart> blowup_charts(const IdealPresentation& ideal);
std::vector<Chart> blowup_charts(std::size_t delta);

/// Rank of the Jacobian matrix of the generators at the origin.
std::size_t jacobian_rank_at_origin(const std::vector<Poly>& generators);

struct SingularityCertificate {
  std::size_t ambient_dimension = 0;  // number of w-variables
  std::size_t local_dimension = 0;    // delta
  std::size_t jacobian_rank = 0;
  /// Smooth at the origin would need rank == ambient - local.
  bool singular() const { return jacobian_rank < ambient_dimension - local_dimension; }
};

SingularityCertificate certify_singularity(const IdealPresentation& ideal);

/// Full report for the local model, as emitted by `spin local`.
nlohmann::ordered_json local_model_report(std::size_t delta);
std::string local_model_text(std::size_t delta);

/// Projective point, normalized so the first nonzero coordinate is 1.
template <class F>
using ProjectivePoint = std::vector<F>;

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const Fq2Elem& x) { return x.is_zero(); }

/// Bitmask of the coordinate hyperplanes H_i = {x_i = 0} containing a point.
template <class F>
std::uint64_t incidence(const ProjectivePoint<F>& x) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (is_zero(x[i])) mask |= std::uint64_t{1} << i;
  return mask;
}

/// The exceptional P^{delta-1} over the singular point with its coordinate
/// hyperplanes. Chart U_s meets it in {x_s != 0} with alpha_is = x_i / x_s.
class ExceptionalSpace {
 public:
  explicit ExceptionalSpace(std::size_t delta);

  std::size_t delta() const { return delta_; }
  std::size_t hyperplane_count() const { return delta_; }

  ProjectivePoint<Fq2Elem> normalize(ProjectivePoint<Fq2Elem> x) const;
  ProjectivePoint<Rational> normalize(ProjectivePoint<Rational> x) const;

  /// alpha_is for i != s (delta - 1 values, in increasing i).
  std::vector<Fq2Elem> chart_coordinates(const ProjectivePoint<Fq2Elem>& x, std::size_t s) const;
  ProjectivePoint<Fq2Elem> from_chart(std::size_t s, const std::vector<Fq2Elem>& alphas) const;

 private:
  std::size_t delta_;
};

/// Limit points on the exceptional space of the strict transforms of the line
/// through the origin of D_C with direction d: x_i = 0 where d_i = 0 and
/// x_i = +-sqrt(d_i) elsewhere, modulo a global sign. Returns the
/// 2^{delta-|I|-1} normalized points in sorted order.
std::vector<ProjectivePoint<Fq2Elem>> line_limit(const std::vector<FqElem>& direction);

/// Same over Q; throws InputError when a nonzero entry is not a rational
/// square.
std::vector<ProjectivePoint<Rational>> line_limit(const std::vector<Rational>& direction);

}  // namespace spinmod
