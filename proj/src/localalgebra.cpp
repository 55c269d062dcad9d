#include "spinmod/localalgebra.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "spinmod/errors.hpp"

namespace spinmod {

namespace {

void check_symbolic_delta(std::size_t delta) {
  if (delta < 2) throw InputError("D_X smooth, no local model needed");
  if (delta > kMaxSymbolicDelta)
    throw LimitError(fmt::format("symbolic charts are capped at delta <= {}", kMaxSymbolicDelta));
}

/// All exponent vectors of the given degree supported on `vars`, in the
/// universe of size nvars.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, const std::vector<std::size_t>& vars,
                                          unsigned degree) {
  std::vector<Monomial> out;
  Monomial m(nvars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
    if (pos + 1 == vars.size()) {
      m[vars[pos]] = left;
      out.push_back(m);
      m[vars[pos]] = 0;
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m[vars[pos]] = e;
      rec(pos + 1, left - e);
    }
    m[vars[pos]] = 0;
  };
  if (!vars.empty()) rec(0, degree);
  return out;
}

std::string monomial_name(const Monomial& m, const std::vector<std::string>& names) {
  return Poly::monomial(m).to_string(names);
}

}  // namespace

LocalVariables::LocalVariables(std::size_t delta) : delta_(delta) {
  for (std::size_t i = 0; i < delta; ++i) names_.push_back(fmt::format("t{}", i + 1));
  w_offset_ = names_.size();
  for (std::size_t i = 0; i < delta; ++i)
    for (std::size_t j = i; j < delta; ++j) names_.push_back(fmt::format("w{}{}", i + 1, j + 1));
  alpha_offset_ = names_.size();
  for (std::size_t i = 0; i < delta; ++i)
    for (std::size_t s = 0; s < delta; ++s)
      if (i != s) names_.push_back(fmt::format("a{}{}", i + 1, s + 1));
}

std::size_t LocalVariables::t(std::size_t i) const {
  if (i >= delta_) throw std::out_of_range("t index out of range");
  return i;
}

std::size_t LocalVariables::w(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (j >= delta_) throw std::out_of_range("w index out of range");
  // rows i' < i contribute delta - i' entries each
  return w_offset_ + i * delta_ - i * (i - 1) / 2 + (j - i);
}

std::size_t LocalVariables::alpha(std::size_t i, std::size_t s) const {
  if (i == s || i >= delta_ || s >= delta_) throw std::out_of_range("alpha index out of range");
  return alpha_offset_ + i * (delta_ - 1) + (s < i ? s : s - 1);
}

std::size_t IdealPresentation::quadric_count() const { return delta() * (delta() - 1) / 2; }

std::size_t IdealPresentation::cubic_count() const {
  const auto d = delta();
  return d * (d - 1) * (d - 2) / 6;
}

std::vector<std::string> IdealPresentation::generator_strings() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(g.to_string(vars.names()));
  return out;
}

IdealPresentation dx_ideal(std::size_t delta) {
  check_symbolic_delta(delta);
  IdealPresentation ideal{LocalVariables(delta), {}};
  const auto& v = ideal.vars;
  auto w = [&](std::size_t i, std::size_t j) { return v.var(v.w(i, j)); };
  for (std::size_t i = 0; i < delta; ++i)
    for (std::size_t j = i + 1; j < delta; ++j)
      ideal.generators.push_back(w(i, i) * w(j, j) - w(i, j) * w(i, j));
  for (std::size_t i = 0; i < delta; ++i)
    for (std::size_t j = i + 1; j < delta; ++j)
      for (std::size_t k = j + 1; k < delta; ++k)
        ideal.generators.push_back(w(i, i) * w(j, j) * w(k, k) - w(i, j) * w(j, k) * w(i, k));
  return ideal;
}

std::map<std::size_t, Poly> invariant_substitution(const LocalVariables& vars) {
  std::map<std::size_t, Poly> images;
  for (std::size_t i = 0; i < vars.delta(); ++i)
    for (std::size_t j = i; j < vars.delta(); ++j)
      images.emplace(vars.w(i, j), vars.var(vars.t(i)) * vars.var(vars.t(j)));
  return images;
}

bool InvariantCheckReport::relations_generated() const {
  return std::all_of(relations.begin(), relations.end(), [](const RelationDegree& r) {
    return r.kernel_dimension == r.generated_dimension;
  });
}

nlohmann::ordered_json InvariantCheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["delta"] = delta;
  j["degree_bound"] = degree_bound;
  j["generators_vanish"] = generators_vanish;
  if (!nonvanishing_generators.empty()) j["nonvanishing_generators"] = nonvanishing_generators;
  j["even_monomials_checked"] = even_monomials_checked;
  j["even_monomials_expressible"] = even_monomials_expressible;
  if (!inexpressible_monomials.empty()) j["inexpressible_monomials"] = inexpressible_monomials;
  j["odd_monomials_checked"] = odd_monomials_checked;
  j["odd_monomials_not_invariant"] = odd_monomials_not_invariant;
  j["relations"] = nlohmann::ordered_json::array();
  for (const auto& r : relations)
    j["relations"].push_back({{"w_degree", r.w_degree},
                              {"kernel_dimension", r.kernel_dimension},
                              {"generated_dimension", r.generated_dimension}});
  j["relations_generated_through_bound"] = relations_generated();
  j["passed"] = passed();
  return j;
}

InvariantCheckReport invariant_presentation_check(std::size_t delta, unsigned degree_bound) {
  if (degree_bound < 2 || degree_bound % 2 != 0)
    throw InputError("degree bound must be an even integer >= 2");
  const IdealPresentation ideal = dx_ideal(delta);
  const auto& vars = ideal.vars;
  const std::size_t n = vars.size();
  const auto to_t = invariant_substitution(vars);

  InvariantCheckReport report;
  report.delta = delta;
  report.degree_bound = degree_bound;

  for (const auto& g : ideal.generators) {
    if (!g.substitute(to_t).is_zero()) {
      report.generators_vanish = false;
      report.nonvanishing_generators.push_back(g.to_string(vars.names()));
    }
  }

  std::vector<std::size_t> t_vars;
  for (std::size_t i = 0; i < delta; ++i) t_vars.push_back(vars.t(i));
  std::map<std::size_t, Poly> beta;
  for (auto t : t_vars) beta.emplace(t, -vars.var(t));

  for (unsigned d = 0; d <= degree_bound; ++d) {
    for (const auto& m : monomials_of_degree(n, t_vars, d)) {
      const Poly target = Poly::monomial(m);
      if (d % 2 == 1) {
        ++report.odd_monomials_checked;
        if (target.substitute(beta) == target) report.odd_monomials_not_invariant = false;
        continue;
      }
      ++report.even_monomials_checked;
      // Pair up the index multiset in sorted order: t^e = prod w_{i_{2k-1} i_{2k}}.
      std::vector<std::size_t> seq;
      for (std::size_t i = 0; i < delta; ++i) seq.insert(seq.end(), m[t_vars[i]], i);
      Poly product = vars.one();
      for (std::size_t k = 0; k + 1 < seq.size(); k += 2)
        product = product * vars.var(vars.w(seq[k], seq[k + 1]));
      if (!(product.substitute(to_t) == target)) {
        report.even_monomials_expressible = false;
        report.inexpressible_monomials.push_back(monomial_name(m, vars.names()));
      }
    }
  }

  std::vector<std::size_t> w_vars;
  for (std::size_t i = 0; i < delta; ++i)
    for (std::size_t j = i; j < delta; ++j) w_vars.push_back(vars.w(i, j));
  for (unsigned d = 1; 2 * d <= degree_bound; ++d) {
    InvariantCheckReport::RelationDegree rel;
    rel.w_degree = d;
    const auto monos = monomials_of_degree(n, w_vars, d);
    std::set<Monomial> images;
    for (const auto& m : monos)
      images.insert(Poly::monomial(m).substitute(to_t).terms().begin()->first);
    rel.kernel_dimension = monos.size() - images.size();
    std::vector<Poly> multiples;
    for (const auto& g : ideal.generators) {
      const auto gd = static_cast<unsigned>(g.degree());
      if (gd > d) continue;
      for (const auto& m : monomials_of_degree(n, w_vars, d - gd))
        multiples.push_back(g * Poly::monomial(m));
    }
    rel.generated_dimension = linear_rank(multiples);
    report.relations.push_back(rel);
  }
  return report;
}

bool Chart::residuals_vanish() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const Poly& p) { return p.is_zero(); });
}

std::vector<Chart> blowup_charts(const IdealPresentation& ideal) {
  const auto& v = ideal.vars;
  const std::size_t delta = ideal.delta();
  std::vector<Chart> charts;
  for (std::size_t s = 0; s < delta; ++s) {
    Chart chart;
    chart.center = s;
    for (std::size_t i = 0; i < delta; ++i)
      if (i != s) chart.coordinates.push_back(v.alpha(i, s));
    chart.coordinates.push_back(v.w(s, s));

    const Poly wss = v.var(v.w(s, s));
    for (std::size_t i = 0; i < delta; ++i) {
      for (std::size_t j = i; j < delta; ++j) {
        Poly image;
        if (i == s && j == s) {
          image = wss;
        } else if (i == s || j == s) {
          const std::size_t other = i == s ? j : i;
          image = v.var(v.alpha(other, s)) * wss;
        } else {
          image = v.var(v.alpha(i, s)) * v.var(v.alpha(j, s)) * wss;
        }
        chart.substitution.emplace(v.w(i, j), std::move(image));
      }
    }
    for (const auto& g : ideal.generators) chart.residuals.push_back(chart.apply(g));
    if (!chart.residuals_vanish())
      throw ConsistencyError(fmt::format("chart U_{} leaves a nonzero residual", s + 1));
    charts.push_back(std::move(chart));
  }
  return charts;
}

std::vector<Chart> blowup_charts(std::size_t delta) { return blowup_charts(dx_ideal(delta)); }

std::size_t jacobian_rank_at_origin(const std::vector<Poly>& generators) {
  std::vector<Poly> rows;
  for (const auto& g : generators) {
    if (g.is_zero()) continue;
    Poly linear(g.nvars());
    for (const auto& [m, c] : g.terms()) {
      const auto d = total_degree(m);
      if (d == 0) throw InputError("generator has a constant term; origin is not on the variety");
      if (d == 1) linear += Poly::monomial(m, c);
    }
    rows.push_back(std::move(linear));
  }
  return linear_rank(rows);
}

SingularityCertificate certify_singularity(const IdealPresentation& ideal) {
  SingularityCertificate cert;
  cert.ambient_dimension = ideal.delta() * (ideal.delta() + 1) / 2;
  cert.local_dimension = ideal.delta();
  cert.jacobian_rank = jacobian_rank_at_origin(ideal.generators);
  return cert;
}

nlohmann::ordered_json local_model_report(std::size_t delta) {
  const IdealPresentation ideal = dx_ideal(delta);
  const auto& names = ideal.vars.names();
  nlohmann::ordered_json j;
  j["delta"] = delta;
  j["quadrics"] = ideal.quadric_count();
  j["cubics"] = ideal.cubic_count();
  j["generators"] = ideal.generator_strings();
  j["charts"] = nlohmann::ordered_json::array();
  bool all_zero = true;
  for (const auto& chart : blowup_charts(ideal)) {
    nlohmann::ordered_json c;
    c["s"] = chart.center + 1;
    nlohmann::ordered_json coords = nlohmann::ordered_json::array();
    for (auto idx : chart.coordinates) coords.push_back(names[idx]);
    c["coordinates"] = coords;
    nlohmann::ordered_json subs = nlohmann::ordered_json::object();
    for (const auto& [var, image] : chart.substitution) subs[names[var]] = image.to_string(names);
    c["substitution"] = subs;
    nlohmann::ordered_json res = nlohmann::ordered_json::array();
    for (const auto& r : chart.residuals) res.push_back(r.to_string(names));
    c["residuals"] = res;
    c["residuals_zero"] = chart.residuals_vanish();
    all_zero = all_zero && chart.residuals_vanish();
    j["charts"].push_back(std::move(c));
  }
  const auto cert = certify_singularity(ideal);
  j["jacobian_rank"] = cert.jacobian_rank;
  j["ambient_dimension"] = cert.ambient_dimension;
  j["local_dimension"] = cert.local_dimension;
  j["singular_at_origin"] = cert.singular();
  j["charts_smooth"] = all_zero;
  return j;
}

std::string local_model_text(std::size_t delta) {
  const auto j = local_model_report(delta);
  std::ostringstream os;
  os << fmt::format("local model of D_X, delta = {}: {} quadrics, {} cubics\n", delta,
                    j["quadrics"].get<std::size_t>(), j["cubics"].get<std::size_t>());
  for (const auto& g : j["generators"]) os << "  " << g.get<std::string>() << " = 0\n";
  for (const auto& c : j["charts"]) {
    os << fmt::format("chart U_{}:", c["s"].get<std::size_t>());
    for (const auto& name : c["coordinates"]) os << " " << name.get<std::string>();
    os << "\n";
    for (const auto& [var, image] : c["substitution"].items())
      os << fmt::format("  {} -> {}\n", var, image.get<std::string>());
    os << fmt::format("  residuals: {}\n", c["residuals_zero"].get<bool>() ? "all zero" : "NONZERO");
  }
  os << fmt::format("jacobian rank at origin: {} (ambient {}, dimension {}) -> {}\n",
                    j["jacobian_rank"].get<std::size_t>(), j["ambient_dimension"].get<std::size_t>(),
                    j["local_dimension"].get<std::size_t>(),
                    j["singular_at_origin"].get<bool>() ? "singular" : "smooth");
  return os.str();
}

ExceptionalSpace::ExceptionalSpace(std::size_t delta) : delta_(delta) {
  if (delta < 2) throw InputError("exceptional space needs delta >= 2");
}

namespace {

template <class F>
ProjectivePoint<F> normalize_point(ProjectivePoint<F> x, std::size_t delta) {
  if (x.size() != delta) throw InputError("point has wrong number of coordinates");
  const auto first = std::find_if(x.begin(), x.end(), [](const F& v) { return !is_zero(v); });
  if (first == x.end()) throw InputError("the zero vector is not a projective point");
  const F scale = *first;
  for (auto& v : x) {
    if constexpr (std::is_same_v<F, Rational>)
      v /= scale;
    else
      v = v * scale.inverse();
  }
  return x;
}

}  // namespace

ProjectivePoint<Fq2Elem> ExceptionalSpace::normalize(ProjectivePoint<Fq2Elem> x) const {
  return normalize_point(std::move(x), delta_);
}

ProjectivePoint<Rational> ExceptionalSpace::normalize(ProjectivePoint<Rational> x) const {
  return normalize_point(std::move(x), delta_);
}

std::vector<Fq2Elem> ExceptionalSpace::chart_coordinates(const ProjectivePoint<Fq2Elem>& x,
                                                         std::size_t s) const {
  if (x.size() != delta_ || s >= delta_) throw InputError("chart index out of range");
  if (x[s].is_zero()) throw InputError("point lies outside chart U_" + std::to_string(s + 1));
  const Fq2Elem inv = x[s].inverse();
  std::vector<Fq2Elem> alphas;
  for (std::size_t i = 0; i < delta_; ++i)
    if (i != s) alphas.push_back(x[i] * inv);
  return alphas;
}

ProjectivePoint<Fq2Elem> ExceptionalSpace::from_chart(std::size_t s,
                                                      const std::vector<Fq2Elem>& alphas) const {
  if (s >= delta_ || alphas.size() + 1 != delta_) throw InputError("chart data has wrong arity");
  const Fq2Elem& ref = alphas.front();
  const Fq2Elem one(FqElem(1, ref.modulus()), FqElem(0, ref.modulus()), ref.nonresidue());
  ProjectivePoint<Fq2Elem> x;
  std::size_t k = 0;
  for (std::size_t i = 0; i < delta_; ++i) x.push_back(i == s ? one : alphas[k++]);
  return normalize(std::move(x));
}

namespace {

/// roots[i] is a square root of d_i, or empty when d_i = 0.
template <class F>
std::vector<ProjectivePoint<F>> limit_points(const std::vector<std::optional<F>>& roots,
                                             const F& zero) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (roots[i]) support.push_back(i);
  if (support.empty()) throw InputError("zero direction");
  const std::size_t free_signs = support.size() - 1;
  std::vector<ProjectivePoint<F>> points;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_signs); ++mask) {
    ProjectivePoint<F> x(roots.size(), zero);
    x[support[0]] = *roots[support[0]];
    for (std::size_t k = 1; k < support.size(); ++k) {
      const F& r = *roots[support[k]];
      x[support[k]] = (mask >> (k - 1)) & 1 ? F(-r) : r;
    }
    points.push_back(normalize_point(std::move(x), roots.size()));
  }
  std::sort(points.begin(), points.end());
  return points;
}

void check_line_delta(std::size_t delta) {
  if (delta == 0) throw InputError("zero direction");
  if (delta > 20) throw LimitError("line limits are capped at delta <= 20");
}

}  // namespace

std::vector<ProjectivePoint<Fq2Elem>> line_limit(const std::vector<FqElem>& direction) {
  check_line_delta(direction.size());
  const PrimeField field(direction.front().modulus());
  std::vector<std::optional<Fq2Elem>> roots;
  for (const auto& d : direction)
    roots.push_back(d.is_zero() ? std::nullopt : std::optional(canonical_sqrt(d)));
  return limit_points(roots, field.ext(0, 0));
}

std::vector<ProjectivePoint<Rational>> line_limit(const std::vector<Rational>& direction) {
  check_line_delta(direction.size());
  std::vector<std::optional<Rational>> roots;
  for (const auto& d : direction) {
    if (d == 0) {
      roots.emplace_back();
      continue;
    }
    auto r = rational_sqrt(d);
    if (!r)
      throw InputError("direction entry " + to_string(d) +
                       " has no square root in Q; use the quadratic extension of F_q");
    roots.push_back(std::move(r));
  }
  return limit_points(roots, Rational(0));
}

}  // namespace spinmod
