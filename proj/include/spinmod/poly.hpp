#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spinmod/scalars.hpp"

namespace spinmod {

/// Exponent vector over a fixed variable universe.
using Monomial = std::vector<std::uint32_t>;

unsigned total_degree(const Monomial& m);

/// Graded-lex comparison: higher total degree first, then lexicographically
/// larger exponent vectors first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with rational coefficients. Terms are kept
/// in graded-lex order (leading term first); zero coefficients are never
/// stored.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly monomial(const Monomial& m, const Rational& c = 1);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  /// -1 for the zero polynomial.
  int degree() const;
  /// Coefficient of m (zero if absent).
  Rational coefficient(const Monomial& m) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  Poly pow(unsigned e) const;

  /// Replaces variable i by images[i] wherever images[i] is set; other
  /// variables are kept. Images must live in the same variable universe.
  Poly substitute(const std::map<std::size_t, Poly>& images) const;

  Poly derivative(std::size_t var) const;

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  void check_universe(const Poly& o) const;

  std::size_t nvars_;
  Terms terms_;
};

/// Rank over Q of a list of polynomials viewed as coefficient vectors.
std::size_t linear_rank(const std::vector<Poly>& polys);

}  // namespace spinmod
