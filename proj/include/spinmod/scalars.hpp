#pragma once

#include <array>
#include <memory>
#include <vector>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace spinmod {

/// Exact rational numbers, always kept in lowest terms with positive
/// denominator.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& r);

/// Square root of r in Q, if r is the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& r);

bool is_prime(std::uint64_t n);

/// Largest modulus accepted by PrimeField (products stay within 64 bits).
inline constexpr std::uint64_t kMaxModulus = 1u << 16;

/// Element of the prime field F_q. Carries its modulus so values are
/// self-describing; mixing moduli is a programming error and throws.
class FqElem {
 public:
  FqElem() = default;
  FqElem(std::int64_t value, std::uint64_t q);

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return q_; }
  bool is_zero() const { return value_ == 0; }

  FqElem operator+(const FqElem& o) const;
  FqElem operator-(const FqElem& o) const;
  FqElem operator-() const;
  FqElem operator*(const FqElem& o) const;
  FqElem pow(std::uint64_t e) const;
  FqElem inverse() const;

  bool operator==(const FqElem& o) const = default;
  auto operator<=>(const FqElem& o) const = default;

 private:
  void check_same(const FqElem& o) const;

  std::uint64_t q_ = 0;
  std::uint64_t value_ = 0;
};

std::ostream& operator<<(std::ostream& os, const FqElem& a);

/// Element a + b*u of F_{q^2} = F_q[u]/(u^2 - n), n the smallest positive
/// quadratic non-residue mod q.
class Fq2Elem {
 public:
  Fq2Elem() = default;
  /// Looks up the non-residue for a's modulus.
  Fq2Elem(FqElem a, FqElem b);
  Fq2Elem(FqElem a, FqElem b, std::uint64_t nonresidue);
  /// Embeds a prime-field element.
  explicit Fq2Elem(FqElem a);

  const FqElem& re() const { return a_; }
  const FqElem& im() const { return b_; }
  std::uint64_t modulus() const { return a_.modulus(); }
  std::uint64_t nonresidue() const { return n_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  /// True when the element lies in the prime subfield.
  bool in_base_field() const { return b_.is_zero(); }

  Fq2Elem operator+(const Fq2Elem& o) const;
  Fq2Elem operator-(const Fq2Elem& o) const;
  Fq2Elem operator-() const;
  Fq2Elem operator*(const Fq2Elem& o) const;
  Fq2Elem inverse() const;

  /// Dense index in [0, q^2): a + b*q.
  std::uint64_t index() const { return a_.value() + b_.value() * a_.modulus(); }

  bool operator==(const Fq2Elem& o) const = default;
  /// Lexicographic on the (a, b) representation.
  auto operator<=>(const Fq2Elem& o) const = default;

 private:
  FqElem a_;
  FqElem b_;
  std::uint64_t n_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Fq2Elem& x);
std::string to_string(const Fq2Elem& x);

/// F_q for an odd prime q, with the data needed for its quadratic extension.
class PrimeField {
 public:
  /// Throws InputError unless q is an odd prime no larger than kMaxModulus.
  explicit PrimeField(std::uint64_t q);

  std::uint64_t order() const { return q_; }
  std::uint64_t nonresidue() const { return nonresidue_; }

  FqElem operator()(std::int64_t v) const { return FqElem(v, q_); }
  Fq2Elem ext(std::int64_t a, std::int64_t b) const { return {(*this)(a), (*this)(b)}; }
  /// The adjoined square root u of the non-residue.
  Fq2Elem u() const { return ext(0, 1); }

  /// Smallest generator of the multiplicative group.
  FqElem primitive_root() const;

  /// Canonical (lexicographically smaller) square root of a nonzero a in
  /// F_{q^2}, served from a table built on first use.
  Fq2Elem canonical_sqrt(const FqElem& a) const;

 private:
  std::uint64_t q_;
  std::uint64_t nonresidue_;
  std::shared_ptr<const std::vector<Fq2Elem>> roots_;
};

std::uint64_t smallest_nonresidue(std::uint64_t q);

/// Euler's criterion. Throws InputError on zero.
bool is_square(const FqElem& a);

/// Square root inside F_q when a is a nonzero square, via Tonelli-Shanks.
std::optional<FqElem> sqrt_in_base(const FqElem& a);

/// Both square roots of a nonzero a, sorted so the first is the
/// lexicographically smaller (the canonical root).
std::array<Fq2Elem, 2> sqrt_in_ext(const FqElem& a);

inline Fq2Elem canonical_sqrt(const FqElem& a) { return sqrt_in_ext(a)[0]; }

}  // namespace spinmod
