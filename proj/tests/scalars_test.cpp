#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "spinmod/errors.hpp"
#include "spinmod/scalars.hpp"

namespace spinmod {
namespace {

// Oracle: residues that are squares, by squaring every element.
std::set<std::uint64_t> squares_mod(std::uint64_t q) {
  std::set<std::uint64_t> out;
  for (std::uint64_t x = 1; x < q; ++x) out.insert(x * x % q);
  return out;
}

// Oracle: every element of F_{q^2} whose square is a (as an embedded base element).
std::vector<Fq2Elem> brute_roots(const PrimeField& f, std::int64_t a) {
  std::vector<Fq2Elem> out;
  const Fq2Elem target(f(a));
  for (std::uint64_t x = 0; x < f.order(); ++x)
    for (std::uint64_t y = 0; y < f.order(); ++y) {
      Fq2Elem z = f.ext(static_cast<std::int64_t>(x), static_cast<std::int64_t>(y));
      if (z * z == target) out.push_back(z);
    }
  return out;
}

TEST(Rational, StaysReduced) {
  Rational r = Rational(6) / Rational(-4);
  EXPECT_EQ(numerator(r), -3);
  EXPECT_EQ(denominator(r), 2);
  EXPECT_EQ(to_string(r), "-3/2");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
}

TEST(Rational, ExactArithmeticProperty) {
  for (int a = -7; a <= 7; ++a)
    for (int b = 1; b <= 7; ++b)
      for (int c = -5; c <= 5; ++c) {
        Rational x(a, b);
        Rational y(c, b + 1);
        EXPECT_EQ((x + y) - y, x);
        if (c != 0) EXPECT_EQ((x / y) * y, x);
        EXPECT_GT(denominator(Rational(x * y)), 0);
      }
}

TEST(Rational, Sqrt) {
  EXPECT_EQ(rational_sqrt(Rational(9, 4)), Rational(3, 2));
  EXPECT_EQ(rational_sqrt(Rational(0)), Rational(0));
  EXPECT_FALSE(rational_sqrt(Rational(2)).has_value());
  EXPECT_FALSE(rational_sqrt(Rational(-1)).has_value());
}

TEST(PrimeField, RejectsBadModuli) {
  EXPECT_THROW(PrimeField(2), InputError);
  EXPECT_THROW(PrimeField(9), InputError);
  EXPECT_THROW(PrimeField(10), InputError);
  EXPECT_THROW(PrimeField(kMaxModulus + 1), InputError);
  EXPECT_NO_THROW(PrimeField(5));
}

TEST(PrimeField, NonresidueIsSmallest) {
  for (std::uint64_t q : {3u, 5u, 7u, 11u, 13u, 17u, 97u}) {
    auto sq = squares_mod(q);
    std::uint64_t expected = 1;
    while (sq.count(expected)) ++expected;
    EXPECT_EQ(smallest_nonresidue(q), expected) << q;
    PrimeField f(q);
    EXPECT_EQ(f(static_cast<std::int64_t>(f.nonresidue())).pow((q - 1) / 2), f(-1));
  }
}

TEST(FqElem, ArithmeticAndInverse) {
  PrimeField f(13);
  EXPECT_EQ(f(-1).value(), 12u);
  EXPECT_EQ((f(7) + f(9)).value(), 3u);
  for (int a = 1; a < 13; ++a) EXPECT_EQ(f(a) * f(a).inverse(), f(1));
  EXPECT_THROW(f(0).inverse(), std::domain_error);
  EXPECT_THROW(f(1) + PrimeField(5)(1), std::logic_error);
}

TEST(IsSquare, SpecExamples) {
  EXPECT_TRUE(is_square(PrimeField(5)(4)));
  EXPECT_FALSE(is_square(PrimeField(5)(2)));
  EXPECT_TRUE(is_square(PrimeField(13)(1)));
}

TEST(IsSquare, ZeroRejected) {
  try {
    is_square(PrimeField(5)(0));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "zero has trivial square root; use sqrt_in_ext");
  }
}

TEST(IsSquare, MatchesSquaringOracle) {
  for (std::uint64_t q : {3u, 5u, 7u, 13u, 31u, 101u}) {
    auto sq = squares_mod(q);
    PrimeField f(q);
    for (std::uint64_t a = 1; a < q; ++a)
      EXPECT_EQ(is_square(f(static_cast<std::int64_t>(a))), sq.count(a) == 1) << q << " " << a;
  }
}

TEST(IsSquare, Multiplicative) {
  for (std::uint64_t q : {5u, 13u, 29u}) {
    PrimeField f(q);
    for (std::uint64_t a = 1; a < q; ++a)
      for (std::uint64_t b = 1; b < q; ++b) {
        FqElem x = f(static_cast<std::int64_t>(a));
        FqElem y = f(static_cast<std::int64_t>(b));
        EXPECT_EQ(is_square(x * y), is_square(x) == is_square(y));
      }
  }
}

TEST(SqrtInBase, TonelliShanksAgainstOracle) {
  for (std::uint64_t q : {5u, 13u, 17u, 41u, 97u, 65537u - 36u}) {
    if (!is_prime(q)) continue;
    PrimeField f(q);
    for (std::uint64_t a = 1; a < std::min<std::uint64_t>(q, 300); ++a) {
      FqElem x = f(static_cast<std::int64_t>(a));
      auto r = sqrt_in_base(x);
      EXPECT_EQ(r.has_value(), is_square(x));
      if (r) EXPECT_EQ(*r * *r, x);
    }
  }
}

TEST(SqrtInExt, SpecExamples) {
  PrimeField f5(5);
  auto r = sqrt_in_ext(f5(4));
  EXPECT_EQ(r[0], f5.ext(2, 0));
  EXPECT_EQ(r[1], f5.ext(3, 0));

  EXPECT_EQ(f5.nonresidue(), 2u);
  auto u = sqrt_in_ext(f5(2));
  EXPECT_EQ(u[0], f5.u());
  EXPECT_EQ(u[1], -f5.u());

  PrimeField f13(13);
  auto s = sqrt_in_ext(f13(10));
  auto oracle = brute_roots(f13, 10);
  ASSERT_EQ(oracle.size(), 2u);
  EXPECT_EQ(std::set<Fq2Elem>(s.begin(), s.end()), std::set<Fq2Elem>(oracle.begin(), oracle.end()));
  EXPECT_EQ(s[1], -s[0]);
}

TEST(SqrtInExt, DegenerateDirection) {
  try {
    sqrt_in_ext(PrimeField(5)(0));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "degenerate direction");
  }
}

TEST(SqrtInExt, ExhaustiveOracleAndCanonicalChoice) {
  for (std::uint64_t q : {3u, 5u, 7u, 13u}) {
    PrimeField f(q);
    for (std::uint64_t a = 1; a < q; ++a) {
      auto roots = sqrt_in_ext(f(static_cast<std::int64_t>(a)));
      auto oracle = brute_roots(f, static_cast<std::int64_t>(a));
      ASSERT_EQ(oracle.size(), 2u);
      std::sort(oracle.begin(), oracle.end());
      EXPECT_EQ(roots[0], oracle[0]);
      EXPECT_EQ(roots[1], oracle[1]);
      EXPECT_EQ(f.canonical_sqrt(f(static_cast<std::int64_t>(a))), oracle[0]);
      EXPECT_EQ(roots[0].in_base_field(), is_square(f(static_cast<std::int64_t>(a))));
    }
  }
}

TEST(Fq2Elem, FieldAxiomsOnSample) {
  PrimeField f(7);
  EXPECT_EQ(f.u() * f.u(), Fq2Elem(f(static_cast<std::int64_t>(f.nonresidue()))));
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      Fq2Elem x = f.ext(a, b);
      if (x.is_zero()) continue;
      EXPECT_EQ(x * x.inverse(), f.ext(1, 0));
      Fq2Elem y = f.ext(b, 3);
      Fq2Elem z = f.ext(2, a);
      EXPECT_EQ(x * (y + z), x * y + x * z);
      EXPECT_EQ((x * y) * z, x * (y * z));
    }
}

TEST(PrimeField, PrimitiveRootGeneratesGroup) {
  for (std::uint64_t q : {5u, 13u, 31u}) {
    PrimeField f(q);
    FqElem g = f.primitive_root();
    std::set<std::uint64_t> seen;
    FqElem x = f(1);
    for (std::uint64_t i = 0; i + 1 < q; ++i) {
      seen.insert(x.value());
      x = x * g;
    }
    EXPECT_EQ(seen.size(), q - 1);
  }
}

}  // namespace
}  // namespace spinmod
