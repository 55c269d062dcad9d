#include "spinmod/scalars.hpp"

#include <sstream>
#include <vector>

#include "spinmod/errors.hpp"

namespace spinmod {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  const Integer sn = boost::multiprecision::sqrt(num);
  const Integer sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FqElem::FqElem(std::int64_t value, std::uint64_t q) : q_(q) {
  if (q == 0) throw InputError("modulus must be positive");
  const auto m = static_cast<std::int64_t>(q);
  value_ = static_cast<std::uint64_t>(((value % m) + m) % m);
}

void FqElem::check_same(const FqElem& o) const {
  if (q_ != o.q_) throw std::logic_error("mixed moduli in F_q arithmetic");
}

FqElem FqElem::operator+(const FqElem& o) const {
  check_same(o);
  FqElem r = *this;
  r.value_ = (value_ + o.value_) % q_;
  return r;
}

FqElem FqElem::operator-(const FqElem& o) const {
  check_same(o);
  FqElem r = *this;
  r.value_ = (value_ + q_ - o.value_) % q_;
  return r;
}

FqElem FqElem::operator-() const {
  FqElem r = *this;
  r.value_ = (q_ - value_) % q_;
  return r;
}

FqElem FqElem::operator*(const FqElem& o) const {
  check_same(o);
  FqElem r = *this;
  r.value_ = (value_ * o.value_) % q_;
  return r;
}

FqElem FqElem::pow(std::uint64_t e) const {
  FqElem result(1, q_);
  FqElem base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

FqElem FqElem::inverse() const {
  if (is_zero()) throw std::domain_error("zero has no inverse");
  return pow(q_ - 2);
}

std::ostream& operator<<(std::ostream& os, const FqElem& a) { return os << a.value(); }

std::uint64_t smallest_nonresidue(std::uint64_t q) {
  for (std::uint64_t n = 2; n < q; ++n)
    if (FqElem(static_cast<std::int64_t>(n), q).pow((q - 1) / 2).value() == q - 1) return n;
  throw InputError("no quadratic non-residue modulo " + std::to_string(q));
}

Fq2Elem::Fq2Elem(FqElem a, FqElem b) : Fq2Elem(a, b, smallest_nonresidue(a.modulus())) {}

Fq2Elem::Fq2Elem(FqElem a, FqElem b, std::uint64_t nonresidue)
    : a_(a), b_(b), n_(nonresidue) {
  if (a.modulus() != b.modulus()) throw std::logic_error("mixed moduli in F_q^2 element");
}

Fq2Elem::Fq2Elem(FqElem a) : Fq2Elem(a, FqElem(0, a.modulus())) {}

Fq2Elem Fq2Elem::operator+(const Fq2Elem& o) const { return {a_ + o.a_, b_ + o.b_, n_}; }
Fq2Elem Fq2Elem::operator-(const Fq2Elem& o) const { return {a_ - o.a_, b_ - o.b_, n_}; }
Fq2Elem Fq2Elem::operator-() const { return {-a_, -b_, n_}; }

Fq2Elem Fq2Elem::operator*(const Fq2Elem& o) const {
  const FqElem n(static_cast<std::int64_t>(n_), modulus());
  return {a_ * o.a_ + n * b_ * o.b_, a_ * o.b_ + b_ * o.a_, n_};
}

Fq2Elem Fq2Elem::inverse() const {
  // (a + bu)^{-1} = (a - bu) / (a^2 - n b^2); the norm vanishes only at zero.
  const FqElem n(static_cast<std::int64_t>(n_), modulus());
  const FqElem norm = a_ * a_ - n * b_ * b_;
  const FqElem inv = norm.inverse();
  return {a_ * inv, -b_ * inv, n_};
}

std::ostream& operator<<(std::ostream& os, const Fq2Elem& x) {
  if (x.im().is_zero()) return os << x.re();
  if (x.re().is_zero()) {
    if (x.im().value() == 1) return os << "u";
    return os << x.im() << "u";
  }
  os << x.re() << "+";
  if (x.im().value() != 1) os << x.im();
  return os << "u";
}

std::string to_string(const Fq2Elem& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (q == 2) throw InputError("characteristic 2 is not supported");
  if (q % 2 == 0) throw InputError("modulus " + std::to_string(q) + " must be odd");
  if (q > kMaxModulus) throw LimitError("modulus " + std::to_string(q) + " exceeds bound");
  if (!is_prime(q)) throw InputError("modulus " + std::to_string(q) + " is not prime");
  nonresidue_ = smallest_nonresidue(q);
  auto roots = std::make_shared<std::vector<Fq2Elem>>(q);
  for (std::uint64_t a = 1; a < q; ++a)
    (*roots)[a] = sqrt_in_ext(FqElem(static_cast<std::int64_t>(a), q))[0];
  roots_ = std::move(roots);
}

Fq2Elem PrimeField::canonical_sqrt(const FqElem& a) const {
  if (a.modulus() != q_) throw std::logic_error("element from a different field");
  if (a.is_zero()) throw InputError("degenerate direction");
  return (*roots_)[a.value()];
}

FqElem PrimeField::primitive_root() const {
  std::uint64_t m = q_ - 1;
  std::vector<std::uint64_t> factors;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) factors.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) factors.push_back(m);
  for (std::uint64_t g = 2; g < q_; ++g) {
    const FqElem cand = (*this)(static_cast<std::int64_t>(g));
    bool ok = true;
    for (auto p : factors)
      if (cand.pow((q_ - 1) / p).value() == 1) ok = false;
    if (ok) return cand;
  }
  throw ConsistencyError("no primitive root found");
}

bool is_square(const FqElem& a) {
  if (a.is_zero()) throw InputError("zero has trivial square root; use sqrt_in_ext");
  return a.pow((a.modulus() - 1) / 2).value() == 1;
}

std::optional<FqElem> sqrt_in_base(const FqElem& a) {
  if (!is_square(a)) return std::nullopt;
  const std::uint64_t q = a.modulus();
  // q - 1 = s * 2^e with s odd
  std::uint64_t s = q - 1;
  unsigned e = 0;
  while ((s & 1) == 0) {
    s >>= 1;
    ++e;
  }
  const FqElem z(static_cast<std::int64_t>(smallest_nonresidue(q)), q);
  FqElem c = z.pow(s);
  FqElem x = a.pow((s + 1) / 2);
  FqElem t = a.pow(s);
  unsigned m = e;
  const FqElem one(1, q);
  while (t != one) {
    unsigned i = 0;
    FqElem t2 = t;
    while (t2 != one) {
      t2 = t2 * t2;
      ++i;
    }
    FqElem b = c;
    for (unsigned k = 0; k + i + 1 < m; ++k) b = b * b;
    x = x * b;
    c = b * b;
    t = t * c;
    m = i;
  }
  return x;
}

std::array<Fq2Elem, 2> sqrt_in_ext(const FqElem& a) {
  if (a.is_zero()) throw InputError("degenerate direction");
  const std::uint64_t q = a.modulus();
  const std::uint64_t n = smallest_nonresidue(q);
  const FqElem zero(0, q);
  Fq2Elem r;
  if (auto root = sqrt_in_base(a)) {
    r = Fq2Elem(*root, zero, n);
  } else {
    // a / n is a square, so sqrt(a) = u * sqrt(a / n).
    const FqElem nn(static_cast<std::int64_t>(n), q);
    r = Fq2Elem(zero, *sqrt_in_base(a * nn.inverse()), n);
  }
  std::array<Fq2Elem, 2> roots{r, -r};
  if (roots[1] < roots[0]) std::swap(roots[0], roots[1]);
  return roots;
}

}  // namespace spinmod
