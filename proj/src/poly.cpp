#include "spinmod/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spinmod {

unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da > db;
  return b < a;
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Monomial m(nvars, 0);
  m[index] = 1;
  return monomial(m);
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p(m.size());
  p.add_term(m, c);
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.begin()->first));
}

Rational Poly::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::check_universe(const Poly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("polynomials over different variable sets");
}

Poly& Poly::operator+=(const Poly& o) {
  check_universe(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_universe(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  return r += o;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  return r -= o;
}

Poly Poly::operator-() const { return *this * Rational(-1); }

Poly Poly::operator*(const Rational& c) const {
  Poly r = *this;
  return r *= c;
}

Poly Poly::operator*(const Poly& o) const {
  check_universe(o);
  Poly r(nvars_);
  Monomial prod(nvars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) prod[i] = ma[i] + mb[i];
      r.add_term(prod, ca * cb);
    }
  }
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(nvars_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::substitute(const std::map<std::size_t, Poly>& images) const {
  for (const auto& [var, img] : images) {
    if (var >= nvars_) throw std::out_of_range("substitution variable out of range");
    check_universe(img);
  }
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    Monomial kept = m;
    Poly term = constant(nvars_, c);
    for (const auto& [var, img] : images) {
      if (m[var] == 0) continue;
      kept[var] = 0;
      term = term * img.pow(m[var]);
    }
    out += term * monomial(kept);
  }
  return out;
}

Poly Poly::derivative(std::size_t var) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    --d[var];
    out.add_term(d, c * m[var]);
  }
  return out;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool is_unit = total_degree(m) == 0;
    bool wrote = false;
    if (mag != 1 || is_unit) {
      os << spinmod::to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << names.at(i);
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

std::size_t linear_rank(const std::vector<Poly>& polys) {
  // Gaussian elimination on the sparse coefficient rows, keyed by monomial.
  std::vector<Poly> basis;  // each with a distinct leading monomial
  for (Poly p : polys) {
    bool reduced = true;
    while (reduced && !p.is_zero()) {
      reduced = false;
      const auto& lead = p.terms().begin()->first;
      for (const auto& b : basis) {
        if (b.terms().begin()->first == lead) {
          const Rational factor = p.terms().begin()->second / b.terms().begin()->second;
          p -= b * factor;
          reduced = true;
          break;
        }
      }
    }
    if (!p.is_zero()) basis.push_back(std::move(p));
  }
  return basis.size();
}

}  // namespace spinmod
