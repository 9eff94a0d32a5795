#include "qf2/rational.hpp"

#include "qf2/error.hpp"

namespace qf2 {

Rational Rational::make_normalized(Poly num, Poly den) {
  const int k = num.field_degree();
  if (num.is_zero()) return Rational(k);
  const auto lc = den.lead().c;
  if (lc != 1) {
    const auto inv = GF2k::get(k).inv(lc);
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  return Rational(std::move(num), std::move(den), NoReduce{});
}

Rational::Rational(Poly num, Poly den) {
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  if (!den.is_one() && !num.is_zero()) {
    Poly g = gcd(num, den);
    if (!g.is_one()) {
      num = divide_exact(num, g);
      den = divide_exact(den, g);
    }
  }
  if (num.is_zero()) den = Poly::constant(num.field_degree(), 1);
  *this = make_normalized(std::move(num), std::move(den));
}

Rational Rational::operator+(const Rational& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_one() && o.den_.is_one()) return Rational(num_ + o.num_);
  if (den_ == o.den_) return Rational(num_ + o.num_, den_);
  if (o.den_.is_one()) return Rational(num_ + o.num_ * den_, den_, NoReduce{});
  if (den_.is_one()) return Rational(num_ * o.den_ + o.num_, o.den_, NoReduce{});
  Poly g = gcd(den_, o.den_);
  if (g.is_one()) return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_, NoReduce{});
  Poly d1 = divide_exact(den_, g), d2 = divide_exact(o.den_, g);
  Poly n = num_ * d2 + o.num_ * d1;
  if (n.is_zero()) return Rational(num_.field_degree());
  Poly g2 = gcd(n, g);
  if (!g2.is_one()) {
    n = divide_exact(n, g2);
    g = divide_exact(g, g2);
  }
  return make_normalized(std::move(n), d1 * d2 * g);
}

Rational Rational::operator*(const Rational& o) const {
  if (is_zero() || o.is_zero()) return Rational(num_.field_degree());
  if (den_.is_one() && o.den_.is_one()) return Rational(num_ * o.num_);
  Poly n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
  Poly g1 = gcd(n1, d2), g2 = gcd(n2, d1);
  if (!g1.is_one()) {
    n1 = divide_exact(n1, g1);
    d2 = divide_exact(d2, g1);
  }
  if (!g2.is_one()) {
    n2 = divide_exact(n2, g2);
    d1 = divide_exact(d1, g2);
  }
  return make_normalized(n1 * n2, d1 * d2);
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return make_normalized(den_, num_);
}

Rational Rational::square() const {
  return Rational(num_.frobenius(), den_.frobenius(), NoReduce{});
}

namespace {

std::optional<Poly> poly_sqrt(const Poly& p) {
  const auto& f = p.gf();
  std::vector<Poly::Term> terms;
  terms.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    Poly::Term u{};
    for (int i = 0; i < kMaxVars; ++i) {
      if (t.m.e[i] & 1) return std::nullopt;
      u.m.e[i] = static_cast<std::uint16_t>(t.m.e[i] / 2);
    }
    u.c = f.sqrt(t.c);
    terms.push_back(u);
  }
  return Poly::from_terms(p.field_degree(), std::move(terms));
}

}  // namespace

std::optional<Rational> Rational::sqrt() const {
  auto n = poly_sqrt(num_);
  if (!n) return std::nullopt;
  auto d = poly_sqrt(den_);
  if (!d) return std::nullopt;
  return Rational(std::move(*n), std::move(*d), NoReduce{});
}

Rational Rational::residue(int var) const {
  if (is_zero() || valuation(var) != 0)
    throw Error(ErrorKind::ResidueOfNonUnit, "residue of a non-unit");
  Poly n = num_, d = den_;
  int on = n.order_in(var), od = d.order_in(var);
  Monomial m;
  m.e[var] = static_cast<std::uint16_t>(on);
  if (on) n = n.divided_by_monomial(m);
  m.e[var] = static_cast<std::uint16_t>(od);
  if (od) d = d.divided_by_monomial(m);
  return Rational(n.at_zero(var), d.at_zero(var));
}

Rational substitute_rational(const Poly& p, int var, const Rational& value) {
  auto coeffs = p.coefficients_in(var);
  Rational r(p.field_degree());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * value + Rational(*it);
  return r;
}

Rational Rational::substitute(int var, const Rational& value) const {
  if (!(support() >> var & 1)) return *this;
  return substitute_rational(num_, var, value) / substitute_rational(den_, var, value);
}

std::string Rational::to_string(const std::vector<std::string>& names) const {
  std::string n = num_.to_string(names);
  if (den_.is_one()) return n;
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string(names);
  if (den_.terms().size() > 1 || !den_.lead().m.is_one()) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace qf2
