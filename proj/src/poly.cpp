#include "qf2/poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qf2 {

int Monomial::total_degree() const {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > other.e[i]) return false;
  return true;
}

bool Monomial::is_one() const {
  for (auto x : e)
    if (x) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
  return r;
}

Poly Poly::constant(int k, Coeff c) {
  Poly p(k);
  if (c) p.terms_.push_back({Monomial{}, c});
  return p;
}

Poly Poly::variable(int k, int var, int exp) {
  Monomial m;
  m.e[var] = static_cast<std::uint16_t>(exp);
  return monomial(k, m, 1);
}

Poly Poly::monomial(int k, const Monomial& m, Coeff c) {
  Poly p(k);
  if (c) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(int k, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
  Poly p(k);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c ^= t.c;
      if (!p.terms_.back().c) p.terms_.pop_back();
    } else if (t.c) {
      p.terms_.push_back(t);
    }
  }
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].c == 1 && terms_[0].m.is_one();
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }

Poly::Coeff Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
  return 0;
}

int Poly::degree_in(int var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.e[var]));
  return d;
}

int Poly::order_in(int var) const {
  if (terms_.empty()) return -1;
  int d = terms_[0].m.e[var];
  for (const auto& t : terms_) d = std::min(d, static_cast<int>(t.m.e[var]));
  return d;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.m.total_degree());
  return d;
}

std::uint32_t Poly::support() const {
  std::uint32_t s = 0;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i)
      if (t.m.e[i]) s |= 1u << i;
  return s;
}

std::vector<Poly> Poly::coefficients_in(int var) const {
  std::vector<std::vector<Term>> buckets(std::max(0, degree_in(var) + 1));
  for (const auto& t : terms_) {
    Term u = t;
    u.m.e[var] = 0;
    buckets[t.m.e[var]].push_back(u);
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  // Terms within a bucket keep their relative order, so they stay sorted.
  for (auto& b : buckets) {
    Poly p(k_);
    p.terms_ = std::move(b);
    out.push_back(std::move(p));
  }
  return out;
}

Monomial Poly::min_monomial() const {
  Monomial m;
  if (terms_.empty()) return m;
  m = terms_[0].m;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i) m.e[i] = std::min(m.e[i], t.m.e[i]);
  return m;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r(k_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].m > o.terms_[j].m) {
      r.terms_.push_back(terms_[i++]);
    } else if (o.terms_[j].m > terms_[i].m) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Coeff c = terms_[i].c ^ o.terms_[j].c;
      if (c) r.terms_.push_back({terms_[i].m, c});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (terms_.empty() || o.terms_.empty()) return Poly(k_);
  if (o.terms_.size() == 1) return times_monomial(o.terms_[0].m).scaled(o.terms_[0].c);
  if (terms_.size() == 1) return o.times_monomial(terms_[0].m).scaled(terms_[0].c);
  const auto& f = gf();
  std::vector<Term> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) acc.push_back({a.m * b.m, f.mul(a.c, b.c)});
  return from_terms(k_, std::move(acc));
}

Poly Poly::scaled(Coeff c) const {
  if (c == 0) return Poly(k_);
  if (c == 1) return *this;
  const auto& f = gf();
  Poly r = *this;
  for (auto& t : r.terms_) t.c = f.mul(t.c, c);
  return r;
}

Poly Poly::times_monomial(const Monomial& m) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.m = t.m * m;
  return r;
}

Poly Poly::divided_by_monomial(const Monomial& m) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.m = t.m / m;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(k_, 1), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::frobenius() const {
  const auto& f = gf();
  Poly r = *this;
  // Squaring is injective on monomials and preserves their order.
  for (auto& t : r.terms_) {
    t.c = f.square(t.c);
    for (auto& x : t.m.e) x = static_cast<std::uint16_t>(2 * x);
  }
  return r;
}

Poly Poly::monic() const {
  if (terms_.empty() || terms_[0].c == 1) return *this;
  return scaled(gf().inv(terms_[0].c));
}

Poly Poly::substitute(int var, const Poly& value) const {
  auto coeffs = coefficients_in(var);
  Poly r(k_);
  // Horner in var.
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * value + *it;
  return r;
}

Poly Poly::at_zero(int var) const {
  Poly r(k_);
  for (const auto& t : terms_)
    if (t.m.e[var] == 0) r.terms_.push_back(t);
  return r;
}

std::string format_gf_constant(int k, GF2k::Elem c) {
  if (k == 1 || c <= 1) return std::to_string(c);
  std::string s;
  int terms = 0;
  for (int i = k - 1; i >= 0; --i) {
    if (!((c >> i) & 1)) continue;
    if (!s.empty()) s += "+";
    if (i == 0) s += "1";
    else if (i == 1) s += "g";
    else s += "g^" + std::to_string(i);
    ++terms;
  }
  return terms > 1 ? "(" + s + ")" : s;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += "+";
    std::string mono;
    for (int i = 0; i < kMaxVars; ++i) {
      if (!t.m.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i);
      if (t.m.e[i] > 1) mono += "^" + std::to_string(t.m.e[i]);
    }
    if (mono.empty()) s += format_gf_constant(k_, t.c);
    else if (t.c == 1) s += mono;
    else s += format_gf_constant(k_, t.c) + "*" + mono;
  }
  return s;
}

std::pair<Poly, Poly> divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const int k = a.field_degree();
  const auto& f = GF2k::get(k);
  const auto& lb = b.lead();
  const auto inv_lc = f.inv(lb.c);
  std::vector<Poly::Term> q_terms, r_terms;
  std::map<Monomial, Poly::Coeff, std::greater<>> p;
  for (const auto& t : a.terms()) p.emplace(t.m, t.c);
  while (!p.empty()) {
    auto it = p.begin();
    const Poly::Term lp{it->first, it->second};
    p.erase(it);
    if (!lb.m.divides(lp.m)) {
      r_terms.push_back(lp);
      continue;
    }
    const Poly::Term t{lp.m / lb.m, f.mul(lp.c, inv_lc)};
    q_terms.push_back(t);
    for (std::size_t i = 1; i < b.terms().size(); ++i) {
      const auto& bt = b.terms()[i];
      const Monomial m = bt.m * t.m;
      const Poly::Coeff c = f.mul(bt.c, t.c);
      auto [pos, inserted] = p.emplace(m, c);
      if (!inserted && (pos->second ^= c) == 0) p.erase(pos);
    }
  }
  return {Poly::from_terms(k, std::move(q_terms)), Poly::from_terms(k, std::move(r_terms))};
}

Poly divide_exact(const Poly& a, const Poly& b) {
  if (b.is_monomial()) {
    const auto& t = b.lead();
    for (const auto& u : a.terms())
      if (!t.m.divides(u.m)) throw std::domain_error("inexact polynomial division");
    return a.divided_by_monomial(t.m).scaled(GF2k::get(a.field_degree()).inv(t.c));
  }
  auto [q, r] = divide(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

namespace {

Poly gcd_rec(const Poly& a, const Poly& b);

Poly content_in(const Poly& a, int var) {
  Poly g(a.field_degree());
  for (const auto& c : a.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd_rec(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Poly primitive_part(const Poly& a, int var) {
  Poly c = content_in(a, var);
  return c.is_one() ? a : divide_exact(a, c);
}

// lc(b)^(deg a - deg b + 1) * a mod b, in var.
Poly pseudo_remainder(Poly a, const Poly& b, int var) {
  const int db = b.degree_in(var);
  const Poly lcb = b.coefficients_in(var).back();
  int steps = a.degree_in(var) - db + 1;
  while (steps-- > 0) {
    const int da = a.degree_in(var);
    if (!a.is_zero() && da >= db && da - db == steps) {
      Poly lca = a.coefficients_in(var).back();
      Monomial shift;
      shift.e[var] = static_cast<std::uint16_t>(da - db);
      a = a * lcb + (b * lca).times_monomial(shift);
    } else {
      a = a * lcb;
    }
  }
  return a;
}

Poly lead_coeff(const Poly& a, int var) { return a.coefficients_in(var).back(); }

Poly gcd_rec(const Poly& a, const Poly& b) {
  const int k = a.field_degree();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly::constant(k, 1);
  Monomial ma = a.min_monomial(), mb = b.min_monomial(), mg;
  for (int i = 0; i < kMaxVars; ++i) mg.e[i] = std::min(ma.e[i], mb.e[i]);
  if (a.is_monomial() || b.is_monomial()) return Poly::monomial(k, mg);
  Poly ra = ma.is_one() ? a : a.divided_by_monomial(ma);
  Poly rb = mb.is_one() ? b : b.divided_by_monomial(mb);
  if (ra.is_constant() || rb.is_constant()) return Poly::monomial(k, mg);
  if (ra == rb) return ra.times_monomial(mg).monic();

  const std::uint32_t sa = ra.support(), sb = rb.support();
  Poly g;
  if (const std::uint32_t only = (sa ^ sb) & (sa | sb); only) {
    // A variable present in one side only cannot occur in the gcd.
    int var = 0;
    while (!((only >> var) & 1)) ++var;
    g = (sa >> var) & 1 ? gcd_rec(content_in(ra, var), rb) : gcd_rec(ra, content_in(rb, var));
  } else {
    int var = -1, best = 0;
    for (int v = 0; v < kMaxVars; ++v) {
      if (!((sa >> v) & 1)) continue;
      const int d = std::max(ra.degree_in(v), rb.degree_in(v));
      if (var < 0 || d < best) var = v, best = d;
    }
    Poly ca = content_in(ra, var), cb = content_in(rb, var);
    Poly c = gcd_rec(ca, cb);
    Poly A = ca.is_one() ? ra : divide_exact(ra, ca);
    Poly B = cb.is_one() ? rb : divide_exact(rb, cb);
    if (A.degree_in(var) < B.degree_in(var)) std::swap(A, B);
    // Subresultant PRS; signs vanish in characteristic 2.
    Poly gg = Poly::constant(k, 1), h = Poly::constant(k, 1);
    while (true) {
      const int delta = A.degree_in(var) - B.degree_in(var);
      Poly R = pseudo_remainder(A, B, var);
      if (R.is_zero()) break;
      if (R.degree_in(var) == 0) {
        B = Poly::constant(k, 1);
        break;
      }
      A = std::move(B);
      B = divide_exact(R, gg * h.pow(static_cast<unsigned>(delta)));
      gg = lead_coeff(A, var);
      if (delta == 0) {
      } else if (delta == 1) {
        h = gg;
      } else {
        h = divide_exact(gg.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
      }
    }
    g = c * primitive_part(B, var);
  }
  return g.times_monomial(mg).monic();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcd_rec(a, b); }

}  // namespace qf2
