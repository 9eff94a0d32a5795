#include "qf2/algebra.hpp"

#include <map>

#include "qf2/f2linear.hpp"

namespace qf2 {

namespace {

// Constant of trace one with the smallest encoding.
GF2k::Elem trace_one(int k) {
  const GF2k& f = GF2k::get(k);
  for (GF2k::Elem e = 1; e < f.size(); ++e)
    if (f.trace(e) == 1) return e;
  return 1;
}

Elem reduce_polynomial(const Elem& x) {
  const TowerPtr& t = x.tower();
  const int k = t->gf_degree();
  const GF2k& gf = GF2k::get(k);
  std::map<Monomial, GF2k::Elem, std::greater<>> terms;
  for (const auto& term : x.rational().num().terms()) terms[term.m] ^= term.c;
  // Replace c m^2 by sqrt(c) m, from the top down.
  for (auto it = terms.begin(); it != terms.end();) {
    const Monomial m = it->first;
    const GF2k::Elem c = it->second;
    bool even = !m.is_one();
    for (auto e : m.e) even &= (e % 2 == 0);
    if (c == 0 || !even) {
      ++it;
      continue;
    }
    Monomial half;
    for (int v = 0; v < kMaxVars; ++v) half.e[v] = static_cast<std::uint16_t>(m.e[v] / 2);
    it = terms.erase(it);
    terms[half] ^= gf.sqrt(c);
    it = terms.upper_bound(m);
  }
  Monomial one;
  if (auto it = terms.find(one); it != terms.end())
    it->second = gf.trace(it->second) ? trace_one(k) : 0;
  std::vector<Poly::Term> out;
  for (const auto& [m, c] : terms)
    if (c) out.push_back({m, c});
  return Elem::from_rational(t, Rational(Poly::from_terms(k, std::move(out))));
}

bool in_wp(const Elem& x) {
  if (x.is_zero()) return true;
  return wp_membership(x).member;
}

// Slot equivalences over rational towers; plain equality elsewhere.
bool as_equivalent(const Elem& a, const Elem& b) {
  if (a == b) return true;
  return a.tower()->is_rational() && in_wp(a + b);
}

bool square_equivalent(const Elem& a, const Elem& b) {
  if (a == b) return true;
  return a.tower()->is_rational() && is_square(a / b);
}

bool trivially_split(const QuatSymbol& s) {
  if (s.a.is_zero() || s.b.is_zero()) return true;
  if (!s.a.tower()->is_rational()) return s.b.is_one();
  return in_wp(s.a) || is_square(s.b);
}

}  // namespace

bool ArfClass::is_zero() const { return in_wp(representative); }

bool ArfClass::equals(const ArfClass& o) const { return in_wp(representative + o.representative); }

ArfClass arf_class(const Elem& representative) {
  ArfClass c{representative, representative};
  const TowerPtr& t = representative.tower();
  if (t->is_rational() && representative.rational().is_polynomial()) c.normalized = reduce_polynomial(representative);
  return c;
}

ArfClass arf(const QuadForm& f) {
  if (!f.is_nonsingular()) throw Error(ErrorKind::SingularInput, "Arf invariant of " + f.to_string());
  Elem s = Elem::zero(f.tower());
  for (const auto& b : f.blocks()) s += b.a * b.b;
  return arf_class(s);
}

BrauerClass BrauerClass::operator+(const BrauerClass& o) const {
  BrauerClass r = *this;
  r.symbols.insert(r.symbols.end(), o.symbols.begin(), o.symbols.end());
  r.insep_ext.insert(r.insep_ext.end(), o.insep_ext.begin(), o.insep_ext.end());
  return r;
}

std::string BrauerClass::to_string() const {
  std::string s;
  for (const auto& q : symbols) s += (s.empty() ? "" : " + ") + q.to_string();
  if (s.empty()) s = "0";
  if (!insep_ext.empty()) {
    s += " over sqrt(";
    for (std::size_t i = 0; i < insep_ext.size(); ++i) s += (i ? "," : "") + insep_ext[i].to_string();
    s += ")";
  }
  return s;
}

QuadForm norm_form(const QuatSymbol& s) {
  const TowerPtr& t = s.a.tower();
  const Elem one = Elem::one(t);
  return QuadForm(t, {{one, s.a}}, {}) + QuadForm(t, {{one, s.a}}, {}).scaled(s.b);
}

QuadForm albert_form(const QuatSymbol& s1, const QuatSymbol& s2) {
  const TowerPtr& t = s1.a.tower();
  const Elem one = Elem::one(t);
  return QuadForm(t, {{one, s1.a}}, {}).scaled(s1.b) + QuadForm(t, {{one, s2.a}}, {}).scaled(s2.b) +
         QuadForm(t, {{one, s1.a + s2.a}}, {});
}

BrauerClass clifford_class(const QuadForm& f) {
  if (!f.is_nonsingular()) throw Error(ErrorKind::SingularInput, "Clifford invariant of " + f.to_string());
  BrauerClass c;
  for (const auto& b : f.blocks()) {
    if (b.a.is_zero() || b.b.is_zero()) continue;  // hyperbolic plane
    c.symbols.push_back({b.a * b.b, b.a});
  }
  return c;
}

Verdict quat_split(const QuatSymbol& s, const IsotropyOptions& opt) {
  if (s.a.is_zero()) return Verdict::make_yes("i(i+1) = 0");
  if (s.b.is_zero()) return Verdict::make_yes("j^2 = 0");
  if (trivially_split(s)) return Verdict::make_yes("slot is trivial");
  Verdict v = isotropy(norm_form(s), opt);
  v.note("norm form " + norm_form(s).to_string());
  return v;
}

Verdict biquat_division(const QuatSymbol& s1, const QuatSymbol& s2, const IsotropyOptions& opt) {
  if (trivially_split(s1) || trivially_split(s2)) return Verdict::make_no("a factor is split");
  const QuadForm a = albert_form(s1, s2);
  Verdict v = isotropy(a, opt);
  Verdict out = v;
  out.answer = negate(v.answer);
  out.vector.reset();
  out.note("Albert form " + a.to_string());
  return out;
}

BrauerClass even_clifford_descriptor(const QuadForm& psi) {
  const Normalized n = normalize(psi);
  BrauerClass out;
  if (n.s == 0) {
    if (n.defect > 0) throw Error(ErrorKind::NormalFormUnavailable, "no nonzero quasilinear entry in " + psi.to_string());
    for (const auto& b : n.form.blocks())
      if (!b.a.is_zero() && !b.b.is_zero()) out.symbols.push_back({b.a * b.b, b.a});
    return out;
  }
  const Elem c = n.form.diag()[0];
  const QuadForm g = n.form.scaled(c.inverse());
  for (const auto& b : g.blocks())
    if (!b.a.is_zero() && !b.b.is_zero()) out.symbols.push_back({b.a * b.b, b.a});
  for (int j = 1; j < n.s; ++j) out.insep_ext.push_back(g.diag()[j]);
  return out;
}

BrauerClass brauer_simplify(const BrauerClass& b, const IsotropyOptions& opt) {
  std::vector<QuatSymbol> syms;
  for (const auto& s : b.symbols)
    if (!trivially_split(s)) syms.push_back(s);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < syms.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < syms.size() && !changed; ++j) {
        if (as_equivalent(syms[i].a, syms[j].a)) {
          syms[i].b = syms[i].b * syms[j].b;
        } else if (square_equivalent(syms[i].b, syms[j].b)) {
          syms[i].a = syms[i].a + syms[j].a;
        } else {
          continue;
        }
        syms.erase(syms.begin() + static_cast<long>(j));
        if (trivially_split(syms[i])) syms.erase(syms.begin() + static_cast<long>(i));
        changed = true;
      }
  }
  std::vector<QuatSymbol> kept;
  IsotropyOptions quick = opt;
  for (const auto& s : syms)
    if (!quat_split(s, quick).yes()) kept.push_back(s);
  return BrauerClass{kept, b.insep_ext};
}

Verdict brauer_trivial(const BrauerClass& b, const IsotropyOptions& opt) {
  const BrauerClass s = brauer_simplify(b, opt);
  if (s.symbols.empty()) return Verdict::make_yes("symbols cancel");
  if (!s.insep_ext.empty()) return Verdict::make_unknown("residual symbols over an inseparable extension: " + s.to_string());
  if (s.symbols.size() == 1) {
    Verdict v = quat_split(s.symbols[0], opt);
    if (v.no()) return Verdict::make_no("non-split residual symbol " + s.symbols[0].to_string());
    if (v.yes()) return Verdict::make_yes("residual symbol splits");
    return Verdict::make_unknown("splitting of " + s.symbols[0].to_string() + " undecided");
  }
  if (s.symbols.size() == 2) {
    // Split iff the Albert form is hyperbolic.
    try {
      const WittData w = witt_decompose(albert_form(s.symbols[0], s.symbols[1]), opt);
      if (w.i_W == 3) return Verdict::make_yes("Albert form hyperbolic");
      return Verdict::make_no("Albert form has Witt index " + std::to_string(w.i_W));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnknownIsotropy) throw;
      return Verdict::make_unknown(e.what());
    }
  }
  return Verdict::make_unknown("more than two residual symbols: " + s.to_string());
}

Verdict index_reduction_obstruction(const BrauerClass& d, const QuadForm& psi, const IsotropyOptions& opt) {
  if (!d.insep_ext.empty()) return Verdict::make_unknown("algebra given over an inseparable extension");
  const BrauerClass s = brauer_simplify(d, opt);
  if (s.symbols.empty()) return Verdict::make_yes("trivial algebra");
  if (s.symbols.size() > 2) return Verdict::make_unknown("more than two symbols");
  const Normalized n = normalize(psi);
  const int algebra_dim = s.symbols.size() == 1 ? 4 : 16;

  // Division over F?
  Verdict division = s.symbols.size() == 1 ? Verdict(quat_split(s.symbols[0], opt))
                                           : biquat_division(s.symbols[0], s.symbols[1], opt);
  if (s.symbols.size() == 1) division.answer = negate(division.answer);
  if (division.no()) return Verdict::make_yes("not a division algebra over F");

  // Dimension filter on the subalgebra the criterion asks for.
  if (division.yes()) {
    long sub_dim = 0;
    if (n.s == 0 && n.defect == 0) {
      if (!arf(n.form).is_zero()) sub_dim = 1L << (n.form.dim() - 1);  // even Clifford algebra
    } else if (n.s > 0) {
      sub_dim = (1L << (2 * n.r)) * (1L << (n.s - 1));
    }
    if (sub_dim > algebra_dim)
      return Verdict::make_no("subalgebra of dimension " + std::to_string(sub_dim) + " cannot embed in dimension " +
                              std::to_string(algebra_dim));
    if (n.s > 0 && n.r == 0 && n.s == 3 && algebra_dim == 4)
      return Verdict::make_no("biquadratic extension cannot embed in a quaternion division algebra");
  }

  // Direct check over the function field of psi.
  FunctionField ff;
  try {
    ff = function_field(psi);
  } catch (const Error& e) {
    return Verdict::make_unknown(std::string("function field unavailable: ") + e.what());
  }
  IsotropyOptions o = opt;
  if (s.symbols.size() == 1) {
    const QuatSymbol q{ff.embed(s.symbols[0].a), ff.embed(s.symbols[0].b)};
    Verdict v = quat_split(q, o);
    v.note("splitting over F(psi)");
    v.vector.reset();
    return v;
  }
  const QuatSymbol q1{ff.embed(s.symbols[0].a), ff.embed(s.symbols[0].b)};
  const QuatSymbol q2{ff.embed(s.symbols[1].a), ff.embed(s.symbols[1].b)};
  Verdict v = biquat_division(q1, q2, o);
  Verdict out = v;
  out.answer = negate(v.answer);
  out.note("division over F(psi)");
  return out;
}

Verdict in_I3q(const QuadForm& f, const IsotropyOptions& opt) {
  if (!f.is_nonsingular()) throw Error(ErrorKind::SingularInput, "in_I3q needs a nonsingular form");
  if (f.dim() > 10) throw Error(ErrorKind::DimensionTooLarge, "in_I3q handles dimension <= 10");
  if (!arf(f).is_zero()) return Verdict::make_no("nonzero Arf invariant");
  WittData w;
  try {
    w = witt_decompose(f, opt);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnknownIsotropy) throw;
    w.i_W = -1;
  }
  if (w.i_W >= 0) {
    const int d = w.an_part.dim();
    if (d == 0) return Verdict::make_yes("hyperbolic");
    // Anisotropic forms in I^3 have dimension 0, 8 or at least 12.
    if (d != 8) return Verdict::make_no("anisotropic part of dimension " + std::to_string(d));
  }
  Verdict c = brauer_trivial(clifford_class(f), opt);
  c.vector.reset();
  c.note("Clifford invariant " + clifford_class(f).to_string());
  return c;
}

std::optional<QuadForm> gp3_witness(const QuadForm& f, const IsotropyOptions& opt) {
  if (!in_I3q(f, opt).yes()) return std::nullopt;
  WittData w;
  try {
    w = witt_decompose(f, opt);
  } catch (const Error&) {
    return std::nullopt;
  }
  const TowerPtr& t = f.tower();
  QuadForm pi = w.an_part.dim() == 0 ? QuadForm::hyperbolic(t, 4) : w.an_part;
  if (pi.dim() != 8) return std::nullopt;
  const WittData check = witt_decompose(f + pi, opt);
  if (2 * check.i_W != f.dim() + pi.dim()) return std::nullopt;
  return pi;
}

}  // namespace qf2
