#include "qf2/isotropy.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <tuple>
#include <map>
#include <set>

#include "qf2/f2linear.hpp"
#include "qf2/gf2_system.hpp"

namespace qf2 {

const char* to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "Yes";
    case Answer::No: return "No";
    case Answer::Unknown: return "Unknown";
  }
  return "?";
}

Answer negate(Answer a) {
  if (a == Answer::Yes) return Answer::No;
  if (a == Answer::No) return Answer::Yes;
  return Answer::Unknown;
}

Verdict Verdict::make_yes(std::string why, std::optional<Vec> v) {
  Verdict r;
  r.answer = Answer::Yes;
  r.vector = std::move(v);
  r.trace.push_back(std::move(why));
  return r;
}

Verdict Verdict::make_no(std::string why) {
  Verdict r;
  r.answer = Answer::No;
  r.trace.push_back(std::move(why));
  return r;
}

Verdict Verdict::make_unknown(std::string why) {
  Verdict r;
  r.trace.push_back(std::move(why));
  return r;
}

namespace {

Elem var_power(const TowerPtr& t, int var, int e) {
  Elem x = Elem::variable(t, var);
  return x.pow(e);
}

std::uint32_t form_support(const QuadForm& f) {
  std::uint32_t s = 0;
  auto add = [&](const Elem& e) {
    for (const auto& c : e.comps()) s |= c.support();
  };
  for (const auto& b : f.blocks()) add(b.a), add(b.b);
  for (const auto& c : f.diag()) add(c);
  for (const auto& q : f.tower()->quads())
    for (const auto& c : q.param) s |= c.support();
  return s;
}

bool verified_zero(const QuadForm& f, const Vec& v) { return !is_zero_vec(v) && f.eval(v).is_zero(); }

std::string vec_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

}  // namespace

std::optional<Vec> structural_zero(const QuadForm& f) {
  const TowerPtr& t = f.tower();
  const int n = f.dim(), r = f.block_count(), s = f.diag_count();
  auto unit = [&](int i) {
    Vec v = zero_vec(t, n);
    v[i] = Elem::one(t);
    return v;
  };
  for (int i = 0; i < r; ++i) {
    if (f.blocks()[i].a.is_zero()) return unit(2 * i);
    if (f.blocks()[i].b.is_zero()) return unit(2 * i + 1);
  }
  for (int j = 0; j < s; ++j)
    if (f.diag()[j].is_zero()) return unit(2 * r + j);
  if (!t->is_rational()) return std::nullopt;

  if (s >= 2)
    if (auto dep = f2_dependency(f.diag())) {
      Vec v = zero_vec(t, n);
      for (int j = 0; j < s; ++j) v[2 * r + j] = (*dep)[j];
      return v;
    }
  for (int i = 0; i < r; ++i) {
    const Block& b = f.blocks()[i];
    auto w = wp_membership(b.a * b.b);
    if (w.member) {
      Vec v = zero_vec(t, n);
      v[2 * i] = *w.w / b.a;
      v[2 * i + 1] = Elem::one(t);
      return v;
    }
  }
  // One vector per block (e, f or e+f) plus the diagonal are pairwise
  // orthogonal, so q restricted to their span is totally singular.
  if (r >= 1 && r + s >= 2) {
    const int choices = r <= 6 ? 3 : 1;
    int total = 1;
    for (int i = 0; i < r; ++i) total *= choices;
    for (int combo = 0; combo < total; ++combo) {
      std::vector<int> pick(r);
      std::vector<Elem> vals;
      for (int i = 0, c = combo; i < r; ++i, c /= choices) {
        pick[i] = c % choices;
        const Block& b = f.blocks()[i];
        vals.push_back(pick[i] == 0 ? b.a : pick[i] == 1 ? b.b : b.a + b.b + Elem::one(t));
      }
      vals.insert(vals.end(), f.diag().begin(), f.diag().end());
      bool has_zero = false;
      for (const auto& x : vals) has_zero |= x.is_zero();
      if (has_zero) {
        // e + f with a + b + 1 = 0: the block itself is isotropic.
        for (int i = 0; i < r; ++i)
          if (vals[i].is_zero()) {
            Vec v = zero_vec(t, n);
            v[2 * i] = Elem::one(t);
            v[2 * i + 1] = Elem::one(t);
            return v;
          }
      }
      auto dep = f2_dependency(vals);
      if (!dep) continue;
      Vec v = zero_vec(t, n);
      for (int i = 0; i < r; ++i) {
        if (pick[i] != 1) v[2 * i] = (*dep)[i];
        if (pick[i] != 0) v[2 * i + 1] = (*dep)[i];
      }
      for (int j = 0; j < s; ++j) v[2 * r + j] = (*dep)[r + j];
      return v;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Certificate search

namespace {

using KeySet = std::vector<int>;  // sorted ids of (component, monomial, bit)

KeySet xor_keys(const KeySet& a, const KeySet& b) {
  KeySet out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class KeyTable {
 public:
  KeyTable(int k, Poly lcm) : k_(k), lcm_(std::move(lcm)) {}
  KeySet keys(const Elem& e) {
    KeySet out;
    for (std::size_t c = 0; c < e.comps().size(); ++c) {
      const Rational& r = e.comps()[c];
      if (r.is_zero()) continue;
      const Poly p = divide_exact(r.num() * lcm_, r.den());
      for (const auto& term : p.terms())
        for (int bit = 0; bit < k_; ++bit)
          if ((term.c >> bit) & 1) out.push_back(id(static_cast<int>(c), term.m, bit));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  int id(int comp, const Monomial& m, int bit) {
    auto [it, ins] = ids_.emplace(std::make_tuple(comp, m, bit), static_cast<int>(ids_.size()));
    return it->second;
  }
  int k_;
  Poly lcm_;
  std::map<std::tuple<int, Monomial, int>, int> ids_;
};

Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return divide_exact(a * b, gcd(a, b)).monic();
}

std::vector<Monomial> monomial_box(std::uint32_t vars, int degree) {
  std::vector<int> vs;
  for (int i = 0; i < kMaxVars; ++i)
    if ((vars >> i) & 1) vs.push_back(i);
  std::vector<Monomial> out;
  Monomial cur;
  // Enumerate exponent vectors over vs with total degree <= degree.
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int left) {
    if (idx == vs.size()) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur.e[vs[idx]] = static_cast<std::uint16_t>(e);
      rec(idx + 1, left - e);
    }
    cur.e[vs[idx]] = 0;
  };
  rec(0, degree);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    const int da = a.total_degree(), db = b.total_degree();
    return da != db ? da < db : a > b;
  });
  return out;
}

}  // namespace

std::optional<Vec> certificate_search(const QuadForm& f, int degree_bound, const IsotropyOptions& opt) {
  const TowerPtr& t = f.tower();
  const int k = t->gf_degree();
  const int r = f.block_count(), s = f.diag_count(), n = f.dim();
  if (n == 0) return std::nullopt;
  if (auto v = structural_zero(f)) return v;
  const std::uint32_t vars = form_support(f);
  const std::size_t comps = std::size_t{1} << t->quad_count();
  const std::size_t coords = static_cast<std::size_t>(r + s);

  int degree = std::max(0, degree_bound);
  std::vector<Monomial> box = monomial_box(vars, degree);
  while (degree > 0 && coords * box.size() * k * comps > opt.max_unknowns) box = monomial_box(vars, --degree);
  if (coords * box.size() * k * comps > opt.max_unknowns) return std::nullopt;

  // Basis elements beta^bit * monomial * (product of quadratic generators).
  std::vector<Elem> basis;
  for (const auto& m : box)
    for (std::size_t q = 0; q < comps; ++q)
      for (int bit = 0; bit < k; ++bit) {
        Elem e = Elem::from_rational(t, Rational(Poly::monomial(k, m, GF2k::Elem{1} << bit)));
        for (int g = 0; g < t->quad_count(); ++g)
          if ((q >> g) & 1) e *= Elem::generator(t, g);
        basis.push_back(std::move(e));
      }

  // Candidate y-coordinates: 0 and monomials of degree <= min(degree, 2).
  std::vector<Elem> ycands{Elem::zero(t)};
  for (const auto& m : monomial_box(vars, std::min(degree, 2)))
    ycands.push_back(Elem::from_rational(t, Rational(Poly::monomial(k, m))));
  if (t->quad_count() > 0) {
    const std::size_t base = ycands.size();
    for (int g = 0; g < t->quad_count(); ++g)
      for (std::size_t i = 1; i < std::min<std::size_t>(base, 4); ++i) ycands.push_back(ycands[i] * Elem::generator(t, g));
  }

  // Contributions.
  std::vector<std::vector<Elem>> sq_part(coords);     // coeff * e^2
  std::vector<std::vector<std::vector<Elem>>> cross(r);  // e * y
  std::vector<std::vector<Elem>> rhs_part(r);         // b * y^2
  for (int i = 0; i < r; ++i) {
    const Block& b = f.blocks()[i];
    for (const auto& e : basis) sq_part[i].push_back(b.a * e.square());
    cross[i].resize(ycands.size());
    for (std::size_t y = 0; y < ycands.size(); ++y) {
      for (const auto& e : basis) cross[i][y].push_back(e * ycands[y]);
      rhs_part[i].push_back(b.b * ycands[y].square());
    }
  }
  for (int j = 0; j < s; ++j)
    for (const auto& e : basis) sq_part[r + j].push_back(f.diag()[j] * e.square());

  Poly lcm = Poly::constant(k, 1);
  auto absorb = [&](const Elem& e) {
    for (const auto& c : e.comps())
      if (!c.is_zero()) lcm = poly_lcm(lcm, c.den());
  };
  for (const auto& v : sq_part)
    for (const auto& e : v) absorb(e);
  for (const auto& vv : cross)
    for (const auto& v : vv)
      for (const auto& e : v) absorb(e);
  for (const auto& v : rhs_part)
    for (const auto& e : v) absorb(e);

  KeyTable table(k, lcm);
  std::vector<std::vector<KeySet>> sq_keys(coords);
  for (std::size_t c = 0; c < coords; ++c)
    for (const auto& e : sq_part[c]) sq_keys[c].push_back(table.keys(e));
  std::vector<std::vector<std::vector<KeySet>>> cross_keys(r);
  std::vector<std::vector<KeySet>> rhs_keys(r);
  for (int i = 0; i < r; ++i) {
    cross_keys[i].resize(ycands.size());
    for (std::size_t y = 0; y < ycands.size(); ++y) {
      for (const auto& e : cross[i][y]) cross_keys[i][y].push_back(table.keys(e));
      rhs_keys[i].push_back(table.keys(rhs_part[i][y]));
    }
  }

  const std::size_t per = basis.size();
  const std::size_t unknowns = coords * per;
  // Enumerate y-tuples, simplest first.
  std::vector<std::vector<int>> combos;
  {
    std::vector<int> cur(r, 0);
    std::function<void(int)> rec = [&](int i) {
      if (combos.size() >= opt.max_combos * 4) return;
      if (i == r) {
        combos.push_back(cur);
        return;
      }
      for (std::size_t y = 0; y < ycands.size(); ++y) {
        cur[i] = static_cast<int>(y);
        rec(i + 1);
      }
    };
    rec(0);
    std::stable_sort(combos.begin(), combos.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
      int sa = 0, sb = 0;
      for (int x : a) sa += x;
      for (int x : b) sb += x;
      return sa < sb;
    });
    if (combos.size() > opt.max_combos) combos.resize(opt.max_combos);
  }

  for (const auto& combo : combos) {
    std::map<int, std::vector<std::size_t>> rows;
    KeySet rhs;
    bool all_zero_y = true;
    for (int i = 0; i < r; ++i) {
      if (combo[i] != 0) all_zero_y = false;
      rhs = xor_keys(rhs, rhs_keys[i][combo[i]]);
    }
    for (std::size_t c = 0; c < coords; ++c)
      for (std::size_t u = 0; u < per; ++u) {
        const KeySet* ks = &sq_keys[c][u];
        KeySet tmp;
        if (static_cast<int>(c) < r && combo[c] != 0) {
          tmp = xor_keys(*ks, cross_keys[c][combo[c]][u]);
          ks = &tmp;
        }
        for (int key : *ks) rows[key].push_back(c * per + u);
      }
    for (int key : rhs) rows[key];
    const std::set<int> rhs_set(rhs.begin(), rhs.end());
    Gf2System sys(unknowns);
    for (const auto& [key, cols] : rows) sys.add_equation(cols, rhs_set.count(key) > 0);
    auto sol = sys.solve(all_zero_y);
    if (!sol) continue;
    Vec v = zero_vec(t, n);
    for (int i = 0; i < r; ++i) v[2 * i + 1] = ycands[combo[i]];
    for (std::size_t c = 0; c < coords; ++c) {
      Elem x = Elem::zero(t);
      for (std::size_t u = 0; u < per; ++u)
        if ((*sol)[c * per + u]) x += basis[u];
      if (static_cast<int>(c) < r) v[2 * c] = x;
      else v[2 * r + (c - r)] = x;
    }
    if (verified_zero(f, v)) return v;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Residue recursion

namespace {

struct Engine {
  const IsotropyOptions& opt;
  std::map<std::string, Verdict> memo;
  int budget = 4000;

  Verdict decide(const QuadForm& f);
  std::optional<Verdict> split(const QuadForm& f0, int var, bool inverted);
};

QuadForm invert_form(const QuadForm& f, int var) {
  std::vector<Block> bl;
  for (const auto& b : f.blocks()) bl.push_back({invert_var(b.a, var), invert_var(b.b, var)});
  std::vector<Elem> dg;
  for (const auto& c : f.diag()) dg.push_back(invert_var(c, var));
  return QuadForm(f.tower(), std::move(bl), std::move(dg));
}

int floor_half(int e) { return e >= 0 ? e / 2 : -((-e + 1) / 2); }

Verdict Engine::decide(const QuadForm& f) {
  const TowerPtr& t = f.tower();
  if (f.dim() == 0) return Verdict::make_no("zero form");
  const std::string key = t->to_string() + "|" + f.to_string();
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Verdict out;
  if (auto v = structural_zero(f)) {
    out = Verdict::make_yes("explicit zero " + vec_string(*v), *v);
  } else if (!t->is_rational()) {
    out = Verdict::make_unknown("no residue tools over quadratic towers");
  } else {
    const std::uint32_t sup = form_support(f);
    if (sup == 0) {
      // Constant coefficients: decided over the finite field, and a purely
      // transcendental extension preserves anisotropy.
      out = Verdict::make_no("anisotropic over the finite field: " + f.to_string());
    } else if (!opt.residues || --budget < 0) {
      out = Verdict::make_unknown("residue recursion disabled or exhausted");
    } else {
      out = Verdict::make_unknown("no conclusive residue split for " + f.to_string());
      for (int var = 0; var < t->var_count() && out.unknown(); ++var) {
        if (!((sup >> var) & 1)) continue;
        for (bool inv : {false, true}) {
          if (auto r = split(f, var, inv)) {
            out = *r;
            break;
          }
        }
      }
    }
  }
  memo.emplace(key, out);
  return out;
}

std::optional<Verdict> Engine::split(const QuadForm& f0, int var, bool inverted) {
  const TowerPtr& t = f0.tower();
  const QuadForm f = inverted ? invert_form(f0, var) : f0;
  const Elem tv = Elem::variable(t, var);
  const int r = f.block_count(), s = f.diag_count();
  std::vector<Block> bl = f.blocks();
  std::vector<Elem> mu(r, Elem::zero(t));

  // Where each working coordinate goes: residue level and t-shift.
  struct Slot {
    int level;
    int shift;
  };
  std::vector<Slot> slot(f.dim());
  std::vector<Block> rblocks[2];
  std::vector<Elem> rdiag[2];
  std::vector<int> rblock_coord[2], rdiag_coord[2];

  for (int i = 0; i < r; ++i) {
    Elem& a = bl[i].a;
    Elem& b = bl[i].b;
    // Reduce ab modulo the Artin-Schreier image to remove even poles
    // with square leading coefficient: [a,b] ~ [a, b + m + a m^2].
    for (int guard = 0; guard < 64; ++guard) {
      const Elem x = a * b;
      const int nv = *valuation(x, var);
      if (nv >= 0 || nv % 2 != 0) break;
      const Elem lc = residue_in_place(x * var_power(t, var, -nv), var);
      if (!is_square(lc)) break;
      const Elem lam = var_power(t, var, nv / 2) * sqrt(lc);
      const Elem m = lam / a;
      b = b + m + a * m.square();
      mu[i] += m;
      if (b.is_zero()) return std::nullopt;  // isotropic; found elsewhere
    }
    const int e1 = *valuation(a, var), e2 = *valuation(b, var);
    const int nv = e1 + e2;
    if (nv > 0) return std::nullopt;
    const Elem ua = residue(a * var_power(t, var, -e1), var);
    const Elem ub = residue(b * var_power(t, var, -e2), var);
    const int l1 = ((e1 % 2) + 2) % 2, l2 = ((e2 % 2) + 2) % 2;
    slot[2 * i] = {l1, -floor_half(e1)};
    slot[2 * i + 1] = {l2, -floor_half(e2)};
    if (nv == 0) {
      rblocks[l1].push_back({ua, ub});
      rblock_coord[l1].push_back(2 * i);
    } else {
      rdiag[l1].push_back(ua);
      rdiag_coord[l1].push_back(2 * i);
      rdiag[l2].push_back(ub);
      rdiag_coord[l2].push_back(2 * i + 1);
    }
  }
  for (int j = 0; j < s; ++j) {
    const Elem& c = f.diag()[j];
    const int e = *valuation(c, var);
    const int l = ((e % 2) + 2) % 2;
    slot[2 * r + j] = {l, -floor_half(e)};
    rdiag[l].push_back(residue(c * var_power(t, var, -e), var));
    rdiag_coord[l].push_back(2 * r + j);
  }
  const TowerPtr k = t->without_var(var);
  QuadForm res[2] = {QuadForm(k, rblocks[0], rdiag[0]), QuadForm(k, rblocks[1], rdiag[1])};
  const std::string vname = (inverted ? "1/" : "") + t->vars()[var];
  Verdict sub[2] = {decide(res[0]), decide(res[1])};
  if (sub[0].no() && sub[1].no()) {
    Verdict v = Verdict::make_no("residues at " + vname + ": " + res[0].to_string() + " | " + res[1].to_string());
    for (int l = 0; l < 2; ++l)
      for (const auto& line : sub[l].trace) v.trace.push_back("  " + line);
    return v;
  }
  for (int l = 0; l < 2; ++l) {
    if (!sub[l].yes() || !sub[l].vector) continue;
    const Vec& w = *sub[l].vector;
    Vec lifted = zero_vec(t, f.dim());
    auto put = [&](int coord, const Elem& val) {
      if (val.is_zero()) return;
      lifted[coord] = reinsert_var(val, t, var) * var_power(t, var, slot[coord].shift);
    };
    std::size_t idx = 0;
    for (int coord : rblock_coord[l]) {
      put(coord, w[idx++]);
      put(coord + 1, w[idx++]);
    }
    for (int coord : rdiag_coord[l]) put(coord, w[idx++]);
    for (int i = 0; i < r; ++i)
      if (!mu[i].is_zero()) lifted[2 * i] = lifted[2 * i] + mu[i] * lifted[2 * i + 1];
    if (inverted)
      for (auto& x : lifted) x = invert_var(x, var);
    if (verified_zero(f0, lifted)) {
      Verdict v = Verdict::make_yes("lifted from residue at " + vname + ": " + vec_string(lifted), lifted);
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict isotropy(const QuadForm& f, const IsotropyOptions& opt) {
  Engine eng{opt, {}};
  Verdict v = eng.decide(f);
  if (v.unknown() && opt.search) {
    if (auto w = certificate_search(f, opt.degree_bound, opt))
      return Verdict::make_yes("certificate search " + vec_string(*w), *w);
    v.note("certificate search to degree " + std::to_string(opt.degree_bound) + " found nothing");
  }
  return v;
}

}  // namespace qf2
