#include "qf2/classifier.hpp"

#include <functional>
#include <set>

#include "qf2/f2linear.hpp"

namespace qf2 {

const char* to_string(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::WeakDomination: return "weak-domination";
    case Witness::Kind::Similarity: return "similarity";
    case Witness::Kind::RhoPi: return "R1-R2-rho-pi";
    case Witness::Kind::GP3Decomposition: return "phi'-pi";
    case Witness::Kind::Reduction: return "reduction";
    case Witness::Kind::Vector: return "vector";
  }
  return "?";
}

namespace {

bool is_monomial(const Elem& e) {
  return e.tower()->is_rational() && !e.is_zero() && e.rational().is_polynomial() &&
         e.rational().num().terms().size() == 1;
}

// Monomials modulo squares; other elements unchanged.
Elem square_free(const Elem& e) {
  if (!is_monomial(e)) return e;
  Monomial m = e.rational().num().terms()[0].m;
  for (auto& x : m.e) x %= 2;
  return Elem::from_rational(e.tower(), Rational(Poly::monomial(e.tower()->gf_degree(), m)));
}

}  // namespace

std::vector<Elem> candidate_scalars(const std::vector<Elem>& coeffs, int factors) {
  std::vector<Elem> base;
  std::set<std::string> seen_base;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    const Elem r = square_free(c);
    if (r.is_one() || !seen_base.insert(r.to_string()).second) continue;
    base.push_back(r);
  }
  if (coeffs.empty()) return {};
  const TowerPtr& t = coeffs.front().tower();
  std::vector<Elem> out{Elem::one(t)};
  std::set<std::string> seen{out[0].to_string()};
  std::vector<Elem> layer{Elem::one(t)};
  for (int f = 0; f < factors; ++f) {
    std::vector<Elem> next;
    for (const auto& p : layer)
      for (const auto& b : base) {
        const Elem q = square_free(p * b);
        if (seen.insert(q.to_string()).second) {
          out.push_back(q);
          next.push_back(q);
        }
      }
    layer = std::move(next);
  }
  return out;
}

std::vector<Elem> f2_intersection(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  if (a.empty() || b.empty()) return {};
  const TowerPtr& t = a.front().tower();
  const std::size_t cols = a.size() + b.size();
  std::map<std::uint32_t, std::vector<Elem>> rows;
  auto add = [&](std::size_t col, const Elem& v) {
    for (const auto& [eps, c] : decompose(v).coords) {
      auto& row = rows[eps];
      if (row.empty()) row.assign(cols, Elem::zero(t));
      row[col] += c;
    }
  };
  for (std::size_t i = 0; i < a.size(); ++i) add(i, a[i]);
  for (std::size_t j = 0; j < b.size(); ++j) add(a.size() + j, b[j]);
  linalg::Matrix m;
  for (auto& [k, row] : rows) m.push_back(std::move(row));
  std::vector<Elem> out;
  for (const auto& v : linalg::kernel(t, m, cols)) {
    Elem x = Elem::zero(t);
    for (std::size_t i = 0; i < a.size(); ++i) x += v[i].square() * a[i];
    if (x.is_zero()) continue;
    out.push_back(x);
    if (f2_rank(out) < static_cast<int>(out.size())) out.pop_back();
  }
  return out;
}

Verdict oracle_isotropy_over_function_field(const QuadForm& phi, const QuadForm& psi, int degree_bound,
                                            const IsotropyOptions& base) {
  const FunctionField ff = function_field(psi);
  IsotropyOptions o = base;
  o.degree_bound = degree_bound;
  Verdict v = isotropy(ff.transport(phi), o);
  v.note(std::string("over ") + ff.tower->to_string() + (ff.rational ? " (rational rewrite)" : ""));
  return v;
}

namespace {

QuadForm ts(const TowerPtr& t, std::vector<Elem> c) { return QuadForm(t, {}, std::move(c)); }

QuadForm ns_part(const QuadForm& f) { return QuadForm(f.tower(), f.blocks(), {}); }

// Isometry with a structural fast path: equal nonsingular parts after
// normalization and equal quasilinear spans.
Verdict quick_isometric(const QuadForm& a, const QuadForm& b, const IsotropyOptions& opt) {
  if (a.dim() != b.dim()) return Verdict::make_no("dimensions differ");
  const Normalized na = normalize(a), nb = normalize(b);
  if (na.r != nb.r || na.s != nb.s || na.defect != nb.defect) return Verdict::make_no("types differ");
  if (na.form.nonsingular_part().to_string() == nb.form.nonsingular_part().to_string() &&
      a.tower()->is_rational()) {
    const std::vector<Elem> qa(na.form.diag().begin(), na.form.diag().begin() + na.s);
    const std::vector<Elem> qb(nb.form.diag().begin(), nb.form.diag().begin() + nb.s);
    if (qa.empty() || ts_isometric(qa, qb)) return Verdict::make_yes("equal blocks, equal quasilinear spans");
  }
  return isometric_check(a, b, opt);
}

Verdict is_gp3(const QuadForm& pi, const IsotropyOptions& opt) {
  if (pi.dim() != 8 || !pi.is_nonsingular()) return Verdict::make_no("not a nonsingular form of dimension 8");
  try {
    // Dimension 8 in I^3: hyperbolic or similar to a 3-fold Pfister form.
    return in_I3q(pi, opt);
  } catch (const Error& e) {
    return Verdict::make_unknown(e.what());
  }
}

Answer weakly_dominated(const QuadForm& small, const QuadForm& big, const IsotropyOptions& opt) {
  return weakly_dominates(small, big, opt).verdict.answer;
}

// phi ~ a[1,x] + <1,u,v> after scaling by `scale`.
struct PhiShape {
  Elem scale, alpha, x;
  std::vector<Elem> ql;  // 1, u, v
};

PhiShape phi_shape(const QuadForm& phi) {
  const Normalized n = normalize(phi);
  if (n.r != 1 || n.s != 3 || n.defect != 0)
    throw Error(ErrorKind::PreconditionFailed, phi.to_string() + " is not an anisotropic form of type (1,3)");
  const Elem c1 = n.form.diag()[0];
  const QuadForm g = n.form.scaled(c1.inverse());
  PhiShape p;
  p.scale = c1.inverse();
  p.alpha = g.blocks()[0].a;
  p.x = g.blocks()[0].a * g.blocks()[0].b;
  p.ql.assign(g.diag().begin(), g.diag().begin() + 3);
  return p;
}

// F(sqrt g_1, ..., sqrt g_n) up to a purely transcendental extension.
struct Multiquad {
  TowerPtr tower;
  std::vector<std::function<Elem(const Elem&)>> steps;
  Elem embed(const Elem& x) const {
    Elem y = x;
    for (const auto& s : steps) y = s(y);
    return y;
  }
};

Multiquad multiquadratic(const TowerPtr& t, const std::vector<Elem>& gens) {
  Multiquad m{t, {}};
  for (const auto& g : gens) {
    const Elem ge = m.embed(g);
    if (ge.is_zero()) continue;
    if (m.tower->is_rational() && is_square(ge)) continue;
    const FunctionField ff = function_field(ts(m.tower, {Elem::one(m.tower), ge}));
    m.tower = ff.tower;
    m.steps.push_back(ff.embed);
  }
  return m;
}

// Independent generators of F^2(gens) over F^2.
std::vector<Elem> norm_field_generators(const TowerPtr& t, const std::vector<Elem>& gens) {
  std::vector<Elem> out, span{Elem::one(t)};
  for (const auto& g : gens) {
    if (g.is_zero() || f2_member(g, span)) continue;
    out.push_back(g);
    const std::size_t n = span.size();
    for (std::size_t j = 0; j < n; ++j) span.push_back(span[j] * g);
  }
  return out;
}

// Elements of `pool` extending `basis` to an F^2-independent family.
void extend_basis(std::vector<Elem>& basis, const std::vector<Elem>& pool, std::size_t target) {
  for (const auto& e : pool) {
    if (basis.size() >= target) return;
    if (e.is_zero() || f2_member(e, basis)) continue;
    basis.push_back(e);
  }
}

std::vector<Elem> coefficients(const QuadForm& f) {
  std::vector<Elem> v;
  for (const auto& b : f.blocks()) {
    if (!b.a.is_zero()) v.push_back(b.a);
    if (!b.b.is_zero()) v.push_back(b.b);
  }
  for (const auto& c : f.diag())
    if (!c.is_zero()) v.push_back(c);
  return v;
}

QuadForm scaled_block(const Elem& scale, const Elem& param) {
  const TowerPtr& t = scale.tower();
  return QuadForm(t, {{Elem::one(t), param}}, {}).scaled(scale);
}

// Slot values tried for k, l, m: zero, the given slots and their pairwise sums first.
std::vector<Elem> slot_candidates(const TowerPtr& t, const std::vector<Elem>& slots, const std::vector<Elem>& extra,
                                  std::size_t cap) {
  std::vector<Elem> out{Elem::zero(t)};
  std::set<std::string> seen{out[0].to_string()};
  auto push = [&](const Elem& e) {
    if (out.size() < cap && seen.insert(e.to_string()).second) out.push_back(e);
  };
  for (const auto& s : slots) push(s);
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (std::size_t j = i + 1; j < slots.size(); ++j) push(slots[i] + slots[j]);
  for (const auto& e : extra) push(e);
  return out;
}

bool brauer_sum_trivial(const std::vector<QuatSymbol>& syms, const IsotropyOptions& opt) {
  BrauerClass c;
  for (const auto& s : syms)
    if (!s.a.is_zero()) c.symbols.push_back(s);
  return brauer_trivial(c, opt).yes();
}

}  // namespace

Verdict verify_witness(const QuadForm& phi, const QuadForm& psi, const Witness& w, const ClassifyOptions& opt) {
  const IsotropyOptions& io = opt.iso;
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::MalformedWitness, std::string(to_string(w.kind)) + " witness lacks " + what);
  };
  auto fail = [](Verdict v, const std::string& what) {
    Verdict out = v.no() ? Verdict::make_no(what + " fails") : Verdict::make_unknown(what + " undecided");
    for (auto& l : v.trace) out.note(l);
    return out;
  };
  switch (w.kind) {
    case Witness::Kind::WeakDomination: {
      need(w.alpha.has_value(), "alpha");
      Verdict v = dominates(psi.scaled(*w.alpha), phi, io);
      if (!v.yes()) return fail(v, "alpha psi < phi");
      return Verdict::make_yes("alpha psi is a subform of phi");
    }
    case Witness::Kind::Similarity: {
      need(w.alpha.has_value(), "alpha");
      Verdict v = quick_isometric(phi, psi.scaled(*w.alpha), io);
      if (!v.yes()) return fail(v, "phi = alpha psi");
      return Verdict::make_yes("phi is similar to psi");
    }
    case Witness::Kind::RhoPi: {
      need(w.alpha && w.beta && w.slots.size() >= 2, "scalars");
      need(w.r1.dim() == 2 && w.r2.dim() == 2 && w.r1.is_nonsingular() && w.r2.is_nonsingular(), "R1, R2");
      const TowerPtr& t = phi.tower();
      const Elem& a = w.slots[0];
      const Elem& b = w.slots[1];
      const int s = normalize(psi).s;
      need(s == 1 || s == 2, "psi of type (1,1) or (1,2)");
      const QuadForm q = s == 1 ? ts(t, {Elem::one(t)}) : ts(t, {Elem::one(t), a});
      Verdict v = quick_isometric(phi.scaled(*w.alpha), w.r1 + ts(t, {Elem::one(t), a, b}), io);
      if (!v.yes()) return fail(v, "alpha phi = R1 + <1,a,b>");
      v = quick_isometric(psi.scaled(*w.beta), w.r2 + q, io);
      if (!v.yes()) return fail(v, "beta psi = R2 + Q");
      // rho = a[1,k] + b[1,l] + [1,m]: the x-coordinates carry <a,b,1>.
      std::multiset<std::string> lead, want{a.to_string(), b.to_string(), Elem::one(t).to_string()};
      for (const auto& bl : w.rho.blocks()) lead.insert(bl.a.to_string());
      if (!w.rho.is_nonsingular() || w.rho.dim() != 6 || lead != want)
        return Verdict::make_no("rho is not a nonsingular completion of <1,a,b>");
      v = is_gp3(w.pi, io);
      if (!v.yes()) return fail(v, "pi in GP_3");
      const WittData wd = witt_decompose(w.r1 + w.r2 + w.rho, io);
      if (wd.an_part.dim() == 0) {
        if (witt_decompose(w.pi, io).i_W != 4) return Verdict::make_no("R1 + R2 + rho hyperbolic but pi is not");
      } else {
        v = quick_isometric(wd.an_part, w.pi, io);
        if (!v.yes()) return fail(v, "R1 + R2 + rho ~ pi");
      }
      if (weakly_dominated(psi, w.pi, io) != Answer::Yes) return Verdict::make_unknown("psi <_w pi not established");
      return Verdict::make_yes("R1 + R2 + rho ~ pi, psi <_w pi");
    }
    case Witness::Kind::GP3Decomposition: {
      need(w.alpha.has_value(), "alpha");
      const Normalized np = normalize(w.phi_prime);
      if (np.r != 1 || np.s != 3 || np.defect != 0) return Verdict::make_no("phi' is not of type (1,3)");
      Verdict v = is_gp3(w.pi, io);
      if (!v.yes()) return fail(v, "pi in GP_3");
      const WittData wd = witt_decompose(w.phi_prime + w.pi, io);
      v = quick_isometric(wd.an_part, phi.scaled(*w.alpha), io);
      if (!v.yes()) return fail(v, "alpha phi ~ phi' + pi");
      if (weakly_dominated(psi, w.phi_prime, io) != Answer::Yes) return Verdict::make_unknown("psi <_w phi' not established");
      if (weakly_dominated(psi, w.pi, io) != Answer::Yes) return Verdict::make_unknown("psi <_w pi not established");
      return Verdict::make_yes("alpha phi ~ phi' + pi with psi <_w phi', pi");
    }
    case Witness::Kind::Reduction: {
      need(w.sub && w.sub->witness, "a positive sub-classification");
      Verdict v = dominates(w.psi_prime, psi, io);
      if (!v.yes()) return fail(v, "psi' < psi");
      v = verify_witness(phi, w.psi_prime, *w.sub->witness, opt);
      if (!v.yes()) return fail(v, "sub-witness");
      return Verdict::make_yes("isotropic over F(psi'), which is equivalent");
    }
    case Witness::Kind::Vector: {
      need(w.vector.has_value(), "vector");
      const FunctionField ff = function_field(psi);
      const QuadForm f = ff.transport(phi);
      if (static_cast<int>(w.vector->size()) != f.dim()) throw Error(ErrorKind::MalformedWitness, "vector length");
      Vec vec;
      for (const auto& x : *w.vector) {
        if (!x.tower()->same_as(*ff.tower)) throw Error(ErrorKind::MalformedWitness, "vector lives in another field");
        vec.push_back(Elem(ff.tower, x.comps()));
      }
      if (is_zero_vec(vec)) return Verdict::make_no("zero vector");
      if (!f.eval(vec).is_zero()) return Verdict::make_no("vector is not isotropic");
      return Verdict::make_yes("isotropic vector over F(psi)");
    }
  }
  throw Error(ErrorKind::MalformedWitness, "unknown witness kind");
}

SearchOutcome witness_search_rho_pi(const QuadForm& phi, const QuadForm& psi, const ClassifyOptions& opt) {
  SearchOutcome out;
  const IsotropyOptions& io = opt.iso;
  const TowerPtr& t = phi.tower();
  const PhiShape P = phi_shape(phi);
  const Normalized np = normalize(phi), nq = normalize(psi);
  if (nq.r != 1 || (nq.s != 1 && nq.s != 2) || nq.defect != 0)
    throw Error(ErrorKind::PreconditionFailed, "psi must be of type (1,1) or (1,2)");
  const int s = nq.s;
  const std::vector<Elem> qpsi(nq.form.diag().begin(), nq.form.diag().begin() + s);

  // Claim 1: ql(psi) is similar to a subform of ql(phi).
  const SimilarityVerdict c1 = weakly_dominates(ts(t, qpsi), ts(t, P.ql), io);
  if (c1.verdict.no()) {
    out.answer = Answer::No;
    out.notes.push_back("ql(psi) is not similar to a subform of ql(phi)");
    return out;
  }
  if (!c1.verdict.yes()) {
    out.notes.push_back("Claim 1 filter undecided");
    return out;
  }
  const Elem lambda = *c1.factor;
  const Elem p = lambda * qpsi[0];
  const Elem alpha = P.scale / p;
  const Elem beta = lambda / p;
  std::vector<Elem> basis{Elem::one(t)};
  if (s == 2) basis.push_back(beta * qpsi[1]);
  std::vector<Elem> pool;
  for (const auto& c : P.ql) pool.push_back(c / p);
  extend_basis(basis, pool, 3);
  if (basis.size() != 3) throw Error(ErrorKind::NormalizationFailed, "could not rebase ql(phi)");
  const Elem& a = basis[1];
  const Elem& b = basis[2];
  const QuadForm r1 = ns_part(np.form).scaled(alpha);
  const QuadForm r2 = ns_part(nq.form).scaled(beta);
  const BrauerClass q1 = clifford_class(r1), q2 = clifford_class(r2);
  const Elem rr = arf(r1).representative + arf(r2).representative;
  out.notes.push_back("alpha = " + alpha.to_string() + ", beta = " + beta.to_string() + ", <1,a,b> = <1," +
                      a.to_string() + "," + b.to_string() + ">");
  std::vector<QuatSymbol> qs = q1.symbols;
  qs.insert(qs.end(), q2.symbols.begin(), q2.symbols.end());

  // Necessary: Q1 + Q2 splits over F(sqrt a, sqrt b).
  try {
    const Multiquad L = multiquadratic(t, {a, b});
    BrauerClass over;
    for (const auto& q : qs) over.symbols.push_back({L.embed(q.a), L.embed(q.b)});
    const Verdict v = brauer_trivial(over, io);
    if (v.no()) {
      out.answer = Answer::No;
      out.notes.push_back("Q1 + Q2 does not split over F(sqrt a, sqrt b)");
      return out;
    }
    out.notes.push_back(std::string("Q1 + Q2 over F(sqrt a, sqrt b): ") + to_string(v.answer));
  } catch (const Error& e) {
    out.notes.push_back(std::string("multiquadratic check skipped: ") + e.what());
  }

  std::vector<Elem> slots;
  for (const auto& q : qs) slots.push_back(q.a);
  const auto K = slot_candidates(t, slots, candidate_scalars(coefficients(phi), 1), 10);
  int split = 0, no_pi = 0, no_dom = 0;
  std::string pi_error;
  for (const auto& k : K)
    for (const auto& l : K) {
      std::vector<QuatSymbol> all = qs;
      all.push_back({k, a});
      all.push_back({l, b});
      if (!brauer_sum_trivial(all, io)) continue;
      ++split;
      const QuadForm rho = scaled_block(a, k) + scaled_block(b, l) + scaled_block(Elem::one(t), rr + k + l);
      std::optional<QuadForm> pi;
      try {
        pi = gp3_witness(r1 + r2 + rho, io);
      } catch (const Error& e) {
        if (pi_error.empty()) pi_error = e.what();
      }
      if (!pi) {
        ++no_pi;
        continue;
      }
      if (weakly_dominated(psi, *pi, io) != Answer::Yes) {
        ++no_dom;
        continue;
      }
      Witness w;
      w.kind = Witness::Kind::RhoPi;
      w.alpha = alpha;
      w.beta = beta;
      w.slots = {a, b, k, l};
      w.r1 = r1;
      w.r2 = r2;
      w.rho = rho;
      w.pi = *pi;
      out.witness = w;
      out.answer = Answer::Yes;
      out.notes.push_back("k = " + k.to_string() + ", l = " + l.to_string());
      return out;
    }
  out.notes.push_back("no (k, l) among " + std::to_string(K.size()) + " candidates: " + std::to_string(split) +
                      " split, " + std::to_string(no_pi) + " without pi" +
                      (pi_error.empty() ? "" : " (" + pi_error + ")") + ", " + std::to_string(no_dom) +
                      " with psi <_w pi undecided or false");
  return out;
}

SearchOutcome witness_search_gp3(const QuadForm& phi, const QuadForm& psi, const ClassifyOptions& opt) {
  SearchOutcome out;
  const IsotropyOptions& io = opt.iso;
  const TowerPtr& t = phi.tower();
  const PhiShape P = phi_shape(phi);
  const Normalized nq = normalize(psi);
  if (nq.r != 0 || (nq.s != 3 && nq.s != 4) || nq.defect != 0)
    throw Error(ErrorKind::PreconditionFailed, "psi must be of type (0,3) or (0,4)");
  if (!t->is_rational()) {
    out.notes.push_back("search needs a rational tower");
    return out;
  }
  const int s = nq.s;
  const std::vector<Elem> qs(nq.form.diag().begin(), nq.form.diag().begin() + s);
  const std::vector<Elem>& delta = P.ql;

  if (s == 3) {
    if (ts_similarity_factor(delta, qs)) {
      Witness w;
      w.kind = Witness::Kind::GP3Decomposition;
      w.alpha = Elem::one(t);
      w.phi_prime = phi;
      w.pi = QuadForm::hyperbolic(t, 4);
      out.witness = w;
      out.answer = Answer::Yes;
      out.notes.push_back("ql(phi) is similar to psi");
      return out;
    }
  }

  // Necessary conditions.
  std::vector<Elem> ratios{delta[1], delta[2]};
  for (int i = 1; i < s; ++i) ratios.push_back(qs[i] / qs[0]);
  const std::vector<Elem> gens = norm_field_generators(t, ratios);
  if (s == 3 && gens.size() > 3) {
    out.answer = Answer::No;
    out.notes.push_back("ql(phi) and psi generate a norm field of degree 16");
    return out;
  }
  std::optional<Elem> contain;  // lambda with lambda psi containing ql(phi)
  if (s == 4) {
    const SimilarityVerdict d = weakly_dominates(ts(t, delta), ts(t, qs), io);
    if (d.verdict.no()) {
      out.answer = Answer::No;
      out.notes.push_back("ql(phi) is not similar to a subform of psi");
      return out;
    }
    if (!d.verdict.yes()) return out;
    contain = d.factor->inverse();
  }
  const QuatSymbol X{P.x, P.alpha};
  try {
    const Multiquad L = multiquadratic(t, gens);
    const Verdict v = quat_split({L.embed(X.a), L.embed(X.b)}, io);
    if (v.no()) {
      out.answer = Answer::No;
      out.notes.push_back("[x,alpha) does not split over the compositum of the norm fields");
      return out;
    }
    out.notes.push_back(std::string("[x,alpha) over the compositum: ") + to_string(v.answer));
  } catch (const Error& e) {
    out.notes.push_back(std::string("splitting check skipped: ") + e.what());
  }

  // Rebase so that ql(phi) = <1,u,v> and lambda psi = <1,u,w> (or <1,u,v,w>).
  std::vector<Elem> lambdas;
  if (contain) lambdas.push_back(*contain);
  else {
    std::vector<Elem> co = coefficients(phi);
    for (const auto& c : qs) co.push_back(c);
    lambdas = candidate_scalars(co, opt.candidate_factors);
  }
  std::set<std::string> tried;
  for (const auto& lambda : lambdas) {
    std::vector<Elem> lq;
    for (const auto& c : qs) lq.push_back(lambda * c);
    const std::vector<Elem> inter = f2_intersection(lq, delta);
    if (static_cast<int>(inter.size()) < (s == 3 ? 2 : 3)) continue;
    const Elem mu = inter[0].inverse();
    std::vector<Elem> dbasis{Elem::one(t), inter[1] * mu};
    std::vector<Elem> pool;
    for (const auto& c : delta) pool.push_back(c * mu);
    extend_basis(dbasis, pool, 3);
    std::vector<Elem> pbasis = s == 3 ? std::vector<Elem>{Elem::one(t), dbasis[1]} : dbasis;
    std::vector<Elem> ppool;
    for (const auto& c : lq) ppool.push_back(c * mu);
    extend_basis(pbasis, ppool, static_cast<std::size_t>(s));
    if (dbasis.size() != 3 || static_cast<int>(pbasis.size()) != s) continue;
    const Elem& u = dbasis[1];
    const Elem& v = dbasis[2];
    const Elem& w = pbasis.back();
    if (!tried.insert(u.to_string() + "|" + v.to_string() + "|" + w.to_string() + "|" + mu.to_string()).second)
      continue;
    const Elem alpha2 = P.alpha * mu;
    const QuatSymbol X2{P.x, alpha2};
    const auto K = slot_candidates(t, {P.x}, {}, 6);
    for (const auto& k : K)
      for (const auto& l : K)
        for (const auto& m : K) {
          if (!brauer_sum_trivial({X2, {k, u}, {l, v}, {m, w}}, io)) continue;
          const QuadForm big = scaled_block(alpha2, P.x) + scaled_block(u, k) + scaled_block(v, l) +
                               scaled_block(w, m) + scaled_block(Elem::one(t), P.x + k + l + m);
          std::optional<QuadForm> pi;
          try {
            pi = gp3_witness(big, io);
          } catch (const Error&) {
            continue;
          }
          if (!pi) continue;
          const QuadForm phi_prime = scaled_block(w, m) + ts(t, {Elem::one(t), u, v});
          if (weakly_dominated(psi, phi_prime, io) != Answer::Yes) continue;
          if (weakly_dominated(psi, *pi, io) != Answer::Yes) continue;
          Witness wit;
          wit.kind = Witness::Kind::GP3Decomposition;
          wit.alpha = P.scale * mu;
          wit.slots = {k, l, m};
          wit.phi_prime = phi_prime;
          wit.pi = *pi;
          out.witness = wit;
          out.answer = Answer::Yes;
          out.notes.push_back("u = " + u.to_string() + ", v = " + v.to_string() + ", w = " + w.to_string() +
                              ", (k,l,m) = (" + k.to_string() + "," + l.to_string() + "," + m.to_string() + ")");
          return out;
        }
  }
  out.notes.push_back("no rebasing with a (k,l,m) triple found");
  return out;
}

namespace {

ClassificationResult finish(ClassificationResult r, const std::string& branch, Verdict v) {
  r.branch = branch;
  r.verdict = std::move(v);
  return r;
}

}  // namespace

ClassificationResult classify(const QuadForm& phi, const QuadForm& psi, const ClassifyOptions& opt) {
  const IsotropyOptions& io = opt.iso;
  ClassificationResult res;
  auto log = [&](std::string line) { res.transcript.push_back(std::move(line)); };

  if (!phi.tower()->same_as(*psi.tower())) throw Error(ErrorKind::PreconditionFailed, "phi and psi over different fields");
  const Normalized np = normalize(phi);
  if (np.r != 1 || np.s != 3 || np.defect != 0)
    throw Error(ErrorKind::PreconditionFailed, "phi must be of type (1,3) without defect");
  const Verdict phi_iso = isotropy(phi, io);
  if (!phi_iso.no()) throw Error(ErrorKind::PreconditionFailed, "phi is not known to be anisotropic");
  const Verdict nb = neighbor_criterion_13(phi, io);
  if (nb.yes()) throw Error(ErrorKind::PreconditionFailed, "phi is a Pfister neighbor");
  log(std::string("phi neighbor test: ") + to_string(nb.answer));
  const Normalized nq = normalize(psi);
  if (nq.defect != 0) throw Error(ErrorKind::PreconditionFailed, "psi has a defect");
  if (!isotropy(psi, io).no()) throw Error(ErrorKind::PreconditionFailed, "psi is not known to be anisotropic");
  const int r = nq.r, s = nq.s;
  log("psi type (" + std::to_string(r) + "," + std::to_string(s) + ")");

  // Unknown from a branch: try the engine over F(psi).
  auto fallback = [&](ClassificationResult cur, const std::string& br, Verdict v) {
    if (!v.unknown() || opt.oracle_degree <= 0) return finish(std::move(cur), br, std::move(v));
    const Verdict o = oracle_isotropy_over_function_field(phi, psi, opt.oracle_degree, io);
    cur.transcript.push_back(std::string("oracle (degree ") + std::to_string(opt.oracle_degree) + "): " +
                             to_string(o.answer));
    if (o.no()) return finish(std::move(cur), br, Verdict::make_no("anisotropic over F(psi) by the engine"));
    if (o.yes() && o.vector) {
      Witness w;
      w.kind = Witness::Kind::Vector;
      w.vector = o.vector;
      cur.witness = w;
      return finish(std::move(cur), br, Verdict::make_yes("isotropic vector over F(psi)"));
    }
    return finish(std::move(cur), br, std::move(v));
  };
  auto with_witness = [&](ClassificationResult cur, const std::string& br, const Witness& w) {
    cur.witness = w;
    if (!opt.verify) return finish(std::move(cur), br, Verdict::make_yes(std::string(to_string(w.kind)) + " witness"));
    Verdict v = verify_witness(phi, psi, w, opt);
    cur.transcript.push_back(std::string("verify: ") + to_string(v.answer));
    if (v.yes()) return finish(std::move(cur), br, std::move(v));
    cur.witness.reset();
    return fallback(std::move(cur), br, Verdict::make_unknown("witness did not verify"));
  };
  // psi similar to a subform of phi already makes phi isotropic over F(psi).
  auto subform_shortcut = [&](const std::string& br) -> std::optional<ClassificationResult> {
    const SimilarityVerdict d = weakly_dominates(psi, phi, io);
    if (!d.verdict.yes()) return std::nullopt;
    log("psi <_w phi");
    Witness w;
    w.kind = Witness::Kind::WeakDomination;
    w.alpha = d.factor;
    return with_witness(res, br, w);
  };
  auto run_search = [&](const std::string& br, auto&& search) {
    if (auto sc = subform_shortcut(br)) return *sc;
    SearchOutcome so = search();
    for (auto& n : so.notes) log(n);
    if (so.answer == Answer::No) return finish(res, br, Verdict::make_no("necessary condition fails"));
    if (so.witness) return with_witness(res, br, *so.witness);
    return fallback(res, br, Verdict::make_unknown("no witness found"));
  };

  if (r == 0) {
    if (s == 1) return finish(res, "1.1(1)", Verdict::make_no("psi is one-dimensional"));
    if (s >= 5) return finish(res, "1.1(2)", Verdict::make_no("quasilinear psi of dimension at least 5"));
    if (s == 2) {
      const SimilarityVerdict d = weakly_dominates(psi, phi, io);
      if (d.verdict.yes()) {
        Witness w;
        w.kind = Witness::Kind::WeakDomination;
        w.alpha = d.factor;
        return with_witness(res, branch::kLemma, w);
      }
      if (d.verdict.no()) return finish(res, branch::kLemma, Verdict::make_no("psi is not similar to a subform of phi"));
      return fallback(res, branch::kLemma, Verdict::make_unknown("weak domination undecided"));
    }
    if (s == 3) return run_search("1.2(4)", [&] { return witness_search_gp3(phi, psi, opt); });
    // s == 4
    const std::vector<Elem> q(nq.form.diag().begin(), nq.form.diag().begin() + 4);
    const int nd = norm_degree(q);
    log("ndeg psi = " + std::to_string(nd));
    if (nd == 8) return run_search("1.2(4)", [&] { return witness_search_gp3(phi, psi, opt); });
    // ndeg 4: psi is a quasi-Pfister neighbor; F(psi) and F(psi') are equivalent for a 3-dim subform.
    const QuadForm sub = ts(psi.tower(), {q[0], q[1], q[2]});
    auto inner = std::make_shared<ClassificationResult>(classify(phi, sub, opt));
    log("reduced to psi' = " + sub.to_string() + ": " + to_string(inner->verdict.answer));
    if (inner->verdict.no()) return finish(res, "1.2(5)", Verdict::make_no("anisotropic over F(psi')"));
    if (inner->verdict.yes() && inner->witness) {
      Witness w;
      w.kind = Witness::Kind::Reduction;
      w.psi_prime = sub;
      w.sub = inner;
      return with_witness(res, "1.2(5)", w);
    }
    return fallback(res, "1.2(5)", Verdict::make_unknown("reduced case undecided"));
  }
  if (r >= 3) return finish(res, "1.1(6)", Verdict::make_no("psi has at least three nonsingular blocks"));
  if (r == 2) {
    if (s >= 1) return finish(res, "1.1(5)", Verdict::make_no("psi of type (2,s) with s >= 1"));
    const ArfClass a = arf(ns_part(nq.form));
    if (!a.is_zero()) return finish(res, "1.1(4)", Verdict::make_no("psi of type (2,0) with nonzero Arf invariant"));
    // Arf zero: psi is similar to a 2-fold Pfister form, equivalent to its neighbor block1 + <a>.
    const Block& b1 = nq.form.blocks()[0];
    const Block& b2 = nq.form.blocks()[1];
    const QuadForm sub = QuadForm(psi.tower(), {b1}, {b2.a});
    auto inner = std::make_shared<ClassificationResult>(classify(phi, sub, opt));
    log("reduced to psi' = " + sub.to_string() + ": " + to_string(inner->verdict.answer));
    if (inner->verdict.no()) return finish(res, "1.2(2)", Verdict::make_no("anisotropic over F(psi')"));
    if (inner->verdict.yes() && inner->witness) {
      Witness w;
      w.kind = Witness::Kind::Reduction;
      w.psi_prime = sub;
      w.sub = inner;
      return with_witness(res, "1.2(2)", w);
    }
    return fallback(res, "1.2(2)", Verdict::make_unknown("reduced case undecided"));
  }
  // r == 1
  if (s >= 4) return finish(res, "1.1(3)", Verdict::make_no("psi of type (1,s) with s >= 4"));
  if (s == 3) {
    const SimilarityVerdict sv = similar_check(phi, psi, io);
    if (sv.verdict.yes()) {
      Witness w;
      w.kind = Witness::Kind::Similarity;
      w.alpha = sv.factor;
      return with_witness(res, "1.2(3)", w);
    }
    if (sv.verdict.no()) return finish(res, "1.2(3)", Verdict::make_no("phi and psi are not similar"));
    return fallback(res, "1.2(3)", Verdict::make_unknown("similarity undecided"));
  }
  if (s == 0) {
    log("type (1,0) is outside the classification");
    return fallback(res, "oracle", Verdict::make_unknown("type (1,0)"));
  }
  return run_search("1.2(1)", [&] { return witness_search_rho_pi(phi, psi, opt); });
}

}  // namespace qf2
