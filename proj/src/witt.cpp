#include "qf2/witt.hpp"

#include <set>

#include "qf2/f2linear.hpp"

namespace qf2 {

namespace {

Vec unit(const TowerPtr& t, int n, int i) {
  Vec e = zero_vec(t, n);
  e[i] = Elem::one(t);
  return e;
}

QuadForm nondefective(const Normalized& n) {
  std::vector<Elem> dg(n.form.diag().begin(), n.form.diag().begin() + n.s);
  return QuadForm(n.form.tower(), n.form.blocks(), std::move(dg));
}

// Adds candidates to `chosen` while they stay linearly independent.
void select_independent(const std::vector<Vec>& cands, std::vector<Vec>& chosen, std::size_t want) {
  for (const auto& c : cands) {
    if (chosen.size() == want) return;
    if (is_zero_vec(c)) continue;
    linalg::Matrix m(chosen.begin(), chosen.end());
    m.push_back(c);
    if (linalg::rank(m) == static_cast<int>(m.size())) chosen.push_back(c);
  }
}

std::vector<Elem> nonzero_diag(const QuadForm& f) {
  std::vector<Elem> out;
  for (const auto& c : f.diag())
    if (!c.is_zero()) out.push_back(c);
  return out;
}

}  // namespace

WittData witt_decompose(const QuadForm& f, const IsotropyOptions& opt) {
  WittData out;
  const TowerPtr& t = f.tower();
  Normalized n = normalize(f);
  out.i_d = n.defect;
  QuadForm cur = f.dim() == 0 ? QuadForm(t) : nondefective(n);
  while (cur.dim() > 0) {
    Verdict v = isotropy(cur, opt);
    if (v.no()) break;
    if (!v.yes() || !v.vector) throw Error(ErrorKind::UnknownIsotropy, cur.to_string());
    const Vec& x = *v.vector;
    const GeneralForm g = GeneralForm::from(cur);
    const int d = cur.dim();
    int j = -1;
    Elem bx;
    for (int i = 0; i < d && j < 0; ++i) {
      bx = g.polar(x, unit(t, d, i));
      if (!bx.is_zero()) j = i;
    }
    std::vector<Vec> rest;
    if (j < 0) {
      // Radical zero: split off <0>.
      ++out.i_d;
      int k = 0;
      while (x[k].is_zero()) ++k;
      for (int i = 0; i < d; ++i)
        if (i != k) rest.push_back(unit(t, d, i));
    } else {
      ++out.i_W;
      Vec w = unit(t, d, j);
      w[j] = bx.inverse();
      const Elem qw = g.eval(w);
      for (int i = 0; i < d; ++i) w[i] += qw * x[i];
      std::vector<Vec> proj;
      for (int i = 0; i < d; ++i) {
        Vec u = unit(t, d, i);
        const Elem bw = g.polar(u, w), bxu = g.polar(u, x);
        for (int k = 0; k < d; ++k) u[k] += bw * x[k] + bxu * w[k];
        proj.push_back(std::move(u));
      }
      select_independent(proj, rest, static_cast<std::size_t>(d - 2));
    }
    if (rest.empty()) {
      cur = QuadForm(t);
      break;
    }
    Normalized nn = normalize(g.restrict(rest));
    out.i_d += nn.defect;
    cur = nondefective(nn);
  }
  out.an_part = cur;
  return out;
}

QuadForm witt_reassemble(const WittData& w) {
  const TowerPtr& t = w.an_part.tower();
  std::vector<Block> bl = w.an_part.blocks();
  for (int i = 0; i < w.i_W; ++i) bl.push_back({Elem::zero(t), Elem::zero(t)});
  std::vector<Elem> dg = w.an_part.diag();
  for (int i = 0; i < w.i_d; ++i) dg.push_back(Elem::zero(t));
  return QuadForm(t, std::move(bl), std::move(dg));
}

Verdict isometric_check(const QuadForm& a, const QuadForm& b, const IsotropyOptions& opt) {
  if (a.dim() != b.dim()) return Verdict::make_no("dimensions differ");
  if (a.dim() == 0) return Verdict::make_yes("zero forms");
  WittData wa, wb;
  try {
    wa = witt_decompose(a, opt);
    wb = witt_decompose(b, opt);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnknownIsotropy) throw;
    return Verdict::make_unknown(e.what());
  }
  if (wa.i_W != wb.i_W || wa.i_d != wb.i_d)
    return Verdict::make_no("Witt indices (" + std::to_string(wa.i_W) + "," + std::to_string(wa.i_d) + ") vs (" +
                            std::to_string(wb.i_W) + "," + std::to_string(wb.i_d) + ")");
  const QuadForm& pa = wa.an_part;
  const QuadForm& pb = wb.an_part;
  if (pa.block_count() != pb.block_count() || pa.diag_count() != pb.diag_count())
    return Verdict::make_no("anisotropic parts have different types");
  if (pa.dim() == 0) return Verdict::make_yes("both hyperbolic up to defect");
  const TowerPtr& t = a.tower();
  if (pa.diag_count() > 0) {
    if (!t->is_rational()) return Verdict::make_unknown("quasilinear comparison needs a rational tower");
    if (!ts_isometric(pa.diag(), pb.diag())) return Verdict::make_no("quasilinear parts not isometric");
  }
  WittData wab;
  try {
    wab = witt_decompose(pa + pb, opt);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnknownIsotropy) throw;
    return Verdict::make_unknown(e.what());
  }
  const int r = pa.block_count(), s = pa.diag_count();
  if (wab.i_W == 2 * r && wab.i_d == s && wab.an_part.block_count() == 0)
    return Verdict::make_yes("sum of anisotropic parts is " + std::to_string(2 * r) + "H + " + std::to_string(s) +
                             "<0> + ql");
  return Verdict::make_no("sum of anisotropic parts has Witt index " + std::to_string(wab.i_W));
}

SimilarityVerdict similar_check(const QuadForm& a, const QuadForm& b, const IsotropyOptions& opt) {
  SimilarityVerdict out;
  if (a.dim() != b.dim()) {
    out.verdict = Verdict::make_no("dimensions differ");
    return out;
  }
  const TowerPtr& t = a.tower();
  if (a.dim() == 0) {
    out.verdict = Verdict::make_yes("zero forms");
    out.factor = Elem::one(t);
    return out;
  }
  const Normalized na = normalize(a), nb = normalize(b);
  if (na.r != nb.r || na.s != nb.s || na.defect != nb.defect) {
    out.verdict = Verdict::make_no("types differ");
    return out;
  }
  std::vector<Elem> cands{Elem::one(t)};
  const std::vector<Elem> qa = nonzero_diag(na.form), qb = nonzero_diag(nb.form);
  if (!qa.empty() && t->is_rational()) {
    auto lam = ts_similarity_factor(qb, qa);
    if (!lam) {
      out.verdict = Verdict::make_no("quasilinear parts not similar");
      return out;
    }
    cands.insert(cands.begin(), *lam);
  }
  auto values = [](const QuadForm& f) {
    std::vector<Elem> v;
    for (const auto& bl : f.blocks()) {
      if (!bl.a.is_zero()) v.push_back(bl.a);
      if (!bl.b.is_zero()) v.push_back(bl.b);
    }
    for (const auto& c : f.diag())
      if (!c.is_zero()) v.push_back(c);
    return v;
  };
  for (const auto& x : values(a))
    for (const auto& y : values(b)) cands.push_back(x / y);
  std::set<std::string> seen;
  bool undecided = false;
  for (const auto& c : cands) {
    if (!seen.insert(c.to_string()).second) continue;
    Verdict v = isometric_check(a, b.scaled(c), opt);
    if (v.yes()) {
      out.verdict = Verdict::make_yes("isometric after scaling by " + c.to_string());
      out.factor = c;
      return out;
    }
    undecided |= v.unknown();
  }
  if (na.r == 0 && t->is_rational() && !undecided) {
    // Totally singular: the similarity factor of the quasilinear parts was a candidate.
    out.verdict = Verdict::make_no("no similarity factor");
    return out;
  }
  out.verdict = Verdict::make_unknown("no candidate scalar works");
  return out;
}

QuadForm nonsingular_completion(const QuadForm& sigma, const std::vector<Elem>& d) {
  if (!sigma.is_totally_singular()) throw Error(ErrorKind::PreconditionFailed, "completion needs a totally singular form");
  if (d.size() != sigma.diag().size()) throw Error(ErrorKind::LengthMismatch, "completion scalars");
  std::vector<Block> bl;
  for (std::size_t i = 0; i < d.size(); ++i) bl.push_back({sigma.diag()[i], d[i]});
  return QuadForm(sigma.tower(), std::move(bl), {});
}

Verdict represents(const QuadForm& f, const Elem& d, const IsotropyOptions& opt) {
  const TowerPtr& t = f.tower();
  if (d.is_zero()) return isotropy(f, opt);
  if (f.dim() == 0) return Verdict::make_no("zero form represents nothing");
  const Normalized n = normalize(f);
  const QuadForm nd = nondefective(n);
  // Coordinates of nd inside f.
  std::vector<Vec> nd_basis(n.basis.begin(), n.basis.begin() + nd.dim());
  auto to_f = [&](const Vec& v) { return apply_basis(nd_basis, v, f.dim()); };
  if (nd.dim() == 0) return Verdict::make_no("form is totally isotropic");
  const QuadForm ext = nd + QuadForm::diagonal(t, {d});
  Verdict v = isotropy(ext, opt);
  if (v.no()) return Verdict::make_no(d.to_string() + " not represented: " + ext.to_string() + " anisotropic");
  if (!v.yes() || !v.vector) return Verdict::make_unknown("isotropy of " + ext.to_string() + " undecided");
  const Vec& w = *v.vector;
  const Elem z = w.back();
  Vec x(w.begin(), w.end() - 1);
  if (!z.is_zero()) {
    // Coordinates of ext put nd's blocks first, then nd's diagonal, then <d>.
    for (auto& c : x) c = c / z;
    Vec y = to_f(x);
    if (f.eval(y) == d) return Verdict::make_yes("value " + d.to_string(), y);
    return Verdict::make_unknown("representation failed to verify");
  }
  // x is an isotropic vector of nd; nondefective so it pairs with something.
  const GeneralForm g = GeneralForm::from(nd);
  for (int i = 0; i < nd.dim(); ++i) {
    Vec e = unit(t, nd.dim(), i);
    const Elem b = g.polar(x, e);
    if (b.is_zero()) continue;
    e[i] = b.inverse();
    const Elem c = g.eval(e) + d;
    for (int k = 0; k < nd.dim(); ++k) e[k] += c * x[k];
    Vec y = to_f(e);
    if (f.eval(y) == d) return Verdict::make_yes("value " + d.to_string() + " via a hyperbolic plane", y);
    break;
  }
  return Verdict::make_unknown("isotropic vector lies in the radical");
}

}  // namespace qf2
