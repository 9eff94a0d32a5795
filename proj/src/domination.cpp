#include <map>
#include <set>

#include "qf2/f2linear.hpp"
#include "qf2/witt.hpp"

namespace qf2 {

namespace {

struct Split {
  QuadForm ns;              // nonsingular part
  std::vector<Elem> ql;     // nonzero quasilinear entries
  int defect = 0;
};

Split split(const QuadForm& f) {
  Split s;
  const Normalized n = normalize(f);
  s.ns = n.form.nonsingular_part();
  s.ql.assign(n.form.diag().begin(), n.form.diag().begin() + n.s);
  s.defect = n.defect;
  return s;
}

Vec unit(const TowerPtr& t, int n, int i) {
  Vec e = zero_vec(t, n);
  e[i] = Elem::one(t);
  return e;
}

// Basis of {w in span(basis) : b(w, v) = 0} (in ambient coordinates).
std::vector<Vec> orth_complement(const GeneralForm& g, const std::vector<Vec>& basis, const Vec& v) {
  int piv = -1;
  std::vector<Elem> bv;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bv.push_back(g.polar(basis[i], v));
    if (piv < 0 && !bv.back().is_zero()) piv = static_cast<int>(i);
  }
  if (piv < 0) return basis;
  std::vector<Vec> out;
  const Elem inv = bv[piv].inverse();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (static_cast<int>(i) == piv) continue;
    Vec w = basis[i];
    const Elem c = bv[i] * inv;
    if (!c.is_zero())
      for (std::size_t k = 0; k < w.size(); ++k) w[k] += c * basis[piv][k];
    out.push_back(std::move(w));
  }
  return out;
}

// Embeds <c_1..c_m> + k<0> into the form g on span(basis), greedily.
// Yes / Unknown (greedy failure) / No only for a first-step obstruction.
Answer embed_ts(const GeneralForm& g, std::vector<Vec> basis, const std::vector<Elem>& cs, int zeros,
                const IsotropyOptions& opt, std::vector<std::string>& trace) {
  bool first = true;
  for (const auto& c : cs) {
    if (basis.empty()) return first ? Answer::No : Answer::Unknown;
    const Normalized n = normalize(g.restrict(basis));
    Verdict v = represents(n.form, c, opt);
    if (v.no()) {
      trace.push_back(c.to_string() + " not represented");
      return first ? Answer::No : Answer::Unknown;
    }
    if (!v.yes()) return Answer::Unknown;
    // Back to ambient coordinates.
    const Vec local = apply_basis(n.basis, *v.vector, static_cast<int>(basis.size()));
    const Vec amb = apply_basis(basis, local, g.dim());
    basis = orth_complement(g, basis, amb);
    first = false;
  }
  for (int z = 0; z < zeros; ++z) {
    if (basis.empty()) return Answer::Unknown;
    GeneralForm h = g.restrict(basis);
    const Normalized n = normalize(h);
    // A radical zero slot of h is an isotropic vector orthogonal to everything.
    Vec local;
    if (n.defect > 0) {
      local = n.basis.back();
    } else {
      Verdict v = isotropy(n.form, opt);
      if (v.no()) return Answer::Unknown;
      if (!v.yes()) return Answer::Unknown;
      local = apply_basis(n.basis, *v.vector, static_cast<int>(basis.size()));
    }
    const Vec amb = apply_basis(basis, local, g.dim());
    // Continue in a complement of span(amb) inside amb^perp.
    std::vector<Vec> perp = orth_complement(g, basis, amb);
    std::vector<Vec> next;
    linalg::Matrix m{amb};
    for (const auto& w : perp) {
      m.push_back(w);
      if (linalg::rank(m) == static_cast<int>(m.size())) next.push_back(w);
      else m.pop_back();
    }
    basis = std::move(next);
  }
  return Answer::Yes;
}

}  // namespace

Verdict dominates(const QuadForm& small, const QuadForm& big, const IsotropyOptions& opt) {
  if (small.dim() > big.dim()) return Verdict::make_no("dimension");
  if (small.dim() == 0) return Verdict::make_yes("zero form");
  const TowerPtr& t = big.tower();
  const Split ps = split(small);

  // Nonsingular part: psi_r < phi iff phi + psi_r has Witt index >= dim psi_r.
  QuadForm rest = big;
  if (ps.ns.dim() > 0) {
    WittData w;
    try {
      w = witt_decompose(big + ps.ns, opt);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnknownIsotropy) throw;
      return Verdict::make_unknown(e.what());
    }
    if (w.i_W < ps.ns.dim())
      return Verdict::make_no("nonsingular part does not split off: Witt index " + std::to_string(w.i_W));
    WittData c = w;
    c.i_W -= ps.ns.dim();
    rest = witt_reassemble(c);
  }
  if (ps.ql.empty() && ps.defect == 0) return Verdict::make_yes("nonsingular part splits off");

  // Totally singular complement over a rational tower: decided by F^2-spans.
  const Split pr = split(rest);
  if (pr.ns.dim() == 0 && t->is_rational()) {
    for (const auto& c : ps.ql)
      if (!f2_member(c, pr.ql)) return Verdict::make_no(c.to_string() + " outside the value span");
    if (ps.defect > pr.defect) return Verdict::make_no("defect too small");
    return Verdict::make_yes("value span containment");
  }
  std::vector<Vec> basis;
  for (int i = 0; i < rest.dim(); ++i) basis.push_back(unit(t, rest.dim(), i));
  std::vector<std::string> trace;
  const Answer a = embed_ts(GeneralForm::from(rest), basis, ps.ql, ps.defect, opt, trace);
  if (a == Answer::Yes) return Verdict::make_yes("greedy embedding of the quasilinear part");
  Verdict v = a == Answer::No ? Verdict::make_no("quasilinear value not represented by the complement")
                              : Verdict::make_unknown("greedy embedding failed");
  for (auto& l : trace) v.note(l);
  return v;
}

namespace {

// Nonzero x in span(big) with x * r_i in span(big) for all i, over F^2.
std::optional<Elem> common_scalar(const std::vector<Elem>& big, const std::vector<Elem>& ratios) {
  const TowerPtr& t = big.front().tower();
  const std::size_t n = big.size();
  if (ratios.empty()) return big.front();
  const std::size_t cols = n * (1 + ratios.size());
  std::map<std::pair<std::size_t, std::uint32_t>, std::vector<Elem>> rows;
  auto add = [&](std::size_t block, std::size_t col, const Elem& v) {
    for (const auto& [eps, c] : decompose(v).coords) {
      auto& row = rows[{block, eps}];
      if (row.empty()) row.assign(cols, Elem::zero(t));
      row[col] += c;
    }
  };
  for (std::size_t i = 0; i < ratios.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      add(i, j, big[j] * ratios[i]);
      add(i, n * (1 + i) + j, big[j]);
    }
  linalg::Matrix m;
  for (auto& [k, row] : rows) m.push_back(std::move(row));
  for (const auto& v : linalg::kernel(t, m, cols)) {
    Elem x = Elem::zero(t);
    for (std::size_t j = 0; j < n; ++j) x += v[j].square() * big[j];
    if (!x.is_zero()) return x;
  }
  return std::nullopt;
}

}  // namespace

SimilarityVerdict weakly_dominates(const QuadForm& small, const QuadForm& big, const IsotropyOptions& opt) {
  SimilarityVerdict out;
  const TowerPtr& t = big.tower();
  if (small.dim() > big.dim()) {
    out.verdict = Verdict::make_no("dimension");
    return out;
  }
  const Split ps = split(small), pb = split(big);
  if (ps.ns.dim() == 0 && pb.ns.dim() == 0 && t->is_rational()) {
    // Both totally singular: alpha c_1 = x must keep every ratio inside the span.
    if (ps.defect > pb.defect || (pb.ql.empty() && !ps.ql.empty())) {
      out.verdict = Verdict::make_no("defect or rank obstruction");
      return out;
    }
    if (ps.ql.empty()) {
      out.verdict = Verdict::make_yes("zero forms");
      out.factor = Elem::one(t);
      return out;
    }
    std::vector<Elem> ratios;
    for (std::size_t i = 1; i < ps.ql.size(); ++i) ratios.push_back(ps.ql[i] / ps.ql[0]);
    auto x = common_scalar(pb.ql, ratios);
    if (!x) {
      out.verdict = Verdict::make_no("no scalar moves the value span inside");
      return out;
    }
    out.factor = *x / ps.ql[0];
    out.verdict = Verdict::make_yes("scalar " + out.factor->to_string());
    return out;
  }
  if (ps.ns.block_count() > pb.ns.block_count() + static_cast<int>(pb.ql.size())) {
    out.verdict = Verdict::make_no("nonsingular part too large");
    return out;
  }
  // Candidates alpha = a*b, a a value of big, b a value of small.
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
  std::vector<Elem> cands{Elem::one(t)};
  for (const auto& a : values(big))
    for (const auto& b : values(small)) cands.push_back(a * b);
  std::set<std::string> seen;
  for (const auto& c : cands) {
    if (!seen.insert(c.to_string()).second) continue;
    Verdict v = dominates(small.scaled(c), big, opt);
    if (v.yes()) {
      out.verdict = Verdict::make_yes("dominated after scaling by " + c.to_string());
      out.factor = c;
      return out;
    }
  }
  out.verdict = Verdict::make_unknown("no candidate scalar works");
  return out;
}

}  // namespace qf2
