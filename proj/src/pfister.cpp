#include "qf2/pfister.hpp"

#include "qf2/f2linear.hpp"

namespace qf2 {

namespace {

std::vector<Elem> subset_products(const TowerPtr& t, const std::vector<Elem>& slots) {
  std::vector<Elem> out{Elem::one(t)};
  for (const auto& a : slots) {
    if (a.is_zero()) throw Error(ErrorKind::ZeroSlot, "Pfister slot is zero");
    const std::size_t n = out.size();
    for (std::size_t j = 0; j < n; ++j) out.push_back(out[j] * a);
  }
  return out;
}

}  // namespace

QuadForm pfister_expand(const PfisterSpec& spec) {
  const TowerPtr& t = spec.quadratic_block.a.tower() ? spec.quadratic_block.a.tower() : spec.quadratic_block.b.tower();
  const QuadForm base(t, {spec.quadratic_block}, {});
  QuadForm out(t, {}, {});
  for (const auto& p : subset_products(t, spec.bilinear_slots)) out = out + base.scaled(p);
  return out;
}

QuadForm quasi_pfister(const std::vector<Elem>& slots) {
  if (slots.empty()) throw Error(ErrorKind::PreconditionFailed, "quasi-Pfister form needs a tower; pass at least one slot");
  const TowerPtr& t = slots.front().tower();
  return QuadForm(t, {}, subset_products(t, slots));
}

Verdict neighbor_criterion_13(const QuadForm& phi, const IsotropyOptions& opt) {
  const Normalized n = normalize(phi);
  if (n.defect > 0 || n.r != 1 || n.s != 3)
    throw Error(ErrorKind::NormalizationFailed, phi.to_string() + " is not of type (1,3)");

  // Scale by 1/c_1: a[1,x] + <1,b,c>.
  const Elem c1 = n.form.diag()[0];
  const QuadForm g = n.form.scaled(c1.inverse());
  const Block& bl = g.blocks()[0];
  if (bl.a.is_zero()) throw Error(ErrorKind::NormalizationFailed, "block does not represent a nonzero scalar");
  if (!g.diag()[0].is_one()) throw Error(ErrorKind::NormalizationFailed, "leading quasilinear entry is not 1");
  const QuatSymbol sym{bl.a * bl.b, bl.a};

  // F(sqrt b, sqrt c) up to purely transcendental extensions, which do not
  // change splitting: function fields of <1,b> and then <1,c>.
  const TowerPtr& t = phi.tower();
  FunctionField k1 = function_field(QuadForm(t, {}, {Elem::one(t), g.diag()[1]}));
  const TowerPtr& t1 = k1.tower;
  FunctionField k2 = function_field(QuadForm(t1, {}, {Elem::one(t1), k1.embed(g.diag()[2])}));
  auto embed = [&](const Elem& x) { return k2.embed(k1.embed(x)); };
  Verdict v = quat_split({embed(sym.a), embed(sym.b)}, opt);
  v.vector.reset();
  v.note("symbol " + sym.to_string() + " over F(sqrt " + g.diag()[1].to_string() + ", sqrt " +
         g.diag()[2].to_string() + ")");
  return v;
}

Verdict pfister_neighbor_13(const QuadForm& phi, const IsotropyOptions& opt) {
  const Normalized n = normalize(phi);
  if (n.defect > 0) throw Error(ErrorKind::IsotropicInput, phi.to_string() + " has a radical zero");
  if (n.r != 1 || n.s != 3)
    throw Error(ErrorKind::NormalizationFailed, phi.to_string() + " is not of type (1,3)");
  if (isotropy(n.form, opt).yes()) throw Error(ErrorKind::IsotropicInput, phi.to_string() + " is isotropic");
  return neighbor_criterion_13(phi, opt);
}

QuasiPfisterNeighbor quasi_pfister_neighbor(const QuadForm& sigma) {
  if (!sigma.blocks().empty()) throw Error(ErrorKind::PreconditionFailed, "form is not totally singular");
  const std::vector<Elem>& cs = sigma.diag();
  QuasiPfisterNeighbor out;
  out.norm_degree = norm_degree(cs);
  const Elem inv = cs.front().inverse();
  std::vector<Elem> gens, span{Elem::one(sigma.tower())};
  for (std::size_t i = 1; i < cs.size(); ++i) {
    const Elem r = cs[i] * inv;
    if (f2_member(r, span)) continue;
    gens.push_back(r);
    const std::size_t m = span.size();
    for (std::size_t j = 0; j < m; ++j) span.push_back(span[j] * r);
  }
  out.ambient = gens.empty() ? QuadForm(sigma.tower(), {}, {Elem::one(sigma.tower())}) : quasi_pfister(gens);
  out.neighbor = 2 * sigma.dim() > out.norm_degree;
  return out;
}

}  // namespace qf2
