#include <algorithm>

#include "qf2/witt.hpp"

namespace qf2 {

namespace {

std::string fresh_name(const TowerPtr& t, std::string base, const std::vector<std::string>& taken) {
  auto used = [&](const std::string& s) {
    return t->var_index(s).has_value() || std::find(taken.begin(), taken.end(), s) != taken.end();
  };
  while (used(base)) base += "_";
  return base;
}

Elem eval_poly(const Poly& p, const TowerPtr& target, const std::vector<Elem>& images) {
  Elem s = Elem::zero(target);
  for (const auto& term : p.terms()) {
    Elem m = Elem::constant(target, term.c);
    for (std::size_t v = 0; v < images.size(); ++v)
      if (term.m.e[v]) m *= images[v].pow(term.m.e[v]);
    s += m;
  }
  return s;
}

// Image of an element of a rational tower under var_i -> images[i].
Elem eval_rational(const Elem& x, const TowerPtr& target, const std::vector<Elem>& images) {
  const Rational& r = x.rational();
  return eval_poly(r.num(), target, images) / eval_poly(r.den(), target, images);
}

// For a parameter p of a quadratic layer over the rational tower t1, finds a
// variable v with p = A v + C (A, C free of v). Adjoining theta with
// theta^2 (+ theta) = p then gives the rational field with v replaced by theta.
struct LinearVar {
  int var;
  Elem A, C;
};

std::optional<LinearVar> linear_variable(const Elem& p) {
  const TowerPtr& t = p.tower();
  const Rational& r = p.rational();
  for (int v = t->var_count() - 1; v >= 0; --v) {
    if (!((r.num().support() >> v) & 1) || r.den().degree_in(v) > 0 || r.num().degree_in(v) != 1) continue;
    const auto cs = r.num().coefficients_in(v);
    const Elem den = Elem::from_rational(t, Rational(r.den()));
    const Elem c0 = Elem::from_rational(t, Rational(cs[0])) / den;
    const Elem c1 = Elem::from_rational(t, Rational(cs[1])) / den;
    return LinearVar{v, c1, c0};
  }
  return std::nullopt;
}

// p = A v^e with e odd and A free of v: theta^2 = p becomes v = s^2 / A with
// theta = s v^((e-1)/2).
struct OddVar {
  int var;
  int e;
  Elem A;
};

std::optional<OddVar> odd_variable(const Elem& p) {
  const TowerPtr& t = p.tower();
  const Rational& r = p.rational();
  auto single = [](const std::vector<Poly>& cs) -> int {
    int at = -1;
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (!cs[i].is_zero()) {
        if (at >= 0) return -1;
        at = static_cast<int>(i);
      }
    return at;
  };
  for (int v = t->var_count() - 1; v >= 0; --v) {
    const auto cn = r.num().coefficients_in(v), cd = r.den().coefficients_in(v);
    const int a = single(cn), b = single(cd);
    if (a < 0 || b < 0 || (a - b) % 2 == 0) continue;
    return OddVar{v, a - b, Elem::from_rational(t, Rational(cn[a])) / Elem::from_rational(t, Rational(cd[b]))};
  }
  return std::nullopt;
}

}  // namespace

QuadForm FunctionField::transport(const QuadForm& f) const {
  std::vector<Block> bl;
  for (const auto& b : f.blocks()) bl.push_back({embed(b.a), embed(b.b)});
  std::vector<Elem> dg;
  for (const auto& c : f.diag()) dg.push_back(embed(c));
  return QuadForm(tower, std::move(bl), std::move(dg));
}

FunctionField function_field(const QuadForm& psi) {
  const TowerPtr& t = psi.tower();
  const Normalized n = normalize(psi);
  const int nd_dim = 2 * n.r + n.s;
  if (nd_dim == 0 || (n.r == 0 && n.s == 1))
    throw Error(ErrorKind::ReduciblePolynomial, "nondefective part of " + psi.to_string() + " has type (0,1) or is zero");
  if (n.r == 1 && n.s == 0 && structural_zero(n.form.nonsingular_part()))
    throw Error(ErrorKind::ReduciblePolynomial, "nondefective part of " + psi.to_string() + " is a hyperbolic plane");

  const QuadForm& f = n.form;
  const int d = f.dim();
  // Coordinate solved for: x_1 of the first block, or the first diagonal slot.
  const int solved = 0;
  const int other = n.r > 0 ? 1 : -1;  // y_1 when solving a block
  std::vector<std::string> names;
  std::vector<int> coord_var(d, -1);
  for (int i = 0; i < d; ++i) {
    if (i == solved) continue;
    names.push_back(fresh_name(t, "x" + std::to_string(i + 1), names));
    coord_var[i] = t->var_count() + static_cast<int>(names.size()) - 1;
  }
  const TowerPtr t1 = t->with_vars(names);
  Vec gen(d);
  for (int i = 0; i < d; ++i)
    if (i != solved) gen[i] = Elem::variable(t1, coord_var[i]);
  const QuadForm f1 = f.lift(t1);

  // Rescale quasilinear coordinates x_i -> x_i / m_i so that the coefficient of
  // x_i^2 in the layer parameter loses its square monomial factor m_i^2.
  {
    const Elem lead = n.r > 0 ? f1.blocks()[0].a : f1.diag()[0].inverse();
    for (int j = 0; j < static_cast<int>(f1.diag().size()); ++j) {
      const int i = 2 * n.r + j;
      if (i == solved || !t1->is_rational() || f1.diag()[j].is_zero()) continue;
      const Elem c = lead * f1.diag()[j];
      const Rational& cr = c.rational();
      if (!cr.num().is_monomial() || !cr.den().is_monomial()) continue;
      Monomial up, down;
      const Monomial& mn = cr.num().lead().m;
      const Monomial& md = cr.den().lead().m;
      for (int v = 0; v < t->var_count(); ++v) {
        up.e[v] = static_cast<std::uint16_t>(mn.e[v] / 2);
        down.e[v] = static_cast<std::uint16_t>(md.e[v] / 2);
      }
      const int k = t1->gf_degree();
      const Elem m = Elem::from_rational(t1, Rational(Poly::monomial(k, up))) /
                     Elem::from_rational(t1, Rational(Poly::monomial(k, down)));
      if (!m.is_one()) gen[i] = gen[i] / m;
    }
  }

  // Rest of the form, the solved coordinate set to zero.
  Vec partial = gen;
  partial[solved] = Elem::zero(t1);
  const Elem rest = f1.eval(partial);

  Elem param;
  QuadLayer::Kind kind;
  if (n.r > 0) {
    // a x^2 + x y + (b y^2 + R) = 0 with x = y theta / a: theta^2 + theta = a (b y^2 + R) / y^2.
    const Elem a = f1.blocks()[0].a;
    const Elem y = gen[other];
    param = a * rest / y.square();
    kind = QuadLayer::Kind::Separable;
  } else {
    param = rest / f1.diag()[0];
    kind = QuadLayer::Kind::Inseparable;
  }

  FunctionField out;
  TowerPtr t2;
  try {
    t2 = t1->with_quad(kind, param);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::IllegalLayer) throw Error(ErrorKind::ReduciblePolynomial, e.what());
    throw;
  }

  std::optional<LinearVar> lin;
  std::optional<OddVar> odd;
  if (t1->is_rational()) lin = linear_variable(param);
  if (!lin && t1->is_rational() && kind == QuadLayer::Kind::Inseparable) odd = odd_variable(param);
  if (!lin && !odd) {
    const Elem theta = Elem::generator(t2, t2->quad_count() - 1);
    for (auto& x : gen)
      if (!x.tower()) x = Elem::zero(t2);
      else x = x.lift(t2);
    gen[solved] = n.r > 0 ? gen[other] * theta / f1.blocks()[0].a.lift(t2) : theta;
    out.tower = t2;
    out.embed = [t2](const Elem& x) { return x.lift(t2); };
    out.rational = false;
  } else {
    // Replace the chosen variable by a new one s.
    const int rv = lin ? lin->var : odd->var;
    std::vector<std::string> vars = t1->vars();
    vars[rv] = fresh_name(t1, "s", {});
    const TowerPtr t3 = Tower::rational(t1->gf_degree(), vars);
    const Elem sv = Elem::variable(t3, rv);
    Elem image, theta;
    if (lin) {
      const Elem A = Elem(t3, lin->A.comps()), C = Elem(t3, lin->C.comps());
      image = sv.square() + C;
      if (kind == QuadLayer::Kind::Separable) image += sv;
      image = image / A;
      theta = sv;
    } else {
      image = sv.square() / Elem(t3, odd->A.comps());
      const int h = (odd->e - 1) / 2;
      theta = sv * (h >= 0 ? image.pow(h) : image.pow(-h).inverse());
    }
    std::vector<Elem> images;
    for (int v = 0; v < t1->var_count(); ++v) images.push_back(v == rv ? image : Elem::variable(t3, v));
    for (int i = 0; i < d; ++i)
      if (i != solved) gen[i] = eval_rational(gen[i], t3, images);
    const Elem a3 = n.r > 0 ? eval_rational(f1.blocks()[0].a, t3, images) : Elem::one(t3);
    gen[solved] = n.r > 0 ? gen[other] * theta / a3 : theta;
    out.tower = t3;
    const int base_vars = t->var_count();
    out.embed = [t3, images, base_vars](const Elem& x) {
      return eval_rational(x, t3, std::vector<Elem>(images.begin(), images.begin() + base_vars));
    };
    out.rational = true;
  }
  // Back to the coordinates of psi; the normalizing basis has entries in F.
  out.point = zero_vec(out.tower, psi.dim());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < psi.dim(); ++j)
      if (!n.basis[i][j].is_zero()) out.point[j] += gen[i] * out.embed(n.basis[i][j]);
  if (!out.transport(psi).eval(out.point).is_zero())
    throw Error(ErrorKind::PreconditionFailed, "generic point failed to verify");
  return out;
}

}  // namespace qf2
