#include "qf2/field.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "qf2/gf2_system.hpp"

namespace qf2 {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::IllegalLayer: return "IllegalLayer";
    case ErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::TowerMismatch: return "TowerMismatch";
    case ErrorKind::NotASquare: return "NotASquare";
    case ErrorKind::UnsupportedTower: return "UnsupportedTower";
    case ErrorKind::ResidueOfNonUnit: return "ResidueOfNonUnit";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::IsotropicInput: return "IsotropicInput";
    case ErrorKind::SingularInput: return "SingularInput";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::UnknownIsotropy: return "UnknownIsotropy";
    case ErrorKind::NormalFormUnavailable: return "NormalFormUnavailable";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::ZeroSlot: return "ZeroSlot";
    case ErrorKind::NormalizationFailed: return "NormalizationFailed";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::MalformedWitness: return "MalformedWitness";
    case ErrorKind::ProfileUnsatisfiable: return "ProfileUnsatisfiable";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
  }
  return "Error";
}

// ---------------------------------------------------------------- Tower

std::optional<int> Tower::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return std::nullopt;
  return static_cast<int>(it - vars_.begin());
}

bool Tower::same_as(const Tower& o) const {
  return this == &o || (k_ == o.k_ && vars_ == o.vars_ && quads_ == o.quads_);
}

TowerPtr Tower::rational(int k, const std::vector<std::string>& vars) {
  std::vector<LayerSpec> layers{{LayerSpec::Kind::Base, k, "", ""}};
  for (const auto& v : vars) layers.push_back({LayerSpec::Kind::Rational, 1, v, ""});
  return make(layers);
}

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return s != "g";
}

}  // namespace

TowerPtr Tower::make(const std::vector<LayerSpec>& layers) {
  if (layers.empty() || layers[0].kind != LayerSpec::Kind::Base)
    throw Error(ErrorKind::IllegalLayer, "first layer must be a finite base field");
  if (layers[0].k < 1 || layers[0].k > kMaxGfDegree)
    throw Error(ErrorKind::IllegalLayer, "base field degree out of range");
  std::shared_ptr<Tower> t(new Tower);
  t->k_ = layers[0].k;
  TowerPtr cur = t;
  for (std::size_t i = 1; i < layers.size(); ++i) {
    const auto& l = layers[i];
    switch (l.kind) {
      case LayerSpec::Kind::Base:
        throw Error(ErrorKind::IllegalLayer, "base field must come first");
      case LayerSpec::Kind::Rational:
        if (!valid_identifier(l.var)) throw Error(ErrorKind::IllegalLayer, "bad variable name '" + l.var + "'");
        if (cur->var_index(l.var)) throw Error(ErrorKind::DuplicateVariable, l.var);
        cur = cur->with_vars({l.var});
        break;
      case LayerSpec::Kind::SepQuad:
      case LayerSpec::Kind::InsepQuad: {
        Elem p = parse_elem(cur, l.expression);
        cur = cur->with_quad(l.kind == LayerSpec::Kind::SepQuad ? QuadLayer::Kind::Separable
                                                                : QuadLayer::Kind::Inseparable,
                             p);
        break;
      }
    }
  }
  return cur;
}

TowerPtr Tower::with_vars(const std::vector<std::string>& extra) const {
  std::shared_ptr<Tower> t(new Tower(*this));
  for (const auto& v : extra) {
    if (t->var_index(v)) throw Error(ErrorKind::DuplicateVariable, v);
    t->vars_.push_back(v);
  }
  if (t->var_count() > kMaxVars) throw Error(ErrorKind::CapacityExceeded, "too many variables");
  return t;
}

TowerPtr Tower::with_quad(QuadLayer::Kind kind, const Elem& param) const {
  if (!param.tower()->same_as(*this)) throw Error(ErrorKind::TowerMismatch, "layer parameter");
  if (quad_count() >= 6) throw Error(ErrorKind::CapacityExceeded, "too many quadratic layers");
  if (kind == QuadLayer::Kind::Separable) {
    if (is_rational() && wp_membership(param).member)
      throw Error(ErrorKind::IllegalLayer, "separable parameter lies in the Artin-Schreier image");
  } else {
    if (param.is_zero()) throw Error(ErrorKind::IllegalLayer, "inseparable parameter is zero");
    if (is_rational() && is_square(param))
      throw Error(ErrorKind::IllegalLayer, "inseparable parameter is a square");
  }
  std::shared_ptr<Tower> t(new Tower(*this));
  t->quads_.push_back({kind, param.comps()});
  return t;
}

namespace {

Poly drop_var(const Poly& p, int var) {
  std::vector<Poly::Term> terms;
  for (const auto& t : p.terms()) {
    Poly::Term u{Monomial{}, t.c};
    for (int i = 0, j = 0; i < kMaxVars; ++i) {
      if (i == var) continue;
      u.m.e[j++] = t.m.e[i];
    }
    terms.push_back(u);
  }
  return Poly::from_terms(p.field_degree(), std::move(terms));
}

Poly insert_var(const Poly& p, int var) {
  std::vector<Poly::Term> terms;
  for (const auto& t : p.terms()) {
    Poly::Term u{Monomial{}, t.c};
    for (int i = 0, j = 0; i < kMaxVars; ++i) {
      if (i == var) continue;
      u.m.e[i] = t.m.e[j++];
    }
    terms.push_back(u);
  }
  return Poly::from_terms(p.field_degree(), std::move(terms));
}

}  // namespace

TowerPtr Tower::without_var(int var) const {
  if (!is_rational()) throw Error(ErrorKind::UnsupportedTower, "residue tower of a quadratic tower");
  std::shared_ptr<Tower> t(new Tower(*this));
  t->vars_.erase(t->vars_.begin() + var);
  return t;
}

std::string Tower::to_string() const {
  std::string s = "F2";
  if (k_ > 1) s += "^" + std::to_string(k_);
  if (!vars_.empty()) {
    s += "(";
    for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
    s += ")";
  }
  std::shared_ptr<Tower> sub(new Tower);
  sub->k_ = k_;
  sub->vars_ = vars_;
  for (const auto& q : quads_) {
    Elem e(sub, q.param);
    s += std::string(q.kind == QuadLayer::Kind::Separable ? "[sep:" : "[insep:") + e.to_string() + "]";
    sub->quads_.push_back(q);
  }
  return s;
}

// ---------------------------------------------------------------- Elem arithmetic

namespace {

using Comps = std::vector<Rational>;

Comps add_comps(const Comps& a, const Comps& b) {
  Comps r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Comps mul_comps(const Comps& a, const Comps& b, int level, const std::vector<QuadLayer>& q) {
  if (level == 0) return {a[0] * b[0]};
  const std::size_t half = a.size() / 2;
  Comps a0(a.begin(), a.begin() + half), a1(a.begin() + half, a.end());
  Comps b0(b.begin(), b.begin() + half), b1(b.begin() + half, b.end());
  auto all_zero = [](const Comps& c) {
    return std::all_of(c.begin(), c.end(), [](const Rational& r) { return r.is_zero(); });
  };
  const bool a1z = all_zero(a1), b1z = all_zero(b1);
  Comps lo, hi;
  if (a1z && b1z) {
    lo = mul_comps(a0, b0, level - 1, q);
    hi = Comps(half, Rational(a[0].field_degree()));
  } else {
    Comps p = mul_comps(a0, b0, level - 1, q);
    Comps cross = add_comps(a1z ? Comps(half, Rational(a[0].field_degree())) : mul_comps(a1, b0, level - 1, q),
                            b1z ? Comps(half, Rational(a[0].field_degree())) : mul_comps(a0, b1, level - 1, q));
    if (a1z || b1z) {
      lo = p;
      hi = cross;
    } else {
      Comps r = mul_comps(a1, b1, level - 1, q);
      const auto& layer = q[level - 1];
      lo = add_comps(p, mul_comps(r, layer.param, level - 1, q));
      hi = layer.kind == QuadLayer::Kind::Separable ? add_comps(cross, r) : cross;
    }
  }
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;
}

Comps inv_comps(const Comps& a, int level, const std::vector<QuadLayer>& q) {
  if (level == 0) return {a[0].inverse()};
  const std::size_t half = a.size() / 2;
  Comps a0(a.begin(), a.begin() + half), a1(a.begin() + half, a.end());
  const auto& layer = q[level - 1];
  Comps conj0 = layer.kind == QuadLayer::Kind::Separable ? add_comps(a0, a1) : a0;
  Comps norm = add_comps(mul_comps(a0, conj0, level - 1, q),
                         mul_comps(mul_comps(a1, a1, level - 1, q), layer.param, level - 1, q));
  if (std::all_of(norm.begin(), norm.end(), [](const Rational& r) { return r.is_zero(); }))
    throw Error(ErrorKind::DivisionByZero, "zero norm");
  Comps ninv = inv_comps(norm, level - 1, q);
  Comps lo = mul_comps(conj0, ninv, level - 1, q);
  Comps hi = mul_comps(a1, ninv, level - 1, q);
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;
}

}  // namespace

Elem::Elem(TowerPtr tower, std::vector<Rational> comps) : tower_(std::move(tower)), c_(std::move(comps)) {
  if (c_.size() != (std::size_t{1} << tower_->quad_count()))
    throw Error(ErrorKind::TowerMismatch, "component count");
}

Elem Elem::zero(const TowerPtr& t) {
  return Elem(t, Comps(std::size_t{1} << t->quad_count(), Rational(t->gf_degree())));
}

Elem Elem::constant(const TowerPtr& t, GF2k::Elem c) {
  Elem e = zero(t);
  e.c_[0] = Rational::constant(t->gf_degree(), c);
  return e;
}

Elem Elem::one(const TowerPtr& t) { return constant(t, 1); }

Elem Elem::variable(const TowerPtr& t, int var) {
  Elem e = zero(t);
  e.c_[0] = Rational(Poly::variable(t->gf_degree(), var));
  return e;
}

Elem Elem::generator(const TowerPtr& t, int quad) {
  Elem e = zero(t);
  e.c_[std::size_t{1} << quad] = Rational::constant(t->gf_degree(), 1);
  return e;
}

Elem Elem::from_rational(const TowerPtr& t, const Rational& r) {
  Elem e = zero(t);
  e.c_[0] = r;
  return e;
}

bool Elem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
}

bool Elem::is_one() const { return c_[0].is_one() && is_base_rational(); }

bool Elem::is_base_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& r) { return r.is_zero(); });
}

std::uint32_t Elem::support() const {
  std::uint32_t s = 0;
  for (const auto& r : c_) s |= r.support();
  return s;
}

void Elem::check_same(const Elem& o) const {
  if (!tower_ || !o.tower_ || !tower_->same_as(*o.tower_))
    throw Error(ErrorKind::TowerMismatch, "operands live in different towers");
}

Elem Elem::operator+(const Elem& o) const {
  check_same(o);
  return Elem(tower_, add_comps(c_, o.c_));
}

Elem Elem::operator*(const Elem& o) const {
  check_same(o);
  return Elem(tower_, mul_comps(c_, o.c_, tower_->quad_count(), tower_->quads()));
}

Elem Elem::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return Elem(tower_, inv_comps(c_, tower_->quad_count(), tower_->quads()));
}

Elem Elem::operator/(const Elem& o) const {
  check_same(o);
  return *this * o.inverse();
}

Elem Elem::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Elem r = one(tower_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Elem Elem::lift(const TowerPtr& ext) const {
  if (tower_->same_as(*ext)) return Elem(ext, c_);
  const auto& v = tower_->vars();
  const auto& q = tower_->quads();
  if (ext->gf_degree() != tower_->gf_degree() || ext->vars().size() < v.size() ||
      !std::equal(v.begin(), v.end(), ext->vars().begin()) || ext->quads().size() < q.size() ||
      !std::equal(q.begin(), q.end(), ext->quads().begin()))
    throw Error(ErrorKind::TowerMismatch, "target is not an extension of this tower");
  Comps c = c_;
  c.resize(std::size_t{1} << ext->quad_count(), Rational(ext->gf_degree()));
  return Elem(ext, std::move(c));
}

bool Elem::operator==(const Elem& o) const {
  if (!tower_ || !o.tower_) return !tower_ && !o.tower_;
  return tower_->same_as(*o.tower_) && c_ == o.c_;
}

bool Elem::operator<(const Elem& o) const {
  const auto& names = tower_->vars();
  for (std::size_t i = 0; i < c_.size() && i < o.c_.size(); ++i) {
    if (c_[i] == o.c_[i]) continue;
    return c_[i].to_string(names) < o.c_[i].to_string(names);
  }
  return c_.size() < o.c_.size();
}

std::string Elem::to_string() const {
  const auto& names = tower_->vars();
  if (c_.size() == 1) return c_[0].to_string(names);
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    std::string gens;
    for (int j = 0; j < tower_->quad_count(); ++j)
      if ((i >> j) & 1) gens += (gens.empty() ? "" : "*") + Tower::quad_name(j);
    std::string coef = c_[i].to_string(names);
    if (!s.empty()) s += "+";
    if (gens.empty()) s += coef.find('+') != std::string::npos ? "(" + coef + ")" : coef;
    else if (c_[i].is_one()) s += gens;
    else s += "(" + coef + ")*" + gens;
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------- parsing

namespace {

class ExprParser {
 public:
  ExprParser(const TowerPtr& t, const std::string& s) : t_(t), s_(s) {}

  Elem parse() {
    Elem e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, msg + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Elem expr() {
    Elem e = term();
    while (true) {
      if (eat('+') || eat('-')) e = e + term();
      else return e;
    }
  }
  Elem term() {
    Elem e = unary();
    while (true) {
      if (eat('*')) {
        e = e * unary();
      } else if (eat('/')) {
        Elem d = unary();
        if (d.is_zero()) fail("division by zero");
        e = e / d;
      } else {
        return e;
      }
    }
  }
  Elem unary() {
    if (eat('-')) return unary();
    return power();
  }
  Elem power() {
    Elem b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(s_.substr(start, pos_ - start));
      if (neg && b.is_zero()) fail("zero to a negative power");
      b = b.pow(neg ? -e : e);
    }
    return b;
  }
  Elem atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Elem e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      int last = s_[pos_ - 1] - '0';
      (void)start;
      return Elem::constant(t_, static_cast<GF2k::Elem>(last & 1));
    }
    if (c == '$') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected generator index");
      int i = std::stoi(s_.substr(start, pos_ - start)) - 1;
      if (i < 0 || i >= t_->quad_count()) fail("unknown quadratic generator");
      return Elem::generator(t_, i);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (auto v = t_->var_index(name)) return Elem::variable(t_, *v);
      if (name == "g") return Elem::constant(t_, GF2k::get(t_->gf_degree()).generator());
      pos_ = start;
      fail("unknown symbol '" + name + "'");
    }
    fail("unexpected character");
  }

  const TowerPtr& t_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Elem parse_elem(const TowerPtr& t, const std::string& text) { return ExprParser(t, text).parse(); }

TowerPtr parse_tower(const std::string& spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto fail = [&](const std::string& m, std::size_t pos) {
    throw Error(ErrorKind::ParseError, m + " at position " + std::to_string(pos) + " in '" + spec + "'");
  };
  if (s.rfind("F2", 0) != 0) fail("field must start with F2", 0);
  std::size_t pos = 2;
  int k = 1;
  if (pos < s.size() && s[pos] == '^') {
    std::size_t start = ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected degree", pos);
    k = std::stoi(s.substr(start, pos - start));
  }
  std::vector<LayerSpec> layers{{LayerSpec::Kind::Base, k, "", ""}};
  if (pos < s.size() && s[pos] == '(') {
    std::size_t close = s.find(')', pos);
    if (close == std::string::npos) fail("missing ')'", pos);
    std::string list = s.substr(pos + 1, close - pos - 1);
    std::size_t a = 0;
    while (a <= list.size()) {
      std::size_t b = list.find(',', a);
      if (b == std::string::npos) b = list.size();
      std::string v = list.substr(a, b - a);
      if (!v.empty()) layers.push_back({LayerSpec::Kind::Rational, 1, v, ""});
      a = b + 1;
    }
    pos = close + 1;
  }
  while (pos < s.size()) {
    if (s[pos] != '[') fail("expected '['", pos);
    std::size_t close = s.find(']', pos);
    if (close == std::string::npos) fail("missing ']'", pos);
    std::string body = s.substr(pos + 1, close - pos - 1);
    if (body.rfind("sep:", 0) == 0) layers.push_back({LayerSpec::Kind::SepQuad, 1, "", body.substr(4)});
    else if (body.rfind("insep:", 0) == 0) layers.push_back({LayerSpec::Kind::InsepQuad, 1, "", body.substr(6)});
    else fail("unknown layer kind", pos);
    pos = close + 1;
  }
  return Tower::make(layers);
}

// ---------------------------------------------------------------- operations

Elem frobenius(const Elem& a) { return a * a; }

bool is_square(const Elem& a) {
  if (!a.tower()->is_rational()) throw Error(ErrorKind::UnsupportedTower, "squareness over a quadratic tower");
  return a.rational().sqrt().has_value();
}

Elem sqrt(const Elem& a) {
  if (!a.tower()->is_rational()) throw Error(ErrorKind::UnsupportedTower, "square root over a quadratic tower");
  auto r = a.rational().sqrt();
  if (!r) throw Error(ErrorKind::NotASquare, a.to_string());
  return Elem::from_rational(a.tower(), *r);
}

WpResult wp_membership(const Elem& z) {
  const TowerPtr& t = z.tower();
  if (!t->is_rational()) throw Error(ErrorKind::UnsupportedTower, "Artin-Schreier membership over a quadratic tower");
  if (z.is_zero()) return {true, Elem::zero(t)};
  const Rational& r = z.rational();
  // Canonical w = W/E gives denominator E^2 and numerator W^2 + E W.
  auto e_opt = Rational(r.den()).sqrt();
  if (!e_opt) return {};
  const Poly& n = r.num();
  const Poly e = e_opt->num();
  const int k = t->gf_degree();

  std::vector<int> bound(kMaxVars, 0);
  std::size_t box = 1;
  for (int i = 0; i < kMaxVars; ++i) {
    int dn = std::max(0, n.degree_in(i)), de = std::max(0, e.degree_in(i));
    bound[i] = std::max({de, dn / 2, dn - de});
    box *= static_cast<std::size_t>(bound[i] + 1);
    if (box > 50000) throw Error(ErrorKind::CapacityExceeded, "Artin-Schreier search box");
  }
  std::vector<Monomial> monos;
  monos.reserve(box);
  Monomial cur;
  while (true) {
    monos.push_back(cur);
    int i = 0;
    for (; i < kMaxVars; ++i) {
      if (cur.e[i] < bound[i]) {
        ++cur.e[i];
        break;
      }
      cur.e[i] = 0;
    }
    if (i == kMaxVars) break;
  }
  const std::size_t unknowns = monos.size() * static_cast<std::size_t>(k);
  std::map<std::pair<Monomial, int>, std::vector<std::size_t>> eqs;
  for (std::size_t j = 0; j < monos.size(); ++j) {
    for (int b = 0; b < k; ++b) {
      Poly basis = Poly::monomial(k, monos[j], GF2k::Elem{1} << b);
      Poly img = basis.frobenius() + e * basis;
      const std::size_t col = j * k + b;
      for (const auto& term : img.terms())
        for (int bit = 0; bit < k; ++bit)
          if ((term.c >> bit) & 1) eqs[{term.m, bit}].push_back(col);
    }
  }
  std::set<std::pair<Monomial, int>> rhs;
  for (const auto& term : n.terms())
    for (int bit = 0; bit < k; ++bit)
      if ((term.c >> bit) & 1) {
        rhs.insert({term.m, bit});
        eqs[{term.m, bit}];
      }
  Gf2System sys(unknowns);
  for (const auto& [key, cols] : eqs) sys.add_equation(cols, rhs.count(key) > 0);
  auto sol = sys.solve();
  if (!sol) return {};
  std::vector<Poly::Term> terms;
  for (std::size_t j = 0; j < monos.size(); ++j) {
    GF2k::Elem c = 0;
    for (int b = 0; b < k; ++b)
      if ((*sol)[j * k + b]) c |= GF2k::Elem{1} << b;
    if (c) terms.push_back({monos[j], c});
  }
  Elem w = Elem::from_rational(t, Rational(Poly::from_terms(k, std::move(terms)), e));
  if (w * w + w != z) throw std::logic_error("Artin-Schreier verification failed");
  return {true, w};
}

std::optional<int> valuation(const Elem& a, int var) {
  if (!a.is_base_rational()) throw Error(ErrorKind::UnsupportedTower, "valuation of a quadratic element");
  if (a.is_zero()) return std::nullopt;
  return a.rational().valuation(var);
}

Elem residue_in_place(const Elem& a, int var) {
  if (!a.is_base_rational()) throw Error(ErrorKind::UnsupportedTower, "residue of a quadratic element");
  return Elem::from_rational(a.tower(), a.rational().residue(var));
}

Elem residue(const Elem& a, int var) {
  Elem r = residue_in_place(a, var);
  TowerPtr sub = a.tower()->without_var(var);
  const Rational& q = r.rational();
  return Elem::from_rational(sub, Rational(drop_var(q.num(), var), drop_var(q.den(), var)));
}

Elem reinsert_var(const Elem& a, const TowerPtr& full, int var) {
  if (!a.is_base_rational() || !full->is_rational())
    throw Error(ErrorKind::UnsupportedTower, "reinsert_var on a quadratic tower");
  const Rational& q = a.rational();
  return Elem::from_rational(full, Rational(insert_var(q.num(), var), insert_var(q.den(), var)));
}

Elem invert_var(const Elem& a, int var) {
  const TowerPtr& t = a.tower();
  if (!t->is_rational()) throw Error(ErrorKind::UnsupportedTower, "invert_var on a quadratic tower");
  const Rational inv = Rational(Poly::variable(t->gf_degree(), var)).inverse();
  std::vector<Rational> comps;
  for (const auto& c : a.comps()) comps.push_back(c.substitute(var, inv));
  return Elem(t, std::move(comps));
}

}  // namespace qf2
