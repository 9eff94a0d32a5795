#include "qf2/quadform.hpp"

#include <cctype>

#include "qf2/f2linear.hpp"

namespace qf2 {

QuadForm::QuadForm(TowerPtr t, std::vector<Block> blocks, std::vector<Elem> diag)
    : tower_(std::move(t)), blocks_(std::move(blocks)), diag_(std::move(diag)) {
  for (const auto& b : blocks_)
    if (!b.a.tower()->same_as(*tower_) || !b.b.tower()->same_as(*tower_))
      throw Error(ErrorKind::TowerMismatch, "block entry");
  for (const auto& c : diag_)
    if (!c.tower()->same_as(*tower_)) throw Error(ErrorKind::TowerMismatch, "diagonal entry");
}

QuadForm QuadForm::hyperbolic(const TowerPtr& t, int planes) {
  return QuadForm(t, std::vector<Block>(planes, Block{Elem::zero(t), Elem::zero(t)}), {});
}

Elem QuadForm::eval(const Vec& v) const {
  if (static_cast<int>(v.size()) != dim()) throw Error(ErrorKind::LengthMismatch, "vector length");
  Elem s = Elem::zero(tower_);
  std::size_t i = 0;
  for (const auto& b : blocks_) {
    const Elem& x = v[i++];
    const Elem& y = v[i++];
    if (!x.is_zero()) s += b.a * x.square() + x * y;
    if (!y.is_zero()) s += b.b * y.square();
  }
  for (const auto& c : diag_) {
    const Elem& z = v[i++];
    if (!z.is_zero()) s += c * z.square();
  }
  return s;
}

Elem QuadForm::polar(const Vec& v, const Vec& w) const {
  Elem s = Elem::zero(tower_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) s += v[2 * i] * w[2 * i + 1] + v[2 * i + 1] * w[2 * i];
  return s;
}

QuadForm QuadForm::scaled(const Elem& c) const {
  if (c.is_zero()) throw Error(ErrorKind::DivisionByZero, "scaling by zero");
  if (c.is_one()) return *this;
  const Elem ci = c.inverse();
  std::vector<Block> bl;
  for (const auto& b : blocks_) bl.push_back({c * b.a, b.b * ci});
  std::vector<Elem> dg;
  for (const auto& d : diag_) dg.push_back(c * d);
  return QuadForm(tower_, std::move(bl), std::move(dg));
}

QuadForm QuadForm::operator+(const QuadForm& o) const {
  if (!tower_) return o;
  if (!o.tower_) return *this;
  if (!tower_->same_as(*o.tower_)) throw Error(ErrorKind::TowerMismatch, "orthogonal sum");
  auto bl = blocks_;
  bl.insert(bl.end(), o.blocks_.begin(), o.blocks_.end());
  auto dg = diag_;
  dg.insert(dg.end(), o.diag_.begin(), o.diag_.end());
  return QuadForm(tower_, std::move(bl), std::move(dg));
}

void QuadForm::split_sum_vector(const QuadForm& a, const QuadForm& b, const Vec& v, Vec& va, Vec& vb) {
  va.clear();
  vb.clear();
  const std::size_t ba = 2 * a.blocks_.size(), bb = 2 * b.blocks_.size();
  va.insert(va.end(), v.begin(), v.begin() + ba);
  vb.insert(vb.end(), v.begin() + ba, v.begin() + ba + bb);
  va.insert(va.end(), v.begin() + ba + bb, v.begin() + ba + bb + a.diag_.size());
  vb.insert(vb.end(), v.begin() + ba + bb + a.diag_.size(), v.end());
}

QuadForm QuadForm::lift(const TowerPtr& ext) const {
  std::vector<Block> bl;
  for (const auto& b : blocks_) bl.push_back({b.a.lift(ext), b.b.lift(ext)});
  std::vector<Elem> dg;
  for (const auto& d : diag_) dg.push_back(d.lift(ext));
  return QuadForm(ext, std::move(bl), std::move(dg));
}

std::string QuadForm::to_string() const {
  std::string s;
  for (const auto& b : blocks_) {
    if (!s.empty()) s += " + ";
    s += "[" + b.a.to_string() + "," + b.b.to_string() + "]";
  }
  if (!diag_.empty() || s.empty()) {
    if (!s.empty()) s += " + ";
    s += "<";
    for (std::size_t i = 0; i < diag_.size(); ++i) s += (i ? "," : "") + diag_[i].to_string();
    s += ">";
  }
  return s;
}

namespace {

[[noreturn]] void parse_fail(std::size_t pos, const std::string& what) {
  throw Error(ErrorKind::ParseError, "form parse error at position " + std::to_string(pos) + ": " + what);
}

// Splits `text` at top-level occurrences of `sep` (outside (), [], <>).
std::vector<std::pair<std::size_t, std::string>> split_top(const std::string& text, std::size_t offset, char sep) {
  std::vector<std::pair<std::size_t, std::string>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(' || c == '[' || c == '<') ++depth;
    else if (c == ')' || c == ']' || c == '>') {
      if (--depth < 0) parse_fail(offset + i, "unbalanced bracket");
    } else if (c == sep && depth == 0) {
      out.push_back({offset + start, text.substr(start, i - start)});
      start = i + 1;
    }
  }
  if (depth != 0) parse_fail(offset + text.size(), "unbalanced bracket");
  out.push_back({offset + start, text.substr(start)});
  return out;
}

std::string trim(const std::string& s, std::size_t& pos) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  pos += b;
  return s.substr(b, e - b);
}

Elem parse_at(const TowerPtr& t, const std::string& s, std::size_t pos) {
  try {
    return parse_elem(t, s);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) parse_fail(pos, e.what());
    throw;
  }
}

}  // namespace

QuadForm parse_form(const TowerPtr& t, const std::string& text) {
  QuadForm out(t);
  for (auto [pos0, raw] : split_top(text, 0, '+')) {
    std::size_t pos = pos0;
    std::string term = trim(raw, pos);
    if (term.empty()) parse_fail(pos, "empty term");
    const char close = term.back();
    if (close != ']' && close != '>') parse_fail(pos + term.size() - 1, "expected ']' or '>'");
    const char open = close == ']' ? '[' : '<';
    // Find the matching opening bracket of the final group.
    int depth = 0;
    std::size_t ob = std::string::npos;
    for (std::size_t i = term.size(); i-- > 0;) {
      const char c = term[i];
      if (c == ')' || c == ']' || c == '>') ++depth;
      else if (c == '(' || c == '[' || c == '<') {
        if (--depth == 0) {
          ob = i;
          break;
        }
      }
    }
    if (ob == std::string::npos || term[ob] != open) parse_fail(pos, "mismatched bracket");
    Elem scale = Elem::one(t);
    if (ob > 0) {
      std::string prefix = term.substr(0, ob);
      std::size_t ppos = pos;
      prefix = trim(prefix, ppos);
      if (prefix.empty() || prefix.back() != '*') parse_fail(pos + ob, "expected '*' before bracket");
      prefix.pop_back();
      scale = parse_at(t, prefix, ppos);
    }
    const std::string inner = term.substr(ob + 1, term.size() - ob - 2);
    std::vector<Elem> entries;
    if (inner.find_first_not_of(" \t") != std::string::npos)
      for (auto [epos, er] : split_top(inner, pos + ob + 1, ',')) {
        std::size_t p2 = epos;
        std::string e = trim(er, p2);
        if (e.empty()) parse_fail(p2, "empty entry");
        entries.push_back(parse_at(t, e, p2));
      }
    if (open == '[') {
      if (entries.size() != 2) parse_fail(pos + ob, "binary block needs two entries");
      if (scale.is_zero()) parse_fail(pos, "zero scalar in front of a block");
      out = out + QuadForm(t, {Block{entries[0], entries[1]}}, {}).scaled(scale);
    } else {
      for (auto& e : entries) e = e * scale;
      out = out + QuadForm(t, {}, std::move(entries));
    }
  }
  return out;
}

// ---- general forms ----

GeneralForm::GeneralForm(TowerPtr t, int n) : tower_(std::move(t)), n_(n) {
  q_.assign(n, Vec(n, Elem::zero(tower_)));
}

GeneralForm GeneralForm::from(const QuadForm& f) {
  GeneralForm g(f.tower(), f.dim());
  int i = 0;
  for (const auto& b : f.blocks()) {
    g.q_[i][i] = b.a;
    g.q_[i][i + 1] = Elem::one(f.tower());
    g.q_[i + 1][i + 1] = b.b;
    i += 2;
  }
  for (const auto& c : f.diag()) {
    g.q_[i][i] = c;
    ++i;
  }
  return g;
}

Elem GeneralForm::eval(const Vec& v) const {
  Elem s = Elem::zero(tower_);
  for (int i = 0; i < n_; ++i) {
    if (v[i].is_zero()) continue;
    if (!q_[i][i].is_zero()) s += q_[i][i] * v[i].square();
    for (int j = i + 1; j < n_; ++j)
      if (!q_[i][j].is_zero() && !v[j].is_zero()) s += q_[i][j] * v[i] * v[j];
  }
  return s;
}

Elem GeneralForm::polar(const Vec& v, const Vec& w) const {
  Elem s = Elem::zero(tower_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      if (q_[i][j].is_zero()) continue;
      Elem t = v[i] * w[j] + v[j] * w[i];
      if (!t.is_zero()) s += q_[i][j] * t;
    }
  return s;
}

GeneralForm GeneralForm::restrict(const std::vector<Vec>& basis) const {
  const int m = static_cast<int>(basis.size());
  GeneralForm g(tower_, m);
  for (int i = 0; i < m; ++i) {
    g.q_[i][i] = eval(basis[i]);
    for (int j = i + 1; j < m; ++j) g.q_[i][j] = polar(basis[i], basis[j]);
  }
  return g;
}

Vec zero_vec(const TowerPtr& t, int n) { return Vec(n, Elem::zero(t)); }

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec apply_basis(const std::vector<Vec>& basis, const Vec& coords, int ambient_dim) {
  const TowerPtr& t = coords.empty() ? basis.front().front().tower() : coords.front().tower();
  Vec out = zero_vec(t, ambient_dim);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coords[i].is_zero()) continue;
    for (int j = 0; j < ambient_dim; ++j)
      if (!basis[i][j].is_zero()) out[j] += coords[i] * basis[i][j];
  }
  return out;
}

Normalized normalize(const GeneralForm& g) {
  const TowerPtr& t = g.tower();
  const int n = g.dim();
  std::vector<Vec> pool;
  for (int i = 0; i < n; ++i) {
    Vec e = zero_vec(t, n);
    e[i] = Elem::one(t);
    pool.push_back(std::move(e));
  }
  Normalized out;
  std::vector<Block> blocks;
  // Symplectic Gram-Schmidt on the polar form.
  while (true) {
    std::size_t pi = pool.size(), pj = pool.size();
    Elem bij;
    for (std::size_t i = 0; i < pool.size() && pi == pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        Elem b = g.polar(pool[i], pool[j]);
        if (!b.is_zero()) {
          pi = i, pj = j, bij = b;
          break;
        }
      }
    if (pi == pool.size()) break;
    Vec e = pool[pi];
    Vec f = pool[pj];
    const Elem inv = bij.inverse();
    for (auto& x : f) x = x * inv;
    pool.erase(pool.begin() + pj);
    pool.erase(pool.begin() + pi);
    for (auto& w : pool) {
      const Elem bwf = g.polar(w, f), bwe = g.polar(w, e);
      for (int k = 0; k < n; ++k) w[k] = w[k] + bwf * e[k] + bwe * f[k];
    }
    blocks.push_back({g.eval(e), g.eval(f)});
    out.basis.push_back(std::move(e));
    out.basis.push_back(std::move(f));
  }
  // Radical: diagonal values, with F^2-dependencies turned into zero slots.
  std::vector<Elem> vals;
  for (const auto& w : pool) vals.push_back(g.eval(w));
  std::vector<Vec> nz_basis, zero_basis;
  std::vector<Elem> nz_vals;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (vals[i].is_zero()) zero_basis.push_back(pool[i]);
    else {
      nz_basis.push_back(pool[i]);
      nz_vals.push_back(vals[i]);
    }
  }
  if (t->is_rational()) {
    while (nz_vals.size() > 1) {
      auto dep = f2_dependency(nz_vals);
      if (!dep) break;
      std::size_t j = 0;
      while ((*dep)[j].is_zero()) ++j;
      Vec z = zero_vec(t, n);
      for (std::size_t i = 0; i < nz_basis.size(); ++i)
        if (!(*dep)[i].is_zero())
          for (int k = 0; k < n; ++k) z[k] += (*dep)[i] * nz_basis[i][k];
      zero_basis.push_back(std::move(z));
      nz_basis.erase(nz_basis.begin() + j);
      nz_vals.erase(nz_vals.begin() + j);
    }
  }
  out.r = static_cast<int>(blocks.size());
  out.s = static_cast<int>(nz_vals.size());
  out.defect = static_cast<int>(zero_basis.size());
  std::vector<Elem> diag = nz_vals;
  for (std::size_t i = 0; i < zero_basis.size(); ++i) diag.push_back(Elem::zero(t));
  out.form = QuadForm(t, std::move(blocks), std::move(diag));
  for (auto& v : nz_basis) out.basis.push_back(std::move(v));
  for (auto& v : zero_basis) out.basis.push_back(std::move(v));
  return out;
}

Normalized normalize(const QuadForm& f) {
  if (f.dim() == 0) return Normalized{f, {}, 0, 0, 0};
  return normalize(GeneralForm::from(f));
}

}  // namespace qf2
