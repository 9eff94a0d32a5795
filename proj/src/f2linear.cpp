#include "qf2/f2linear.hpp"

#include <set>

namespace qf2 {

namespace {

void require_rational(const Elem& a) {
  if (!a.tower()->is_rational())
    throw Error(ErrorKind::UnsupportedTower, "F^2-coordinates need a rational tower");
}

Elem t_pow(const TowerPtr& t, std::uint32_t eps) {
  Monomial m;
  for (int v = 0; v < t->var_count(); ++v)
    if ((eps >> v) & 1) m.e[v] = 1;
  return Elem::from_rational(t, Rational(Poly::monomial(t->gf_degree(), m)));
}

// Columns of the coordinate matrix for the given elements.
linalg::Matrix coord_matrix(const std::vector<F2Coords>& cols) {
  std::set<std::uint32_t> keys;
  for (const auto& c : cols)
    for (const auto& [k, v] : c.coords) keys.insert(k);
  const TowerPtr& t = cols.front().tower;
  linalg::Matrix m;
  for (auto key : keys) {
    std::vector<Elem> row;
    row.reserve(cols.size());
    for (const auto& c : cols) {
      auto it = c.coords.find(key);
      row.push_back(it == c.coords.end() ? Elem::zero(t) : it->second);
    }
    m.push_back(std::move(row));
  }
  return m;
}

std::vector<F2Coords> decompose_all(const std::vector<Elem>& s) {
  std::vector<F2Coords> out;
  out.reserve(s.size());
  for (const auto& e : s) out.push_back(decompose(e));
  return out;
}

}  // namespace

F2Coords decompose(const Elem& a) {
  require_rational(a);
  const TowerPtr& t = a.tower();
  F2Coords out{t, {}};
  if (a.is_zero()) return out;
  const Rational& r = a.rational();
  const Poly p = r.num() * r.den();
  const GF2k& gf = p.gf();
  std::map<std::uint32_t, std::vector<Poly::Term>> parts;
  for (const auto& term : p.terms()) {
    std::uint32_t eps = 0;
    Monomial half;
    for (int v = 0; v < t->var_count(); ++v) {
      eps |= static_cast<std::uint32_t>(term.m.e[v] & 1) << v;
      half.e[v] = static_cast<std::uint16_t>(term.m.e[v] >> 1);
    }
    parts[eps].push_back({half, gf.sqrt(term.c)});
  }
  for (auto& [eps, terms] : parts)
    out.coords.emplace(eps, Elem::from_rational(
                                t, Rational(Poly::from_terms(t->gf_degree(), std::move(terms)), r.den())));
  return out;
}

Elem reconstruct(const F2Coords& c) {
  Elem sum = Elem::zero(c.tower);
  for (const auto& [eps, v] : c.coords) sum += frobenius(v) * t_pow(c.tower, eps);
  return sum;
}

namespace linalg {

namespace {
// Row-reduces in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t sel = m.size();
    for (std::size_t i = r; i < m.size(); ++i)
      if (!m[i][c].is_zero()) { sel = i; break; }
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    const Elem inv = m[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Elem f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] = m[i][j] + f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}
}  // namespace

std::vector<std::vector<Elem>> kernel(const TowerPtr& t, Matrix m, std::size_t cols) {
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Elem> v(cols, Elem::zero(t));
    v[f] = Elem::one(t);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = m[r][f];  // char 2: -x = x
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank(Matrix m) {
  if (m.empty()) return 0;
  return static_cast<int>(rref(m, m.front().size()).size());
}

}  // namespace linalg

int f2_rank(const std::vector<Elem>& s) {
  if (s.empty()) return 0;
  return linalg::rank(coord_matrix(decompose_all(s)));
}

std::optional<std::vector<Elem>> f2_dependency(const std::vector<Elem>& s) {
  if (s.empty()) return std::nullopt;
  const TowerPtr& t = s.front().tower();
  auto ker = linalg::kernel(t, coord_matrix(decompose_all(s)), s.size());
  if (ker.empty()) return std::nullopt;
  return ker.front();
}

std::optional<std::vector<Elem>> f2_solve(const Elem& x, const std::vector<Elem>& s) {
  const TowerPtr& t = x.tower();
  if (x.is_zero()) return std::vector<Elem>(s.size(), Elem::zero(t));
  std::vector<Elem> all = s;
  all.push_back(x);
  auto ker = linalg::kernel(t, coord_matrix(decompose_all(all)), all.size());
  for (const auto& v : ker) {
    if (v.back().is_zero()) continue;
    const Elem inv = v.back().inverse();
    std::vector<Elem> d;
    for (std::size_t i = 0; i < s.size(); ++i) d.push_back(v[i] * inv);
    return d;
  }
  return std::nullopt;
}

bool f2_member(const Elem& x, const std::vector<Elem>& s) { return f2_solve(x, s).has_value(); }

int norm_degree(const std::vector<Elem>& coeffs) {
  if (coeffs.empty()) throw Error(ErrorKind::PreconditionFailed, "norm degree of an empty form");
  for (const auto& c : coeffs)
    if (c.is_zero()) throw Error(ErrorKind::IsotropicInput, "zero coefficient");
  if (f2_rank(coeffs) < static_cast<int>(coeffs.size()))
    throw Error(ErrorKind::IsotropicInput, "coefficients are F^2-dependent");
  constexpr std::size_t kCap = 1u << 12;
  const Elem c1inv = coeffs.front().inverse();
  std::vector<Elem> basis{Elem::one(coeffs.front().tower())};
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    const Elem g = coeffs[i] * c1inv;
    if (f2_member(g, basis)) continue;
    if (basis.size() * 2 > kCap) throw Error(ErrorKind::CapacityExceeded, "product closure too large");
    const std::size_t n = basis.size();
    for (std::size_t j = 0; j < n; ++j) basis.push_back(basis[j] * g);
  }
  return static_cast<int>(basis.size());
}

bool ts_dominates(const std::vector<Elem>& big, const std::vector<Elem>& small) {
  const int rb = f2_rank(big);
  std::vector<Elem> all = big;
  all.insert(all.end(), small.begin(), small.end());
  return f2_rank(all) == rb;
}

bool ts_isometric(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  if (a.size() != b.size()) return false;
  return ts_dominates(a, b) && ts_dominates(b, a);
}

std::optional<Elem> ts_similarity_factor(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  if (a.size() != b.size() || a.empty()) return std::nullopt;
  const TowerPtr& t = a.front().tower();
  const std::size_t m = b.size(), s = a.size();
  // lambda = sum d_i^2 b_i / a_1; require lambda*a_j in span(b) for j >= 2.
  // Unknowns: d (m), then e_j (m each) for j = 2..s.
  const std::size_t cols = m + (s - 1) * m;
  const Elem a1inv = a.front().inverse();
  std::vector<F2Coords> bcoords = decompose_all(b);
  linalg::Matrix mat;
  for (std::size_t j = 1; j < s; ++j) {
    std::vector<F2Coords> lhs;
    for (std::size_t i = 0; i < m; ++i) lhs.push_back(decompose(b[i] * a[j] * a1inv));
    std::set<std::uint32_t> keys;
    for (const auto& c : lhs)
      for (const auto& kv : c.coords) keys.insert(kv.first);
    for (const auto& c : bcoords)
      for (const auto& kv : c.coords) keys.insert(kv.first);
    for (auto key : keys) {
      std::vector<Elem> row(cols, Elem::zero(t));
      for (std::size_t i = 0; i < m; ++i) {
        if (auto it = lhs[i].coords.find(key); it != lhs[i].coords.end()) row[i] = it->second;
        if (auto it = bcoords[i].coords.find(key); it != bcoords[i].coords.end())
          row[m + (j - 1) * m + i] = it->second;
      }
      mat.push_back(std::move(row));
    }
  }
  // A kernel vector with d = 0 forces e = 0 when b is anisotropic, so only
  // the d-part matters.
  auto ker = linalg::kernel(t, std::move(mat), cols);
  for (const auto& v : ker) {
    Elem lambda = Elem::zero(t);
    for (std::size_t i = 0; i < m; ++i) lambda += v[i].square() * b[i];
    if (lambda.is_zero()) continue;
    lambda = lambda * a1inv;
    std::vector<Elem> scaled;
    for (const auto& x : a) scaled.push_back(lambda * x);
    if (ts_isometric(scaled, b)) return lambda;
  }
  return std::nullopt;
}

}  // namespace qf2
