#ifndef QF2_FIELD_HPP
#define QF2_FIELD_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qf2/error.hpp"
#include "qf2/rational.hpp"

namespace qf2 {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

/// Quadratic layer on top of the rational part. `param` holds the
/// components of delta (separable: t^2 = t + delta) or d (inseparable:
/// t^2 = d) over the tower formed by the lower quadratic layers.
struct QuadLayer {
  enum class Kind { Separable, Inseparable };
  Kind kind;
  std::vector<Rational> param;
  bool operator==(const QuadLayer& o) const { return kind == o.kind && param == o.param; }
};

/// Layer request for make_tower, in the order the layers are stacked.
struct LayerSpec {
  enum class Kind { Base, Rational, SepQuad, InsepQuad };
  Kind kind;
  int k = 1;               // Base
  std::string var;         // Rational
  std::string expression;  // SepQuad / InsepQuad, parsed over the layers below
};

/// Computable characteristic-2 field: F_{2^k}(vars) followed by quadratic
/// layers. Rational layers stacked above quadratic ones commute below them,
/// since a purely transcendental extension changes neither squareness nor
/// Artin-Schreier membership of the layer parameters.
class Tower : public std::enable_shared_from_this<Tower> {
 public:
  int gf_degree() const { return k_; }
  const std::vector<std::string>& vars() const { return vars_; }
  int var_count() const { return static_cast<int>(vars_.size()); }
  const std::vector<QuadLayer>& quads() const { return quads_; }
  int quad_count() const { return static_cast<int>(quads_.size()); }
  bool is_rational() const { return quads_.empty(); }
  std::optional<int> var_index(const std::string& name) const;

  /// Generator names for printing/parsing quadratic layers: $1, $2, ...
  static std::string quad_name(int i) { return "$" + std::to_string(i + 1); }

  bool same_as(const Tower& o) const;
  std::string to_string() const;

  /// Validated constructors.
  static TowerPtr make(const std::vector<LayerSpec>& layers);
  static TowerPtr rational(int k, const std::vector<std::string>& vars);
  /// New tower with extra transcendental variables.
  TowerPtr with_vars(const std::vector<std::string>& extra) const;
  /// New tower with one more quadratic layer; param is an element of this tower.
  TowerPtr with_quad(QuadLayer::Kind kind, const class Elem& param) const;
  /// Rational tower with one variable deleted (indices above it shift down).
  TowerPtr without_var(int var) const;

 private:
  Tower() = default;
  int k_ = 1;
  std::vector<std::string> vars_;
  std::vector<QuadLayer> quads_;
};

/// Exact element of a tower field. Components are indexed by subsets of the
/// quadratic generators (bit i <-> generator i); each is a reduced rational function.
class Elem {
 public:
  Elem() = default;
  Elem(TowerPtr tower, std::vector<Rational> comps);
  static Elem zero(const TowerPtr& t);
  static Elem one(const TowerPtr& t);
  static Elem constant(const TowerPtr& t, GF2k::Elem c);
  static Elem variable(const TowerPtr& t, int var);
  static Elem generator(const TowerPtr& t, int quad);
  static Elem from_rational(const TowerPtr& t, const Rational& r);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<Rational>& comps() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  /// In the rational part (no quadratic generator involved).
  bool is_base_rational() const;
  const Rational& rational() const { return c_.front(); }
  std::uint32_t support() const;

  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const { return *this + o; }
  Elem operator*(const Elem& o) const;
  Elem operator/(const Elem& o) const;
  Elem& operator+=(const Elem& o) { return *this = *this + o; }
  Elem& operator*=(const Elem& o) { return *this = *this * o; }
  Elem inverse() const;
  Elem square() const { return *this * *this; }
  Elem pow(int e) const;

  /// Same element viewed in an extension tower built by with_vars/with_quad.
  Elem lift(const TowerPtr& ext) const;

  bool operator==(const Elem& o) const;
  bool operator!=(const Elem& o) const { return !(*this == o); }
  /// Total order on canonical representations (for containers; not a field order).
  bool operator<(const Elem& o) const;

  std::string to_string() const;

 private:
  void check_same(const Elem& o) const;
  TowerPtr tower_;
  std::vector<Rational> c_;
};

/// Parses `F2^k(v1,...,vn)[sep:expr][insep:expr]*`.
TowerPtr parse_tower(const std::string& spec);
/// Parses an element expression over `+ - * / ^ ( )`, variables, `g`, `$i`, integers.
Elem parse_elem(const TowerPtr& t, const std::string& text);

// ---- field operations ----

Elem frobenius(const Elem& a);
/// Squareness; only decided over rational towers (UnsupportedTower otherwise).
bool is_square(const Elem& a);
/// Square root; throws NotASquare.
Elem sqrt(const Elem& a);

/// Outcome of Artin-Schreier membership.
struct WpResult {
  bool member = false;
  std::optional<Elem> w;  // w^2 + w = z when member
};
/// Decides z in {w^2 + w}; exact over rational towers.
WpResult wp_membership(const Elem& z);

/// var-adic valuation; nullopt encodes +infinity (a = 0).
std::optional<int> valuation(const Elem& a, int var);
/// Residue of a var-adic unit, as an element of tower().without_var(var).
Elem residue(const Elem& a, int var);
/// Residue kept in the same tower (the result does not involve var).
Elem residue_in_place(const Elem& a, int var);
/// Inverse of residue's tower change: views an element of without_var(var) in `full`.
Elem reinsert_var(const Elem& a, const TowerPtr& full, int var);
/// Image under the automorphism var -> 1/var of a rational tower.
Elem invert_var(const Elem& a, int var);

}  // namespace qf2

#endif  // QF2_FIELD_HPP
