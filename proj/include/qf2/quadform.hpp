#ifndef QF2_QUADFORM_HPP
#define QF2_QUADFORM_HPP

#include <string>
#include <vector>

#include "qf2/field.hpp"

namespace qf2 {

/// Binary block [a,b] = a x^2 + xy + b y^2.
struct Block {
  Elem a, b;
};

using Vec = std::vector<Elem>;

/// [a_1,b_1] + ... + [a_r,b_r] + <c_1,...,c_s>. Coordinates are ordered
/// x_1, y_1, ..., x_r, y_r, z_1, ..., z_s. A global scale is absorbed into
/// the entries: c[a,b] is stored as [ca, b/c].
class QuadForm {
 public:
  QuadForm() = default;
  explicit QuadForm(TowerPtr t) : tower_(std::move(t)) {}
  QuadForm(TowerPtr t, std::vector<Block> blocks, std::vector<Elem> diag);
  static QuadForm hyperbolic(const TowerPtr& t, int planes);
  static QuadForm diagonal(const TowerPtr& t, std::vector<Elem> diag) { return QuadForm(t, {}, std::move(diag)); }

  const TowerPtr& tower() const { return tower_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<Elem>& diag() const { return diag_; }
  int dim() const { return static_cast<int>(2 * blocks_.size() + diag_.size()); }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int diag_count() const { return static_cast<int>(diag_.size()); }
  bool is_totally_singular() const { return blocks_.empty(); }
  bool is_nonsingular() const { return diag_.empty(); }

  Elem eval(const Vec& v) const;
  Elem polar(const Vec& v, const Vec& w) const;

  /// c * this, as [ca, b/c] and <c c_j>. A zero of the result at (x, y, z)
  /// is a zero of the original at (x, y/c, z).
  QuadForm scaled(const Elem& c) const;
  /// Orthogonal sum; coordinates: blocks of this, blocks of o, diag of this, diag of o.
  QuadForm operator+(const QuadForm& o) const;
  QuadForm nonsingular_part() const { return QuadForm(tower_, blocks_, {}); }
  QuadForm ql() const { return QuadForm(tower_, {}, diag_); }
  QuadForm lift(const TowerPtr& ext) const;
  /// Map a vector of (*this + o) onto the coordinates of this and o.
  static void split_sum_vector(const QuadForm& a, const QuadForm& b, const Vec& v, Vec& va, Vec& vb);

  std::string to_string() const;

 private:
  TowerPtr tower_;
  std::vector<Block> blocks_;
  std::vector<Elem> diag_;
};

QuadForm parse_form(const TowerPtr& t, const std::string& text);

/// q(x) = sum_{i<=j} Q[i][j] x_i x_j.
class GeneralForm {
 public:
  GeneralForm(TowerPtr t, int n);
  static GeneralForm from(const QuadForm& f);
  const TowerPtr& tower() const { return tower_; }
  int dim() const { return n_; }
  Elem& at(int i, int j) { return q_[i][j]; }
  const Elem& at(int i, int j) const { return q_[i][j]; }
  Elem eval(const Vec& v) const;
  Elem polar(const Vec& v, const Vec& w) const;
  /// Form on span(basis), basis vectors in this form's coordinates.
  GeneralForm restrict(const std::vector<Vec>& basis) const;

 private:
  TowerPtr tower_;
  int n_;
  std::vector<Vec> q_;
};

/// Isometric normal form. basis[i] gives the ambient coordinates of the
/// i-th coordinate of `form`. The diagonal lists nonzero entries first and
/// then `defect` zeros; type is (r, s).
struct Normalized {
  QuadForm form;
  std::vector<Vec> basis;
  int r = 0, s = 0, defect = 0;
};

Normalized normalize(const GeneralForm& g);
Normalized normalize(const QuadForm& f);

Vec zero_vec(const TowerPtr& t, int n);
Vec apply_basis(const std::vector<Vec>& basis, const Vec& coords, int ambient_dim);
bool is_zero_vec(const Vec& v);

}  // namespace qf2

#endif  // QF2_QUADFORM_HPP
