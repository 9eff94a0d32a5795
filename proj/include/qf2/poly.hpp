#ifndef QF2_POLY_HPP
#define QF2_POLY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qf2/gf2k.hpp"

namespace qf2 {

/// Maximum number of transcendental variables in a tower.
inline constexpr int kMaxVars = 16;

/// Exponent vector. Ordered lexicographically with variable 0 most significant.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  int total_degree() const;
  bool divides(const Monomial& other) const;
  bool is_one() const;
  Monomial operator*(const Monomial& o) const;
  /// Caller guarantees divisibility.
  Monomial operator/(const Monomial& o) const;
  auto operator<=>(const Monomial&) const = default;
};

/// Sparse multivariate polynomial over F_{2^k}; terms sorted by descending
/// monomial, no zero coefficients.
class Poly {
 public:
  using Coeff = GF2k::Elem;
  struct Term {
    Monomial m;
    Coeff c;
    bool operator==(const Term&) const = default;
  };

  Poly() = default;
  explicit Poly(int k) : k_(k) {}
  static Poly constant(int k, Coeff c);
  static Poly variable(int k, int var, int exp = 1);
  static Poly monomial(int k, const Monomial& m, Coeff c = 1);
  /// Takes ownership of unsorted terms, combining duplicates.
  static Poly from_terms(int k, std::vector<Term> terms);

  int field_degree() const { return k_; }
  const GF2k& gf() const { return GF2k::get(k_); }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const Term& lead() const { return terms_.front(); }
  Coeff constant_term() const;

  int degree_in(int var) const;
  /// Smallest exponent of var over all terms (the var-adic order).
  int order_in(int var) const;
  int total_degree() const;
  /// Bit i set iff variable i occurs.
  std::uint32_t support() const;
  /// Coefficients as polynomials in the remaining variables, indexed by the exponent of var.
  std::vector<Poly> coefficients_in(int var) const;
  /// Componentwise minimum exponent over the terms.
  Monomial min_monomial() const;

  Poly operator+(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly operator*(const Poly& o) const;
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(Coeff c) const;
  Poly times_monomial(const Monomial& m) const;
  Poly divided_by_monomial(const Monomial& m) const;
  Poly pow(unsigned e) const;
  /// p(x)^2: squares coefficients and doubles exponents.
  Poly frobenius() const;
  /// Divides by the leading coefficient.
  Poly monic() const;
  /// Substitute var := value (a polynomial).
  Poly substitute(int var, const Poly& value) const;
  /// Value at var = 0.
  Poly at_zero(int var) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int k_ = 1;
  std::vector<Term> terms_;
};

/// Exact quotient a / b; throws std::domain_error when b does not divide a.
Poly divide_exact(const Poly& a, const Poly& b);
/// Quotient and remainder of lexicographic multivariate division.
std::pair<Poly, Poly> divide(const Poly& a, const Poly& b);
/// Monic greatest common divisor (recursive content / primitive PRS).
Poly gcd(const Poly& a, const Poly& b);

std::string format_gf_constant(int k, GF2k::Elem c);

}  // namespace qf2

#endif  // QF2_POLY_HPP
