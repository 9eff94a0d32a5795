#ifndef QF2_GF2_SYSTEM_HPP
#define QF2_GF2_SYSTEM_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qf2 {

/// Dense linear system over F_2. Rows are bitsets with the right-hand side
/// stored in the extra column `unknowns`.
class Gf2System {
 public:
  explicit Gf2System(std::size_t unknowns)
      : n_(unknowns), words_((unknowns + 1 + 63) / 64) {}

  std::size_t unknowns() const { return n_; }

  /// XOR of the listed unknowns equals rhs. Repeated indices cancel.
  void add_equation(const std::vector<std::size_t>& cols, bool rhs) {
    std::vector<std::uint64_t> row(words_, 0);
    for (auto c : cols) row[c / 64] ^= std::uint64_t{1} << (c % 64);
    if (rhs) row[n_ / 64] ^= std::uint64_t{1} << (n_ % 64);
    rows_.push_back(std::move(row));
  }

  /// Some solution; with require_nonzero, a nonzero one (meaningful for
  /// homogeneous systems). Nothing when none exists.
  std::optional<std::vector<std::uint8_t>> solve(bool require_nonzero = false) const {
    auto rows = rows_;
    std::vector<std::size_t> pivot_of_row;
    std::vector<int> pivot_row(n_, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n_ && rank < rows.size(); ++col) {
      std::size_t sel = rows.size();
      for (std::size_t r = rank; r < rows.size(); ++r)
        if (bit(rows[r], col)) { sel = r; break; }
      if (sel == rows.size()) continue;
      std::swap(rows[rank], rows[sel]);
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (r != rank && bit(rows[r], col))
          for (std::size_t w = 0; w < words_; ++w) rows[r][w] ^= rows[rank][w];
      pivot_row[col] = static_cast<int>(rank);
      pivot_of_row.push_back(col);
      ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (bit(rows[r], n_)) return std::nullopt;
    std::vector<std::uint8_t> x(n_, 0);
    if (require_nonzero) {
      bool any_rhs = false;
      for (std::size_t r = 0; r < rank; ++r) any_rhs |= bit(rows[r], n_);
      if (!any_rhs) {
        std::size_t free_col = n_;
        for (std::size_t c = 0; c < n_; ++c)
          if (pivot_row[c] < 0) { free_col = c; break; }
        if (free_col == n_) return std::nullopt;
        x[free_col] = 1;
      }
    }
    for (std::size_t r = 0; r < rank; ++r) {
      const std::size_t col = pivot_of_row[r];
      bool v = bit(rows[r], n_);
      for (std::size_t c = 0; c < n_; ++c)
        if (c != col && x[c] && bit(rows[r], c)) v = !v;
      x[col] = v;
    }
    return x;
  }

 private:
  static bool bit(const std::vector<std::uint64_t>& row, std::size_t c) {
    return (row[c / 64] >> (c % 64)) & 1;
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

}  // namespace qf2

#endif  // QF2_GF2_SYSTEM_HPP
