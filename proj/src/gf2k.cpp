#include "qf2/gf2k.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qf2 {

namespace {

// Primitive polynomials over F_2, bit i = coefficient of x^i.
constexpr std::array<std::uint32_t, kMaxGfDegree + 1> kPrimitive = {
    0,
    0b11,                 // x + 1
    0b111,                // x^2 + x + 1
    0b1011,               // x^3 + x + 1
    0b10011,              // x^4 + x + 1
    0b100101,             // x^5 + x^2 + 1
    0b1000011,            // x^6 + x + 1
    0b10000011,           // x^7 + x + 1
    0b100011101,          // x^8 + x^4 + x^3 + x^2 + 1
    0b1000010001,         // x^9 + x^4 + 1
    0b10000001001,        // x^10 + x^3 + 1
    0b100000000101,       // x^11 + x^2 + 1
    0b1000001010011,      // x^12 + x^6 + x^4 + x + 1
    0b10000000011011,     // x^13 + x^4 + x^3 + x + 1
    0b100010001000011,    // x^14 + x^10 + x^6 + x + 1
    0b1000000000000011,   // x^15 + x + 1
    0b10001000000001011,  // x^16 + x^12 + x^3 + x + 1
};

struct Tables {
  std::vector<GF2k::Elem> exp;
  std::vector<std::uint32_t> log;
};

}  // namespace

const GF2k& GF2k::get(int k) {
  if (k < 1 || k > kMaxGfDegree) throw std::invalid_argument("GF(2^k): k out of range");
  static std::array<std::unique_ptr<GF2k>, kMaxGfDegree + 1> fields;
  static std::array<std::once_flag, kMaxGfDegree + 1> flags;
  std::call_once(flags[k], [k] { fields[k].reset(new GF2k(k)); });
  return *fields[k];
}

GF2k::GF2k(int k) : k_(k), modulus_(kPrimitive[k]), order_((Elem{1} << k) - 1) {
  // Tables live for the process lifetime alongside the singleton.
  auto* t = new Tables;
  t->exp.assign(2 * static_cast<std::size_t>(order_) + 2, 0);
  t->log.assign(static_cast<std::size_t>(order_) + 1, 0);
  Elem x = 1;
  for (Elem i = 0; i < order_; ++i) {
    t->exp[i] = x;
    t->log[x] = i;
    x <<= 1;
    if (x & (Elem{1} << k)) x ^= modulus_;
  }
  for (Elem i = order_; i < t->exp.size(); ++i) t->exp[i] = t->exp[i - order_];
  exp_ = t->exp.data();
  log_ = t->log.data();
}

GF2k::Elem GF2k::inv(Elem a) const {
  if (a == 0) throw std::domain_error("GF(2^k): inverse of zero");
  return exp_[(order_ - log_[a]) % order_];
}

GF2k::Elem GF2k::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % order_)) % order_];
}

GF2k::Elem GF2k::sqrt(Elem a) const { return pow(a, std::uint64_t{1} << (k_ - 1)); }

int GF2k::trace(Elem a) const {
  Elem t = 0, x = a;
  for (int i = 0; i < k_; ++i) {
    t ^= x;
    x = square(x);
  }
  return static_cast<int>(t & 1);
}

std::optional<GF2k::Elem> GF2k::solve_artin_schreier(Elem c) const {
  if (trace(c) != 0) return std::nullopt;
  // w -> w^2 + w is F_2-linear; solve the k x k system by elimination.
  std::vector<std::uint32_t> cols(k_);
  for (int i = 0; i < k_; ++i) {
    Elem e = Elem{1} << i;
    cols[i] = square(e) ^ e;
  }
  // Augmented rows: row r holds bit r of every column plus the target.
  std::vector<std::uint64_t> rows(k_, 0);
  for (int r = 0; r < k_; ++r) {
    for (int i = 0; i < k_; ++i)
      if ((cols[i] >> r) & 1) rows[r] |= std::uint64_t{1} << i;
    if ((c >> r) & 1) rows[r] |= std::uint64_t{1} << k_;
  }
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < k_ && rank < k_; ++col) {
    int sel = -1;
    for (int r = rank; r < k_; ++r)
      if ((rows[r] >> col) & 1) { sel = r; break; }
    if (sel < 0) continue;
    std::swap(rows[rank], rows[sel]);
    for (int r = 0; r < k_; ++r)
      if (r != rank && ((rows[r] >> col) & 1)) rows[r] ^= rows[rank];
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < k_; ++r)
    if ((rows[r] >> k_) & 1) return std::nullopt;
  Elem w = 0;
  for (int r = 0; r < rank; ++r)
    if ((rows[r] >> k_) & 1) w |= Elem{1} << pivot_col[r];
  return w;
}

}  // namespace qf2
