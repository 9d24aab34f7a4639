#include "udeq/field.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <numeric>
#include <vector>

#include "udeq/error.hpp"

namespace udeq {

namespace mp = boost::multiprecision;

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) throw InvalidField(std::to_string(p) + " is not a usable prime");
  return Field(p);
}

Field Field::parse(const std::string& spec) {
  if (spec == "q" || spec == "Q") return rationals();
  if (spec.rfind("p:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      std::size_t used = 0;
      p = std::stoull(spec.substr(2), &used);
      if (used != spec.size() - 2) throw InvalidField("bad field '" + spec + "'");
    } catch (const std::logic_error&) {
      throw InvalidField("bad field '" + spec + "'");
    }
    return prime(p);
  }
  throw InvalidField("bad field '" + spec + "' (expected q or p:<prime>)");
}

std::string Field::name() const { return is_rational() ? "q" : "p:" + std::to_string(p_); }

namespace {

std::uint64_t reduce(std::int64_t v, std::uint64_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> rref_mod(std::vector<std::uint64_t>& a, std::size_t rows, std::size_t cols,
                                  std::uint64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t k = 0; k < cols; ++k) std::swap(a[piv * cols + k], a[r * cols + k]);
    const std::uint64_t inv = inverse_mod(a[r * cols + c], p);
    for (std::size_t k = 0; k < cols; ++k) a[r * cols + k] = a[r * cols + k] * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i * cols + c] == 0) continue;
      const std::uint64_t f = a[i * cols + c];
      for (std::size_t k = 0; k < cols; ++k) a[i * cols + k] = (a[i * cols + k] + (p - f) * a[r * cols + k]) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::size_t> rref_rational(std::vector<mp::cpp_rational>& a, std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t k = 0; k < cols; ++k) std::swap(a[piv * cols + k], a[r * cols + k]);
    const mp::cpp_rational lead = a[r * cols + c];
    for (std::size_t k = 0; k < cols; ++k) a[r * cols + k] /= lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i * cols + c] == 0) continue;
      const mp::cpp_rational f = a[i * cols + c];
      for (std::size_t k = 0; k < cols; ++k) a[i * cols + k] -= f * a[r * cols + k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Fraction-free (Bareiss) elimination; exact rank over Q.
std::size_t bareiss_rank(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<mp::cpp_int> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m(i, j);
  mp::cpp_int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t k = 0; k < cols; ++k) std::swap(a[piv * cols + k], a[r * cols + k]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k)
        a[i * cols + k] = (a[r * cols + c] * a[i * cols + k] - a[i * cols + c] * a[r * cols + k]) / prev;
      a[i * cols + c] = 0;
    }
    prev = a[r * cols + c];
    ++r;
  }
  return r;
}

}  // namespace

std::size_t Field::rank(const IntMatrix& m) const {
  if (m.empty()) return 0;
  if (is_rational()) return bareiss_rank(m);
  std::vector<std::uint64_t> a(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i * m.cols() + j] = reduce(m(i, j), p_);
  return rref_mod(a, m.rows(), m.cols(), p_).size();
}

IntMatrix Field::nullspace(const IntMatrix& m) const {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<std::int64_t>> basis;
  if (is_rational()) {
    std::vector<mp::cpp_rational> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m(i, j);
    auto piv = rref_rational(a, rows, cols);
    std::vector<char> is_piv(cols, 0);
    for (auto c : piv) is_piv[c] = 1;
    for (std::size_t free = 0; free < cols; ++free) {
      if (is_piv[free]) continue;
      std::vector<mp::cpp_rational> v(cols, 0);
      v[free] = 1;
      for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r * cols + free];
      mp::cpp_int lcm = 1;
      for (const auto& q : v) lcm = mp::lcm(lcm, mp::denominator(q));
      std::vector<std::int64_t> iv;
      for (const auto& q : v) {
        mp::cpp_int n = mp::numerator(q) * (lcm / mp::denominator(q));
        if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
          throw ArithmeticOverflow();
        iv.push_back(static_cast<std::int64_t>(n));
      }
      basis.push_back(std::move(iv));
    }
  } else {
    std::vector<std::uint64_t> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = reduce(m(i, j), p_);
    auto piv = rref_mod(a, rows, cols, p_);
    std::vector<char> is_piv(cols, 0);
    for (auto c : piv) is_piv[c] = 1;
    for (std::size_t free = 0; free < cols; ++free) {
      if (is_piv[free]) continue;
      std::vector<std::int64_t> v(cols, 0);
      v[free] = 1;
      for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = static_cast<std::int64_t>((p_ - a[r * cols + free]) % p_);
      basis.push_back(std::move(v));
    }
  }
  IntMatrix out(cols, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t i = 0; i < cols; ++i) out(i, k) = basis[k][i];
  return out;
}

}  // namespace udeq
