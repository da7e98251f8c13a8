#pragma once

// Dense exact linear algebra over arbitrary-precision integers: Bareiss
// determinant, rational Gaussian solve, and Cramer's rule.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nullpart/errors.hpp"
#include "nullpart/exact_algebra.hpp"
#include "nullpart/subsets.hpp"

namespace nullpart {

inline constexpr std::size_t kDefaultMaxDim = std::size_t{1} << 13;

using RationalVector = std::vector<Rational>;

struct Labels {
  std::vector<Subset> rows;
  std::vector<Subset> cols;
};

/// Square matrix of big integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) : dim_(rows.size()) {
    entries_.reserve(dim_ * dim_);
    for (const auto& r : rows) {
      if (r.size() != dim_) throw std::invalid_argument("matrix must be square");
      for (long v : r) entries_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t dim) {
    IntMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  const std::vector<Integer>& entries() const noexcept { return entries_; }

  const std::optional<Labels>& labels() const noexcept { return labels_; }
  void set_labels(Labels labels) {
    if (labels.rows.size() != dim_ || labels.cols.size() != dim_)
      throw std::invalid_argument("label count must equal matrix dimension");
    labels_ = std::move(labels);
  }

  IntMatrix transposed() const {
    IntMatrix t(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    if (labels_) t.labels_ = Labels{labels_->cols, labels_->rows};
    return t;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Integer> entries_;
  std::optional<Labels> labels_;
};

inline void require_dim_within(std::size_t dim, std::size_t max_dim) {
  if (dim > max_dim)
    throw LimitExceeded("matrix dimension " + std::to_string(dim) + " exceeds limit " + std::to_string(max_dim));
}

/// Fraction-free elimination. Every division is exact; row swaps flip the sign.
inline Integer bareiss_determinant(const IntMatrix& a, std::size_t max_dim = kDefaultMaxDim) {
  const std::size_t m = a.dim();
  require_dim_within(m, max_dim);
  if (m == 0) return 1;
  std::vector<Integer> w = a.entries();
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return w[i * m + j]; };

  Integer prev = 1;
  bool negate = false;
  Integer t;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (at(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < m && at(r, k) == 0) ++r;
      if (r == m) return 0;
      for (std::size_t j = k; j < m; ++j) std::swap(at(k, j), at(r, j));
      negate = !negate;
    }
    const Integer& pivot = at(k, k);
    for (std::size_t i = k + 1; i < m; ++i) {
      const Integer& lead = at(i, k);
      const bool lead_zero = (lead == 0);
      for (std::size_t j = k + 1; j < m; ++j) {
        Integer& x = at(i, j);
        if (lead_zero) {
          if (x == 0) continue;
          x *= pivot;
        } else {
          mpz_mul(t.get_mpz_t(), lead.get_mpz_t(), at(k, j).get_mpz_t());
          x *= pivot;
          x -= t;
        }
        if (prev != 1) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, k) = 0;
    }
    prev = pivot;
  }
  Integer det = at(m - 1, m - 1);
  return negate ? Integer(-det) : det;
}

/// Gaussian elimination over the rationals. Pivot = first nonzero entry at
/// or below the diagonal; no magnitude pivoting. When det_out is given it
/// receives det(A), the signed product of the pivots.
inline RationalVector solve_exact(const IntMatrix& a, const RationalVector& rhs, std::size_t max_dim = kDefaultMaxDim,
                                  Rational* det_out = nullptr) {
  const std::size_t m = a.dim();
  require_dim_within(m, max_dim);
  if (rhs.size() != m) throw std::invalid_argument("right-hand side length does not match matrix dimension");

  const std::size_t width = m + 1;
  std::vector<Rational> w(m * width);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) w[i * width + j] = a(i, j);
    w[i * width + m] = rhs[i];
  }
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return w[i * width + j]; };

  Rational factor;
  Rational det = 1;
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t r = k;
    while (r < m && at(r, k) == 0) ++r;
    if (r == m) throw SingularMatrix("no pivot in column " + std::to_string(k));
    if (r != k) {
      for (std::size_t j = k; j < width; ++j) std::swap(at(k, j), at(r, j));
      det = -det;
    }
    det *= at(k, k);
    for (std::size_t i = k + 1; i < m; ++i) {
      if (at(i, k) == 0) continue;
      factor = at(i, k) / at(k, k);
      for (std::size_t j = k + 1; j < width; ++j)
        if (at(k, j) != 0) at(i, j) -= factor * at(k, j);
      at(i, k) = 0;
    }
  }

  RationalVector x(m);
  for (std::size_t ii = m; ii-- > 0;) {
    Rational s = at(ii, m);
    for (std::size_t j = ii + 1; j < m; ++j)
      if (at(ii, j) != 0) s -= at(ii, j) * x[j];
    x[ii] = s / at(ii, ii);
  }
  if (det_out) *det_out = det;
  return x;
}

/// det of A with column j replaced by rhs.
inline Rational cramer_numerator(const IntMatrix& a, const RationalVector& rhs, std::size_t j,
                                 std::size_t max_dim = kDefaultMaxDim) {
  const std::size_t m = a.dim();
  if (rhs.size() != m) throw std::invalid_argument("right-hand side length does not match matrix dimension");
  if (j >= m) throw std::out_of_range("column index out of range");
  Integer scale = 1;
  for (const auto& r : rhs) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), r.get_den_mpz_t());
  IntMatrix replaced = a;
  for (std::size_t i = 0; i < m; ++i) {
    const Rational scaled = rhs[i] * scale;
    replaced(i, j) = scaled.get_num();
  }
  return make_rational(bareiss_determinant(replaced, max_dim), scale);
}

inline Rational cramer_component(const IntMatrix& a, const RationalVector& rhs, std::size_t j,
                                 std::size_t max_dim = kDefaultMaxDim) {
  const Integer det = bareiss_determinant(a, max_dim);
  if (det == 0) throw SingularMatrix("Cramer's rule needs a nonzero determinant");
  return cramer_numerator(a, rhs, j, max_dim) / Rational(det);
}

/// All components via Cramer's rule, sharing one determinant.
inline RationalVector cramer_solve(const IntMatrix& a, const RationalVector& rhs, std::size_t max_dim = kDefaultMaxDim) {
  const Integer det = bareiss_determinant(a, max_dim);
  if (det == 0) throw SingularMatrix("Cramer's rule needs a nonzero determinant");
  RationalVector x(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) x[j] = cramer_numerator(a, rhs, j, max_dim) / Rational(det);
  return x;
}

inline RationalVector multiply(const IntMatrix& a, const RationalVector& x) {
  if (x.size() != a.dim()) throw std::invalid_argument("vector length does not match matrix dimension");
  RationalVector y(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a(i, j) != 0) y[i] += Rational(a(i, j)) * x[j];
  return y;
}

/// Bordered table: column labels across the top, row labels down the left.
inline std::string render_text(const IntMatrix& a) {
  const std::size_t m = a.dim();
  std::vector<std::string> row_lab(m), col_lab(m);
  for (std::size_t i = 0; i < m; ++i) {
    row_lab[i] = a.labels() ? a.labels()->rows[i].to_string() : std::to_string(i);
    col_lab[i] = a.labels() ? a.labels()->cols[i].to_string() : std::to_string(i);
  }
  std::size_t lw = 0, cw = 1;
  for (const auto& s : row_lab) lw = std::max(lw, s.size());
  for (const auto& s : col_lab) cw = std::max(cw, s.size());
  for (const auto& e : a.entries()) cw = std::max(cw, e.get_str().size());

  auto pad = [](const std::string& s, std::size_t width) { return std::string(width - s.size(), ' ') + s; };
  std::ostringstream os;
  os << std::string(lw, ' ') << " |";
  for (const auto& c : col_lab) os << ' ' << pad(c, cw);
  os << '\n' << std::string(lw + 1, '-') << '+' << std::string(m * (cw + 1), '-') << '\n';
  for (std::size_t i = 0; i < m; ++i) {
    os << pad(row_lab[i], lw) << " |";
    for (std::size_t j = 0; j < m; ++j) os << ' ' << pad(a(i, j).get_str(), cw);
    os << '\n';
  }
  return os.str();
}

inline std::string render_csv(const IntMatrix& a) {
  std::ostringstream os;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) os << (j ? "," : "") << a(i, j).get_str();
    os << '\n';
  }
  return os.str();
}

}  // namespace nullpart
