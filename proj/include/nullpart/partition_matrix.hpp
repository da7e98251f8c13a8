#pragma once

// The partition matrix: rows are even subsets of [n], columns odd subsets,
// both in descending grevlex order; cell (S, T) holds w_k when S xor T = {k}.
// Each nonzero cell also records k, so repeated weight values stay distinguishable.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "nullpart/errors.hpp"
#include "nullpart/exact_matrix.hpp"
#include "nullpart/subsets.hpp"
#include "nullpart/weights.hpp"

namespace nullpart {

inline constexpr int kDefaultMatrixMaxN = 14;

struct PartitionMatrix {
  WeightSet weights;
  GrevlexIndex index;
  IntMatrix body;
  /// Weight index k (1..n) of each cell, 0 where no weight sits; row-major.
  std::vector<std::uint8_t> tags;

  int n() const noexcept { return weights.n(); }
  std::size_t dim() const noexcept { return body.dim(); }
  std::uint8_t tag(std::size_t i, std::size_t j) const { return tags[i * dim() + j]; }
};

/// Pi_k as an index map: sigma[i] = j iff cell (i, j) holds w_k.
struct PermutationPi {
  static constexpr std::uint32_t kUnset = 0xffffffffU;

  int k = 0;
  std::vector<std::uint32_t> sigma;

  std::size_t size() const noexcept { return sigma.size(); }

  bool is_bijection() const {
    std::vector<bool> hit(sigma.size(), false);
    for (auto j : sigma) {
      if (j == kUnset || j >= sigma.size() || hit[j]) return false;
      hit[j] = true;
    }
    return true;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < sigma.size(); ++i)
      if (sigma[i] != i) return false;
    return true;
  }

  bool is_involution() const {
    if (!is_bijection()) return false;
    for (std::size_t i = 0; i < sigma.size(); ++i)
      if (sigma[sigma[i]] != i) return false;
    return true;
  }

  /// Matrix product (this * other): row i maps to other.sigma[sigma[i]].
  std::vector<std::uint32_t> then(const PermutationPi& other) const {
    std::vector<std::uint32_t> out(sigma.size(), kUnset);
    for (std::size_t i = 0; i < sigma.size(); ++i)
      if (sigma[i] < other.sigma.size()) out[i] = other.sigma[sigma[i]];
    return out;
  }
};

inline PartitionMatrix build_partition_matrix(const WeightSet& w, int max_n = kDefaultMatrixMaxN) {
  const int n = w.n();
  if (n < 1 || n > max_n) throw LimitExceeded("n = " + std::to_string(n) + " outside 1.." + std::to_string(max_n));
  if (n > 255) throw LimitExceeded("weight index does not fit a cell tag");
  GrevlexIndex index(n, max_n);
  const std::size_t dim = index.size();
  IntMatrix body(dim);
  std::vector<std::uint8_t> tags(dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    const Mask row = index.row_mask(i);
    for (int k = 1; k <= n; ++k) {
      const std::size_t j = index.rank_of_mask(row ^ (Mask{1} << (k - 1)));
      body(i, j) = w.w(k);
      tags[i * dim + j] = static_cast<std::uint8_t>(k);
    }
  }
  body.set_labels(Labels{index.row_order(), index.col_order()});
  return PartitionMatrix{w, std::move(index), std::move(body), std::move(tags)};
}

/// Value at (row label, column label). Rows must be even, columns odd.
inline Integer entry(const PartitionMatrix& m, const Subset& row, const Subset& col) {
  if (row.ambient() != m.n() || col.ambient() != m.n()) throw AmbientMismatch("label ambient size does not match matrix");
  if (!row.is_even()) throw std::invalid_argument("row label " + row.to_string() + " must have even cardinality");
  if (col.is_even()) throw std::invalid_argument("column label " + col.to_string() + " must have odd cardinality");
  const Subset d = symmetric_difference(row, col);
  if (d.cardinality() != 1) return 0;
  return m.weights.w(d.members().front());
}

/// Reads Pi_1..Pi_n off the cell tags. Rows missing some k keep sigma = kUnset.
inline std::vector<PermutationPi> decompose(const PartitionMatrix& m) {
  const std::size_t dim = m.dim();
  std::vector<PermutationPi> pis(static_cast<std::size_t>(m.n()));
  for (int k = 1; k <= m.n(); ++k) {
    pis[k - 1].k = k;
    pis[k - 1].sigma.assign(dim, PermutationPi::kUnset);
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const int k = m.tag(i, j);
      if (k >= 1 && k <= m.n()) pis[k - 1].sigma[i] = static_cast<std::uint32_t>(j);
    }
  return pis;
}

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyResult> results;

  bool all_passed() const {
    for (const auto& r : results)
      if (!r.passed) return false;
    return !results.empty();
  }

  const PropertyResult* find(const std::string& name) const {
    for (const auto& r : results)
      if (r.name == name) return &r;
    return nullptr;
  }
};

inline PropertyReport check_properties(const PartitionMatrix& m) {
  const std::size_t dim = m.dim();
  const int n = m.n();
  PropertyReport report;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.results.push_back({std::move(name), ok, ok ? std::string() : std::move(detail)});
  };
  auto cell = [&](std::size_t i, std::size_t j) {
    return m.index.row(i).to_string() + "x" + m.index.col(j).to_string();
  };

  {
    bool ok = true;
    std::string where;
    for (std::size_t i = 0; i < dim && ok; ++i)
      for (std::size_t j = i + 1; j < dim && ok; ++j)
        if (m.body(i, j) != m.body(j, i) || m.tag(i, j) != m.tag(j, i)) {
          ok = false;
          where = "asymmetric at " + std::to_string(i) + "," + std::to_string(j);
        }
    add("symmetric", ok, where);
  }
  {
    bool ok = true;
    std::string where;
    for (std::size_t i = 0; i < dim && ok; ++i)
      if (m.tag(i, i) != n || m.body(i, i) != m.weights.w(n)) {
        ok = false;
        where = "diagonal cell " + cell(i, i) + " is not w_" + std::to_string(n);
      }
    add("diagonal_is_w_n", ok, where);
  }
  {
    bool ok = true;
    std::string where;
    for (std::size_t i = 0; i < dim && ok; ++i)
      for (std::size_t j = 0; j < dim && ok; ++j) {
        const int k = m.tag(i, j);
        const Integer expected = (k >= 1 && k <= n) ? m.weights.w(k) : Integer(0);
        if (k > n || m.body(i, j) != expected) {
          ok = false;
          where = "cell " + cell(i, j) + " disagrees with its weight tag";
        }
      }
    add("entries_match_tags", ok, where);
  }
  {
    bool ok = true;
    std::string where;
    std::vector<int> row_count(n + 1), col_count(n + 1);
    for (std::size_t line = 0; line < dim && ok; ++line) {
      std::fill(row_count.begin(), row_count.end(), 0);
      std::fill(col_count.begin(), col_count.end(), 0);
      for (std::size_t x = 0; x < dim; ++x) {
        const int kr = m.tag(line, x);
        const int kc = m.tag(x, line);
        if (kr >= 1 && kr <= n) ++row_count[kr];
        if (kc >= 1 && kc <= n) ++col_count[kc];
      }
      for (int k = 1; k <= n && ok; ++k)
        if (row_count[k] != 1 || col_count[k] != 1) {
          ok = false;
          where = "w_" + std::to_string(k) + " not exactly once in row/column " + std::to_string(line);
        }
    }
    add("once_per_row_and_column", ok, where);
  }

  const auto pis = decompose(m);
  bool perms_ok = true;
  for (const auto& p : pis) perms_ok = perms_ok && p.is_bijection();
  add("pi_are_permutations", perms_ok, "some Pi_k is not a permutation");
  add("pi_n_identity", pis.back().is_identity(), "Pi_n is not the identity");
  {
    bool ok = true;
    std::string where;
    for (const auto& p : pis)
      if (!p.is_involution()) {
        ok = false;
        where = "Pi_" + std::to_string(p.k) + " is not involutory";
        break;
      }
    add("pi_involutory", ok, where);
  }
  {
    bool ok = perms_ok;
    std::string where = ok ? "" : "decomposition is not a set of permutations";
    for (std::size_t a = 0; a < pis.size() && ok; ++a)
      for (std::size_t b = a + 1; b < pis.size() && ok; ++b)
        if (pis[a].then(pis[b]) != pis[b].then(pis[a])) {
          ok = false;
          where = "Pi_" + std::to_string(a + 1) + " and Pi_" + std::to_string(b + 1) + " do not commute";
        }
    add("pi_commute", ok, where);
  }
  {
    bool ok = perms_ok;
    if (ok) {
      IntMatrix sum(dim);
      for (const auto& p : pis)
        for (std::size_t i = 0; i < dim; ++i) sum(i, p.sigma[i]) += m.weights.w(p.k);
      ok = (sum == m.body);
    }
    add("sum_reconstructs_matrix", ok, "sum of w_k Pi_k differs from the matrix");
  }
  return report;
}

inline std::string render_text(const PartitionMatrix& m) { return render_text(m.body); }

/// {n, weights, rows, cols, entries: [[i, j, k], ...]} listing tagged cells.
inline nlohmann::json to_json(const PartitionMatrix& m) {
  nlohmann::json j;
  j["n"] = m.n();
  j["weights"] = weights_to_json(m.weights);
  auto rows = nlohmann::json::array(), cols = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    rows.push_back(m.index.row(i).to_string());
    cols.push_back(m.index.col(i).to_string());
  }
  j["rows"] = rows;
  j["cols"] = cols;
  auto entries = nlohmann::json::array();
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c)
      if (m.tag(r, c) != 0) entries.push_back({r, c, m.tag(r, c)});
  j["entries"] = entries;
  return j;
}

inline nlohmann::json to_json(const PropertyReport& report) {
  auto out = nlohmann::json::array();
  for (const auto& r : report.results) {
    nlohmann::json e{{"name", r.name}, {"passed", r.passed}};
    if (!r.detail.empty()) e["detail"] = r.detail;
    out.push_back(e);
  }
  return out;
}

}  // namespace nullpart
