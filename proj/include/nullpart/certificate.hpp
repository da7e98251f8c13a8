#pragma once

// Polynomial encoding of Partition, the brute-force partition oracle, and
// construction and symbolic verification of Nullstellensatz certificates
//
//   1 = sum_i (sum_{S even, S in [n]\i} c_{i,S} x^S) (x_i^2 - 1)
//       + (sum_{S odd} b_S x^S) (sum_i w_i x_i).

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "nullpart/errors.hpp"
#include "nullpart/exact_algebra.hpp"
#include "nullpart/exact_matrix.hpp"
#include "nullpart/partition_matrix.hpp"
#include "nullpart/subsets.hpp"
#include "nullpart/weights.hpp"

namespace nullpart {

inline constexpr int kBruteForceMaxN = 30;
inline constexpr int kCertificateMaxN = 30;

// -- system -------------------------------------------------------------------

struct PolynomialSystem {
  WeightSet weights;
  /// x_1^2 - 1, ..., x_n^2 - 1, then sum_i w_i x_i.
  std::vector<SparsePolynomial> generators;

  int n() const noexcept { return weights.n(); }
  const SparsePolynomial& square(int i) const { return generators.at(static_cast<std::size_t>(i - 1)); }
  const SparsePolynomial& linear() const { return generators.back(); }
};

inline PolynomialSystem encode(const WeightSet& w) {
  const int n = w.n();
  if (n < 1 || n > kCertificateMaxN) throw LimitExceeded("n = " + std::to_string(n) + " outside 1.." + std::to_string(kCertificateMaxN));
  PolynomialSystem sys{w, {}};
  sys.generators.reserve(static_cast<std::size_t>(n) + 1);
  SparsePolynomial linear(n);
  for (int i = 1; i <= n; ++i) {
    SparsePolynomial g(n);
    g.add_term(Monomial::var(i, 2), Rational(1));
    g.add_term(Monomial(), Rational(-1));
    sys.generators.push_back(std::move(g));
    linear.add_term(Monomial::var(i), Rational(w.w(i)));
  }
  sys.generators.push_back(std::move(linear));
  return sys;
}

// -- brute force oracle -------------------------------------------------------

struct PartitionWitness {
  /// Side of the split containing n.
  Subset side;

  Subset complement() const { return Subset(side.ambient(), side.mask() ^ ((Mask{1} << side.ambient()) - 1)); }

  bool holds_for(const WeightSet& w) const {
    Integer in = 0, out = 0;
    for (int i = 1; i <= w.n(); ++i) (side.contains(i) ? in : out) += w.w(i);
    return in == out;
  }

  std::string to_string() const { return side.to_string() + " | " + complement().to_string(); }
};

namespace detail {

// Depth-first over s_1, s_2, ... with +1 tried before -1, so leaves are
// visited in lexicographic sign order.
template <class Value>
bool search_signs(const std::vector<Value>& w, std::size_t depth, Value partial, Mask& negated) {
  if (depth + 1 == w.size()) return Value(partial + w.back()) == 0;
  if (search_signs<Value>(w, depth + 1, Value(partial + w[depth]), negated)) return true;
  negated |= Mask{1} << depth;
  if (search_signs<Value>(w, depth + 1, Value(partial - w[depth]), negated)) return true;
  negated &= ~(Mask{1} << depth);
  return false;
}

}  // namespace detail

/// First equal-sum split in lexicographic sign order (w_n fixed positive), if any.
inline std::optional<PartitionWitness> brute_force_partition(const WeightSet& w, int max_n = kBruteForceMaxN) {
  const int n = w.n();
  if (n < 1 || n > max_n) throw LimitExceeded("n = " + std::to_string(n) + " outside 1.." + std::to_string(max_n));

  Integer magnitude = 0;
  for (const auto& v : w.values()) magnitude += abs(v);
  Mask negated = 0;
  bool found = false;
  if (magnitude < Integer(std::numeric_limits<std::int64_t>::max() / 2)) {
    std::vector<std::int64_t> small;
    for (const auto& v : w.values()) small.push_back(v.get_si());
    found = detail::search_signs<std::int64_t>(small, 0, 0, negated);
  } else {
    found = detail::search_signs<Integer>(w.values(), 0, Integer(0), negated);
  }
  if (!found) return std::nullopt;
  const Mask all = (Mask{1} << n) - 1;
  return PartitionWitness{Subset(n, all ^ negated)};
}

// -- certificate data ---------------------------------------------------------

enum class SolveMethod { kSolve, kCramer };

inline std::string to_string(SolveMethod m) { return m == SolveMethod::kCramer ? "cramer" : "solve"; }

inline SolveMethod parse_solve_method(const std::string& s) {
  if (s == "solve") return SolveMethod::kSolve;
  if (s == "cramer") return SolveMethod::kCramer;
  throw ParseError("unknown method '" + s + "' (expected solve or cramer)");
}

struct Certificate {
  WeightSet weights;
  /// beta_squares[i] multiplies x_{i+1}^2 - 1 and carries the c_{i+1,S}.
  std::vector<SparsePolynomial> beta_squares;
  /// Multiplies sum_i w_i x_i and carries the b_S.
  SparsePolynomial beta_linear;
  Integer det = 0;
  SolveMethod method = SolveMethod::kSolve;

  int n() const noexcept { return weights.n(); }
};

struct NoCertificate {
  PartitionWitness witness;
};

struct CertificateOptions {
  int max_n = kDefaultMatrixMaxN;
  SolveMethod method = SolveMethod::kSolve;
};

struct BSolution {
  /// Indexed like GrevlexIndex::col_order.
  RationalVector b;
  Integer det;
};

// -- b and c unknowns ----------------------------------------------------------

/// Right-hand side e with a 1 at the empty-set row (the last row).
inline RationalVector empty_row_rhs(std::size_t dim) {
  RationalVector e(dim);
  e.back() = 1;
  return e;
}

inline NoCertificate no_certificate_for(const WeightSet& w) {
  auto witness = brute_force_partition(w);
  if (!witness)
    throw ConsistencyError("partition matrix is singular but no partition of {" + w.to_string() + "} exists");
  return NoCertificate{*witness};
}

/// Solves Pi(W) b = e. Singular iff W is partitionable.
inline std::variant<BSolution, NoCertificate> solve_b(const WeightSet& w, const CertificateOptions& opt = {}) {
  const PartitionMatrix pm = build_partition_matrix(w, opt.max_n);
  const std::size_t max_dim = pm.dim();
  const RationalVector rhs = empty_row_rhs(pm.dim());
  if (opt.method == SolveMethod::kCramer) {
    const Integer det = bareiss_determinant(pm.body, max_dim);
    if (det == 0) return no_certificate_for(w);
    RationalVector b(pm.dim());
    for (std::size_t j = 0; j < pm.dim(); ++j) b[j] = cramer_numerator(pm.body, rhs, j, max_dim) / Rational(det);
    return BSolution{std::move(b), det};
  }
  try {
    Rational det;
    RationalVector b = solve_exact(pm.body, rhs, max_dim, &det);
    if (det.get_den() != 1) throw ConsistencyError("determinant of an integer matrix came out fractional");
    return BSolution{std::move(b), det.get_num()};
  } catch (const SingularMatrix&) {
    return no_certificate_for(w);
  }
}

struct CCoefficient {
  int i = 0;
  Subset s;
  Rational value;
};

/// c_{i,S} = -w_i b_{S+i} for every even S in [n]\{i}; checks the constant-term
/// equation and every x^S equation, throwing ConsistencyError on violation.
inline std::vector<CCoefficient> derive_c(const WeightSet& w, const RationalVector& b) {
  const int n = w.n();
  const GrevlexIndex index(n, kCertificateMaxN);
  if (b.size() != index.size()) throw std::invalid_argument("b has wrong length for n = " + std::to_string(n));
  auto b_of = [&](Mask odd) -> const Rational& { return b[index.rank_of_mask(odd)]; };

  std::vector<CCoefficient> out;
  // c_sum[row] accumulates sum_{i not in S} c_{i,S}.
  std::vector<Rational> c_sum(index.size());
  for (int i = 1; i <= n; ++i) {
    const Mask bit = Mask{1} << (i - 1);
    for (std::size_t r = 0; r < index.size(); ++r) {
      const Mask s = index.row_mask(r);
      if (s & bit) continue;
      Rational c = -Rational(w.w(i)) * b_of(s | bit);
      c_sum[r] += c;
      out.push_back({i, Subset(n, s), std::move(c)});
    }
  }

  for (std::size_t r = 0; r < index.size(); ++r) {
    const Mask s = index.row_mask(r);
    if (s == 0) {
      if (-c_sum[r] != 1) throw ConsistencyError("constant term equation fails: -sum c_{i,{}} = " + format_rational(-c_sum[r]));
      continue;
    }
    Rational lhs = -c_sum[r];
    for (Mask rest = s; rest != 0; rest &= rest - 1) {
      const int j = std::countr_zero(rest) + 1;
      lhs += b_of(s ^ (Mask{1} << (j - 1))) * Rational(w.w(j));
    }
    if (lhs != 0)
      throw ConsistencyError("equation for monomial x^" + Subset(n, s).to_string() + " fails with value " + format_rational(lhs));
  }
  return out;
}

/// Assembles the certificate from solved b and derived c, or reports a witness.
inline std::variant<Certificate, NoCertificate> build_certificate(const WeightSet& w, const CertificateOptions& opt = {}) {
  auto solved = solve_b(w, opt);
  if (auto* none = std::get_if<NoCertificate>(&solved)) return *none;
  auto& sol = std::get<BSolution>(solved);

  const int n = w.n();
  const GrevlexIndex index(n, kCertificateMaxN);
  Certificate cert{w, std::vector<SparsePolynomial>(static_cast<std::size_t>(n), SparsePolynomial(n)), SparsePolynomial(n),
                   sol.det, opt.method};
  for (std::size_t j = 0; j < index.size(); ++j)
    cert.beta_linear.add_term(Monomial::of_subset(index.col(j)), sol.b[j]);
  for (const auto& c : derive_c(w, sol.b))
    cert.beta_squares[static_cast<std::size_t>(c.i - 1)].add_term(Monomial::of_subset(c.s), c.value);
  return cert;
}

// -- verification ----------------------------------------------------------------

struct Verification {
  bool passed = false;
  /// Expansion minus 1; zero exactly when passed.
  SparsePolynomial residual;
};

/// Expands sum_i beta_squares[i] (x_i^2 - 1) + beta_linear * L symbolically.
inline Verification verify_certificate(const Certificate& cert, const PolynomialSystem& sys) {
  const int n = sys.n();
  if (cert.n() != n || cert.beta_squares.size() != static_cast<std::size_t>(n))
    throw AmbientMismatch("certificate and system disagree on n");
  SparsePolynomial total(n);
  for (int i = 1; i <= n; ++i) total += cert.beta_squares[static_cast<std::size_t>(i - 1)] * sys.square(i);
  total += cert.beta_linear * sys.linear();
  total -= SparsePolynomial::constant(n, Rational(1));
  return Verification{total.is_zero(), std::move(total)};
}

/// Support law: beta_linear on odd square-free monomials, beta_squares[i] on
/// even square-free monomials avoiding x_{i+1}. Returns the first violation.
inline std::optional<std::string> support_violation(const Certificate& cert) {
  for (const auto& [m, c] : cert.beta_linear.terms())
    if (!m.is_square_free() || m.degree() % 2 == 0) return "beta_linear has term " + m.to_string();
  for (std::size_t i = 0; i < cert.beta_squares.size(); ++i)
    for (const auto& [m, c] : cert.beta_squares[i].terms())
      if (!m.is_square_free() || m.degree() % 2 != 0 || m.exponent(static_cast<int>(i) + 1) != 0)
        return "beta_squares[" + std::to_string(i) + "] has term " + m.to_string();
  return std::nullopt;
}

/// Odd subsets whose b_S came out zero (absent from beta_linear).
inline std::vector<Subset> zero_b_labels(const Certificate& cert) {
  const GrevlexIndex index(cert.n(), kCertificateMaxN);
  std::vector<Subset> out;
  for (const auto& s : index.col_order())
    if (cert.beta_linear.coefficient(Monomial::of_subset(s)) == 0) out.push_back(s);
  return out;
}

inline Rational b_coefficient(const Certificate& cert, const Subset& s) {
  return cert.beta_linear.coefficient(Monomial::of_subset(s));
}

inline Rational c_coefficient(const Certificate& cert, int i, const Subset& s) {
  return cert.beta_squares.at(static_cast<std::size_t>(i - 1)).coefficient(Monomial::of_subset(s));
}

// -- serialization ----------------------------------------------------------------

inline nlohmann::json certificate_to_json(const Certificate& cert) {
  nlohmann::json j;
  j["n"] = cert.n();
  j["weights"] = weights_to_json(cert.weights);
  auto squares = nlohmann::json::array();
  for (const auto& p : cert.beta_squares) squares.push_back(polynomial_to_json(p));
  j["beta_squares"] = squares;
  j["beta_linear"] = polynomial_to_json(cert.beta_linear);
  j["meta"] = {{"det", cert.det.get_str()}, {"method", to_string(cert.method)}};
  return j;
}

/// Canonical file contents; byte-identical for identical certificates.
inline std::string serialize_certificate(const Certificate& cert) { return certificate_to_json(cert).dump(2) + "\n"; }

inline Certificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("certificate must be a JSON object");
  for (const char* key : {"n", "weights", "beta_squares", "beta_linear"})
    if (!j.contains(key)) throw ParseError(std::string("certificate is missing '") + key + "'");
  if (!j["n"].is_number_integer()) throw ParseError("'n' must be an integer");
  const int n = j["n"].get<int>();
  if (n < 1 || n > kCertificateMaxN) throw ParseError("'n' out of range");
  Certificate cert;
  cert.weights = weights_from_json(j["weights"]);
  if (cert.weights.n() != n) throw ParseError("'weights' length does not match 'n'");
  const auto& squares = j["beta_squares"];
  if (!squares.is_array() || squares.size() != static_cast<std::size_t>(n))
    throw ParseError("'beta_squares' must hold n polynomials");
  for (const auto& p : squares) cert.beta_squares.push_back(polynomial_from_json(p, n));
  cert.beta_linear = polynomial_from_json(j["beta_linear"], n);
  if (j.contains("meta")) {
    const auto& meta = j["meta"];
    if (!meta.is_object()) throw ParseError("'meta' must be an object");
    if (meta.contains("det")) {
      if (!meta["det"].is_string()) throw ParseError("'meta.det' must be a string");
      cert.det = parse_integer(meta["det"].get<std::string>());
    }
    if (meta.contains("method")) {
      if (!meta["method"].is_string()) throw ParseError("'meta.method' must be a string");
      cert.method = parse_solve_method(meta["method"].get<std::string>());
    }
  }
  return cert;
}

inline Certificate parse_certificate(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

}  // namespace nullpart
