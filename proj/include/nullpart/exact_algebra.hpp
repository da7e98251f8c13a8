#pragma once

// Exact rationals (GMP-backed) and sparse multivariate polynomials with
// rational coefficients, plus the partition polynomial of a weight set.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nullpart/errors.hpp"
#include "nullpart/subsets.hpp"
#include "nullpart/weights.hpp"

namespace nullpart {

using Rational = mpq_class;

// -- rationals --------------------------------------------------------------

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rat_add(const Rational& a, const Rational& b) { return a + b; }
inline Rational rat_mul(const Rational& a, const Rational& b) { return a * b; }
inline Rational rat_neg(const Rational& a) { return -a; }
inline Rational rat_div(const Rational& a, const Rational& b) {
  if (b == 0) throw std::domain_error("rational division by zero");
  return a / b;
}

inline bool is_canonical(const Rational& r) {
  return r.get_den() > 0 && gcd(r.get_num(), r.get_den()) == 1;
}

/// "p/q", or "p" when q = 1.
inline std::string format_rational(const Rational& r) { return r.get_str(10); }

inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  const std::string den = text.substr(slash + 1);
  if (den.empty() || den[0] == '-' || den[0] == '+') throw ParseError("bad rational denominator: '" + text + "'");
  const Integer d = parse_integer(den);
  if (d == 0) throw ParseError("zero denominator: '" + text + "'");
  return make_rational(parse_integer(text.substr(0, slash)), d);
}

// -- monomials --------------------------------------------------------------

/// Product of x_var^exp with var ascending and every exp > 0. Empty is the constant 1.
class Monomial {
 public:
  using Power = std::pair<int, int>;

  Monomial() = default;

  explicit Monomial(std::vector<Power> powers) {
    std::sort(powers.begin(), powers.end());
    for (const auto& [v, e] : powers) {
      if (v < 1) throw std::invalid_argument("variable index must be >= 1");
      if (e < 0) throw std::invalid_argument("negative exponent");
      if (e == 0) continue;
      if (!powers_.empty() && powers_.back().first == v)
        powers_.back().second += e;
      else
        powers_.emplace_back(v, e);
    }
  }

  /// Square-free x^S.
  static Monomial of_subset(const Subset& s) {
    std::vector<Power> p;
    for (int e : s.members()) p.emplace_back(e, 1);
    return Monomial(std::move(p));
  }

  static Monomial var(int v, int exp = 1) { return Monomial({{v, exp}}); }

  const std::vector<Power>& powers() const noexcept { return powers_; }
  bool is_constant() const noexcept { return powers_.empty(); }
  int max_var() const noexcept { return powers_.empty() ? 0 : powers_.back().first; }

  int degree() const noexcept {
    int d = 0;
    for (const auto& p : powers_) d += p.second;
    return d;
  }

  int max_exponent() const noexcept {
    int m = 0;
    for (const auto& p : powers_) m = std::max(m, p.second);
    return m;
  }

  int exponent(int v) const noexcept {
    for (const auto& p : powers_)
      if (p.first == v) return p.second;
    return 0;
  }

  Mask support() const noexcept {
    Mask m = 0;
    for (const auto& p : powers_) m |= Mask{1} << (p.first - 1);
    return m;
  }

  bool is_square_free() const noexcept { return max_exponent() <= 1; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<Power> out;
    out.reserve(a.powers_.size() + b.powers_.size());
    auto i = a.powers_.begin();
    auto j = b.powers_.begin();
    while (i != a.powers_.end() || j != b.powers_.end()) {
      if (j == b.powers_.end() || (i != a.powers_.end() && i->first < j->first)) {
        out.push_back(*i++);
      } else if (i == a.powers_.end() || j->first < i->first) {
        out.push_back(*j++);
      } else {
        out.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    Monomial m;
    m.powers_ = std::move(out);
    return m;
  }

  std::string to_string() const {
    if (powers_.empty()) return "1";
    std::string s;
    for (const auto& [v, e] : powers_) {
      if (!s.empty()) s += '*';
      s += "x" + std::to_string(v);
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Power> powers_;
};

/// Serialization order: descending grevlex of the support, then descending
/// total degree, then descending exponent vector.
inline bool serialization_before(const Monomial& a, const Monomial& b) {
  const auto c = grevlex_compare_masks(a.support(), b.support());
  if (c != 0) return c > 0;
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return b < a;
}

// -- sparse polynomials -------------------------------------------------------

class SparsePolynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit SparsePolynomial(int n = 0) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative ambient size");
  }

  static SparsePolynomial constant(int n, const Rational& c) {
    SparsePolynomial p(n);
    p.add_term(Monomial(), c);
    return p;
  }

  static SparsePolynomial variable(int n, int v) {
    SparsePolynomial p(n);
    p.add_term(Monomial::var(v), Rational(1));
    return p;
  }

  int ambient() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant(const Rational& c) const {
    if (c == 0) return terms_.empty();
    return terms_.size() == 1 && terms_.begin()->first.is_constant() && terms_.begin()->second == c;
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Adds c*m, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rational& c) {
    if (m.max_var() > n_) throw AmbientMismatch("monomial " + m.to_string() + " uses a variable beyond n = " + std::to_string(n_));
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int degree() const noexcept {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
  }

  SparsePolynomial& operator+=(const SparsePolynomial& q) {
    require_same(q);
    for (const auto& [m, c] : q.terms_) add_term(m, c);
    return *this;
  }

  SparsePolynomial& operator-=(const SparsePolynomial& q) {
    require_same(q);
    for (const auto& [m, c] : q.terms_) add_term(m, -c);
    return *this;
  }

  friend SparsePolynomial operator+(SparsePolynomial p, const SparsePolynomial& q) { return p += q; }
  friend SparsePolynomial operator-(SparsePolynomial p, const SparsePolynomial& q) { return p -= q; }

  friend SparsePolynomial operator-(const SparsePolynomial& p) {
    SparsePolynomial r(p.n_);
    for (const auto& [m, c] : p.terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend SparsePolynomial operator*(const SparsePolynomial& p, const SparsePolynomial& q) {
    p.require_same(q);
    SparsePolynomial r(p.n_);
    for (const auto& [mp, cp] : p.terms_)
      for (const auto& [mq, cq] : q.terms_) r.add_term(mp * mq, cp * cq);
    return r;
  }

  friend SparsePolynomial operator*(const Rational& s, const SparsePolynomial& p) {
    SparsePolynomial r(p.n_);
    if (s == 0) return r;
    for (const auto& [m, c] : p.terms_) r.terms_.emplace(m, s * c);
    return r;
  }

  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Terms in serialization order.
  std::vector<std::pair<Monomial, Rational>> sorted_terms() const {
    std::vector<std::pair<Monomial, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return serialization_before(a.first, b.first); });
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : sorted_terms()) {
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      if (s.empty())
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      if (m.is_constant())
        s += format_rational(mag);
      else if (mag == 1)
        s += m.to_string();
      else
        s += format_rational(mag) + "*" + m.to_string();
    }
    return s;
  }

 private:
  void require_same(const SparsePolynomial& q) const {
    if (n_ != q.n_)
      throw AmbientMismatch("polynomials over " + std::to_string(n_) + " and " + std::to_string(q.n_) + " variables");
  }

  int n_;
  Terms terms_;
};

/// Value at a point; point[v-1] is substituted for x_v.
inline Rational evaluate(const SparsePolynomial& p, const std::vector<Rational>& point) {
  if (point.size() < static_cast<std::size_t>(p.ambient())) throw AmbientMismatch("evaluation point too short");
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (const auto& [v, e] : m.powers())
      for (int r = 0; r < e; ++r) t *= point[v - 1];
    total += t;
  }
  return total;
}

inline SparsePolynomial poly_add(const SparsePolynomial& p, const SparsePolynomial& q) { return p + q; }
inline SparsePolynomial poly_mul(const SparsePolynomial& p, const SparsePolynomial& q) { return p * q; }

/// JSON list of {"coeff": "p/q", "monomial": [[var, exp], ...]}.
inline nlohmann::json polynomial_to_json(const SparsePolynomial& p) {
  auto out = nlohmann::json::array();
  for (const auto& [m, c] : p.sorted_terms()) {
    auto powers = nlohmann::json::array();
    for (const auto& [v, e] : m.powers()) powers.push_back({v, e});
    out.push_back({{"coeff", format_rational(c)}, {"monomial", powers}});
  }
  return out;
}

inline SparsePolynomial polynomial_from_json(const nlohmann::json& j, int n) {
  if (!j.is_array()) throw ParseError("polynomial must be a JSON array");
  SparsePolynomial p(n);
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("coeff") || !term.contains("monomial"))
      throw ParseError("polynomial term needs 'coeff' and 'monomial'");
    if (!term["coeff"].is_string()) throw ParseError("coefficient must be a string \"p/q\"");
    const auto& mono = term["monomial"];
    if (!mono.is_array()) throw ParseError("monomial must be an array of [var, exp]");
    std::vector<Monomial::Power> powers;
    for (const auto& pw : mono) {
      if (!pw.is_array() || pw.size() != 2 || !pw[0].is_number_integer() || !pw[1].is_number_integer())
        throw ParseError("monomial entry must be [var, exp]");
      const int v = pw[0].get<int>();
      const int e = pw[1].get<int>();
      if (v < 1 || v > n || e < 1) throw ParseError("monomial entry out of range");
      powers.emplace_back(v, e);
    }
    const Monomial m(std::move(powers));
    if (p.terms().count(m)) throw ParseError("duplicate monomial " + m.to_string());
    p.add_term(m, parse_rational(term["coeff"].get<std::string>()));
  }
  return p;
}

// -- partition polynomial -----------------------------------------------------

struct PartitionFactor {
  /// Indices i < n carrying sign -1; w_n is always +1.
  Subset negated;
  Integer value;
};

struct PartitionPolynomial {
  std::vector<PartitionFactor> factors;
  Integer product;
};

inline std::string format_factor(const WeightSet& w, const PartitionFactor& f) {
  std::string s = "(";
  for (int i = 1; i <= w.n(); ++i) {
    const Integer& wi = w.w(i);
    const bool neg = f.negated.contains(i);
    if (i == 1) {
      s += neg ? "-" : "";
    } else {
      s += neg ? "-" : "+";
    }
    s += wi < 0 ? "(" + wi.get_str() + ")" : wi.get_str();
  }
  return s + ")";
}

inline constexpr int kDefaultPolynomialMaxN = 24;

/// Product over all sign vectors s in {-1,1}^{n-1} of (sum_{i<n} s_i w_i) + w_n.
/// Factors are listed by their negated index set: ascending size, then
/// descending grevlex within a size.
inline PartitionPolynomial partition_polynomial(const WeightSet& w, int max_n = kDefaultPolynomialMaxN) {
  const int n = w.n();
  if (n < 1 || n > max_n) throw LimitExceeded("n = " + std::to_string(n) + " outside 1.." + std::to_string(max_n));
  const Mask count = Mask{1} << (n - 1);
  std::vector<Mask> order(count);
  std::iota(order.begin(), order.end(), Mask{0});
  std::sort(order.begin(), order.end(), [](Mask a, Mask b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    if (ca != cb) return ca < cb;
    return grevlex_compare_masks(a, b) > 0;
  });

  PartitionPolynomial out;
  out.factors.reserve(count);
  out.product = 1;
  for (Mask neg : order) {
    Integer v = w.w(n);
    for (int i = 1; i < n; ++i) {
      if ((neg >> (i - 1)) & 1U)
        v -= w.w(i);
      else
        v += w.w(i);
    }
    out.product *= v;
    out.factors.push_back({Subset(n, neg), std::move(v)});
  }
  return out;
}

}  // namespace nullpart
