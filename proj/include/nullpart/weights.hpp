#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "nullpart/errors.hpp"

namespace nullpart {

using Integer = mpz_class;

/// Parses a base-10 integer with optional sign; rejects anything else.
inline Integer parse_integer(const std::string& text) {
  std::size_t i = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (i == text.size()) throw ParseError("not an integer: '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    if (text[j] < '0' || text[j] > '9') throw ParseError("not an integer: '" + text + "'");
  return Integer(text[0] == '+' ? text.substr(1) : text, 10);
}

/// Ordered multiset w_1..w_n. Duplicates, zeros and negatives are allowed.
class WeightSet {
 public:
  WeightSet() = default;
  explicit WeightSet(std::vector<Integer> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("weight set must be nonempty");
  }
  WeightSet(std::initializer_list<long> weights) {
    for (long w : weights) weights_.emplace_back(w);
    if (weights_.empty()) throw std::invalid_argument("weight set must be nonempty");
  }

  int n() const noexcept { return static_cast<int>(weights_.size()); }

  /// 1-based, matching w_1..w_n.
  const Integer& w(int k) const { return weights_.at(static_cast<std::size_t>(k - 1)); }

  const std::vector<Integer>& values() const noexcept { return weights_; }

  std::string to_string() const {
    std::string s;
    for (const auto& w : weights_) s += (s.empty() ? "" : " ") + w.get_str();
    return s;
  }

  friend bool operator==(const WeightSet& a, const WeightSet& b) { return a.weights_ == b.weights_; }

 private:
  std::vector<Integer> weights_;
};

/// Weights as JSON integers; values outside int64 are written as decimal strings.
inline nlohmann::json weights_to_json(const WeightSet& w) {
  auto out = nlohmann::json::array();
  for (const auto& v : w.values()) {
    if (v.fits_slong_p())
      out.push_back(v.get_si());
    else
      out.push_back(v.get_str());
  }
  return out;
}

inline WeightSet weights_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("weights must be a nonempty array");
  std::vector<Integer> out;
  for (const auto& v : j) {
    if (v.is_number_integer())
      out.push_back(parse_integer(v.dump()));
    else if (v.is_string())
      out.push_back(parse_integer(v.get<std::string>()));
    else
      throw ParseError("weight must be an integer");
  }
  return WeightSet(std::move(out));
}

}  // namespace nullpart
