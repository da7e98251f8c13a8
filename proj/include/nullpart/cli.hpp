#pragma once

// Command-line front end: check, matrix, det, certificate, verify.
//
// Exit codes: 0/1 semantic result, 2 internal disagreement, 64 usage or
// parse error, 65 size limit exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nullpart/nullpart.hpp"

namespace nullpart::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kDisagreement = 2,
  kUsage = 64,
  kLimits = 65,
};

enum class Format { kText, kJson, kCsv };

struct RunConfig {
  WeightSet weights;
  int max_n = kDefaultMatrixMaxN;
  Format format = Format::kText;
  std::optional<std::string> output_path;
};

/// One integer per line; '#' starts a comment; blank lines are skipped.
inline std::vector<std::string> read_weight_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read weight file '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

inline WeightSet parse_weights(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw ParseError("no weights given");
  std::vector<Integer> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(parse_integer(t));
  return WeightSet(std::move(out));
}

/// --max-n, else NULLPART_MAX_N, else the default.
inline int resolve_max_n(std::optional<int> flag) {
  int value = kDefaultMatrixMaxN;
  if (flag) {
    value = *flag;
  } else if (const char* env = std::getenv("NULLPART_MAX_N"); env && *env) {
    try {
      std::size_t used = 0;
      value = std::stoi(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw ParseError(std::string("NULLPART_MAX_N is not an integer: '") + env + "'");
    }
  }
  if (value < 1) throw ParseError("max-n must be at least 1");
  return value;
}

inline void require_n_within(const RunConfig& cfg) {
  if (cfg.weights.n() > cfg.max_n)
    throw LimitExceeded("n = " + std::to_string(cfg.weights.n()) + " exceeds max-n = " + std::to_string(cfg.max_n));
}

/// Writes to the configured file, or to `out` when none is set.
inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (!cfg.output_path) {
    out << text;
    return;
  }
  std::ofstream f(*cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!f) throw ParseError("cannot write '" + *cfg.output_path + "'");
  f << text;
}

// -- commands --------------------------------------------------------------------

inline int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_n_within(cfg);
  const auto witness = brute_force_partition(cfg.weights);
  const PartitionMatrix pm = build_partition_matrix(cfg.weights, cfg.max_n);
  const Integer det = bareiss_determinant(pm.body, pm.dim());
  const bool by_oracle = witness.has_value();
  const bool by_det = (det == 0);
  const bool agree = by_oracle == by_det;

  if (cfg.format == Format::kJson) {
    nlohmann::json j{{"n", cfg.weights.n()},
                     {"weights", weights_to_json(cfg.weights)},
                     {"partitionable", by_oracle},
                     {"det", det.get_str()},
                     {"determinant_says_partitionable", by_det},
                     {"agree", agree}};
    j["witness"] = witness ? nlohmann::json{{"side", witness->side.to_string()}, {"complement", witness->complement().to_string()}}
                           : nlohmann::json(nullptr);
    emit(cfg, out, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "oracle: " << (witness ? "partition " + witness->to_string() : std::string("no partition")) << '\n';
    os << "determinant: " << det.get_str() << '\n';
    if (!agree)
      os << "DISAGREEMENT between oracle and determinant\n";
    else if (by_oracle)
      os << "partitionable: " << witness->to_string() << '\n';
    else
      os << "non-partitionable; det = " << det.get_str() << '\n';
    emit(cfg, out, os.str());
  }
  if (!agree) {
    err << "internal disagreement: oracle and determinant criterion differ\n";
    return kDisagreement;
  }
  return by_oracle ? kOk : kNegative;
}

inline int cmd_matrix(const RunConfig& cfg, bool verify_properties, std::ostream& out, std::ostream& err) {
  require_n_within(cfg);
  const PartitionMatrix pm = build_partition_matrix(cfg.weights, cfg.max_n);
  std::optional<PropertyReport> report;
  if (verify_properties) report = check_properties(pm);

  if (cfg.format == Format::kJson) {
    nlohmann::json j = to_json(pm);
    if (report) j["properties"] = to_json(*report);
    emit(cfg, out, j.dump(2) + "\n");
  } else if (cfg.format == Format::kCsv) {
    emit(cfg, out, render_csv(pm.body));
  } else {
    std::string text = render_text(pm);
    if (report) {
      text += "\nproperties:\n";
      for (const auto& r : report->results)
        text += std::string(r.passed ? "  PASS " : "  FAIL ") + r.name + (r.detail.empty() ? "" : " (" + r.detail + ")") + "\n";
    }
    emit(cfg, out, text);
  }
  if (report && !report->all_passed()) {
    err << "structural property check failed\n";
    return kDisagreement;
  }
  return kOk;
}

inline int cmd_det(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_n_within(cfg);
  const PartitionMatrix pm = build_partition_matrix(cfg.weights, cfg.max_n);
  const Integer det = bareiss_determinant(pm.body, pm.dim());
  const PartitionPolynomial poly = partition_polynomial(cfg.weights, cfg.max_n);
  const bool match = det == poly.product;

  if (cfg.format == Format::kJson) {
    auto factors = nlohmann::json::array();
    for (const auto& f : poly.factors)
      factors.push_back({{"factor", format_factor(cfg.weights, f)}, {"value", f.value.get_str()}});
    nlohmann::json j{{"n", cfg.weights.n()},
                     {"weights", weights_to_json(cfg.weights)},
                     {"bareiss", det.get_str()},
                     {"partition_polynomial", poly.product.get_str()},
                     {"factors", factors},
                     {"match", match}};
    emit(cfg, out, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "bareiss determinant:  " << det.get_str() << '\n';
    os << "partition polynomial: " << poly.product.get_str() << '\n';
    os << "factors (" << poly.factors.size() << "):\n";
    for (const auto& f : poly.factors) os << "  " << format_factor(cfg.weights, f) << " = " << f.value.get_str() << '\n';
    os << (match ? "MATCH" : "MISMATCH") << '\n';
    emit(cfg, out, os.str());
  }
  if (!match) {
    err << "determinant and partition polynomial differ\n";
    return kDisagreement;
  }
  return kOk;
}

inline int cmd_certificate(const RunConfig& cfg, SolveMethod method, std::ostream& out, std::ostream& err) {
  require_n_within(cfg);
  auto outcome = build_certificate(cfg.weights, CertificateOptions{cfg.max_n, method});
  if (auto* none = std::get_if<NoCertificate>(&outcome)) {
    out << "partitionable: " << none->witness.to_string() << "; no certificate exists\n";
    return kNegative;
  }
  const auto& cert = std::get<Certificate>(outcome);
  const auto check = verify_certificate(cert, encode(cfg.weights));
  if (!check.passed) {
    err << "generated certificate failed verification; residual: " << check.residual.to_string() << '\n';
    return kDisagreement;
  }
  if (const auto zeros = zero_b_labels(cert); !zeros.empty()) {
    err << "note: " << zeros.size() << " odd-subset coefficient(s) b_S are zero:";
    for (const auto& s : zeros) err << ' ' << s.to_string();
    err << '\n';
  }
  emit(cfg, out, serialize_certificate(cert));
  if (cfg.output_path) out << "verified certificate written to " << *cfg.output_path << '\n';
  return kOk;
}

inline int cmd_verify(const std::string& path, Format format, std::ostream& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const Certificate cert = parse_certificate(buf.str());
  const auto result = verify_certificate(cert, encode(cert.weights));
  if (format == Format::kJson) {
    nlohmann::json j{{"passed", result.passed}, {"residual", polynomial_to_json(result.residual)}};
    out << j.dump(2) << '\n';
  } else if (result.passed) {
    out << "PASS: certificate expands to 1\n";
  } else {
    out << "FAIL: residual " << result.residual.to_string() << '\n';
  }
  return result.passed ? kOk : kNegative;
}

// -- dispatch ----------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partition refutations: partition matrix, determinants, Nullstellensatz certificates", "nullpart"};
  app.require_subcommand(1);

  struct Common {
    std::vector<std::string> weights;
    std::string file;
    std::optional<int> max_n;
    std::string format = "text";
    std::string output;
  };
  Common common;
  auto add_common = [&](CLI::App* sub, bool csv) {
    sub->add_option("weights", common.weights, "Integer weights w_1 .. w_n");
    sub->add_option("--file", common.file, "Read weights from a file, one per line ('#' comments)");
    sub->add_option("--max-n", common.max_n, "Largest accepted n (default 14, or NULLPART_MAX_N)");
    std::vector<std::string> formats{"text", "json"};
    if (csv) formats.push_back("csv");
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("-o,--output", common.output, "Write output to this file");
  };

  auto* check = app.add_subcommand("check", "Decide partitionability by brute force and by the determinant");
  add_common(check, false);
  auto* matrix = app.add_subcommand("matrix", "Print the partition matrix");
  add_common(matrix, true);
  bool verify_properties = false;
  matrix->add_flag("--verify-properties", verify_properties, "Append the structural property report");
  auto* det = app.add_subcommand("det", "Compare the Bareiss determinant with the partition polynomial");
  add_common(det, false);
  auto* certificate = app.add_subcommand("certificate", "Build and verify a Nullstellensatz certificate");
  add_common(certificate, false);
  std::string method = "solve";
  certificate->add_option("--method", method, "How to solve for b")->check(CLI::IsMember({"solve", "cramer"}));
  auto* verify = app.add_subcommand("verify", "Verify a certificate file");
  std::string verify_path;
  std::string verify_format = "text";
  verify->add_option("path", verify_path, "Certificate JSON file")->required();
  verify->add_option("--format", verify_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  auto to_format = [](const std::string& f) {
    return f == "json" ? Format::kJson : f == "csv" ? Format::kCsv : Format::kText;
  };

  try {
    if (verify->parsed()) return cmd_verify(verify_path, to_format(verify_format), out);

    RunConfig cfg;
    std::vector<std::string> tokens = common.weights;
    if (!common.file.empty()) {
      if (!tokens.empty()) throw ParseError("give weights either as arguments or with --file, not both");
      tokens = read_weight_file(common.file);
    }
    cfg.weights = parse_weights(tokens);
    cfg.max_n = resolve_max_n(common.max_n);
    cfg.format = to_format(common.format);
    if (!common.output.empty()) cfg.output_path = common.output;

    if (check->parsed()) return cmd_check(cfg, out, err);
    if (matrix->parsed()) return cmd_matrix(cfg, verify_properties, out, err);
    if (det->parsed()) return cmd_det(cfg, out, err);
    return cmd_certificate(cfg, parse_solve_method(method), out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kLimits;
  } catch (const ConsistencyError& e) {
    err << "internal error: " << e.what() << '\n';
    return kDisagreement;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kDisagreement;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"nullpart"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace nullpart::cli
