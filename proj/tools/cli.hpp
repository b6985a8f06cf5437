#pragma once

// Command-line front end: sample, bench, verify and tn subcommands.
// Exit codes: 0 ok, 1 usage, 2 data, 3 verification failure.

#include "CLI11.hpp"
#include "json.hpp"

#include "exsamp/algorithms.hpp"
#include "exsamp/ans.hpp"
#include "exsamp/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace exsamp::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kVerification = 3 };

/// Input files that cannot be read or do not describe a valid distribution.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt json_integer(const nlohmann::json& v, const std::string& what) {
  if (v.is_number_unsigned()) return BigInt(v.get<std::uint64_t>());
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return BigInt(s);
  }
  throw DataError(what + " must be an integer (or a string of digits)");
}

/// {"denominator": m, "numerators": [c_1, ..., c_n]}
inline RationalDistribution parse_distribution(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("denominator") || !j.contains("numerators") ||
      !j["numerators"].is_array())
    throw DataError("distribution must be an object with 'denominator' and 'numerators'");
  std::vector<BigInt> numerators;
  for (const auto& v : j["numerators"]) numerators.push_back(json_integer(v, "numerator"));
  try {
    return RationalDistribution(std::move(numerators), json_integer(j["denominator"], "denominator"));
  } catch (const DistributionError& e) {
    throw DataError(e.what());
  }
}

inline RationalDistribution load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open distribution file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("'" + path + "': " + e.what());
  }
  return parse_distribution(j);
}

inline TapeSource load_tape(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open tape file '" + path + "'");
  try {
    return TapeSource::read(in);
  } catch (const std::invalid_argument& e) {
    throw DataError("'" + path + "': " + e.what());
  }
}

inline std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline nlohmann::json report_json(Algorithm a, const RunResult& r) {
  nlohmann::json j;
  j["algorithm"] = algorithm_name(a);
  j["samples"] = r.report.samples;
  j["fresh_tosses"] = r.report.fresh_tosses;
  j["per_sample"] = r.report.per_sample;
  j["entropy"] = r.report.entropy;
  j["gap"] = r.report.gap;
  j["rejection_rate"] = r.report.rejection_rate;
  j["drains"] = r.report.drains;
  j["counts"] = r.counts;
  if (r.params) {
    j["params"] = {{"epsilon", to_string(r.params->epsilon)},
                   {"k", r.params->k},
                   {"j", r.params->j},
                   {"M", r.params->accept_limit.str()},
                   {"capacity", r.params->capacity}};
  }
  if (r.recycling) {
    j["max_buffer"] = r.recycling->max_buffer;
    j["max_product_bits"] = r.recycling->max_product_bits;
    j["recycled_bits_used"] = r.recycling->recycled_bits_used;
  }
  return j;
}

inline nlohmann::json verdict_json(const Verdict& v) {
  nlohmann::json j;
  j["algorithm"] = algorithm_name(v.algorithm);
  j["depth"] = v.depth;
  j["pass"] = v.pass();
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : v.checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return j;
}

/// One CSV row per N: N, T(N), log2 N - 3, log2 N - 2, T - (log2 N - 3), T - (log2 N - 2).
/// Returns false if the -3 lower bound fails anywhere.
inline bool write_yield_table(std::uint64_t max_n, std::ostream& out) {
  out << "N,T,log2N_minus_3,log2N_minus_2,margin_minus_3,margin_minus_2\n";
  YieldTable table;
  bool ok = true;
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    const double t = to_double(table(n));
    const double l = std::log2(static_cast<double>(n));
    if (n >= 2 && !(t > l - 3)) ok = false;
    out << n << ',' << fixed(t) << ',' << fixed(l - 3) << ',' << fixed(l - 2) << ','
        << fixed(t - (l - 3)) << ',' << fixed(t - (l - 2)) << '\n';
  }
  return ok;
}

inline const char* kBenchHeader =
    "dist,algo,samples,fresh_tosses,per_sample,entropy,gap,rejection_rate,drains\n";

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact discrete sampling from fair coin tosses"};
  app.require_subcommand(1);

  std::string algo_name = "mr", dist_path, eps_text = "1/10", emit_path, format = "json",
              dists_dir, bench_format = "csv", tape_path, algos_list = "ky,hh,rej,rej2,mr";
  std::uint64_t samples = 0, seed = 0, max_n = 0;
  std::size_t depth = 0;

  auto* sample = app.add_subcommand("sample", "Draw samples and print an entropy report");
  sample->add_option("--algo", algo_name, "ky|hh|rej|rej2|mr");
  sample->add_option("--dist", dist_path, "Distribution JSON file")->required();
  sample->add_option("--epsilon", eps_text, "Rational p/q in (0,1] (mr only)");
  sample->add_option("--samples", samples, "Number of samples")->required();
  sample->add_option("--seed", seed, "Seed of the fair-bit source");
  sample->add_option("--emit", emit_path, "Write outcomes to this file instead of stdout");
  sample->add_option("--format", format, "Outcome stream format: json|text");
  sample->add_option("--tape", tape_path, "Replay tosses from a file of '0'/'1' characters");

  auto* bench = app.add_subcommand("bench", "Entropy table over a directory of distributions");
  bench->add_option("--dists", dists_dir, "Directory of *.json distributions")->required();
  bench->add_option("--samples", samples, "Samples per (distribution, algorithm)")->required();
  bench->add_option("--seed", seed, "Seed");
  bench->add_option("--epsilon", eps_text, "Rational p/q for mr");
  bench->add_option("--algos", algos_list, "Comma-separated algorithms");
  bench->add_option("--format", bench_format, "csv");

  auto* verify = app.add_subcommand("verify", "Exact enumeration check of one sampler");
  verify->add_option("--algo", algo_name, "ky|hh|rej|rej2|mr");
  verify->add_option("--dist", dist_path, "Distribution JSON file")->required();
  verify->add_option("--epsilon", eps_text, "Rational p/q in (0,1]");
  verify->add_option("--depth", depth, "Toss budget (<= 22)")->required();

  auto* tn = app.add_subcommand("tn", "Expected drain yield table as CSV");
  tn->add_option("--max", max_n, "Largest N")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Rational epsilon;
    std::vector<Algorithm> algos;
    try {
      epsilon = parse_epsilon(eps_text);
      auto parse_one = [&](const std::string& name) {
        const auto a = parse_algorithm(name);
        if (!a) throw std::invalid_argument("unknown algorithm '" + name + "'");
        algos.push_back(*a);
      };
      if (*bench) {
        std::size_t start = 0;
        while (start <= algos_list.size()) {
          const std::size_t comma = std::min(algos_list.find(',', start), algos_list.size());
          parse_one(algos_list.substr(start, comma - start));
          start = comma + 1;
        }
        if (bench_format != "csv") throw std::invalid_argument("bench only writes csv");
      } else if (*sample || *verify) {
        parse_one(algo_name);
      }
      if (*sample && samples < 1) throw std::invalid_argument("--samples must be at least 1");
      if (*bench && samples < 1) throw std::invalid_argument("--samples must be at least 1");
      if (*sample && format != "json" && format != "text")
        throw std::invalid_argument("--format must be json or text");
      if (*verify && depth > kMaxEnumerationDepth)
        throw std::invalid_argument("--depth is limited to 22");
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    }

    if (*tn) {
      const bool ok = write_yield_table(max_n, out);
      if (!ok) err << "error: expected yield fell to log2(N) - 3 or below\n";
      return ok ? kOk : kVerification;
    }

    if (*sample) {
      const RationalDistribution d = load_distribution(dist_path);
      std::ofstream file;
      if (!emit_path.empty()) {
        file.open(emit_path);
        if (!file) throw DataError("cannot write '" + emit_path + "'");
      }
      std::ostream& stream = emit_path.empty() ? out : file;
      RunOptions opt{algos.front(), epsilon, seed, samples};
      auto write = [&](Outcome i) { stream << i << '\n'; };
      RunResult r;
      if (tape_path.empty()) {
        r = run_sampler(d, opt, write);
      } else {
        TapeSource tape = load_tape(tape_path);
        r = run_on_source(d, opt, tape, write);
      }
      nlohmann::json report = report_json(opt.algorithm, r);
      if (!tape_path.empty()) report["tape_exhausted"] = r.tape_exhausted;
      if (format == "json")
        out << report.dump() << '\n';
      else
        out << "# fresh/sample " << fixed(r.report.per_sample) << " entropy "
            << fixed(r.report.entropy) << " gap " << fixed(r.report.gap) << '\n';
      return kOk;
    }

    if (*verify) {
      const RationalDistribution d = load_distribution(dist_path);
      const Verdict v = verify_algorithm(algos.front(), d, epsilon, depth);
      out << verdict_json(v).dump() << '\n';
      return v.pass() ? kOk : kVerification;
    }

    if (*bench) {
      namespace fs = std::filesystem;
      if (!fs::is_directory(dists_dir)) throw DataError("'" + dists_dir + "' is not a directory");
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(dists_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
          files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      out << kBenchHeader;
      for (const fs::path& f : files) {
        const RationalDistribution d = load_distribution(f.string());
        for (Algorithm a : algos) {
          const RunResult r = measure_entropy(d, RunOptions{a, epsilon, seed, samples});
          out << f.stem().string() << ',' << algorithm_name(a) << ',' << r.report.samples << ','
              << r.report.fresh_tosses << ',' << fixed(r.report.per_sample) << ','
              << fixed(r.report.entropy) << ',' << fixed(r.report.gap) << ','
              << fixed(r.report.rejection_rate) << ',' << r.report.drains << '\n';
        }
      }
      return kOk;
    }
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const SamplerDefect& e) {
    err << "defect: " << e.what() << '\n';
    return kVerification;
  }
  return kUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"exsamp"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace exsamp::cli
