// Copyright 2026 The Unlearn-Verify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// unlearn-verify: command-line front end.
//
// Exit codes: 0 success (including degenerate-strategy warnings),
// 2 flag or validation errors, 3 input file not found, 4 input file
// violates its schema (message carries a JSON-pointer-style path).
// stdout carries data only; diagnostics go to stderr. Seeds are always
// explicit flags or config fields; no environment variables are read.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "unlearn/capacity.hpp"
#include "unlearn/estimation.hpp"
#include "unlearn/hypothesis.hpp"
#include "unlearn/multiuser.hpp"
#include "unlearn/rng.hpp"
#include "unlearn/simulator.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "1.0.0";

// File present but its contents break the documented schema -> exit 4.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Missing input file -> exit 3.
struct FileNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { kJson, kCsv, kTable };

Format parse_format(const std::string& s) {
  if (s == "json") return Format::kJson;
  if (s == "csv") return Format::kCsv;
  if (s == "table") return Format::kTable;
  throw std::invalid_argument("--format must be json, csv, or table");
}

// Rates parse as decimals ("0.25") or exact fractions ("3/12"); the
// fraction form preserves integer counts for the Bayesian command.
struct Rate {
  double value;
  std::optional<std::pair<int, int>> fraction;  // (count, n_obs)
};

Rate parse_rate(const std::string& s, const char* flag) {
  const auto bad = [&](const std::string& why) {
    return std::invalid_argument(std::string(flag) + ": " + why);
  };
  Rate r;
  const size_t slash = s.find('/');
  if (slash != std::string::npos) {
    int k = 0, n = 0;
    size_t pos = 0;
    try {
      k = std::stoi(s.substr(0, slash), &pos);
      if (pos != slash) throw std::invalid_argument("");
      n = std::stoi(s.substr(slash + 1), &pos);
      if (pos != s.size() - slash - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw bad("fractions must look like k/n");
    }
    if (n < 1) throw bad("fraction denominator must be >= 1");
    if (k < 0 || k > n) throw bad("fraction count must be in [0, n]");
    r.value = static_cast<double>(k) / n;
    r.fraction = {k, n};
    return r;
  }
  size_t pos = 0;
  try {
    r.value = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw bad("not a number");
  }
  if (pos != s.size()) throw bad("trailing characters");
  if (!(r.value >= 0.0 && r.value <= 1.0)) throw bad("must be in [0, 1]");
  return r;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::string scalar_to_string(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt("%.17g", v.get<double>());
  return v.dump();
}

// results layout convention: scalar (or one-level nested) entries are
// summary values; an optional "rows" array holds the tabular payload.
void flatten(const ordered_json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>* out) {
  for (const auto& [key, value] : j.items()) {
    if (key == "rows") continue;
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, out);
    } else if (!value.is_array()) {
      out->emplace_back(name, scalar_to_string(value));
    }
  }
}

void print_csv(const ordered_json& env) {
  const ordered_json& results = env.at("results");
  if (results.contains("rows")) {
    const auto& rows = results.at("rows");
    if (rows.empty()) return;
    std::string header;
    for (const auto& [key, value] : rows.front().items()) {
      (void)value;
      if (!header.empty()) header += ",";
      header += key;
    }
    std::cout << header << "\n";
    for (const auto& row : rows) {
      std::string line;
      for (const auto& [key, value] : row.items()) {
        (void)key;
        if (!line.empty()) line += ",";
        line += scalar_to_string(value);
      }
      std::cout << line << "\n";
    }
    return;
  }
  std::vector<std::pair<std::string, std::string>> cells;
  flatten(results, "", &cells);
  std::string header, line;
  for (const auto& [k, v] : cells) {
    if (!header.empty()) {
      header += ",";
      line += ",";
    }
    header += k;
    line += v;
  }
  std::cout << header << "\n" << line << "\n";
}

void print_table(const ordered_json& env) {
  std::vector<std::pair<std::string, std::string>> cells;
  flatten(env.at("results"), "", &cells);
  size_t width = 0;
  for (const auto& [k, v] : cells) width = std::max(width, k.size());
  for (const auto& [k, v] : cells)
    std::cout << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  const ordered_json& results = env.at("results");
  if (results.contains("rows") && !results.at("rows").empty()) {
    const auto& rows = results.at("rows");
    std::cout << "\n";
    std::vector<std::string> keys;
    std::vector<size_t> widths;
    for (const auto& [key, value] : rows.front().items()) {
      (void)value;
      keys.push_back(key);
      widths.push_back(key.size());
    }
    std::vector<std::vector<std::string>> grid;
    for (const auto& row : rows) {
      std::vector<std::string> cols;
      size_t i = 0;
      for (const auto& [key, value] : row.items()) {
        (void)key;
        cols.push_back(scalar_to_string(value));
        widths[i] = std::max(widths[i], cols.back().size());
        ++i;
      }
      grid.push_back(std::move(cols));
    }
    for (size_t i = 0; i < keys.size(); ++i)
      std::cout << keys[i]
                << std::string(widths[i] - keys[i].size() + (i + 1 < keys.size() ? 2 : 0), ' ');
    std::cout << "\n";
    for (const auto& cols : grid) {
      for (size_t i = 0; i < cols.size(); ++i)
        std::cout << cols[i]
                  << std::string(widths[i] - cols[i].size() + (i + 1 < cols.size() ? 2 : 0), ' ');
      std::cout << "\n";
    }
  }
}

void emit(const char* command, ordered_json params, ordered_json results,
          std::optional<std::uint64_t> seed, Format format) {
  ordered_json env;
  env["tool_version"] = kToolVersion;
  env["command"] = command;
  env["parameters"] = std::move(params);
  if (seed.has_value()) env["seed"] = *seed;
  env["prng_algorithm"] = unlearn::kPrngAlgorithm;
  env["results"] = std::move(results);
  switch (format) {
    case Format::kJson:
      std::cout << env.dump(2) << "\n";
      break;
    case Format::kCsv:
      print_csv(env);
      break;
    case Format::kTable:
      print_table(env);
      break;
  }
}

ordered_json test_result_json(const unlearn::TestResult& r) {
  ordered_json j;
  j["threshold_k"] = r.threshold_k;
  j["threshold_t"] = r.threshold_t;
  j["achieved_alpha"] = r.achieved_alpha;
  j["log_beta"] = r.log_beta;  // null in JSON when beta is exactly 0
  j["beta"] = r.beta;
  j["beta_2sig"] = fmt("%.1e", r.beta);
  j["rho"] = r.rho;
  j["degenerate_strategy"] = r.degenerate_strategy;
  j["vacuous_plan"] = r.vacuous_plan;
  return j;
}

void require_file(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw FileNotFound("no such file: " + path);
}

// ---------------------------------------------------------------- confidence

struct ConfidenceOpts {
  std::string p, q;
  int n = 30;
  double alpha = 1e-3;
  std::string format = "json";
};

void run_confidence(const ConfidenceOpts& o) {
  const Format format = parse_format(o.format);
  const Rate p = parse_rate(o.p, "--p");
  const Rate q = parse_rate(o.q, "--q");
  const unlearn::TestPlan plan(o.n, o.alpha);
  const unlearn::Strategy strat(q.value, p.value);
  const unlearn::TestResult res = unlearn::deletion_confidence(plan, strat);

  ordered_json params{{"p", p.value}, {"q", q.value}, {"n", o.n},
                      {"alpha", o.alpha}};
  ordered_json results = test_result_json(res);
  if (res.degenerate_strategy) {
    results["warning"] =
        "degenerate strategy: p <= q, the test cannot distinguish deletion";
    std::cerr << "warning: degenerate strategy (p <= q)\n";
  }
  emit("confidence", std::move(params), std::move(results), std::nullopt,
       format);
}

// --------------------------------------------------------------------- sweep

struct SweepOpts {
  std::string p, q;
  double alpha = 1e-3;
  int n_max = 50;
  std::string poison_table;
  std::string format = "json";
};

struct PoisonRow {
  double f_data, p, q;
};

std::vector<PoisonRow> load_poison_table(const std::string& path) {
  require_file(path);
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open: " + path);
  std::string line;
  size_t line_no = 0;
  const auto fail = [&](const std::string& why) {
    return SchemaError(path + " line " + std::to_string(line_no) + ": " + why);
  };
  if (!std::getline(in, line)) throw SchemaError(path + ": missing header");
  ++line_no;
  while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
    line.pop_back();
  if (line != "f_data,p,q") throw fail("header must be f_data,p,q");
  std::vector<PoisonRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') ||
        !std::getline(ss, c))
      throw fail("expected three comma-separated values");
    PoisonRow row;
    try {
      row.f_data = std::stod(a);
      row.p = std::stod(b);
      row.q = std::stod(c);
    } catch (const std::exception&) {
      throw fail("values must be numbers");
    }
    if (!(row.f_data >= 0.0 && row.f_data <= 100.0))
      throw fail("f_data outside [0, 100]");
    if (!(row.p >= 0.0 && row.p <= 1.0) || !(row.q >= 0.0 && row.q <= 1.0))
      throw fail("p and q must be in [0, 1]");
    rows.push_back(row);
  }
  if (rows.empty()) throw SchemaError(path + ": table must be non-empty");
  return rows;
}

void append_sweep_rows(ordered_json* rows, std::optional<double> f_data,
                       double p, double q, double alpha, int n_max) {
  for (int n = 1; n <= n_max; ++n) {
    const unlearn::TestResult r = unlearn::deletion_confidence(
        unlearn::TestPlan(n, alpha), unlearn::Strategy(q, p));
    ordered_json row;
    if (f_data.has_value()) {
      row["f_data"] = *f_data;
      row["p"] = p;
      row["q"] = q;
    }
    row["n"] = n;
    row["threshold_k"] = r.threshold_k;
    row["log_beta"] = r.log_beta;
    row["beta"] = r.beta;
    row["rho"] = r.rho;
    rows->push_back(std::move(row));
  }
}

void run_sweep(const SweepOpts& o) {
  const Format format = parse_format(o.format);
  if (o.n_max < 1) throw std::invalid_argument("--n-max must be >= 1");
  ordered_json params{{"alpha", o.alpha}, {"n_max", o.n_max}};
  ordered_json rows = ordered_json::array();
  if (!o.poison_table.empty()) {
    if (!o.p.empty() || !o.q.empty())
      throw std::invalid_argument("--poison-table replaces --p/--q");
    params["poison_table"] = o.poison_table;
    for (const PoisonRow& row : load_poison_table(o.poison_table))
      append_sweep_rows(&rows, row.f_data, row.p, row.q, o.alpha, o.n_max);
  } else {
    if (o.p.empty() || o.q.empty())
      throw std::invalid_argument("need --p and --q (or --poison-table)");
    const Rate p = parse_rate(o.p, "--p");
    const Rate q = parse_rate(o.q, "--q");
    params["p"] = p.value;
    params["q"] = q.value;
    append_sweep_rows(&rows, std::nullopt, p.value, q.value, o.alpha,
                      o.n_max);
  }
  ordered_json results;
  results["rows"] = std::move(rows);
  emit("sweep", std::move(params), std::move(results), std::nullopt, format);
}

// ------------------------------------------------------------------- samples

struct SamplesOpts {
  std::string p, q;
  double alpha = 1e-3;
  double rho_target = 0.99;
  int n_max = 10000;
  std::string format = "json";
};

void run_samples(const SamplesOpts& o) {
  const Format format = parse_format(o.format);
  const Rate p = parse_rate(o.p, "--p");
  const Rate q = parse_rate(o.q, "--q");
  const unlearn::Strategy strat(q.value, p.value);
  const std::optional<int> n =
      unlearn::samples_needed(strat, o.alpha, o.rho_target, o.n_max);

  ordered_json params{{"p", p.value},
                      {"q", q.value},
                      {"alpha", o.alpha},
                      {"rho_target", o.rho_target},
                      {"n_max", o.n_max}};
  ordered_json results;
  results["found"] = n.has_value();
  results["n_required"] = n.has_value() ? ordered_json(*n) : ordered_json();
  if (n.has_value()) {
    const unlearn::TestResult r =
        unlearn::deletion_confidence(unlearn::TestPlan(*n, o.alpha), strat);
    results["threshold_k"] = r.threshold_k;
    results["log_beta"] = r.log_beta;
    results["beta"] = r.beta;
    results["rho"] = r.rho;
  }
  emit("samples", std::move(params), std::move(results), std::nullopt,
       format);
}

// --------------------------------------------------------------------- bayes

struct BayesOpts {
  std::string p_hat, q_hat;
  int n = 30;
  double alpha = 1e-3;
  int grid = 1000;
  std::string format = "json";
};

unlearn::RateEstimate estimate_from_flag(const Rate& r, int plan_n,
                                         const char* flag,
                                         unlearn::RateSource source) {
  if (r.fraction.has_value())
    return unlearn::RateEstimate(r.fraction->first, r.fraction->second,
                                 source);
  // Decimal form: the count must still be a whole number of successes.
  const double k = r.value * plan_n;
  const double rounded = std::nearbyint(k);
  if (std::abs(k - rounded) > 1e-9)
    throw std::invalid_argument(std::string(flag) +
                                ": decimal rate times n is not an integer "
                                "count; use the k/n fraction form");
  return unlearn::RateEstimate(static_cast<int>(rounded), plan_n, source);
}

void run_bayes(const BayesOpts& o) {
  const Format format = parse_format(o.format);
  const Rate p = parse_rate(o.p_hat, "--p-hat");
  const Rate q = parse_rate(o.q_hat, "--q-hat");
  const unlearn::TestPlan plan(o.n, o.alpha);
  const unlearn::RateEstimate p_est = estimate_from_flag(
      p, o.n, "--p-hat", unlearn::RateSource::kPostTrainingQuery);
  const unlearn::RateEstimate q_est = estimate_from_flag(
      q, o.n, "--q-hat", unlearn::RateSource::kAlternatePatternQuery);

  const unlearn::PosteriorGrid prior = unlearn::PosteriorGrid::uniform(o.grid);
  const unlearn::PosteriorGrid q_post = unlearn::posterior(q_est, prior);
  const unlearn::PosteriorGrid p_post = unlearn::posterior(p_est, prior);
  const double expected = unlearn::expected_confidence(plan, q_post, p_post);
  const unlearn::TestResult point = unlearn::deletion_confidence(
      plan, unlearn::Strategy(q_est.r_hat(), p_est.r_hat()));

  ordered_json params{{"p_hat_count", p_est.count},
                      {"p_hat_n_obs", p_est.n_obs},
                      {"q_hat_count", q_est.count},
                      {"q_hat_n_obs", q_est.n_obs},
                      {"n", o.n},
                      {"alpha", o.alpha},
                      {"grid", o.grid},
                      {"prior", "uniform"}};
  ordered_json results;
  results["expected_rho"] = expected;
  results["point_rho"] = point.rho;
  results["grid_size"] = o.grid;
  emit("bayes", std::move(params), std::move(results), std::nullopt, format);
}

// ----------------------------------------------------------------- multiuser

struct MultiuserOpts {
  std::string population;
  std::vector<std::string> p_hats, q_hats;
  int c = 1;
  int n = 30;
  double alpha = 1e-3;
  double beta_bound = 1e-3;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  bool without_replacement = false;
  std::string format = "json";
};

void run_multiuser(const MultiuserOpts& o) {
  const Format format = parse_format(o.format);
  const bool fn_mode = !o.population.empty();
  const bool pooled_mode = !o.p_hats.empty() || !o.q_hats.empty();
  if (fn_mode == pooled_mode)
    throw std::invalid_argument(
        "choose one mode: --population (Monte Carlo) or --p-hats/--q-hats "
        "(pooled test)");

  if (pooled_mode) {
    if (o.p_hats.size() != o.q_hats.size() || o.p_hats.empty())
      throw std::invalid_argument(
          "--p-hats and --q-hats need the same nonzero length");
    std::vector<unlearn::UserReport> reports;
    for (size_t i = 0; i < o.p_hats.size(); ++i) {
      const Rate p = parse_rate(o.p_hats[i], "--p-hats");
      const Rate q = parse_rate(o.q_hats[i], "--q-hats");
      if (!p.fraction.has_value() || !q.fraction.has_value())
        throw std::invalid_argument(
            "pooled reports need exact k/n fractions to recover counts");
      reports.push_back(unlearn::UserReport{
          "u" + std::to_string(i),
          unlearn::RateEstimate(p.fraction->first, p.fraction->second,
                                unlearn::RateSource::kPostTrainingQuery),
          unlearn::RateEstimate(q.fraction->first, q.fraction->second,
                                unlearn::RateSource::kAlternatePatternQuery),
          unlearn::OutcomeVector{}});
    }
    const unlearn::PooledResult res =
        unlearn::pooled_test(reports, o.alpha, o.beta_bound);
    ordered_json params{{"p_hats", o.p_hats},
                        {"q_hats", o.q_hats},
                        {"alpha", o.alpha},
                        {"beta_bound", o.beta_bound}};
    ordered_json results;
    results["decision"] = res.decision == unlearn::Decision::kAcceptH0
                              ? "AcceptH0"
                              : "RejectH0";
    results["p_bar"] = res.p_bar;
    results["q_bar"] = res.q_bar;
    results["n_total"] = res.n_total;
    results["threshold_k"] = res.pooled.threshold_k;
    results["achieved_alpha"] = res.pooled.achieved_alpha;
    results["log_beta"] = res.pooled.log_beta;
    results["beta"] = res.pooled.beta;
    results["rho"] = res.pooled.rho;
    emit("multiuser", std::move(params), std::move(results), std::nullopt,
         format);
    return;
  }

  require_file(o.population);
  unlearn::Population pop;
  try {
    pop = unlearn::load_population_csv(o.population);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  const unlearn::FnEstimate est = unlearn::false_negative_probability(
      pop, o.c, o.n, o.alpha, o.beta_bound, o.trials, o.seed,
      !o.without_replacement);
  ordered_json params{{"population", o.population},
                      {"population_size", pop.entries.size()},
                      {"c", o.c},
                      {"n", o.n},
                      {"alpha", o.alpha},
                      {"beta_bound", o.beta_bound},
                      {"trials", o.trials},
                      {"with_replacement", !o.without_replacement}};
  ordered_json results;
  results["fn_probability"] = est.fn_probability;
  results["std_error"] = est.std_error;
  results["trials"] = est.trials;
  results["accepts"] = est.accepts;
  emit("multiuser", std::move(params), std::move(results), o.seed, format);
}

// ------------------------------------------------------------------ capacity

struct CapacityOpts {
  int n = 0, d = 0, w = 0;
  long long users = -1;
  double budget = -1.0;
  long long brute_cap = 5000;
  std::string format = "json";
};

const char* method_name(unlearn::CapacityMethod m) {
  switch (m) {
    case unlearn::CapacityMethod::kBruteForce:
      return "brute_force";
    case unlearn::CapacityMethod::kClosedForm:
      return "closed_form";
    case unlearn::CapacityMethod::kJohnsonBound:
      return "johnson_bound";
  }
  return "unknown";
}

void run_capacity(const CapacityOpts& o) {
  const Format format = parse_format(o.format);
  const unlearn::CodeParams params_cw(o.n, o.d, o.w);
  const unlearn::CapacityResult cap = unlearn::awd(params_cw, o.brute_cap);
  const unlearn::BackdoorCount count =
      unlearn::backdoor_count(params_cw, o.brute_cap);

  ordered_json params{{"n", o.n}, {"d", o.d}, {"w", o.w},
                      {"brute_cap", o.brute_cap}};
  ordered_json results;
  ordered_json awd_json;
  awd_json["method"] = method_name(cap.method);
  awd_json["exact"] =
      cap.exact.has_value() ? ordered_json(*cap.exact) : ordered_json();
  awd_json["lower_bound"] = cap.lower_bound;
  awd_json["upper_bound"] = cap.upper_bound;
  results["awd"] = std::move(awd_json);
  // The distance-sum pattern count; awd above is the conventional
  // single-distance capacity.
  ordered_json count_json;
  count_json["lower"] = count.lower;
  count_json["upper"] = count.upper;
  count_json["exact"] = count.exact;
  results["backdoor_count"] = std::move(count_json);

  if (o.users >= 0) {
    params["users"] = o.users;
    ordered_json coll;
    coll["num_users"] = o.users;
    // Collision risk brackets: a smaller pattern space collides more.
    coll["lower"] = unlearn::collision_probability(o.users, cap.upper_bound);
    coll["upper"] = unlearn::collision_probability(o.users, cap.lower_bound);
    results["collision_probability"] = std::move(coll);
  }
  if (o.budget >= 0.0) {
    params["budget"] = o.budget;
    ordered_json mu;
    mu["budget"] = o.budget;
    mu["lower"] = unlearn::max_users(cap.lower_bound, o.budget);
    mu["upper"] = unlearn::max_users(cap.upper_bound, o.budget);
    results["max_users"] = std::move(mu);
  }
  emit("capacity", std::move(params), std::move(results), std::nullopt,
       format);
}

// ------------------------------------------------------------------ simulate

struct SimulateOpts {
  std::string config;
  std::string policy = "honest";
  int n = 30;
  double alpha = 1e-3;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
};

// Manual mirror of data/simconfig-v1.schema.json; errors carry the
// JSON-pointer of the offending member.
unlearn::SimConfig parse_sim_config(const ordered_json& doc) {
  if (!doc.is_object()) throw SchemaError("config: root must be an object at /");
  unlearn::SimConfig cfg;
  const auto want_int = [&](const char* key, int min_v, int& out) {
    const auto& v = doc.at(key);
    if (!v.is_number_integer())
      throw SchemaError(std::string("config: expected integer at /") + key);
    const long long x = v.get<long long>();
    if (x < min_v || x > 1000000000LL)
      throw SchemaError(std::string("config: out of range at /") + key);
    out = static_cast<int>(x);
  };
  const auto want_number = [&](const char* key, double lo, double hi,
                               double& out) {
    const auto& v = doc.at(key);
    if (!v.is_number())
      throw SchemaError(std::string("config: expected number at /") + key);
    const double x = v.get<double>();
    if (!(x >= lo && x <= hi))
      throw SchemaError(std::string("config: out of range at /") + key);
    out = x;
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "num_users") {
      want_int("num_users", 0, cfg.num_users);
    } else if (key == "f_user") {
      want_number("f_user", 0.0, 1.0, cfg.f_user);
    } else if (key == "f_data") {
      want_number("f_data", 0.0, 100.0, cfg.f_data);
    } else if (key == "image_n") {
      want_int("image_n", 1, cfg.image_n);
    } else if (key == "trigger_w") {
      want_int("trigger_w", 1, cfg.trigger_w);
    } else if (key == "num_labels") {
      want_int("num_labels", 2, cfg.num_labels);
    } else if (key == "base_p") {
      want_number("base_p", 0.0, 1.0, cfg.base_p);
    } else if (key == "base_q") {
      want_number("base_q", 0.0, 1.0, cfg.base_q);
    } else if (key == "adaptive_p") {
      if (value.is_null()) {
        cfg.adaptive_p = std::nullopt;
      } else {
        double v = 0.0;
        want_number("adaptive_p", 0.0, 1.0, v);
        cfg.adaptive_p = v;
      }
    } else if (key == "f_delete") {
      want_number("f_delete", 0.0, 1.0, cfg.f_delete);
    } else if (key == "d_collide") {
      want_int("d_collide", 0, cfg.d_collide);
    } else if (key == "seed") {
      if (!value.is_number_integer() ||
          (!value.is_number_unsigned() && value.get<long long>() < 0))
        throw SchemaError("config: expected nonnegative integer at /seed");
      cfg.seed = value.get<std::uint64_t>();
    } else {
      throw SchemaError("config: unknown member at /" + key);
    }
  }
  if (cfg.trigger_w > cfg.image_n)
    throw SchemaError("config: trigger_w exceeds image_n at /trigger_w");
  return cfg;
}

unlearn::ServerPolicy parse_policy(const std::string& s) {
  if (s == "honest") return unlearn::ServerPolicy::kHonest;
  if (s == "nonadaptive") return unlearn::ServerPolicy::kNonAdaptive;
  if (s == "adaptive") return unlearn::ServerPolicy::kAdaptive;
  throw std::invalid_argument(
      "--policy must be honest, nonadaptive, or adaptive");
}

void run_simulate(const SimulateOpts& o) {
  const Format format = parse_format(o.format);
  const unlearn::ServerPolicy policy = parse_policy(o.policy);
  require_file(o.config);
  std::ifstream in(o.config);
  if (!in) throw FileNotFound("cannot open: " + o.config);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("config: invalid JSON: ") + e.what());
  }
  unlearn::SimConfig cfg = parse_sim_config(doc);
  if (o.seed.has_value()) cfg.seed = *o.seed;
  const unlearn::TestPlan plan(o.n, o.alpha);
  const unlearn::SimSummary summary = unlearn::end_to_end(cfg, policy, plan);

  ordered_json params;
  params["config"] = o.config;
  params["policy"] = o.policy;
  params["n"] = o.n;
  params["alpha"] = o.alpha;
  ordered_json cfg_echo;
  cfg_echo["num_users"] = cfg.num_users;
  cfg_echo["f_user"] = cfg.f_user;
  cfg_echo["f_data"] = cfg.f_data;
  cfg_echo["image_n"] = cfg.image_n;
  cfg_echo["trigger_w"] = cfg.trigger_w;
  cfg_echo["num_labels"] = cfg.num_labels;
  cfg_echo["base_p"] = cfg.base_p;
  cfg_echo["base_q"] = cfg.base_q;
  cfg_echo["adaptive_p"] = cfg.adaptive_p.has_value()
                               ? ordered_json(*cfg.adaptive_p)
                               : ordered_json();
  cfg_echo["f_delete"] = cfg.f_delete;
  cfg_echo["d_collide"] = cfg.d_collide;
  cfg_echo["seed"] = cfg.seed;
  params["resolved_config"] = std::move(cfg_echo);

  ordered_json results;
  results["verified_users"] = summary.verifications.size();
  ordered_json counts;
  counts["true_accepts"] = summary.true_accepts;
  counts["false_positives"] = summary.false_positives;
  counts["false_negatives"] = summary.false_negatives;
  counts["true_rejects"] = summary.true_rejects;
  results["counts"] = std::move(counts);
  ordered_json rows = ordered_json::array();
  for (const auto& v : summary.verifications) {
    ordered_json row;
    row["user_id"] = v.user_id;
    row["rate"] = v.rate;
    row["p_hat"] = v.p_hat;
    row["q_hat"] = v.q_hat;
    row["verify_ones"] = v.verify_ones;
    row["decision"] =
        v.decision == unlearn::Decision::kAcceptH0 ? "AcceptH0" : "RejectH0";
    rows.push_back(std::move(row));
  }
  results["rows"] = std::move(rows);
  emit("simulate", std::move(params), std::move(results), cfg.seed, format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unlearn-verify: probabilistic verification of machine "
               "unlearning via backdoor hypothesis tests"};
  app.require_subcommand(1);

  ConfidenceOpts conf;
  auto* c1 = app.add_subcommand(
      "confidence", "Deletion confidence rho for one strategy and plan");
  c1->add_option("--p", conf.p, "kept-rate p (decimal or k/n)")->required();
  c1->add_option("--q", conf.q, "deleted-rate q (decimal or k/n)")->required();
  c1->add_option("--n", conf.n, "verification queries (default 30)");
  c1->add_option("--alpha", conf.alpha, "Type I bound (default 1e-3)");
  c1->add_option("--format", conf.format, "json|csv|table (default json)");

  SweepOpts sweep;
  auto* c2 = app.add_subcommand(
      "sweep", "beta and rho over n = 1..n_max; CSV is plot-ready");
  c2->add_option("--p", sweep.p, "kept-rate p");
  c2->add_option("--q", sweep.q, "deleted-rate q");
  c2->add_option("--alpha", sweep.alpha, "Type I bound (default 1e-3)");
  c2->add_option("--n-max", sweep.n_max, "largest n (default 50)");
  c2->add_option("--poison-table", sweep.poison_table,
                 "CSV f_data,p,q; one sweep block per row");
  c2->add_option("--format", sweep.format, "json|csv|table (default json)");

  SamplesOpts samples;
  auto* c3 = app.add_subcommand(
      "samples", "smallest n reaching a target deletion confidence");
  c3->add_option("--p", samples.p, "kept-rate p")->required();
  c3->add_option("--q", samples.q, "deleted-rate q")->required();
  c3->add_option("--alpha", samples.alpha, "Type I bound (default 1e-3)");
  c3->add_option("--rho-target", samples.rho_target,
                 "required confidence (default 0.99)");
  c3->add_option("--n-max", samples.n_max, "search limit (default 10000)");
  c3->add_option("--format", samples.format, "json|csv|table (default json)");

  BayesOpts bayes;
  auto* c4 = app.add_subcommand(
      "bayes", "expected confidence over binomial posteriors of p and q");
  c4->add_option("--p-hat", bayes.p_hat, "measured kept rate, k/n form")
      ->required();
  c4->add_option("--q-hat", bayes.q_hat, "measured deleted rate, k/n form")
      ->required();
  c4->add_option("--n", bayes.n, "verification queries (default 30)");
  c4->add_option("--alpha", bayes.alpha, "Type I bound (default 1e-3)");
  c4->add_option("--grid", bayes.grid, "posterior grid size G (default 1000)");
  c4->add_option("--format", bayes.format, "json|csv|table (default json)");

  MultiuserOpts multi;
  auto* c5 = app.add_subcommand(
      "multiuser",
      "pooled collaborative test, or Monte Carlo false-negative rate over a "
      "population CSV");
  c5->add_option("--population", multi.population,
                 "CSV with header p_true,q_true");
  c5->add_option("--p-hats", multi.p_hats,
                 "per-user kept-rate fractions (pooled mode)");
  c5->add_option("--q-hats", multi.q_hats,
                 "per-user deleted-rate fractions (pooled mode)");
  c5->add_option("--c", multi.c, "collaborating users (default 1)");
  c5->add_option("--n", multi.n, "queries per user (default 30)");
  c5->add_option("--alpha", multi.alpha, "Type I bound (default 1e-3)");
  c5->add_option("--beta-bound", multi.beta_bound,
                 "Type II bound for the pooled rule (default 1e-3)");
  c5->add_option("--trials", multi.trials, "MC trials (default 100000)");
  c5->add_option("--seed", multi.seed, "MC seed (default 1)");
  c5->add_flag("--without-replacement", multi.without_replacement,
               "sample users without replacement");
  c5->add_option("--format", multi.format, "json|csv|table (default json)");

  CapacityOpts capacity;
  auto* c6 = app.add_subcommand(
      "capacity", "constant-weight code capacity and collision risk");
  c6->add_option("--n", capacity.n, "vector length")->required();
  c6->add_option("--d", capacity.d, "minimum Hamming distance")->required();
  c6->add_option("--w", capacity.w, "constant weight")->required();
  c6->add_option("--users", capacity.users,
                 "report collision probability for this many users");
  c6->add_option("--budget", capacity.budget,
                 "report max users within this collision budget");
  c6->add_option("--brute-cap", capacity.brute_cap,
                 "max enumerable codewords for exact search (default 5000)");
  c6->add_option("--format", capacity.format, "json|csv|table (default json)");

  SimulateOpts simulate;
  auto* c7 = app.add_subcommand(
      "simulate", "end-to-end world simulation against a server policy");
  c7->add_option("--config", simulate.config, "SimConfig JSON file")
      ->required();
  c7->add_option("--policy", simulate.policy,
                 "honest|nonadaptive|adaptive (default honest)");
  c7->add_option("--n", simulate.n, "verification queries (default 30)");
  c7->add_option("--alpha", simulate.alpha, "Type I bound (default 1e-3)");
  c7->add_option("--seed", simulate.seed, "override the config seed");
  c7->add_option("--format", simulate.format, "json|csv|table (default json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (c1->parsed()) run_confidence(conf);
    if (c2->parsed()) run_sweep(sweep);
    if (c3->parsed()) run_samples(samples);
    if (c4->parsed()) run_bayes(bayes);
    if (c5->parsed()) run_multiuser(multi);
    if (c6->parsed()) run_capacity(capacity);
    if (c7->parsed()) run_simulate(simulate);
  } catch (const FileNotFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
