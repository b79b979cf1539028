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

#include "unlearn/multiuser.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

#include "unlearn/rng.hpp"

namespace unlearn {

namespace {

constexpr std::uint64_t kFnTrialStream = 0x6d756c7469757372ULL;

// Per-user verification sample count. Reports that share only summary
// rates (no raw outcomes) fall back to the estimate's observation count.
int report_n(const UserReport& r) {
  return r.outcomes.size() > 0 ? r.outcomes.size() : r.p_hat.n_obs;
}

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string(name) + " must be in [0, 1]");
  }
}

double parse_probability(const std::string& field, const std::string& path,
                         size_t line_no, const char* col) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(path + " line " + std::to_string(line_no) +
                                ": " + col + " is not a number");
  }
  while (pos < field.size() &&
         (field[pos] == ' ' || field[pos] == '\t' || field[pos] == '\r'))
    ++pos;
  if (pos != field.size()) {
    throw std::invalid_argument(path + " line " + std::to_string(line_no) +
                                ": trailing characters after " + col);
  }
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(path + " line " + std::to_string(line_no) +
                                ": " + col + " outside [0, 1]");
  }
  return v;
}

}  // namespace

PooledResult pooled_test(const std::vector<UserReport>& reports, double alpha,
                         double beta_bound) {
  if (reports.empty())
    throw std::invalid_argument("pooled_test needs at least one report");
  check_probability(beta_bound, "beta_bound");

  const int n = report_n(reports.front());
  double p_sum = 0.0, q_sum = 0.0;
  int pooled_count = 0;
  for (const UserReport& r : reports) {
    if (report_n(r) != n)
      throw std::invalid_argument("reports disagree on the per-user n");
    p_sum += r.p_hat.r_hat();
    q_sum += r.q_hat.r_hat();
    pooled_count += r.outcomes.ones();
  }
  const int c = static_cast<int>(reports.size());

  PooledResult out;
  out.p_bar = p_sum / c;
  out.q_bar = q_sum / c;
  out.n_total = c * n;
  const TestPlan plan(out.n_total, alpha);
  out.pooled = deletion_confidence(plan, Strategy(out.q_bar, out.p_bar));
  // The contract rule: reject the "deleted" hypothesis exactly when the
  // estimated Type II error falls below the agreed bound.
  out.decision = out.pooled.beta < beta_bound ? Decision::kRejectH0
                                              : Decision::kAcceptH0;
  out.pooled_count = pooled_count;
  out.count_decision = pooled_count <= out.pooled.threshold_k
                           ? Decision::kAcceptH0
                           : Decision::kRejectH0;
  return out;
}

FnEstimate false_negative_probability(const Population& pop, int c, int n,
                                      double alpha, double beta_bound,
                                      std::int64_t trials, std::uint64_t seed,
                                      bool with_replacement) {
  if (pop.entries.empty())
    throw std::invalid_argument("population must be non-empty");
  if (c < 1) throw std::invalid_argument("c must be >= 1");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const size_t num_entries = pop.entries.size();
  if (!with_replacement && static_cast<size_t>(c) > num_entries)
    throw std::invalid_argument(
        "c exceeds population size for sampling without replacement");
  for (const auto& e : pop.entries) {
    check_probability(e.p_true, "p_true");
    check_probability(e.q_true, "q_true");
  }

  std::vector<UserReport> reports;
  reports.reserve(static_cast<size_t>(c));
  std::vector<size_t> idx(num_entries);
  std::vector<size_t> pick(static_cast<size_t>(c));
  std::int64_t accepts = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    Xoshiro256pp rng(derive_seed(seed, kFnTrialStream,
                                 static_cast<std::uint64_t>(t)));
    if (with_replacement) {
      for (auto& u : pick) u = static_cast<size_t>(rng.bounded(num_entries));
    } else {
      std::iota(idx.begin(), idx.end(), size_t{0});
      for (size_t u = 0; u < pick.size(); ++u) {
        const size_t j = u + static_cast<size_t>(rng.bounded(num_entries - u));
        std::swap(idx[u], idx[j]);
        pick[u] = idx[u];
      }
    }
    reports.clear();
    for (size_t u = 0; u < pick.size(); ++u) {
      const Population::Entry& e = pop.entries[pick[u]];
      // The server kept the data: verification queries land at p_true.
      OutcomeVector outcomes;
      outcomes.bits.resize(static_cast<size_t>(n));
      for (auto& b : outcomes.bits) b = rng.bernoulli(e.p_true) ? 1 : 0;
      // The declared q estimate comes from alternate-pattern queries.
      int q_count = 0;
      for (int i = 0; i < n; ++i) q_count += rng.bernoulli(e.q_true) ? 1 : 0;
      reports.push_back(UserReport{
          "u" + std::to_string(pick[u]),
          estimate_rate(outcomes, RateSource::kPostTrainingQuery),
          RateEstimate(q_count, n, RateSource::kAlternatePatternQuery),
          std::move(outcomes)});
    }
    if (pooled_test(reports, alpha, beta_bound).decision ==
        Decision::kAcceptH0)
      ++accepts;
  }

  FnEstimate est;
  est.trials = trials;
  est.accepts = accepts;
  est.fn_probability = static_cast<double>(accepts) / trials;
  est.std_error = std::sqrt(est.fn_probability * (1.0 - est.fn_probability) /
                            static_cast<double>(trials));
  return est;
}

Population load_population_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open population file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument(path + " line 1: missing header");
  while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
    line.pop_back();
  if (line != "p_true,q_true")
    throw std::invalid_argument(path + " line 1: header must be p_true,q_true");

  Population pop;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty()) continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument(path + " line " + std::to_string(line_no) +
                                  ": expected two comma-separated values");
    Population::Entry e;
    e.p_true = parse_probability(line.substr(0, comma), path, line_no, "p_true");
    e.q_true = parse_probability(line.substr(comma + 1), path, line_no, "q_true");
    pop.entries.push_back(e);
  }
  if (pop.entries.empty())
    throw std::invalid_argument(path + ": population must be non-empty");
  return pop;
}

}  // namespace unlearn
