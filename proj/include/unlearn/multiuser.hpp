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

#ifndef UNLEARN_MULTIUSER_HPP_
#define UNLEARN_MULTIUSER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "unlearn/estimation.hpp"
#include "unlearn/hypothesis.hpp"

// Collaborative verification: pool rate estimates across c users and
// Monte-Carlo-estimate the false-negative probability of the pooled rule.

namespace unlearn {

struct UserReport {
  std::string user_id;
  RateEstimate p_hat;      // estimated success rate while the data was kept
  RateEstimate q_hat;      // estimated rate under a fresh (deleted) pattern
  OutcomeVector outcomes;  // the n verification queries
};

struct Population {
  // One (p_true, q_true) pair per potential collaborator.
  struct Entry {
    double p_true;
    double q_true;
  };
  std::vector<Entry> entries;
};

struct PooledResult {
  Decision decision;        // RejectH0 iff estimated beta < beta_bound
  TestResult pooled;        // deletion_confidence at (q_bar, p_bar), n_total
  double p_bar;
  double q_bar;
  int n_total;              // c * n
  int pooled_count;         // total ones across all reports' outcomes
  Decision count_decision;  // auxiliary: pooled count vs pooled threshold
};

// Pools c reports: p_bar / q_bar are the means of the per-user estimates,
// the plan is widened to n_total = c * n, and H0 (deleted) is rejected
// exactly when the estimated Type II error exp(beta_error) drops below
// beta_bound. The count-based decision is reported alongside for
// transparency; the contract decision is the beta comparison.
PooledResult pooled_test(const std::vector<UserReport>& reports, double alpha,
                         double beta_bound);

struct FnEstimate {
  double fn_probability;  // fraction of AcceptH0 (false negative) trials
  double std_error;       // binomial standard error of that fraction
  std::int64_t trials;
  std::int64_t accepts;
};

// Monte Carlo over `trials` worlds where the server kept everything:
// sample c users from pop (uniform, with replacement by default), draw
// each user's n verification outcomes at p_true and their declared q
// estimate at q_true, then run pooled_test. Deterministic per (seed,
// trial index) regardless of scheduling.
FnEstimate false_negative_probability(const Population& pop, int c, int n,
                                      double alpha, double beta_bound,
                                      std::int64_t trials, std::uint64_t seed,
                                      bool with_replacement = true);

// CSV with header `p_true,q_true`, one row per user. Throws
// std::invalid_argument naming the offending line for malformed rows or
// out-of-range probabilities.
Population load_population_csv(const std::string& path);

}  // namespace unlearn

#endif  // UNLEARN_MULTIUSER_HPP_
