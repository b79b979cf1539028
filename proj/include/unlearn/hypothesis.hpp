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

#ifndef UNLEARN_HYPOTHESIS_HPP_
#define UNLEARN_HYPOTHESIS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

// Exact binomial hypothesis test for deletion verification.
//
// A user measures the success rate of their backdoor over n queries.
// H0: the data was deleted (success rate q). H1: it was kept (rate p).
// The test accepts H0 iff the success count is <= threshold_k, where
// threshold_k is the smallest k whose H0 CDF reaches 1 - alpha. That
// quantile choice keeps the realized Type I error at or below alpha
// (achieved_alpha <= alpha, with equality only at exact CDF boundaries).

namespace unlearn {

struct Strategy {
  double q;  // backdoor success probability when the data was deleted
  double p;  // backdoor success probability when the data was kept

  Strategy(double q_in, double p_in);
  bool degenerate() const { return p <= q; }
};

struct TestPlan {
  int n;         // number of backdoored verification queries
  double alpha;  // acceptable Type I error, in (0, 1)

  TestPlan(int n_in, double alpha_in);
};

struct OutcomeVector {
  std::vector<std::uint8_t> bits;  // one entry per query, values in {0, 1}

  int size() const { return static_cast<int>(bits.size()); }
  int ones() const;
};

// n Bernoulli(rate) draws from the documented PRNG (see rng.hpp).
OutcomeVector draw_outcomes(int n, double rate, std::uint64_t seed);

struct ThresholdResult {
  int threshold_k;        // largest accepted success count, in [0, n]
  double achieved_alpha;  // Pr[count > threshold_k | q], <= plan alpha
};

// Smallest k in [0, n] with binom_cdf(k, n, q) >= 1 - alpha. Always exists
// (the CDF reaches 1 at k = n). Comparisons run in log space on the upper
// tail with a 1e-12 relative slack so exact decimal ties land on the
// accept side, matching exact rational evaluation.
ThresholdResult threshold_for_alpha(const TestPlan& plan, double q);

// ln beta, beta = Pr[count <= threshold_k | p]: the Type II error of the
// plan against strategy s. Log-sum-exp; representable down to ~1e-308,
// exactly -inf when the mass is zero (p = 1 with threshold_k < n).
double beta_error(const TestPlan& plan, const Strategy& s);

struct TestResult {
  int threshold_k;          // in [-1, n]; this implementation always >= 0
  double threshold_t;       // threshold_k / n
  double achieved_alpha;    // realized Type I error at the threshold
  double log_beta;          // canonical representation of beta
  double beta;              // exp(log_beta)
  double rho;               // deletion confidence, 1 - beta
  bool degenerate_strategy; // p <= q: the test has no power by construction
  bool vacuous_plan;        // threshold_k = n: empty rejection region
};

TestResult deletion_confidence(const TestPlan& plan, const Strategy& s);

enum class Decision { kAcceptH0, kRejectH0 };

// AcceptH0 iff count-of-ones <= threshold_for_alpha(plan, q).threshold_k.
Decision decide(const OutcomeVector& outcomes, const TestPlan& plan, double q);

// Smallest n <= n_max with rho(s, n) >= rho_target, by exhaustive scan
// (rho is not monotone in n: the discrete threshold makes it jump).
// nullopt when no such n exists. Throws for degenerate strategies.
std::optional<int> samples_needed(const Strategy& s, double alpha,
                                  double rho_target, int n_max);

}  // namespace unlearn

#endif  // UNLEARN_HYPOTHESIS_HPP_
