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

#include "unlearn/hypothesis.hpp"

#include <cmath>
#include <stdexcept>

#include "unlearn/binomial.hpp"
#include "unlearn/rng.hpp"

namespace unlearn {

namespace {

// Relative slack, in log space, for the threshold comparison. Decimal-exact
// ties (upper tail equal to alpha as a real number) must count as accepted;
// without slack the rounding of the two sides could flip them either way.
constexpr double kTieSlack = 1e-12;

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string(name) + " must be in [0, 1]");
  }
}

}  // namespace

Strategy::Strategy(double q_in, double p_in) : q(q_in), p(p_in) {
  check_probability(q, "q");
  check_probability(p, "p");
}

TestPlan::TestPlan(int n_in, double alpha_in) : n(n_in), alpha(alpha_in) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("alpha must be in (0, 1)");
}

int OutcomeVector::ones() const {
  int c = 0;
  for (auto b : bits) c += b != 0;
  return c;
}

OutcomeVector draw_outcomes(int n, double rate, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  check_probability(rate, "rate");
  OutcomeVector out;
  out.bits.resize(static_cast<size_t>(n));
  Xoshiro256pp rng(seed);
  for (auto& b : out.bits) b = rng.bernoulli(rate) ? 1 : 0;
  return out;
}

ThresholdResult threshold_for_alpha(const TestPlan& plan, double q) {
  check_probability(q, "q");
  const std::vector<double> log_sf = binom_log_sf_suffix(plan.n, q);
  const double bound = std::log(plan.alpha) + kTieSlack;
  for (int k = 0; k <= plan.n; ++k) {
    if (log_sf[static_cast<size_t>(k)] <= bound) {
      return {k, std::exp(log_sf[static_cast<size_t>(k)])};
    }
  }
  // Unreachable: log_sf[n] = -inf.
  return {plan.n, 0.0};
}

double beta_error(const TestPlan& plan, const Strategy& s) {
  const int threshold = threshold_for_alpha(plan, s.q).threshold_k;
  return binom_log_cdf(threshold, plan.n, s.p);
}

TestResult deletion_confidence(const TestPlan& plan, const Strategy& s) {
  const ThresholdResult thr = threshold_for_alpha(plan, s.q);
  const double log_beta = binom_log_cdf(thr.threshold_k, plan.n, s.p);
  const double beta = std::exp(log_beta);
  TestResult result;
  result.threshold_k = thr.threshold_k;
  result.threshold_t = static_cast<double>(thr.threshold_k) / plan.n;
  result.achieved_alpha = thr.achieved_alpha;
  result.log_beta = log_beta;
  result.beta = beta;
  result.rho = 1.0 - beta;
  result.degenerate_strategy = s.degenerate();
  result.vacuous_plan = thr.threshold_k == plan.n;
  return result;
}

Decision decide(const OutcomeVector& outcomes, const TestPlan& plan,
                double q) {
  if (outcomes.size() != plan.n)
    throw std::invalid_argument("outcome length does not match plan n");
  const int threshold = threshold_for_alpha(plan, q).threshold_k;
  return outcomes.ones() <= threshold ? Decision::kAcceptH0
                                      : Decision::kRejectH0;
}

std::optional<int> samples_needed(const Strategy& s, double alpha,
                                  double rho_target, int n_max) {
  if (s.degenerate())
    throw std::domain_error("degenerate strategy: p <= q has no power");
  if (!(rho_target > 0.0 && rho_target < 1.0))
    throw std::invalid_argument("rho_target must be in (0, 1)");
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  // rho >= target  <=>  beta <= 1 - target, compared in log space.
  const double log_beta_target = std::log1p(-rho_target);
  for (int n = 1; n <= n_max; ++n) {
    if (beta_error(TestPlan(n, alpha), s) <= log_beta_target) return n;
  }
  return std::nullopt;
}

}  // namespace unlearn
