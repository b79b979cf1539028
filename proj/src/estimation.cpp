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

#include "unlearn/estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "unlearn/binomial.hpp"

namespace unlearn {

namespace {

constexpr double kMassTolerance = 1e-12;

void check_normalized(const PosteriorGrid& g, const char* which) {
  double total = 0.0;
  for (double m : g.mass) total += m;
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument(std::string(which) +
                                " posterior is not normalized");
  }
}

}  // namespace

RateEstimate::RateEstimate(int count_in, int n_obs_in, RateSource source_in)
    : count(count_in), n_obs(n_obs_in), source(source_in) {
  if (n_obs < 1) throw std::domain_error("n_obs must be >= 1");
  if (count < 0 || count > n_obs)
    throw std::domain_error("count must be in [0, n_obs]");
}

PosteriorGrid::PosteriorGrid(std::vector<double> support_in,
                             std::vector<double> mass_in)
    : support(std::move(support_in)), mass(std::move(mass_in)) {
  if (support.empty() || support.size() != mass.size())
    throw std::invalid_argument("support and mass must be non-empty and equal length");
  double prev = -1.0;
  for (double r : support) {
    if (!(r >= 0.0 && r <= 1.0 && r > prev))
      throw std::invalid_argument("support must be strictly increasing in [0, 1]");
    prev = r;
  }
  for (double m : mass) {
    if (!(m >= 0.0)) throw std::invalid_argument("mass must be nonnegative");
  }
}

PosteriorGrid PosteriorGrid::uniform(int grid_size) {
  if (grid_size < 1) throw std::domain_error("grid_size must be >= 1");
  std::vector<double> support(static_cast<size_t>(grid_size) + 1);
  std::vector<double> mass(support.size(),
                           1.0 / static_cast<double>(support.size()));
  for (size_t i = 0; i < support.size(); ++i)
    support[i] = static_cast<double>(i) / grid_size;
  return PosteriorGrid(std::move(support), std::move(mass));
}

PosteriorGrid PosteriorGrid::point_mass(double rate) {
  return PosteriorGrid({rate}, {1.0});
}

RateEstimate estimate_rate(const OutcomeVector& outcomes, RateSource source) {
  if (outcomes.size() == 0)
    throw std::invalid_argument("cannot estimate a rate from zero outcomes");
  return RateEstimate(outcomes.ones(), outcomes.size(), source);
}

TestResult conservative_confidence(const TestPlan& plan, double q_upper,
                                   double p_lower) {
  return deletion_confidence(plan, Strategy(q_upper, p_lower));
}

PosteriorGrid posterior(const RateEstimate& estimate,
                        const PosteriorGrid& prior) {
  check_normalized(prior, "prior");
  const int k = estimate.count;
  const int n = estimate.n_obs;
  std::vector<double> mass(prior.mass.size());
  double evidence = 0.0;
  for (size_t i = 0; i < prior.support.size(); ++i) {
    const double like = std::exp(binom_log_pmf(k, n, prior.support[i]));
    mass[i] = prior.mass[i] * like;
    evidence += mass[i];
  }
  if (!(evidence > 0.0))
    throw std::domain_error("posterior has zero mass on the prior support");
  for (double& m : mass) m /= evidence;
  return PosteriorGrid(prior.support, std::move(mass));
}

double expected_confidence(const TestPlan& plan, const PosteriorGrid& q_post,
                           const PosteriorGrid& p_post) {
  check_normalized(q_post, "q");
  check_normalized(p_post, "p");

  std::vector<int> thresholds(q_post.support.size());
  for (size_t i = 0; i < q_post.support.size(); ++i) {
    thresholds[i] = threshold_for_alpha(plan, q_post.support[i]).threshold_k;
  }
  // One log-CDF prefix per p support point; the entry at the threshold is
  // bitwise identical to the beta_error value deletion_confidence sees.
  std::vector<std::vector<double>> prefixes(p_post.support.size());
  for (size_t j = 0; j < p_post.support.size(); ++j) {
    prefixes[j] = binom_log_cdf_prefix(plan.n, p_post.support[j]);
  }

  double total = 0.0;
  for (size_t i = 0; i < q_post.support.size(); ++i) {
    const int t = thresholds[i];
    double inner = 0.0;
    for (size_t j = 0; j < p_post.support.size(); ++j) {
      const double rho = 1.0 - std::exp(prefixes[j][static_cast<size_t>(t)]);
      inner += p_post.mass[j] * rho;
    }
    total += q_post.mass[i] * inner;
  }
  return total;
}

}  // namespace unlearn
