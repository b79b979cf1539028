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

#ifndef UNLEARN_ESTIMATION_HPP_
#define UNLEARN_ESTIMATION_HPP_

#include <vector>

#include "unlearn/hypothesis.hpp"

// User-side rate estimation and Bayesian expectation of the deletion
// confidence over posterior grids.

namespace unlearn {

enum class RateSource {
  kPostTrainingQuery,
  kPreUploadQuery,
  kAlternatePatternQuery,
};

struct RateEstimate {
  int count;   // ones observed; r_hat = count / n_obs, an exact rational
  int n_obs;   // observations used, >= 1
  RateSource source;

  RateEstimate(int count_in, int n_obs_in, RateSource source_in);
  double r_hat() const { return static_cast<double>(count) / n_obs; }
};

// Discrete distribution over success rates. The default construction is
// G+1 equispaced support points on [0, 1] (uniform prior); arbitrary
// strictly increasing supports are allowed so point masses at measured
// rates are representable.
struct PosteriorGrid {
  std::vector<double> support;  // strictly increasing, within [0, 1]
  std::vector<double> mass;     // nonnegative, sums to 1 within 1e-12

  PosteriorGrid(std::vector<double> support_in, std::vector<double> mass_in);

  static PosteriorGrid uniform(int grid_size);       // G+1 points, i/G
  static PosteriorGrid point_mass(double rate);      // single support point
  int grid_size() const { return static_cast<int>(support.size()) - 1; }
};

RateEstimate estimate_rate(const OutcomeVector& outcomes, RateSource source);

// deletion_confidence at the relaxed bounds. For any true q <= q_upper and
// p >= p_lower the returned rho is a lower bound on the true rho.
TestResult conservative_confidence(const TestPlan& plan, double q_upper,
                                   double p_lower);

// Bayes update of `prior` against the exact binomial likelihood of
// observing `estimate.count` ones in `estimate.n_obs` draws.
PosteriorGrid posterior(const RateEstimate& estimate,
                        const PosteriorGrid& prior);

// E[rho(plan, (q, p))] over independent posteriors for q and p. With
// point-mass posteriors this equals deletion_confidence(...).rho bitwise.
double expected_confidence(const TestPlan& plan, const PosteriorGrid& q_post,
                           const PosteriorGrid& p_post);

}  // namespace unlearn

#endif  // UNLEARN_ESTIMATION_HPP_
