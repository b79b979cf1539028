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

#ifndef UNLEARN_BINOMIAL_HPP_
#define UNLEARN_BINOMIAL_HPP_

#include <vector>

// Log-space binomial primitives.
//
// Tail masses are carried as natural logs throughout the library; linear
// probabilities are views. This keeps values like 1e-300 representable and
// makes every summation order deterministic (fixed accumulation order, so
// repeated calls are bitwise stable).

namespace unlearn {

// Incremental log-sum-exp accumulator. Terms are folded in caller order;
// the running maximum is rescaled on the fly so no intermediate underflows.
class LogSumExp {
 public:
  void add(double log_term);
  // ln(sum of accumulated terms); -inf if nothing (finite) was added.
  double value() const;

 private:
  double max_ = -1.0 / 0.0;
  double sum_ = 0.0;
};

// ln C(n,k) via lgamma.
double log_choose(int n, int k);

// ln[ C(n,k) r^k (1-r)^(n-k) ]; -inf for impossible events (r=0 with k>0,
// r=1 with k<n). Throws std::domain_error outside 0 <= k <= n, 1 <= n,
// 0 <= r <= 1.
double binom_log_pmf(int k, int n, double r);

// Pr[X <= k] for X ~ Binomial(n, r), summed in linear space with
// compensated (Neumaier) accumulation. Exactly 1.0 at k = n.
double binom_cdf(int k, int n, double r);

// ln Pr[X <= k], log-sum-exp over terms 0..k in ascending order.
// Exactly 0.0 at k = n.
double binom_log_cdf(int k, int n, double r);

// All prefix values ln Pr[X <= k] for k = 0..n in one ascending pass.
// Entry k is bitwise identical to binom_log_cdf(k, n, r).
std::vector<double> binom_log_cdf_prefix(int n, double r);

// ln Pr[X > k], log-sum-exp over terms n..k+1 in descending order.
// k = -1 gives ln 1 = 0; k = n gives -inf.
double binom_log_sf(int k, int n, double r);

// All suffix values ln Pr[X > k] for k = 0..n in one descending pass.
// Entry k is bitwise identical to binom_log_sf(k, n, r).
std::vector<double> binom_log_sf_suffix(int n, double r);

// Standard deviation of the measured success rate: sqrt(r(1-r)/n).
double success_rate_std(int n, double r);

}  // namespace unlearn

#endif  // UNLEARN_BINOMIAL_HPP_
