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

#include "unlearn/binomial.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace unlearn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_domain(int k, int n, double r) {
  if (n < 1) throw std::domain_error("binomial: n must be >= 1");
  if (k < 0 || k > n) throw std::domain_error("binomial: k must be in [0, n]");
  if (!(r >= 0.0 && r <= 1.0))
    throw std::domain_error("binomial: r must be in [0, 1]");
}

}  // namespace

void LogSumExp::add(double log_term) {
  if (log_term == kNegInf) return;
  if (max_ == kNegInf) {
    max_ = log_term;
    sum_ = 1.0;
  } else if (log_term <= max_) {
    sum_ += std::exp(log_term - max_);
  } else {
    sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
    max_ = log_term;
  }
}

double LogSumExp::value() const {
  if (max_ == kNegInf) return kNegInf;
  return max_ + std::log(sum_);
}

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0);
}

double binom_log_pmf(int k, int n, double r) {
  check_domain(k, n, r);
  if (r == 0.0) return k == 0 ? 0.0 : kNegInf;
  if (r == 1.0) return k == n ? 0.0 : kNegInf;
  return log_choose(n, k) + k * std::log(r) + (n - k) * std::log1p(-r);
}

double binom_cdf(int k, int n, double r) {
  check_domain(k, n, r);
  if (k == n) return 1.0;
  // Neumaier-compensated linear sum, ascending k.
  double sum = 0.0, comp = 0.0;
  for (int l = 0; l <= k; ++l) {
    double term = std::exp(binom_log_pmf(l, n, r));
    double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  double v = sum + comp;
  if (v < 0.0) v = 0.0;
  if (v > 1.0) v = 1.0;
  return v;
}

namespace {

// A log tail mass can never exceed ln 1 = 0; accumulation noise a few
// ulps above zero would otherwise surface as beta > 1 (rho < 0).
double clamp_log_prob(double v) { return v > 0.0 ? 0.0 : v; }

}  // namespace

std::vector<double> binom_log_cdf_prefix(int n, double r) {
  check_domain(0, n, r);
  std::vector<double> out(static_cast<size_t>(n) + 1);
  LogSumExp acc;
  for (int k = 0; k <= n; ++k) {
    acc.add(binom_log_pmf(k, n, r));
    out[static_cast<size_t>(k)] = clamp_log_prob(acc.value());
  }
  // The full mass is 1 exactly; saturated tests rely on beta == 1.
  out[static_cast<size_t>(n)] = 0.0;
  return out;
}

double binom_log_cdf(int k, int n, double r) {
  check_domain(k, n, r);
  if (k == n) return 0.0;  // full mass, exact (matches binom_cdf)
  LogSumExp acc;
  for (int l = 0; l <= k; ++l) acc.add(binom_log_pmf(l, n, r));
  return clamp_log_prob(acc.value());
}

std::vector<double> binom_log_sf_suffix(int n, double r) {
  check_domain(0, n, r);
  std::vector<double> out(static_cast<size_t>(n) + 1);
  out[static_cast<size_t>(n)] = kNegInf;
  LogSumExp acc;
  for (int l = n; l >= 1; --l) {
    acc.add(binom_log_pmf(l, n, r));
    out[static_cast<size_t>(l) - 1] = clamp_log_prob(acc.value());
  }
  return out;
}

double binom_log_sf(int k, int n, double r) {
  if (k == -1) {
    check_domain(0, n, r);
    return 0.0;
  }
  check_domain(k, n, r);
  LogSumExp acc;
  for (int l = n; l >= k + 1; --l) acc.add(binom_log_pmf(l, n, r));
  return clamp_log_prob(acc.value());
}

double success_rate_std(int n, double r) {
  check_domain(0, n, r);
  return std::sqrt(r * (1.0 - r) / n);
}

}  // namespace unlearn
