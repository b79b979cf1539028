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

#ifndef UNLEARN_CAPACITY_HPP_
#define UNLEARN_CAPACITY_HPP_

#include <cstdint>
#include <optional>

// Trigger-pattern capacity: bounds on A(n, d, w), the maximal number of
// binary length-n vectors of constant weight w with pairwise Hamming
// distance >= d, plus birthday-style collision analysis over the pattern
// space.

namespace unlearn {

struct CodeParams {
  int n;  // vector length (e.g. pixel count)
  int d;  // minimum pairwise Hamming distance
  int w;  // constant weight (pixels set)

  // Requires 1 <= w <= n and 0 <= d <= 2w (two weight-w vectors can
  // differ in at most 2w positions).
  CodeParams(int n_in, int d_in, int w_in);
};

enum class CapacityMethod { kBruteForce, kClosedForm, kJohnsonBound };

struct CapacityResult {
  std::optional<long long> exact;  // set for closed forms and brute force
  long long lower_bound;           // always a constructive bound
  long long upper_bound;
  CapacityMethod method;
};

// A(n, d, w). Distances between constant-weight words are even, so odd d
// is normalized upward to d+1 before evaluation. Exact when a closed form
// applies (d <= 2: C(n,w); d = 2w: floor(n/w)) or when C(n,w) <= brute_cap
// and n <= 64 (maximum clique over the distance->=d graph); otherwise a
// Johnson-recursion upper bound with a greedy-construction lower bound.
// Throws std::overflow_error if a bound exceeds the 64-bit range.
CapacityResult awd(const CodeParams& params, long long brute_cap = 5000);

struct BackdoorCount {
  long long lower;
  long long upper;
  bool exact;                 // every term in the sum was exact
  CapacityResult single_term; // conventional A(n, d, w) for comparison
};

// The pattern-count sum over distances i = d..n of A(n, i, w). Odd-i terms
// are zero (even-distance cap) and terms beyond 2w are zero; bounds add
// term-wise. Reported next to the plain A(n, d, w) because the summed
// quantity is the published formula while the single term is the
// conventional code capacity.
BackdoorCount backdoor_count(const CodeParams& params,
                             long long brute_cap = 5000);

// Birthday bound: 1 - prod_{i=0}^{m-1} (1 - i/capacity), evaluated in log
// space. Returns 1 when num_users exceeds capacity.
double collision_probability(long long num_users, long long capacity);

// Largest m with collision_probability(m, capacity) <= collision_budget,
// by doubling plus bisection on the monotone predicate.
long long max_users(long long capacity, double collision_budget);

// Exact binomial coefficient; throws std::overflow_error beyond 64 bits.
long long choose_checked(int n, int k);

}  // namespace unlearn

#endif  // UNLEARN_CAPACITY_HPP_
