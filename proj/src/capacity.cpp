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

#include "unlearn/capacity.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace unlearn {

namespace {

constexpr long long kInt64Max = std::numeric_limits<long long>::max();

// Distances between equal-weight words are even; odd minima round up.
int normalize_distance(int d) { return d + (d & 1); }

// C(n, k) if it is <= cap, nullopt otherwise. Never overflows: the
// partial products are the intermediate binomials C(n-k+i, i), which
// increase with i, so the scan can bail out early.
std::optional<long long> choose_capped(int n, int k, long long cap) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 res = 1;
  for (int i = 1; i <= k; ++i) {
    res = res * (n - k + i) / i;
    if (res > cap) return std::nullopt;
  }
  return static_cast<long long>(res);
}

// All weight-w masks over n <= 64 positions, ascending by value.
std::vector<std::uint64_t> weight_w_masks(int n, int w) {
  std::vector<std::uint64_t> masks;
  std::uint64_t v = (w == 64) ? ~0ULL : ((1ULL << w) - 1);
  const std::uint64_t limit = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  while (true) {
    masks.push_back(v);
    if (w == 0) break;
    // Gosper's hack: next mask with the same popcount.
    const std::uint64_t c = v & -v;
    const std::uint64_t r = v + c;
    if (r > limit || r < v) break;
    v = (((r ^ v) >> 2) / c) | r;
    if (v > limit) break;
  }
  return masks;
}

// First-fit greedy code: keep a word iff it is >= d away from everything
// kept so far. Any such construction is a valid lower bound for A(n,d,w).
long long greedy_code_size(const std::vector<std::uint64_t>& masks, int d) {
  std::vector<std::uint64_t> kept;
  for (std::uint64_t m : masks) {
    bool ok = true;
    for (std::uint64_t k : kept) {
      if (std::popcount(m ^ k) < d) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(m);
  }
  return static_cast<long long>(kept.size());
}

// Tomita-style branch and bound maximum clique with greedy coloring
// bounds. Vertex sets are flat bitsets. The caller must arrange vertices
// in degeneracy order (it sharpens the coloring bound by an order of
// magnitude on the dense distance graphs that show up here) and may pass
// a proven upper bound: the search stops as soon as the incumbent
// reaches it, skipping the optimality proof.
class CliqueSolver {
 public:
  CliqueSolver(std::vector<std::vector<std::uint64_t>> adj, int num_vertices)
      : adj_(std::move(adj)),
        num_vertices_(num_vertices),
        words_((num_vertices + 63) / 64) {}

  // Precondition: the graph is vertex-transitive (true for distance
  // graphs over all weight-w words, where S_n acts transitively), so
  // some maximum clique contains vertex 0 and the search can root there.
  int solve(int initial_best, long long stop_at) {
    best_ = initial_best;
    stop_ = stop_at < num_vertices_ ? stop_at : num_vertices_;
    if (num_vertices_ == 0 || best_ >= stop_) return best_;
    const int seed = best_;
    best_ = seed - 1;  // accept equal-sized cliques through vertex 0
    expand(adj_[0], 1);
    if (best_ < seed) best_ = seed;
    return best_;
  }

 private:
  static void clear_bit(std::vector<std::uint64_t>& s, int v) {
    s[static_cast<size_t>(v) >> 6] &= ~(1ULL << (v & 63));
  }
  int first_bit(const std::vector<std::uint64_t>& s) const {
    for (int i = 0; i < words_; ++i) {
      if (s[static_cast<size_t>(i)])
        return i * 64 + std::countr_zero(s[static_cast<size_t>(i)]);
    }
    return -1;
  }

  void expand(const std::vector<std::uint64_t>& p, int rsize) {
    if (best_ >= stop_) return;
    // Greedy coloring: order vertices by color class so the bound
    // rsize + color is nonincreasing as the loop below walks backwards.
    std::vector<int> order, color;
    std::vector<std::uint64_t> uncolored = p;
    int c = 0;
    while (true) {
      int seed = first_bit(uncolored);
      if (seed < 0) break;
      ++c;
      std::vector<std::uint64_t> q = uncolored;
      for (int v = first_bit(q); v >= 0; v = first_bit(q)) {
        clear_bit(q, v);
        clear_bit(uncolored, v);
        const auto& nv = adj_[static_cast<size_t>(v)];
        for (int i = 0; i < words_; ++i)
          q[static_cast<size_t>(i)] &= ~nv[static_cast<size_t>(i)];
        order.push_back(v);
        color.push_back(c);
      }
    }

    std::vector<std::uint64_t> live = p;
    std::vector<std::uint64_t> next(static_cast<size_t>(words_));
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (best_ >= stop_) return;
      if (rsize + color[static_cast<size_t>(i)] <= best_) return;
      const int v = order[static_cast<size_t>(i)];
      const auto& nv = adj_[static_cast<size_t>(v)];
      bool empty = true;
      for (int j = 0; j < words_; ++j) {
        next[static_cast<size_t>(j)] =
            live[static_cast<size_t>(j)] & nv[static_cast<size_t>(j)];
        empty = empty && next[static_cast<size_t>(j)] == 0;
      }
      if (rsize + 1 > best_) best_ = rsize + 1;
      if (!empty) expand(next, rsize + 1);
      clear_bit(live, v);
    }
  }

  std::vector<std::vector<std::uint64_t>> adj_;
  int num_vertices_;
  int words_;
  int best_ = 0;
  long long stop_ = 0;
};

long long johnson_upper(int n, int d, int w);

long long brute_force_awd(int n, int d, int w, long long count) {
  std::vector<std::uint64_t> masks = weight_w_masks(n, w);
  const int num_vertices = static_cast<int>(masks.size());
  (void)count;
  const int words = (num_vertices + 63) / 64;

  const auto build_adj = [&](const std::vector<std::uint64_t>& ms) {
    std::vector<std::vector<std::uint64_t>> adj(
        static_cast<size_t>(num_vertices),
        std::vector<std::uint64_t>(static_cast<size_t>(words), 0));
    for (int a = 0; a < num_vertices; ++a) {
      for (int b = a + 1; b < num_vertices; ++b) {
        if (std::popcount(ms[static_cast<size_t>(a)] ^
                          ms[static_cast<size_t>(b)]) >= d) {
          adj[static_cast<size_t>(a)][static_cast<size_t>(b) >> 6] |=
              1ULL << (b & 63);
          adj[static_cast<size_t>(b)][static_cast<size_t>(a) >> 6] |=
              1ULL << (a & 63);
        }
      }
    }
    return adj;
  };

  // Degeneracy order (repeated minimum-degree removal), then relabel so
  // bit order follows it.
  {
    const auto adj = build_adj(masks);
    std::vector<int> deg(static_cast<size_t>(num_vertices), 0);
    for (int v = 0; v < num_vertices; ++v)
      for (int i = 0; i < words; ++i)
        deg[static_cast<size_t>(v)] += std::popcount(
            adj[static_cast<size_t>(v)][static_cast<size_t>(i)]);
    std::vector<bool> removed(static_cast<size_t>(num_vertices), false);
    std::vector<std::uint64_t> reordered;
    reordered.reserve(masks.size());
    for (int step = 0; step < num_vertices; ++step) {
      int pick = -1;
      for (int v = 0; v < num_vertices; ++v) {
        if (removed[static_cast<size_t>(v)]) continue;
        if (pick < 0 || deg[static_cast<size_t>(v)] <
                            deg[static_cast<size_t>(pick)])
          pick = v;
      }
      removed[static_cast<size_t>(pick)] = true;
      reordered.push_back(masks[static_cast<size_t>(pick)]);
      for (int i = 0; i < words; ++i) {
        std::uint64_t bits = adj[static_cast<size_t>(pick)][static_cast<size_t>(i)];
        while (bits) {
          const int u = i * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          if (!removed[static_cast<size_t>(u)]) --deg[static_cast<size_t>(u)];
        }
      }
    }
    masks = std::move(reordered);
  }

  const int seed = static_cast<int>(greedy_code_size(masks, d));
  // The Johnson recursion is a proven upper bound, so the search can end
  // the moment the incumbent matches it. On these instances the bound is
  // frequently tight and the proof phase dominates, so this is the
  // difference between milliseconds and minutes.
  long long stop_at = num_vertices;
  try {
    const long long ju = johnson_upper(n, d, w);
    if (ju < stop_at) stop_at = ju;
  } catch (const std::overflow_error&) {
    // keep the trivial vertex-count bound
  }
  return CliqueSolver(build_adj(masks), num_vertices).solve(seed, stop_at);
}

// A(n,d,w) <= floor(n * A(n-1,d,w-1) / w). The chain shrinks w until the
// d = 2w closed form applies (d >= 4 here, so the d <= 2 base is never
// reached before that).
long long johnson_upper(int n, int d, int w) {
  if (d > 2 * w) return 1;
  if (d == 2 * w) return n / w;
  if (d <= 2) return choose_checked(n, w);
  const long long sub = johnson_upper(n - 1, d, w - 1);
  const __int128 bound = static_cast<__int128>(n) * sub / w;
  if (bound > kInt64Max)
    throw std::overflow_error("Johnson bound exceeds 64-bit range");
  return static_cast<long long>(bound);
}

// Lower bound for spaces too large to enumerate: the best of disjoint
// supports (floor(n/w) words at distance 2w) and a greedy code built on
// the largest enumerable prefix of the positions (a code on the first m
// positions is a code on all n).
long long subspace_lower_bound(int n, int d, int w, long long brute_cap) {
  long long lower = n / w;
  int m = std::min(n, 64);
  while (m > w && !choose_capped(m, w, brute_cap).has_value()) --m;
  if (m >= w) {
    const long long greedy =
        greedy_code_size(weight_w_masks(m, w), d);
    if (greedy > lower) lower = greedy;
  }
  return lower;
}

}  // namespace

CodeParams::CodeParams(int n_in, int d_in, int w_in)
    : n(n_in), d(d_in), w(w_in) {
  if (w < 1 || w > n) throw std::domain_error("require 1 <= w <= n");
  if (d < 0 || d > 2 * w) throw std::domain_error("require 0 <= d <= 2w");
}

long long choose_checked(int n, int k) {
  const auto v = choose_capped(n, k, kInt64Max);
  if (!v.has_value())
    throw std::overflow_error("binomial coefficient exceeds 64-bit range");
  return *v;
}

CapacityResult awd(const CodeParams& params, long long brute_cap) {
  if (brute_cap < 1) throw std::domain_error("brute_cap must be >= 1");
  const int n = params.n, w = params.w;
  const int d = normalize_distance(params.d);

  CapacityResult res;
  if (d <= 2) {
    // Any two distinct constant-weight words already differ in >= 2 slots.
    const long long exact = choose_checked(n, w);
    res.exact = exact;
    res.lower_bound = res.upper_bound = exact;
    res.method = CapacityMethod::kClosedForm;
    return res;
  }
  if (d >= 2 * w) {
    // Distance 2w forces disjoint supports.
    const long long exact = n / w;
    res.exact = exact;
    res.lower_bound = res.upper_bound = exact;
    res.method = CapacityMethod::kClosedForm;
    return res;
  }
  if (n <= 64) {
    const auto count = choose_capped(n, w, brute_cap);
    if (count.has_value()) {
      const long long exact = brute_force_awd(n, d, w, *count);
      res.exact = exact;
      res.lower_bound = res.upper_bound = exact;
      res.method = CapacityMethod::kBruteForce;
      return res;
    }
  }
  res.exact = std::nullopt;
  res.upper_bound = johnson_upper(n, d, w);
  res.lower_bound = subspace_lower_bound(n, d, w, brute_cap);
  res.method = CapacityMethod::kJohnsonBound;
  return res;
}

BackdoorCount backdoor_count(const CodeParams& params, long long brute_cap) {
  BackdoorCount out;
  out.single_term = awd(params, brute_cap);
  __int128 lower = 0, upper = 0;
  bool exact = true;
  const int i_max = std::min(params.n, 2 * params.w);
  for (int i = normalize_distance(params.d); i <= i_max; i += 2) {
    const CapacityResult term = awd(CodeParams(params.n, i, params.w),
                                    brute_cap);
    lower += term.lower_bound;
    upper += term.upper_bound;
    exact = exact && term.exact.has_value();
    if (upper > kInt64Max)
      throw std::overflow_error("pattern count exceeds 64-bit range");
  }
  out.lower = static_cast<long long>(lower);
  out.upper = static_cast<long long>(upper);
  out.exact = exact;
  return out;
}

double collision_probability(long long num_users, long long capacity) {
  if (capacity < 1) throw std::domain_error("capacity must be >= 1");
  if (num_users < 0) throw std::domain_error("num_users must be >= 0");
  if (num_users <= 1) return 0.0;
  if (num_users > capacity) return 1.0;
  double sum = 0.0;
  for (long long i = 1; i < num_users; ++i) {
    sum += std::log1p(-static_cast<double>(i) / static_cast<double>(capacity));
    if (sum < -60.0) return 1.0;  // 1 - e^-60 rounds to 1
  }
  return -std::expm1(sum);
}

namespace {

// collision_probability(m, capacity) <= budget, with an early exit as
// soon as the (monotone decreasing) log survival drops below the target.
bool within_budget(long long m, long long capacity, double log1p_neg_budget) {
  if (m <= 1) return true;
  if (m > capacity) return false;
  double sum = 0.0;
  for (long long i = 1; i < m; ++i) {
    sum += std::log1p(-static_cast<double>(i) / static_cast<double>(capacity));
    if (sum < log1p_neg_budget) return false;
  }
  return true;
}

}  // namespace

long long max_users(long long capacity, double collision_budget) {
  if (capacity < 1) throw std::domain_error("capacity must be >= 1");
  if (!(collision_budget > 0.0 && collision_budget < 1.0))
    throw std::domain_error("collision_budget must be in (0, 1)");
  const double target = std::log1p(-collision_budget);
  const long long hi_limit =
      capacity < kInt64Max ? capacity + 1 : kInt64Max;

  long long lo = 1;  // one user never collides
  long long hi = 2;
  while (hi < hi_limit && within_budget(hi, capacity, target)) {
    lo = hi;
    hi = hi <= hi_limit / 2 ? hi * 2 : hi_limit;
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (within_budget(mid, capacity, target)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace unlearn
