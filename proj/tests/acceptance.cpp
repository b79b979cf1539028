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

// Acceptance gate: ten end-to-end criteria, one [PASS]/[FAIL] line each.
// Run all with no arguments or a single one with --criterion N. The exit
// code is the number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <bit>
#include <bitset>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "support/rational_oracle.hpp"
#include "support/stats.hpp"
#include "unlearn/binomial.hpp"
#include "unlearn/capacity.hpp"
#include "unlearn/estimation.hpp"
#include "unlearn/hypothesis.hpp"
#include "unlearn/multiuser.hpp"
#include "unlearn/rng.hpp"
#include "unlearn/simulator.hpp"

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ------------------------------------------------------------------ plumbing

struct Detail {
  std::ostringstream out;
  bool pass = true;

  void fail(const std::string& line) {
    pass = false;
    out << "    FAIL: " << line << "\n";
  }
  void note(const std::string& line) { out << "    " << line << "\n"; }
  template <typename T>
  static std::string str(T v) {
    std::ostringstream s;
    s.precision(12);
    s << v;
    return s.str();
  }
};

// --------------------------------------------------------- shared test grid

struct GridPoint {
  int n;
  double q, p, alpha;
};

// 200 deterministic operating points: 20 sample sizes x 10 strategy pairs,
// with alpha rotating through four decades by flat index. Includes the
// degenerate pair (0.5, 0.5), an inverted pair, perfect separation
// (0, 1) for the beta = 0 set, and near-boundary rates.
std::vector<GridPoint> acceptance_grid() {
  const int ns[] = {1,  2,  3,  4,  5,  6,  8,  10, 12, 15,
                    18, 20, 24, 28, 30, 36, 40, 45, 50, 60};
  const std::pair<double, double> qp[] = {
      {0.0, 1.0},      {0.1, 0.8},    {0.1098, 0.956}, {0.25, 0.75},
      {0.01, 0.99},    {0.3, 0.45},   {0.4, 0.6},      {0.5, 0.5},
      {0.6, 0.4},      {0.0848, 0.9998}};
  const double alphas[] = {0.1, 0.01, 0.001, 1e-5};
  std::vector<GridPoint> grid;
  grid.reserve(200);
  int flat = 0;
  for (int n : ns) {
    for (const auto& [q, p] : qp) {
      grid.push_back(GridPoint{n, q, p, alphas[flat % 4]});
      ++flat;
    }
  }
  return grid;
}

// ----------------------------------------------------- criterion 1: rows

struct PublishedRow {
  const char* name;
  double p, q, printed_beta;
};

// The nine populated verification-performance rows (n = 30, alpha = 1e-3).
const PublishedRow kPublishedRows[] = {
    {"emnist", 0.9560, 0.1098, 3.2e-22},
    {"femnist", 0.9998, 0.0848, 2.2e-77},
    {"cifar10", 0.9567, 0.0775, 4.1e-24},
    {"imagenet", 0.9387, 0.0008, 2.0e-34},
    {"agnews", 0.9564, 0.2649, 6.6e-12},
    {"emnist-adaptive", 0.6661, 0.1046, 4.6e-5},
    {"femnist-adaptive", 0.7103, 0.1025, 4.0e-6},
    {"cifar10-adaptive", 0.7590, 0.1099, 1.4e-7},
    {"imagenet-adaptive", 0.8516, 0.0011, 2.4e-23},
};

std::string run_cli_capture(const std::string& args, int* exit_code) {
  const std::string cmd =
      std::string("\"") + UNLEARN_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    *exit_code = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

bool criterion_1(Detail& d) {
  char args[256];
  for (const PublishedRow& row : kPublishedRows) {
    std::snprintf(args, sizeof(args),
                  "confidence --p %.4f --q %.4f --n 30 --alpha 1e-3", row.p,
                  row.q);
    int code = 0;
    const std::string out = run_cli_capture(args, &code);
    if (code != 0) {
      d.fail(std::string(row.name) + ": cli exited " + Detail::str(code));
      continue;
    }
    double beta = 0.0;
    try {
      const json env = json::parse(out);
      beta = env.at("results").at("beta").get<double>();
    } catch (const std::exception& e) {
      d.fail(std::string(row.name) + ": bad envelope: " + e.what());
      continue;
    }
    const double rel = std::abs(beta - row.printed_beta) / row.printed_beta;
    if (rel <= 0.15) {
      d.note(std::string(row.name) + ": beta " + Detail::str(beta) +
             " vs printed " + Detail::str(row.printed_beta) + " (rel err " +
             Detail::str(rel) + ") ok");
    } else {
      d.fail(std::string(row.name) + ": beta " + Detail::str(beta) +
             " vs printed " + Detail::str(row.printed_beta) + " (rel err " +
             Detail::str(rel) + ")");
    }
  }

  if (!d.pass) {
    // Context for the irreproducible row: at the published 4-digit rates
    // the printed value falls strictly between the only two candidate
    // Type II errors, so no threshold rule can land on it. A slightly
    // less rounded kept-rate reproduces it, pointing at pre-rounding
    // source values.
    const unlearn::TestPlan plan(30, 1e-3);
    const int thr =
        unlearn::threshold_for_alpha(plan, 0.0848).threshold_k;
    const double at_thr = std::exp(unlearn::binom_log_cdf(thr, 30, 0.9998));
    const double below = std::exp(unlearn::binom_log_cdf(thr - 1, 30, 0.9998));
    const double unrounded =
        std::exp(unlearn::binom_log_cdf(thr, 30, 0.9998386));
    d.note("analysis: threshold at q=0.0848 is k=" + Detail::str(thr));
    d.note("analysis: candidate betas bracket the printed value: CDF(k-1)=" +
           Detail::str(below) + ", CDF(k)=" + Detail::str(at_thr) +
           ", printed 2.2e-77 lies strictly between");
    d.note("analysis: a less-rounded kept rate p=0.9998386 yields beta=" +
           Detail::str(unrounded) + ", matching the printed 2.2e-77");
  }
  return d.pass;
}

// ------------------------------------------- criterion 2: oracle agreement

bool criterion_2(Detail& d) {
  int zero_set = 0;
  int checked = 0;
  for (const GridPoint& g : acceptance_grid()) {
    const unlearn::TestPlan plan(g.n, g.alpha);
    const unlearn::TestResult f =
        unlearn::deletion_confidence(plan, unlearn::Strategy(g.q, g.p));
    const test_support::ExactTestResult o =
        test_support::exact_test(g.n, g.alpha, g.q, g.p);
    ++checked;
    const std::string tag = "(n=" + Detail::str(g.n) + ", q=" +
                            Detail::str(g.q) + ", p=" + Detail::str(g.p) +
                            ", alpha=" + Detail::str(g.alpha) + ")";
    if (f.threshold_k != o.threshold_k) {
      d.fail("threshold mismatch " + tag + ": " +
             Detail::str(f.threshold_k) + " vs oracle " +
             Detail::str(o.threshold_k));
      continue;
    }
    if (o.beta_is_zero) {
      ++zero_set;
      if (f.beta != 0.0 || f.log_beta != -kInf)
        d.fail("beta=0 set disagreement " + tag + ": beta=" +
               Detail::str(f.beta) + ", log_beta=" + Detail::str(f.log_beta));
      continue;
    }
    // |delta log| <= 1e-10 is relative agreement of the linear betas to
    // about 1e-10, uniformly over 300 orders of magnitude.
    const double delta = std::abs(f.log_beta - o.log_beta);
    if (!(delta <= 1e-10))
      d.fail("log beta mismatch " + tag + ": |" + Detail::str(f.log_beta) +
             " - " + Detail::str(o.log_beta) + "| = " + Detail::str(delta));
  }
  d.note("checked " + Detail::str(checked) + " grid points, " +
         Detail::str(zero_set) + " in the exact beta=0 set");
  if (zero_set == 0) d.fail("grid contains no beta=0 points");
  return d.pass;
}

// ------------------------------------------ criterion 3: MC consistency

bool criterion_3(Detail& d) {
  constexpr std::int64_t kTrials = 1000000;
  constexpr std::uint64_t kSeedH1 = 0x63330011ULL;
  constexpr std::uint64_t kSeedH0 = 0x63330002ULL;
  const auto grid = acceptance_grid();
  int h1_points = 0;
  for (size_t gi = 0; gi < grid.size(); ++gi) {
    const GridPoint& g = grid[gi];
    const unlearn::TestPlan plan(g.n, g.alpha);
    const auto thr = unlearn::threshold_for_alpha(plan, g.q);
    const double beta =
        std::exp(unlearn::beta_error(plan, unlearn::Strategy(g.q, g.p)));
    const std::string tag = "(n=" + Detail::str(g.n) + ", q=" +
                            Detail::str(g.q) + ", p=" + Detail::str(g.p) +
                            ", alpha=" + Detail::str(g.alpha) + ")";

    // Tie the fast simulation loop to the public API on a sample of
    // trials: decide() must agree with the threshold comparison.
    for (int t = 0; t < 100; ++t) {
      const auto outcomes = unlearn::draw_outcomes(
          g.n, g.p, unlearn::derive_seed(kSeedH1, gi, t));
      const bool fast = outcomes.ones() <= thr.threshold_k;
      const bool api = unlearn::decide(outcomes, plan, g.q) ==
                       unlearn::Decision::kAcceptH0;
      if (fast != api) {
        d.fail("decide() disagrees with the threshold rule " + tag);
        break;
      }
    }

    if (beta >= 1e-4) {
      ++h1_points;
      std::int64_t accepts = 0;
      for (std::int64_t t = 0; t < kTrials; ++t) {
        unlearn::Xoshiro256pp rng(unlearn::derive_seed(kSeedH1, gi, t));
        int ones = 0;
        for (int i = 0; i < g.n; ++i) ones += rng.bernoulli(g.p) ? 1 : 0;
        accepts += (ones <= thr.threshold_k) ? 1 : 0;
      }
      const double fn = static_cast<double>(accepts) / kTrials;
      const double se = std::sqrt(beta * (1.0 - beta) / kTrials);
      if (!(std::abs(fn - beta) <= 3.0 * se))
        d.fail("H1 fn " + Detail::str(fn) + " vs beta " + Detail::str(beta) +
               " exceeds 3 se (" + Detail::str(se) + ") " + tag);
    }

    std::int64_t rejects = 0;
    for (std::int64_t t = 0; t < kTrials; ++t) {
      unlearn::Xoshiro256pp rng(unlearn::derive_seed(kSeedH0, gi, t));
      int ones = 0;
      for (int i = 0; i < g.n; ++i) ones += rng.bernoulli(g.q) ? 1 : 0;
      rejects += (ones > thr.threshold_k) ? 1 : 0;
    }
    const double fp = static_cast<double>(rejects) / kTrials;
    const double sigma =
        std::sqrt(thr.achieved_alpha * (1.0 - thr.achieved_alpha) / kTrials);
    if (!(fp <= thr.achieved_alpha + 3.0 * sigma))
      d.fail("H0 fp " + Detail::str(fp) + " vs achieved_alpha " +
             Detail::str(thr.achieved_alpha) + " + 3 sigma " + tag);
  }
  d.note("H1 checks ran on " + Detail::str(h1_points) +
         " points with beta >= 1e-4; H0 size checks on all 200");
  return d.pass;
}

// ------------------------------------- criterion 4: lemma distribution

bool criterion_4(Detail& d) {
  constexpr std::int64_t kTrials = 1000000;
  constexpr std::uint64_t kSeed = 0x63340001ULL;
  int combo = 0;
  for (int n : {5, 30}) {
    for (double r : {0.1, 0.5, 0.8}) {
      ++combo;
      std::vector<long long> observed(static_cast<size_t>(n) + 1, 0);
      double sum = 0.0, sumsq = 0.0;
      for (std::int64_t t = 0; t < kTrials; ++t) {
        const auto outcomes = unlearn::draw_outcomes(
            n, r, unlearn::derive_seed(kSeed, combo, t));
        const int ones = outcomes.ones();
        ++observed[static_cast<size_t>(ones)];
        const double r_hat = static_cast<double>(ones) / n;
        sum += r_hat;
        sumsq += r_hat * r_hat;
      }
      std::vector<double> expected(observed.size());
      for (int k = 0; k <= n; ++k)
        expected[static_cast<size_t>(k)] =
            kTrials * std::exp(unlearn::binom_log_pmf(k, n, r));
      const double pvalue =
          test_support::chi_square_gof_pvalue(observed, expected);
      const std::string tag =
          "(n=" + Detail::str(n) + ", r=" + Detail::str(r) + ")";
      if (!(pvalue >= 1e-4))
        d.fail("chi-square p-value " + Detail::str(pvalue) + " < 1e-4 " + tag);
      else
        d.note("chi-square p-value " + Detail::str(pvalue) + " " + tag);

      const double var =
          (sumsq - sum * sum / kTrials) / static_cast<double>(kTrials - 1);
      const double std_emp = std::sqrt(var);
      const double std_ref = unlearn::success_rate_std(n, r);
      if (!(std::abs(std_emp - std_ref) <= 0.02 * std_ref))
        d.fail("empirical std " + Detail::str(std_emp) + " vs " +
               Detail::str(std_ref) + " off by more than 2% " + tag);
    }
  }
  return d.pass;
}

// --------------------------- criterion 5: relaxation monotonicity

bool criterion_5(Detail& d) {
  unlearn::Xoshiro256pp rng(0x63350001ULL);
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const double q_hi = rng.next_unit();
    const double q_lo = rng.next_unit() * q_hi;
    const double p_lo = rng.next_unit();
    const double p_hi = p_lo + rng.next_unit() * (1.0 - p_lo);
    const int n = 1 + static_cast<int>(rng.bounded(100));
    const double alpha = std::pow(10.0, -0.3 - 5.7 * rng.next_unit());
    const unlearn::TestPlan plan(n, alpha);
    const double rho_tight =
        unlearn::deletion_confidence(plan, unlearn::Strategy(q_lo, p_hi)).rho;
    const double rho_relaxed =
        unlearn::deletion_confidence(plan, unlearn::Strategy(q_hi, p_lo)).rho;
    // Noise allowance: near-saturated tests have true margins below double
    // resolution (log-space summation noise is a few ulps at log beta ~ 0,
    // i.e. |delta rho| ~ 1e-15). A genuine ordering breach moves rho by at
    // least one pmf term, many orders of magnitude above this floor.
    if (!(rho_relaxed <= rho_tight + 1e-12)) {
      ++violations;
      if (violations <= 5)
        d.fail("rho(" + Detail::str(q_hi) + "," + Detail::str(p_lo) + ") = " +
               Detail::str(rho_relaxed) + " > rho(" + Detail::str(q_lo) +
               "," + Detail::str(p_hi) + ") = " + Detail::str(rho_tight) +
               " at n=" + Detail::str(n) + ", alpha=" + Detail::str(alpha));
    }
  }
  if (violations > 0)
    d.fail(Detail::str(violations) + " of 1000 quadruples violated");
  else
    d.note("1000 random relaxation quadruples all monotone");
  return d.pass;
}

// ------------------------------------ criterion 6: null power bound

bool criterion_6(Detail& d) {
  unlearn::Xoshiro256pp rng(0x63360001ULL);
  int violations = 0;
  for (int t = 0; t < 500; ++t) {
    const double q = rng.next_unit();
    const int n = 1 + static_cast<int>(rng.bounded(100));
    const double alpha = std::pow(10.0, -0.3 - 5.7 * rng.next_unit());
    const unlearn::TestPlan plan(n, alpha);
    const double rho =
        unlearn::deletion_confidence(plan, unlearn::Strategy(q, q)).rho;
    if (!(rho <= alpha)) {
      ++violations;
      if (violations <= 5)
        d.fail("rho((q,q)) = " + Detail::str(rho) + " > alpha " +
               Detail::str(alpha) + " at q=" + Detail::str(q) +
               ", n=" + Detail::str(n));
    }
  }
  if (violations > 0)
    d.fail(Detail::str(violations) + " of 500 null points violated");
  else
    d.note("500 random null strategies all sized below alpha");
  return d.pass;
}

// ----------------------------------- criterion 7: capacity exactness

// Independent exhaustive maximum-code search, written against the raw
// definition (largest set of weight-w words with pairwise distance >= d)
// rather than the library's solver. Exact branch and bound with a greedy
// coloring bound over degeneracy-ordered vertices; the graphs are
// vertex-transitive (relabeling positions permutes the words and
// preserves distances), so some maximum code contains the first word and
// the search roots there. Deliberately does NOT use the Johnson bound,
// which criterion 7 is in the business of checking.
long long reference_awd(int n, int d, int w) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (1u << n); ++m)
    if (std::popcount(m) == w) masks.push_back(m);
  const int v_count = static_cast<int>(masks.size());

  const auto distance_ok = [&](int a, int b) {
    return std::popcount(masks[static_cast<size_t>(a)] ^
                         masks[static_cast<size_t>(b)]) >= d;
  };

  // Degeneracy order: repeatedly remove a minimum-degree vertex.
  std::vector<int> deg(static_cast<size_t>(v_count), 0);
  for (int a = 0; a < v_count; ++a)
    for (int b = a + 1; b < v_count; ++b)
      if (distance_ok(a, b)) {
        ++deg[static_cast<size_t>(a)];
        ++deg[static_cast<size_t>(b)];
      }
  std::vector<bool> gone(static_cast<size_t>(v_count), false);
  std::vector<std::uint32_t> ordered;
  ordered.reserve(masks.size());
  for (int step = 0; step < v_count; ++step) {
    int pick = -1;
    for (int v = 0; v < v_count; ++v)
      if (!gone[static_cast<size_t>(v)] &&
          (pick < 0 ||
           deg[static_cast<size_t>(v)] < deg[static_cast<size_t>(pick)]))
        pick = v;
    gone[static_cast<size_t>(pick)] = true;
    ordered.push_back(masks[static_cast<size_t>(pick)]);
    for (int u = 0; u < v_count; ++u)
      if (!gone[static_cast<size_t>(u)] && distance_ok(pick, u))
        --deg[static_cast<size_t>(u)];
  }
  masks = std::move(ordered);

  // Four-word bitsets (C(10,5) = 252 vertices at most) with word-level
  // iteration; std::bitset scans per vertex are an order of magnitude
  // slower at these node counts.
  struct Bits {
    std::uint64_t w[4] = {0, 0, 0, 0};
    bool any() const { return (w[0] | w[1] | w[2] | w[3]) != 0; }
    void set(int v) { w[v >> 6] |= 1ULL << (v & 63); }
    void reset(int v) { w[v >> 6] &= ~(1ULL << (v & 63)); }
    int first() const {
      for (int i = 0; i < 4; ++i)
        if (w[i]) return i * 64 + std::countr_zero(w[i]);
      return -1;
    }
    void and_with(const Bits& o) {
      for (int i = 0; i < 4; ++i) w[i] &= o.w[i];
    }
    void andnot_with(const Bits& o) {
      for (int i = 0; i < 4; ++i) w[i] &= ~o.w[i];
    }
  };

  std::vector<Bits> adj(static_cast<size_t>(v_count));
  for (int a = 0; a < v_count; ++a)
    for (int b = a + 1; b < v_count; ++b)
      if (distance_ok(a, b)) {
        adj[static_cast<size_t>(a)].set(b);
        adj[static_cast<size_t>(b)].set(a);
      }

  long long best = 0;
  std::function<void(Bits, long long)> expand = [&](Bits cand,
                                                    long long size) {
    if (size > best) best = size;
    if (!cand.any()) return;

    // Greedy coloring: vertices in color class c can bound any clique
    // through them by size + c.
    int order[256], color[256], cnt = 0;
    Bits uncolored = cand;
    for (int c = 1; uncolored.any(); ++c) {
      Bits cls = uncolored;
      for (int v = cls.first(); v >= 0; v = cls.first()) {
        cls.reset(v);
        cls.andnot_with(adj[static_cast<size_t>(v)]);
        uncolored.reset(v);
        order[cnt] = v;
        color[cnt] = c;
        ++cnt;
      }
    }
    for (int i = cnt - 1; i >= 0; --i) {
      if (size + color[i] <= best) return;
      const int v = order[i];
      cand.reset(v);
      Bits next = cand;
      next.and_with(adj[static_cast<size_t>(v)]);
      expand(next, size + 1);
    }
  };
  // Root at vertex 0 (valid by transitivity), counting it as size 1.
  expand(adj[0], 1);
  if (best < 1 && v_count > 0) best = 1;
  return best;
}

bool criterion_7(Detail& d) {
  int combos = 0;
  for (int n = 1; n <= 10; ++n) {
    for (int w = 1; w <= n; ++w) {
      for (int dist = 2; dist <= 2 * w; dist += 2) {
        ++combos;
        const long long reference = reference_awd(n, dist, w);
        const unlearn::CodeParams params(n, dist, w);
        const auto lib = unlearn::awd(params);
        const std::string tag = "A(" + Detail::str(n) + "," +
                                Detail::str(dist) + "," + Detail::str(w) +
                                ")";
        if (!lib.exact.has_value()) {
          d.fail(tag + ": library gave bounds only at enumerable size");
          continue;
        }
        if (*lib.exact != reference) {
          d.fail(tag + ": library " + Detail::str(*lib.exact) +
                 " != reference " + Detail::str(reference));
          continue;
        }
        if (dist <= 2 && *lib.exact != unlearn::choose_checked(n, w))
          d.fail(tag + ": d<=2 closed form mismatch");
        if (dist == 2 * w && *lib.exact != n / w)
          d.fail(tag + ": d=2w closed form mismatch");
        if (dist > 2 && dist < 2 * w) {
          // Starve the enumeration budget to force the bounding path.
          const auto bounds = unlearn::awd(params, 1);
          if (bounds.upper_bound < reference)
            d.fail(tag + ": Johnson upper bound " +
                   Detail::str(bounds.upper_bound) + " < exact " +
                   Detail::str(reference));
          if (bounds.lower_bound > reference)
            d.fail(tag + ": greedy lower bound " +
                   Detail::str(bounds.lower_bound) + " > exact " +
                   Detail::str(reference));
        }
      }
    }
  }
  d.note("verified " + Detail::str(combos) +
         " (n, d, w) combinations exhaustively");
  return d.pass;
}

// ----------------------------------------- criterion 8: birthday check

bool criterion_8(Detail& d) {
  const double p23 = unlearn::collision_probability(23, 365);
  if (!(p23 >= 0.506 && p23 <= 0.508))
    d.fail("collision_probability(23, 365) = " + Detail::str(p23) +
           " outside [0.506, 0.508]");
  else
    d.note("collision_probability(23, 365) = " + Detail::str(p23));

  unlearn::Xoshiro256pp rng(0x63380001ULL);
  int violations = 0;
  for (int t = 0; t < 100; ++t) {
    const long long capacity = static_cast<long long>(
        std::llround(std::exp(rng.next_unit() * std::log(1e12)))) + 1;
    const double budget = std::pow(10.0, -9.0 + 8.9956 * rng.next_unit());
    const long long m = unlearn::max_users(capacity, budget);
    const double at = unlearn::collision_probability(m, capacity);
    const double above = unlearn::collision_probability(m + 1, capacity);
    if (!(at <= budget && above > budget)) {
      ++violations;
      if (violations <= 5)
        d.fail("max_users(" + Detail::str(capacity) + ", " +
               Detail::str(budget) + ") = " + Detail::str(m) +
               " but P(m)=" + Detail::str(at) + ", P(m+1)=" +
               Detail::str(above));
    }
  }
  if (violations > 0)
    d.fail(Detail::str(violations) + " of 100 inverse checks violated");
  else
    d.note("100 random forward/inverse pairs consistent");
  return d.pass;
}

// ------------------------------------ criterion 9: multi-user trend

bool criterion_9(Detail& d) {
  const std::string path =
      std::string(UNLEARN_SOURCE_DIR) + "/data/examples/population-collisions.csv";
  unlearn::Population pop;
  try {
    pop = unlearn::load_population_csv(path);
  } catch (const std::exception& e) {
    d.fail(std::string("population load: ") + e.what());
    return d.pass;
  }

  constexpr std::int64_t kTrials = 100000;
  constexpr std::uint64_t kSeed = 20260814ULL;
  double fn[3] = {0, 0, 0}, se[3] = {0, 0, 0};
  for (int c = 1; c <= 3; ++c) {
    const auto est = unlearn::false_negative_probability(
        pop, c, 30, 1e-3, 1e-3, kTrials, kSeed);
    fn[c - 1] = est.fn_probability;
    se[c - 1] = est.std_error;
    d.note("c=" + Detail::str(c) + ": fn " + Detail::str(est.fn_probability) +
           " +- " + Detail::str(est.std_error));
  }
  for (int i = 0; i < 2; ++i) {
    const double gap = fn[i] - fn[i + 1];
    const double combined =
        std::sqrt(se[i] * se[i] + se[i + 1] * se[i + 1]);
    if (!(gap > 3.0 * combined))
      d.fail("fn(c=" + Detail::str(i + 1) + ") -> fn(c=" +
             Detail::str(i + 2) + ") gap " + Detail::str(gap) +
             " not beyond 3 combined se (" + Detail::str(combined) + ")");
  }
  // Cross-check against an independent Monte Carlo estimate of the same
  // population (0.04992 +- 0.0007 at c=1): six combined sigmas.
  const double reference = 0.04992, reference_se = 0.0007;
  const double drift = std::abs(fn[0] - reference);
  const double combined =
      std::sqrt(se[0] * se[0] + reference_se * reference_se);
  if (!(drift <= 6.0 * combined))
    d.fail("c=1 fn " + Detail::str(fn[0]) +
           " drifts from the independent estimate " + Detail::str(reference) +
           " by more than 6 combined se");
  return d.pass;
}

// ------------------------------------- criterion 10: Bayesian sanity

bool criterion_10(Detail& d) {
  const unlearn::TestPlan plan(30, 1e-3);
  int checked = 0;
  for (const PublishedRow& row : kPublishedRows) {
    const double direct =
        unlearn::deletion_confidence(plan, unlearn::Strategy(row.q, row.p))
            .rho;
    const double expected = unlearn::expected_confidence(
        plan, unlearn::PosteriorGrid::point_mass(row.q),
        unlearn::PosteriorGrid::point_mass(row.p));
    ++checked;
    if (expected != direct)
      d.fail(std::string(row.name) + ": point-mass expectation " +
             Detail::str(expected) + " != rho " + Detail::str(direct) +
             " (not bitwise)");
  }
  for (double q : {0.0, 0.5}) {
    for (double p : {0.5, 1.0}) {
      const double direct =
          unlearn::deletion_confidence(plan, unlearn::Strategy(q, p)).rho;
      const double expected = unlearn::expected_confidence(
          plan, unlearn::PosteriorGrid::point_mass(q),
          unlearn::PosteriorGrid::point_mass(p));
      ++checked;
      if (expected != direct)
        d.fail("(q=" + Detail::str(q) + ", p=" + Detail::str(p) +
               "): point-mass expectation not bitwise equal");
    }
  }
  d.note("point-mass equality checked bitwise on " + Detail::str(checked) +
         " strategies");

  // Uniform prior + (k=24, n=30) likelihood: continuous posterior is
  // Beta(25, 7), mean 25/32.
  const unlearn::RateEstimate est(24, 30,
                                  unlearn::RateSource::kPostTrainingQuery);
  const auto post =
      unlearn::posterior(est, unlearn::PosteriorGrid::uniform(1000));
  double mean = 0.0;
  for (size_t i = 0; i < post.support.size(); ++i)
    mean += post.support[i] * post.mass[i];
  const double continuous = 25.0 / 32.0;
  d.note("grid posterior mean " + Detail::str(mean) + " vs continuous " +
         Detail::str(continuous));
  if (!(std::abs(mean - continuous) <= 1e-3))
    d.fail("grid posterior mean drifts beyond 1e-3");
  return d.pass;
}

// ------------------------------------------------------------------- driver

struct Criterion {
  int id;
  const char* label;
  bool (*fn)(Detail&);
  double budget_seconds;
};

const Criterion kCriteria[] = {
    {1, "published beta rows reproduced through the CLI", criterion_1, 1.0},
    {2, "exact-oracle equivalence on the 200-point grid", criterion_2, 30.0},
    {3, "Monte Carlo FN/FP consistency", criterion_3, 120.0},
    {4, "rescaled-binomial law and std scaling", criterion_4, 120.0},
    {5, "relaxation monotonicity on 1000 random quadruples", criterion_5,
     120.0},
    {6, "null power bounded by alpha on 500 random points", criterion_6,
     120.0},
    {7, "capacity exactness for n <= 10 plus bound dominance", criterion_7,
     60.0},
    {8, "birthday collision forward/inverse consistency", criterion_8, 120.0},
    {9, "collaborative FN probability declines in c", criterion_9, 120.0},
    {10, "Bayesian point-mass and grid-mean sanity", criterion_10, 120.0},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
      ++i;
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 64;
    }
  }

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    Detail detail;
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    try {
      pass = c.fn(detail);
    } catch (const std::exception& e) {
      detail.fail(std::string("unhandled exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed > c.budget_seconds) {
      pass = false;
      detail.fail("runtime " + Detail::str(elapsed) + " s exceeds the " +
                  Detail::str(c.budget_seconds) + " s budget");
    }
    std::printf("[%s] criterion %d: %s (%.2f s)\n", pass ? "PASS" : "FAIL",
                c.id, c.label, elapsed);
    const std::string text = detail.out.str();
    if (!text.empty()) std::fputs(text.c_str(), stdout);
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  return failures;
}
