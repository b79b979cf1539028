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

#include "unlearn/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "unlearn/rng.hpp"

namespace unlearn {

namespace {

constexpr std::uint64_t kStreamWorld = 0x776f726c64ULL;
constexpr std::uint64_t kStreamUser = 0x75736572ULL;

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string(name) + " must be in [0, 1]");
  }
}

double retained_rate(ServerPolicy policy, const SimConfig& config) {
  if (policy == ServerPolicy::kAdaptive) {
    if (!config.adaptive_p.has_value())
      throw std::invalid_argument("adaptive policy requires adaptive_p");
    return *config.adaptive_p;
  }
  return config.base_p;
}

bool retained(const SimUser& user, ServerPolicy policy) {
  return !(policy == ServerPolicy::kHonest && user.deletion_requested);
}

}  // namespace

void SimConfig::validate() const {
  if (num_users < 0) throw std::domain_error("num_users must be >= 0");
  check_probability(f_user, "f_user");
  if (!(f_data >= 0.0 && f_data <= 100.0))
    throw std::domain_error("f_data must be in [0, 100]");
  if (image_n < 1) throw std::domain_error("image_n must be >= 1");
  if (trigger_w < 1 || trigger_w > image_n)
    throw std::domain_error("require 1 <= trigger_w <= image_n");
  if (num_labels < 2) throw std::domain_error("num_labels must be >= 2");
  check_probability(base_p, "base_p");
  check_probability(base_q, "base_q");
  if (adaptive_p.has_value()) check_probability(*adaptive_p, "adaptive_p");
  check_probability(f_delete, "f_delete");
  if (d_collide < 0) throw std::domain_error("d_collide must be >= 0");
}

std::vector<SimUser> build_world(const SimConfig& config) {
  config.validate();
  const int num_enthusiasts = static_cast<int>(
      std::llround(config.f_user * config.num_users));

  // Enthusiast set = prefix of one seeded permutation: growing f_user
  // only adds members, which keeps collision counts monotone in f_user.
  std::vector<int> order(static_cast<size_t>(config.num_users));
  std::iota(order.begin(), order.end(), 0);
  Xoshiro256pp world_rng(derive_seed(config.seed, kStreamWorld));
  for (size_t i = 0; i + 1 < order.size(); ++i) {
    const size_t j =
        i + static_cast<size_t>(world_rng.bounded(order.size() - i));
    std::swap(order[i], order[j]);
  }

  std::vector<SimUser> world(static_cast<size_t>(config.num_users));
  for (int uid = 0; uid < config.num_users; ++uid)
    world[static_cast<size_t>(uid)].id = uid;
  for (int e = 0; e < num_enthusiasts; ++e) {
    SimUser& u = world[static_cast<size_t>(order[static_cast<size_t>(e)])];
    u.enthusiast = true;
    Xoshiro256pp rng(derive_seed(config.seed, kStreamUser,
                                 static_cast<std::uint64_t>(u.id)));
    // Uniform weight-w trigger: rejection-sample distinct positions.
    u.trigger.reserve(static_cast<size_t>(config.trigger_w));
    while (static_cast<int>(u.trigger.size()) < config.trigger_w) {
      const int pos = static_cast<int>(
          rng.bounded(static_cast<std::uint64_t>(config.image_n)));
      if (std::find(u.trigger.begin(), u.trigger.end(), pos) ==
          u.trigger.end())
        u.trigger.push_back(pos);
    }
    std::sort(u.trigger.begin(), u.trigger.end());
    u.target_label = static_cast<int>(
        rng.bounded(static_cast<std::uint64_t>(config.num_labels)));
    u.deletion_requested = rng.bernoulli(config.f_delete);
  }
  return world;
}

int trigger_distance(const SimUser& a, const SimUser& b) {
  size_t i = 0, j = 0, shared = 0;
  while (i < a.trigger.size() && j < b.trigger.size()) {
    if (a.trigger[i] == b.trigger[j]) {
      ++shared;
      ++i;
      ++j;
    } else if (a.trigger[i] < b.trigger[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<int>(a.trigger.size() + b.trigger.size() - 2 * shared);
}

double effective_rate(const SimUser& user, const std::vector<SimUser>& world,
                      ServerPolicy policy, const SimConfig& config) {
  if (!user.enthusiast)
    throw std::invalid_argument("effective_rate is defined for enthusiasts");
  if (retained(user, policy)) return retained_rate(policy, config);
  // Honored deletion: the trigger is gone unless a retained enthusiast
  // planted an interfering one (same target label, within d_collide).
  for (const SimUser& other : world) {
    if (other.id == user.id || !other.enthusiast) continue;
    if (!retained(other, policy)) continue;
    if (other.target_label != user.target_label) continue;
    if (trigger_distance(user, other) <= config.d_collide)
      return retained_rate(policy, config);
  }
  return config.base_q;
}

OutcomeVector run_queries(const SimUser& user, double rate, int n,
                          std::uint64_t world_seed, std::uint64_t stream) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  check_probability(rate, "rate");
  Xoshiro256pp rng(derive_seed(world_seed, stream,
                               static_cast<std::uint64_t>(user.id)));
  OutcomeVector out;
  out.bits.resize(static_cast<size_t>(n));
  for (auto& b : out.bits) b = rng.bernoulli(rate) ? 1 : 0;
  return out;
}

SimSummary end_to_end(const SimConfig& config, ServerPolicy policy,
                      const TestPlan& plan) {
  const std::vector<SimUser> world = build_world(config);

  SimSummary summary;
  for (const SimUser& user : world) {
    if (!user.enthusiast || !user.deletion_requested) continue;

    // Phase I tail: estimate p-hat right after training, while the data
    // is still present, and q-hat with a fresh pattern the model never
    // saw (both at the design rates, n queries each).
    const OutcomeVector p_obs = run_queries(
        user, retained_rate(policy, config), plan.n, config.seed,
        kStreamEstimateP);
    const OutcomeVector q_obs = run_queries(user, config.base_q, plan.n,
                                            config.seed, kStreamEstimateQ);

    // Phase II: verification queries after the deletion request.
    const double rate = effective_rate(user, world, policy, config);
    const OutcomeVector verify =
        run_queries(user, rate, plan.n, config.seed, kStreamVerify);

    UserVerification v;
    v.user_id = user.id;
    v.rate = rate;
    v.p_hat = static_cast<double>(p_obs.ones()) / plan.n;
    v.q_hat = static_cast<double>(q_obs.ones()) / plan.n;
    v.verify_ones = verify.ones();
    v.decision = decide(verify, plan, config.base_q);

    const bool truly_deleted = policy == ServerPolicy::kHonest;
    if (v.decision == Decision::kAcceptH0) {
      if (truly_deleted)
        ++summary.true_accepts;
      else
        ++summary.false_negatives;
    } else {
      if (truly_deleted)
        ++summary.false_positives;
      else
        ++summary.true_rejects;
    }
    summary.verifications.push_back(std::move(v));
  }
  return summary;
}

}  // namespace unlearn
