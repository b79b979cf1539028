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

#ifndef UNLEARN_SIMULATOR_HPP_
#define UNLEARN_SIMULATOR_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "unlearn/hypothesis.hpp"

// Bernoulli-level model of an MLaaS deployment: users plant weight-w
// triggers, a server policy decides whether deletion requests are
// honored, and query outcomes feed the statistical modules. No training,
// no datasets; every rate is an explicit Bernoulli parameter.

namespace unlearn {

struct SimConfig {
  int num_users = 100;
  double f_user = 0.05;    // fraction of users that are privacy enthusiasts
  double f_data = 1.0;     // poison percentage in [0, 100]; reported, not
                           // a rate input (rate mappings are supplied by
                           // the caller via base_p / base_q)
  int image_n = 784;       // trigger vector length
  int trigger_w = 4;       // pixels set per trigger
  int num_labels = 10;
  double base_p = 0.956;   // backdoor success rate while data is kept
  double base_q = 0.1098;  // rate after a genuine deletion
  std::optional<double> adaptive_p;  // degraded kept-rate of the adaptive
                                     // server; required for that policy
  double f_delete = 0.2;   // chance an enthusiast requests deletion
  int d_collide = 2;       // triggers within this Hamming distance and
                           // with equal target labels interfere
  std::uint64_t seed = 1;

  void validate() const;  // throws std::domain_error on bad fields
};

struct SimUser {
  int id = 0;
  bool enthusiast = false;
  std::vector<int> trigger;  // sorted positions of the w set pixels;
                             // empty for non-enthusiasts
  int target_label = -1;
  bool deletion_requested = false;
};

enum class ServerPolicy { kHonest, kNonAdaptive, kAdaptive };

// Seeded world construction. Exactly round(f_user * num_users) users
// become enthusiasts (a seeded permutation prefix, so raising f_user
// grows the set monotonically); triggers, labels, and deletion coins
// come from per-user derived streams and never shift between runs that
// share a seed.
std::vector<SimUser> build_world(const SimConfig& config);

// Hamming distance between two triggers (equal weight assumed).
int trigger_distance(const SimUser& a, const SimUser& b);

// The Bernoulli rate the server's model exhibits for this enthusiast's
// trigger. Retained data responds at base_p (adaptive_p under the
// adaptive policy). An honored deletion responds at base_q unless a
// retained enthusiast with the same target label owns a trigger within
// d_collide, in which case the deleted user inherits that collider's
// retained rate.
double effective_rate(const SimUser& user, const std::vector<SimUser>& world,
                      ServerPolicy policy, const SimConfig& config);

// n Bernoulli(rate) draws on the (world_seed, stream, user id) substream.
OutcomeVector run_queries(const SimUser& user, double rate, int n,
                          std::uint64_t world_seed, std::uint64_t stream);

// Streams used by end_to_end; exposed so tests can replay exact queries.
inline constexpr std::uint64_t kStreamEstimateP = 0x7031ULL;
inline constexpr std::uint64_t kStreamEstimateQ = 0x7132ULL;
inline constexpr std::uint64_t kStreamVerify = 0x7633ULL;

struct UserVerification {
  int user_id;
  double rate;     // effective rate the verification queries saw
  double p_hat;    // pre-deletion estimate, count / n
  double q_hat;    // alternate-pattern estimate, count / n
  int verify_ones;
  Decision decision;
};

struct SimSummary {
  std::vector<UserVerification> verifications;  // deletion requesters only
  int true_accepts = 0;     // accepted and the server had deleted
  int false_positives = 0;  // rejected although the server had deleted
  int false_negatives = 0;  // accepted although the server kept the data
  int true_rejects = 0;
};

// Phase I + II: build the world, estimate p-hat before the deletion
// request and q-hat from an alternate pattern, verify each deletion
// requester at their effective rate, and decide against the design null
// rate base_q.
SimSummary end_to_end(const SimConfig& config, ServerPolicy policy,
                      const TestPlan& plan);

}  // namespace unlearn

#endif  // UNLEARN_SIMULATOR_HPP_
