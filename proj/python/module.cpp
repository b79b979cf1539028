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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unlearn/binomial.hpp"
#include "unlearn/capacity.hpp"
#include "unlearn/estimation.hpp"
#include "unlearn/hypothesis.hpp"
#include "unlearn/multiuser.hpp"
#include "unlearn/rng.hpp"
#include "unlearn/simulator.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Backdoor-based probabilistic verification of machine unlearning";
  m.attr("__version__") = "1.0.0";
  m.attr("PRNG_ALGORITHM") = unlearn::kPrngAlgorithm;

  // ------------------------------------------------------------ binomial
  m.def("binom_log_pmf", &unlearn::binom_log_pmf, py::arg("k"), py::arg("n"),
        py::arg("r"), "ln Pr[X = k], X ~ Binomial(n, r)");
  m.def("binom_cdf", &unlearn::binom_cdf, py::arg("k"), py::arg("n"),
        py::arg("r"), "Pr[X <= k] in linear space");
  m.def("binom_log_cdf", &unlearn::binom_log_cdf, py::arg("k"), py::arg("n"),
        py::arg("r"), "ln Pr[X <= k]; -inf when the mass is zero");
  m.def("binom_log_sf", &unlearn::binom_log_sf, py::arg("k"), py::arg("n"),
        py::arg("r"), "ln Pr[X > k]; k = -1 gives ln 1 = 0");
  m.def("success_rate_std", &unlearn::success_rate_std, py::arg("n"),
        py::arg("r"), "Standard deviation of the empirical rate X / n");
  m.def("log_choose", &unlearn::log_choose, py::arg("n"), py::arg("k"));

  // ---------------------------------------------------------- hypothesis
  py::class_<unlearn::Strategy>(m, "Strategy")
      .def(py::init<double, double>(), py::arg("q"), py::arg("p"))
      .def_readonly("q", &unlearn::Strategy::q)
      .def_readonly("p", &unlearn::Strategy::p)
      .def("degenerate", &unlearn::Strategy::degenerate);

  py::class_<unlearn::TestPlan>(m, "TestPlan")
      .def(py::init<int, double>(), py::arg("n"), py::arg("alpha"))
      .def_readonly("n", &unlearn::TestPlan::n)
      .def_readonly("alpha", &unlearn::TestPlan::alpha);

  py::class_<unlearn::OutcomeVector>(m, "OutcomeVector")
      .def(py::init([](const std::vector<int>& bits) {
             unlearn::OutcomeVector v;
             v.bits.reserve(bits.size());
             for (int b : bits) {
               if (b != 0 && b != 1)
                 throw py::value_error("outcome bits must be 0 or 1");
               v.bits.push_back(static_cast<std::uint8_t>(b));
             }
             return v;
           }),
           py::arg("bits"))
      .def_readonly("bits", &unlearn::OutcomeVector::bits)
      .def("ones", &unlearn::OutcomeVector::ones)
      .def("__len__", &unlearn::OutcomeVector::size);

  py::class_<unlearn::ThresholdResult>(m, "ThresholdResult")
      .def_readonly("threshold_k", &unlearn::ThresholdResult::threshold_k)
      .def_readonly("achieved_alpha",
                    &unlearn::ThresholdResult::achieved_alpha);

  py::class_<unlearn::TestResult>(m, "TestResult")
      .def_readonly("threshold_k", &unlearn::TestResult::threshold_k)
      .def_readonly("threshold_t", &unlearn::TestResult::threshold_t)
      .def_readonly("achieved_alpha", &unlearn::TestResult::achieved_alpha)
      .def_readonly("log_beta", &unlearn::TestResult::log_beta)
      .def_readonly("beta", &unlearn::TestResult::beta)
      .def_readonly("rho", &unlearn::TestResult::rho)
      .def_readonly("degenerate_strategy",
                    &unlearn::TestResult::degenerate_strategy)
      .def_readonly("vacuous_plan", &unlearn::TestResult::vacuous_plan);

  py::enum_<unlearn::Decision>(m, "Decision")
      .value("ACCEPT_H0", unlearn::Decision::kAcceptH0)
      .value("REJECT_H0", unlearn::Decision::kRejectH0);

  m.def("draw_outcomes", &unlearn::draw_outcomes, py::arg("n"),
        py::arg("rate"), py::arg("seed"),
        "n seeded Bernoulli(rate) verification outcomes");
  m.def("threshold_for_alpha", &unlearn::threshold_for_alpha, py::arg("plan"),
        py::arg("q"),
        "Smallest k whose H0 CDF reaches 1 - alpha, with achieved alpha");
  m.def("beta_error", &unlearn::beta_error, py::arg("plan"),
        py::arg("strategy"), "ln of the Type II error");
  m.def("deletion_confidence", &unlearn::deletion_confidence, py::arg("plan"),
        py::arg("strategy"),
        "Threshold, achieved alpha, beta, and rho = 1 - beta");
  m.def("decide", &unlearn::decide, py::arg("outcomes"), py::arg("plan"),
        py::arg("q"), "ACCEPT_H0 iff ones(outcomes) <= threshold_k");
  m.def("samples_needed", &unlearn::samples_needed, py::arg("strategy"),
        py::arg("alpha"), py::arg("rho_target"), py::arg("n_max"),
        "Smallest n <= n_max reaching rho_target, or None");

  // ---------------------------------------------------------- estimation
  py::enum_<unlearn::RateSource>(m, "RateSource")
      .value("POST_TRAINING_QUERY", unlearn::RateSource::kPostTrainingQuery)
      .value("PRE_UPLOAD_QUERY", unlearn::RateSource::kPreUploadQuery)
      .value("ALTERNATE_PATTERN_QUERY",
             unlearn::RateSource::kAlternatePatternQuery);

  py::class_<unlearn::RateEstimate>(m, "RateEstimate")
      .def(py::init<int, int, unlearn::RateSource>(), py::arg("count"),
           py::arg("n_obs"), py::arg("source"))
      .def_readonly("count", &unlearn::RateEstimate::count)
      .def_readonly("n_obs", &unlearn::RateEstimate::n_obs)
      .def_readonly("source", &unlearn::RateEstimate::source)
      .def("r_hat", &unlearn::RateEstimate::r_hat);

  py::class_<unlearn::PosteriorGrid>(m, "PosteriorGrid")
      .def(py::init<std::vector<double>, std::vector<double>>(),
           py::arg("support"), py::arg("mass"))
      .def_static("uniform", &unlearn::PosteriorGrid::uniform,
                  py::arg("grid_size"))
      .def_static("point_mass", &unlearn::PosteriorGrid::point_mass,
                  py::arg("rate"))
      .def_readonly("support", &unlearn::PosteriorGrid::support)
      .def_readonly("mass", &unlearn::PosteriorGrid::mass)
      .def("grid_size", &unlearn::PosteriorGrid::grid_size);

  m.def("estimate_rate", &unlearn::estimate_rate, py::arg("outcomes"),
        py::arg("source"));
  m.def("conservative_confidence", &unlearn::conservative_confidence,
        py::arg("plan"), py::arg("q_upper"), py::arg("p_lower"),
        "deletion_confidence at the relaxed bounds; a rho lower bound");
  m.def("posterior", &unlearn::posterior, py::arg("estimate"),
        py::arg("prior"), "Exact-binomial-likelihood Bayes update");
  m.def("expected_confidence", &unlearn::expected_confidence, py::arg("plan"),
        py::arg("q_posterior"), py::arg("p_posterior"),
        "E[rho] over independent rate posteriors");

  // ----------------------------------------------------------- multiuser
  py::class_<unlearn::UserReport>(m, "UserReport")
      .def(py::init([](std::string user_id, const unlearn::RateEstimate& p_hat,
                       const unlearn::RateEstimate& q_hat,
                       const unlearn::OutcomeVector& outcomes) {
             return unlearn::UserReport{std::move(user_id), p_hat, q_hat,
                                        outcomes};
           }),
           py::arg("user_id"), py::arg("p_hat"), py::arg("q_hat"),
           py::arg("outcomes"))
      .def_readonly("user_id", &unlearn::UserReport::user_id)
      .def_readonly("p_hat", &unlearn::UserReport::p_hat)
      .def_readonly("q_hat", &unlearn::UserReport::q_hat)
      .def_readonly("outcomes", &unlearn::UserReport::outcomes);

  py::class_<unlearn::Population::Entry>(m, "PopulationEntry")
      .def(py::init([](double p_true, double q_true) {
             return unlearn::Population::Entry{p_true, q_true};
           }),
           py::arg("p_true"), py::arg("q_true"))
      .def_readonly("p_true", &unlearn::Population::Entry::p_true)
      .def_readonly("q_true", &unlearn::Population::Entry::q_true);

  py::class_<unlearn::Population>(m, "Population")
      .def(py::init([](const std::vector<std::pair<double, double>>& pairs) {
             unlearn::Population pop;
             pop.entries.reserve(pairs.size());
             for (const auto& [p, q] : pairs)
               pop.entries.push_back(unlearn::Population::Entry{p, q});
             return pop;
           }),
           py::arg("entries"),
           "Build from a list of (p_true, q_true) pairs")
      .def_readonly("entries", &unlearn::Population::entries);

  py::class_<unlearn::PooledResult>(m, "PooledResult")
      .def_readonly("decision", &unlearn::PooledResult::decision)
      .def_readonly("pooled", &unlearn::PooledResult::pooled)
      .def_readonly("p_bar", &unlearn::PooledResult::p_bar)
      .def_readonly("q_bar", &unlearn::PooledResult::q_bar)
      .def_readonly("n_total", &unlearn::PooledResult::n_total)
      .def_readonly("pooled_count", &unlearn::PooledResult::pooled_count)
      .def_readonly("count_decision", &unlearn::PooledResult::count_decision);

  py::class_<unlearn::FnEstimate>(m, "FnEstimate")
      .def_readonly("fn_probability", &unlearn::FnEstimate::fn_probability)
      .def_readonly("std_error", &unlearn::FnEstimate::std_error)
      .def_readonly("trials", &unlearn::FnEstimate::trials)
      .def_readonly("accepts", &unlearn::FnEstimate::accepts);

  m.def("pooled_test", &unlearn::pooled_test, py::arg("reports"),
        py::arg("alpha"), py::arg("beta_bound"),
        "Pool c user reports and test at the widened n_total = c * n");
  m.def("false_negative_probability", &unlearn::false_negative_probability,
        py::arg("population"), py::arg("c"), py::arg("n"), py::arg("alpha"),
        py::arg("beta_bound"), py::arg("trials"), py::arg("seed"),
        py::arg("with_replacement") = true,
        "Monte Carlo FN probability of the pooled rule when data was kept");
  m.def("load_population_csv", &unlearn::load_population_csv, py::arg("path"),
        "Load a p_true,q_true CSV");

  // ------------------------------------------------------------ capacity
  py::class_<unlearn::CodeParams>(m, "CodeParams")
      .def(py::init<int, int, int>(), py::arg("n"), py::arg("d"),
           py::arg("w"))
      .def_readonly("n", &unlearn::CodeParams::n)
      .def_readonly("d", &unlearn::CodeParams::d)
      .def_readonly("w", &unlearn::CodeParams::w);

  py::enum_<unlearn::CapacityMethod>(m, "CapacityMethod")
      .value("BRUTE_FORCE", unlearn::CapacityMethod::kBruteForce)
      .value("CLOSED_FORM", unlearn::CapacityMethod::kClosedForm)
      .value("JOHNSON_BOUND", unlearn::CapacityMethod::kJohnsonBound);

  py::class_<unlearn::CapacityResult>(m, "CapacityResult")
      .def_readonly("exact", &unlearn::CapacityResult::exact)
      .def_readonly("lower_bound", &unlearn::CapacityResult::lower_bound)
      .def_readonly("upper_bound", &unlearn::CapacityResult::upper_bound)
      .def_readonly("method", &unlearn::CapacityResult::method);

  py::class_<unlearn::BackdoorCount>(m, "BackdoorCount")
      .def_readonly("lower", &unlearn::BackdoorCount::lower)
      .def_readonly("upper", &unlearn::BackdoorCount::upper)
      .def_readonly("exact", &unlearn::BackdoorCount::exact)
      .def_readonly("single_term", &unlearn::BackdoorCount::single_term);

  m.def("awd", &unlearn::awd, py::arg("params"),
        py::arg("brute_cap") = 5000LL,
        "A(n, d, w): exact where tractable, Johnson/greedy bounds otherwise");
  m.def("backdoor_count", &unlearn::backdoor_count, py::arg("params"),
        py::arg("brute_cap") = 5000LL,
        "Sum of A(n, i, w) over admissible distances i >= d");
  m.def("collision_probability", &unlearn::collision_probability,
        py::arg("num_users"), py::arg("capacity"),
        "Birthday bound over the trigger space");
  m.def("max_users", &unlearn::max_users, py::arg("capacity"),
        py::arg("collision_budget"),
        "Largest user count keeping the collision probability in budget");
  m.def("choose_checked", &unlearn::choose_checked, py::arg("n"),
        py::arg("k"), "Exact binomial coefficient with overflow checking");

  // ----------------------------------------------------------- simulator
  py::class_<unlearn::SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("num_users", &unlearn::SimConfig::num_users)
      .def_readwrite("f_user", &unlearn::SimConfig::f_user)
      .def_readwrite("f_data", &unlearn::SimConfig::f_data)
      .def_readwrite("image_n", &unlearn::SimConfig::image_n)
      .def_readwrite("trigger_w", &unlearn::SimConfig::trigger_w)
      .def_readwrite("num_labels", &unlearn::SimConfig::num_labels)
      .def_readwrite("base_p", &unlearn::SimConfig::base_p)
      .def_readwrite("base_q", &unlearn::SimConfig::base_q)
      .def_readwrite("adaptive_p", &unlearn::SimConfig::adaptive_p)
      .def_readwrite("f_delete", &unlearn::SimConfig::f_delete)
      .def_readwrite("d_collide", &unlearn::SimConfig::d_collide)
      .def_readwrite("seed", &unlearn::SimConfig::seed)
      .def("validate", &unlearn::SimConfig::validate);

  py::class_<unlearn::SimUser>(m, "SimUser")
      .def_readonly("id", &unlearn::SimUser::id)
      .def_readonly("enthusiast", &unlearn::SimUser::enthusiast)
      .def_readonly("trigger", &unlearn::SimUser::trigger)
      .def_readonly("target_label", &unlearn::SimUser::target_label)
      .def_readonly("deletion_requested",
                    &unlearn::SimUser::deletion_requested);

  py::enum_<unlearn::ServerPolicy>(m, "ServerPolicy")
      .value("HONEST", unlearn::ServerPolicy::kHonest)
      .value("NON_ADAPTIVE", unlearn::ServerPolicy::kNonAdaptive)
      .value("ADAPTIVE", unlearn::ServerPolicy::kAdaptive);

  py::class_<unlearn::UserVerification>(m, "UserVerification")
      .def_readonly("user_id", &unlearn::UserVerification::user_id)
      .def_readonly("rate", &unlearn::UserVerification::rate)
      .def_readonly("p_hat", &unlearn::UserVerification::p_hat)
      .def_readonly("q_hat", &unlearn::UserVerification::q_hat)
      .def_readonly("verify_ones", &unlearn::UserVerification::verify_ones)
      .def_readonly("decision", &unlearn::UserVerification::decision);

  py::class_<unlearn::SimSummary>(m, "SimSummary")
      .def_readonly("verifications", &unlearn::SimSummary::verifications)
      .def_readonly("true_accepts", &unlearn::SimSummary::true_accepts)
      .def_readonly("false_positives", &unlearn::SimSummary::false_positives)
      .def_readonly("false_negatives", &unlearn::SimSummary::false_negatives)
      .def_readonly("true_rejects", &unlearn::SimSummary::true_rejects);

  m.def("build_world", &unlearn::build_world, py::arg("config"));
  m.def("trigger_distance", &unlearn::trigger_distance, py::arg("a"),
        py::arg("b"));
  m.def("effective_rate", &unlearn::effective_rate, py::arg("user"),
        py::arg("world"), py::arg("policy"), py::arg("config"));
  m.def("run_queries", &unlearn::run_queries, py::arg("user"), py::arg("rate"),
        py::arg("n"), py::arg("world_seed"), py::arg("stream"));
  m.def("end_to_end", &unlearn::end_to_end, py::arg("config"),
        py::arg("policy"), py::arg("plan"),
        "Build a world, verify every deletion requester, tally outcomes");

  // ------------------------------------------------------------------ rng
  m.def("derive_seed", &unlearn::derive_seed, py::arg("base"),
        py::arg("stream"), py::arg("index") = 0ULL,
        "Stable substream seed derivation");
}
