// Copyright 2026 The dissoc Authors
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

#pragma once

#include "dissoc/generate.hpp"
#include "dissoc/ranking.hpp"
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dissoc {

/** Experiment parameters, read from `key = value` lines:
 *
 *     shape = chain        k = 4        n = 200       N = 300      pmax = 0.1
 *     seed = 1             trials = 20  top_k = 10    answers = 20-50
 *     methods = dissociation, mc:1000, lineage_size
 *     factors = 1, 0.5, 0.1, 0.01
 *     strategy = 12        schema = false
 *
 * With `answers` set, the domain size of every chain trial is searched so the query has that many answers. */
struct BenchConfig
{
    GenSpec gen;
    std::size_t trials = 20;
    std::size_t top_k = 10;
    std::vector<RankingMethod> methods{{MethodKind::dissociation}, {MethodKind::mc, 1000}};
    std::vector<double> factors{1.0, 0.5, 0.1, 0.01};
    std::optional<std::pair<std::size_t, std::size_t>> answers;
    PropagationOptions propagation;
};

BenchConfig parse_bench_config(std::string_view text);

/// Spec of trial `i`: its seed derived from the master seed, its domain tuned if requested.
GenSpec trial_spec(const BenchConfig &config, std::size_t i);

/// A domain size N for which the instance of `spec` has between lo and hi answers, or nullopt.
std::optional<std::size_t> tune_domain(GenSpec spec, std::size_t lo, std::size_t hi);

RankingReport run_rank_bench(const BenchConfig &config);

struct ScalingSummary
{
    std::vector<double> factors;
    std::vector<std::vector<ScalingRow>> trials;  ///< per trial, one row per factor
    std::vector<double> mean_error;               ///< per factor, averaged over trials
};

ScalingSummary run_scale_bench(const BenchConfig &config);
std::string format_scaling_summary(const ScalingSummary &s);

}
