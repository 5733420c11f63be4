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

#include "dissoc/catalog.hpp"
#include "dissoc/database.hpp"
#include "dissoc/eval.hpp"
#include "dissoc/oracle.hpp"
#include "dissoc/query.hpp"
#include <cstdint>
#include <string>
#include <vector>

namespace dissoc {

/** Tie-aware AP@k of `returned` against `truth` (same answers).  Ties are broken uniformly at random, independently
 * in both rankings, and the expected precision is computed in closed form.  Returned ties are exact equality; truth
 * scores within 1e-12 of their neighbour are tied.  k is capped at the number of answers.  Throws DataError if the
 * answer sets differ. */
double average_precision_at_k(const ScoredRelation &returned, const ScoredRelation &truth, std::size_t k);

enum class MethodKind { dissociation, mc, lineage_size, exact };

struct RankingMethod
{
    MethodKind kind = MethodKind::dissociation;
    std::size_t samples = 1000;  ///< mc only

    /// "dissociation", "MC(1000)", "lineage_size", "exact".
    std::string label() const;
};

/// Accepts "dissociation", "mc", "mc:500", "mc(500)", "lineage_size", "exact".
RankingMethod parse_method(std::string_view text);

struct MethodResult
{
    std::string label;
    bool available = true;
    std::string note;
    std::vector<double> ap;  ///< one per trial
    double map = 0.0;
    double stddev = 0.0;
};

struct RankingReport
{
    std::size_t k = 10;
    std::vector<std::uint64_t> seeds;
    std::vector<MethodResult> methods;
};

struct RankOptions
{
    std::size_t k = 10;
    std::uint64_t seed = 1;       ///< Monte Carlo seed
    PropagationOptions propagation;
    OracleLimits limits;
    LineageOptions lineage;
};

/// One trial: every method's AP@k against the exact ranking.  Methods that overflow are marked unavailable.
RankingReport rank_methods(const Query &q, const Database &db, const Catalog &catalog,
                           const std::vector<RankingMethod> &methods, const RankOptions &options = {});

/// Concatenates trials method by method and recomputes MAP and standard deviation.
RankingReport merge_reports(const std::vector<RankingReport> &trials);

struct ScalingRow
{
    double factor = 1.0;
    double mean_relative_error = 0.0;  ///< mean of (ρ - P) / P over answers with P > 0
    std::size_t answers_used = 0;
    double ap_vs_unscaled = 1.0;       ///< AP@k of the scaled exact ranking against the unscaled one
};

std::vector<ScalingRow> scaling_experiment(const Query &q, const Database &db, const Catalog &catalog,
                                           const std::vector<double> &factors, const RankOptions &options = {});

std::string format_ranking_report(const RankingReport &r);
std::string format_scaling_rows(const std::vector<ScalingRow> &rows);

}
