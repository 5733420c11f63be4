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
#include "dissoc/optimize.hpp"
#include "dissoc/plan.hpp"
#include "dissoc/query.hpp"
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dissoc {

struct ScoredTuple
{
    Tuple values;
    double score = 0.0;
};

/// Head tuples with scores.  `columns` are the head variables in id order; rows are sorted by value.
struct ScoredRelation
{
    std::vector<VarId> columns;
    std::vector<ScoredTuple> rows;

    std::size_t size() const { return rows.size(); }
    std::optional<double> score_of(const Tuple &values) const;
    std::map<Tuple, double> to_map() const;
};

/// Extensional evaluation: scan = p, join = product, projection = 1 - ∏(1 - s), min = per-tuple minimum.
/// With `parallel`, min branches are evaluated concurrently; the result does not depend on it.
ScoredRelation eval_plan_score(const Plan &plan, const Database &db, bool parallel = false);
/// Evaluates the views in order, then the main plan.
ScoredRelation eval_view_set(const ViewSet &vs, const Database &db, bool parallel = false);

enum class Strategy
{
    all_plans,  ///< evaluate every minimal plan, take the minimum
    opt1,       ///< single plan with min nodes
    opt12,      ///< single plan with shared views
    opt123,     ///< shared views over a semi-join reduced database
};

/// Accepts "all", "none", "1", "12", "123" and the enumerator names.
Strategy parse_strategy(std::string_view text);
std::string to_string(Strategy s);

struct PropagationOptions
{
    Strategy strategy = Strategy::opt12;
    bool use_schema = false;
    bool parallel = false;
};

/// ρ(q): per answer, the minimum score over the minimal plans.
ScoredRelation propagation_score(const Query &q, const Database &db, const Catalog &catalog,
                                 const PropagationOptions &options = {});

/// `(v1,v2)<TAB>score` per row; `()` for the Boolean answer.
std::string format_answer(const Tuple &values);
std::string format_scored_relation(const ScoredRelation &r);

}
