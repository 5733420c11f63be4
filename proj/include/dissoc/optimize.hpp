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
#include "dissoc/plan.hpp"
#include "dissoc/query.hpp"
#include <string>
#include <vector>

namespace dissoc {

/// One plan for all minimal plans: alternative top sets of a connected subquery become the branches of a min node.
Plan single_plan(const Query &q, const Catalog &catalog, bool use_schema);

struct ViewDefinition
{
    std::string name;
    Plan plan;
};

/// Named views, each referencing only views defined before it, and a main plan.
struct ViewSet
{
    std::vector<ViewDefinition> views;
    Plan main;

    const ViewDefinition * find(std::string_view name) const;
};

/// Like `single_plan`, but subqueries met more than once become shared views (V1, V2, ...).
ViewSet shared_view_plan(const Query &q, const Catalog &catalog, bool use_schema);

/// True iff every view reference points to an earlier definition and names are unique.
bool is_topologically_ordered(const ViewSet &vs);

/// Restricts every relation of `q` to tuples that survive pairwise semi-joins with the other atoms.
/// Relations not mentioned in `q` are copied unchanged.
Database semijoin_reduce(const Database &db, const Query &q);

std::string format_view_set(const ViewSet &vs, const Query &q);

}
