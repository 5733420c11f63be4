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
#include "dissoc/dissociation.hpp"
#include "dissoc/plan.hpp"
#include "dissoc/query.hpp"
#include <vector>

namespace dissoc {

/// Every join combines children with identical head variables, not counting the root head.  Min nodes are looked through.
bool is_safe_plan(const Plan &plan);

/** Δ^P: for each join, every atom below child P_j receives JVar - HVar(P_j).  Head variables of `q` are never
 * added.  Throws PlanQueryMismatch unless `plan` scans each atom of `q` exactly once, has q's head at the root, and
 * never projects a variable that is still needed outside the projected subtree. */
Dissociation plan_to_dissociation(const Plan &plan, const Query &q);

/// The unique safe plan of q^Δ with dissociation variables dropped.  Throws NotSafeError if q^Δ is not hierarchical.
Plan dissociation_to_plan(const Query &q, const Dissociation &d);

/// Minimal sets of existential variables whose removal, together with the head, disconnects `q`.
/// Returns {∅} if `q` is already disconnected.  Ordered by size, then by variable ids.
std::vector<VarSet> min_cuts(const Query &q);

/// Minimal cut-sets leaving at least two components that hold a probabilistic atom.  May be empty.
std::vector<VarSet> min_p_cuts(const Query &q, const Catalog &catalog);

/** All minimal plans, sorted by canonical key.  With `use_schema`, deterministic relations and functional
 * dependencies in `catalog` prune the result to one plan per minimal equivalence class. */
std::vector<Plan> enumerate_minimal_plans(const Query &q, const Catalog &catalog, bool use_schema);

}
