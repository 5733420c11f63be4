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

// Shared machinery of the plan enumerator and the single-plan optimizers.  Plans are built over the original atoms
// with a per-atom "working" variable set (the atom's variables plus any dissociation already applied); every
// node's head is its working head restricted to the original variables of its atoms.

#include "dissoc/catalog.hpp"
#include "dissoc/plan.hpp"
#include "dissoc/query.hpp"
#include <span>
#include <vector>

namespace dissoc::detail {

VarSet union_of(std::span<const VarSet> vars, AtomSet atoms);

/// Minimal cut-sets of `atoms` under `head`.  With `probabilistic` set, a cut must leave two components holding a
/// probabilistic atom.
std::vector<VarSet> minimal_cut_sets(std::span<const VarSet> work, AtomSet atoms, VarSet head,
                                     const std::vector<bool> *probabilistic);

/// The unique safe plan of the working query restricted to `atoms`.  Throws NotSafeError.
Plan safe_plan(const Query &q, std::span<const VarSet> work, AtomSet atoms, VarSet head);

struct PlanContext
{
    const Query &q;
    bool use_schema;
    std::vector<VarSet> work;
    std::vector<bool> probabilistic;

    PlanContext(const Query &q, const Catalog &catalog, bool use_schema);

    VarSet original_vars(AtomSet atoms) const { return q.vars_of(atoms); }
    VarSet working_vars(AtomSet atoms) const { return union_of(work, atoms); }
    VarSet final_head(AtomSet atoms, VarSet head) const { return head & original_vars(atoms); }

    std::vector<AtomSet> components(AtomSet atoms, VarSet head) const;
    /// MinCuts, or MinPCuts with schema knowledge.
    std::vector<VarSet> top_sets(AtomSet atoms, VarSet head) const;
    /// With schema knowledge: at most one probabilistic atom left.
    bool stops(AtomSet atoms) const;
    /// The plan for a stopped subquery: deterministic atoms dissociated on all its variables.
    Plan stop_plan(AtomSet atoms, VarSet head) const;
    Plan leaf(std::size_t atom, VarSet head) const;
};

}
