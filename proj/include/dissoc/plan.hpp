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

#include "dissoc/query.hpp"
#include "dissoc/varset.hpp"
#include <memory>
#include <string>
#include <vector>

namespace dissoc {

enum class PlanKind { scan, join, project, min, view };

struct PlanNode;
/// Plans are immutable trees; subtrees may be shared.
using Plan = std::shared_ptr<const PlanNode>;

/** One operator.  `head` is HVar of the node: the scan's variables, the union over join children, the retained
 * variables of a projection, the common head of min children, or the head of the referenced view.  `key` is a
 * canonical string: equal keys mean equal plans. */
struct PlanNode
{
    PlanKind kind = PlanKind::scan;
    std::string relation;         ///< scan
    std::vector<VarId> args;      ///< scan
    std::string view_name;        ///< view
    std::vector<Plan> children;   ///< join, min: sorted by key; project: exactly one
    VarSet head;
    std::string key;
};

Plan make_scan(std::string relation, std::vector<VarId> args);
/// Children are sorted by key; joins of joins are not flattened.  Throws std::invalid_argument for < 2 children.
Plan make_join(std::vector<Plan> children);
/// Throws std::invalid_argument unless `head` ⊆ HVar(child).
Plan make_project(Plan child, VarSet head);
/// Children are deduplicated and sorted; a single child is returned as is.  All heads must agree.
Plan make_min(std::vector<Plan> children);
Plan make_view_ref(std::string name, VarSet head);

/// JVar of a join: union of the children's heads.
inline VarSet join_vars(const PlanNode &join) { return join.head; }

/// Relations scanned anywhere in the plan, in tree order (views not expanded).
std::vector<std::string> scanned_relations(const Plan &plan);
std::size_t count_nodes(const Plan &plan, PlanKind kind);

/// Joins and projections alternate along every path; a scan may sit below either; min nodes are transparent.
bool alternates(const Plan &plan);

/// `pi[z](join(pi[z,x](R(z,x)), ...))`.
std::string format_plan_inline(const Plan &plan, const Query &q);
/// One operator per line, children indented by two spaces.
std::string format_plan(const Plan &plan, const Query &q);

}
