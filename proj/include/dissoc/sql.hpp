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
#include "dissoc/optimize.hpp"
#include "dissoc/query.hpp"
#include <string>

namespace dissoc {

/** Renders a view set as one SQL statement: a common table expression per view, then the main plan.
 *
 * Relation R/k is read as a table with columns c1..ck and a probability column p (deterministic tables get p = 1).
 * Variable x becomes column v_x.  Join scores multiply; projections compute 1 - EXP(SUM(LN(1 - p))) with p capped
 * at 1 - 1e-12; min nodes group a UNION ALL of their branches.  Only the "ansi" dialect exists; others throw
 * ParseError. */
std::string emit_sql(const ViewSet &vs, const Query &q, const Catalog &catalog, std::string_view dialect = "ansi");

/// A plan without views.
std::string emit_sql(const Plan &plan, const Query &q, const Catalog &catalog, std::string_view dialect = "ansi");

}
