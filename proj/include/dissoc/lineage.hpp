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

#include "dissoc/database.hpp"
#include "dissoc/query.hpp"
#include <cstddef>
#include <string>
#include <vector>

namespace dissoc {

/// One monomial: the tuple matched by each atom, in atom order.
using Monomial = std::vector<TupleId>;

struct LineageEntry
{
    Tuple answer;
    std::vector<Monomial> monomials;
};

/// Per-answer monotone DNF over input tuples.  Answers are sorted; monomials appear in discovery order.
struct LineageDNF
{
    std::vector<VarId> columns;
    std::vector<LineageEntry> answers;

    const LineageEntry * find(const Tuple &answer) const;
    std::size_t monomial_count() const;
};

struct LineageOptions
{
    std::size_t max_monomials = 2'000'000;
};

/// Throws LineageTooLarge when more than `options.max_monomials` valuations exist.
LineageDNF lineage(const Query &q, const Database &db, const LineageOptions &options = {});

/// The answers of q, ignoring probabilities, sorted.
std::vector<Tuple> eval_deterministic(const Query &q, const Database &db);

/// `answer<TAB>m;m;...`, each monomial a comma-joined list of tuple ids such as `R:3`.
std::string format_lineage(const LineageDNF &f, const Database &db);

}
