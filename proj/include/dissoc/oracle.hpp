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
#include "dissoc/eval.hpp"
#include "dissoc/lineage.hpp"
#include "dissoc/query.hpp"
#include <cstdint>
#include <vector>

namespace dissoc {

using DnfVar = std::uint32_t;

/// A monotone DNF: a disjunction of conjunctions of variables.
struct Dnf
{
    std::vector<std::vector<DnfVar>> terms;

    /// One more than the largest variable mentioned.
    std::size_t variable_bound() const;
};

/// Independent probability of every variable, indexed by variable.
struct AssignmentDistribution
{
    std::vector<double> probability;

    double operator[](DnfVar x) const { return probability.at(x); }
    std::size_t size() const { return probability.size(); }
};

/// θ: variable of the dissociated formula → variable of the original formula.
struct DissociationMap
{
    std::vector<DnfVar> theta;

    DnfVar operator()(DnfVar x) const { return theta.at(x); }
};

struct OracleLimits
{
    /// Budget on Shannon expansion steps per formula; exceeding it throws OracleTooLarge.
    std::size_t max_steps = 4'000'000;
};

/// Exact P[f] for independent variables.  Throws DataError if a probability lies outside [0,1].
double exact_dnf_prob(const Dnf &f, const AssignmentDistribution &dist, const OracleLimits &limits = {});

/// Fraction of `samples` possible worlds satisfying f.  Variables 0..dist.size()-1 are drawn in order per sample.
double mc_estimate(const Dnf &f, const AssignmentDistribution &dist, std::size_t samples, std::uint64_t seed);

/// Removes every term that contains another term; sorts terms and their variables.
Dnf absorb(Dnf f);

/// f[θ]: every variable x replaced by θ(x).
Dnf substitute(const Dnf &f, const DissociationMap &theta);

struct ObliviousCheck
{
    bool valid = false;                      ///< no prime implicant holds two copies of one variable
    bool bound_holds = false;                ///< P[f] ≤ P[f'] (within 1e-12)
    bool deterministic_copies = false;       ///< every variable with two or more copies has p ∈ {0, 1}
    double original = 0.0;
    double dissociated = 0.0;
};

/** Compares P[f] with P[f'] where f' is a dissociation of f through θ and each copy x' has probability
 * p(θ(x')).  Throws InvalidSubstitution unless f'[θ] and f are equivalent. */
ObliviousCheck check_oblivious_bound(const Dnf &f, const Dnf &f_diss, const DissociationMap &theta,
                                     const AssignmentDistribution &dist, const OracleLimits &limits = {});

/// The lineage of one answer as a DNF over dense variables, with their tuple ids and probabilities.
struct EncodedLineage
{
    Dnf dnf;
    AssignmentDistribution dist;
    std::vector<TupleId> tuples;
};
EncodedLineage encode(const LineageEntry &entry, const Database &db);

/// Exact per-answer probability of q.  Throws LineageTooLarge or OracleTooLarge.
ScoredRelation exact_query_prob(const Query &q, const Database &db, const OracleLimits &limits = {},
                                const LineageOptions &lineage_options = {});

/// Per-answer Monte Carlo estimate; answer i uses seed derive_seed(seed, i).
ScoredRelation mc_query_prob(const Query &q, const Database &db, std::size_t samples, std::uint64_t seed,
                             const LineageOptions &lineage_options = {});

}
