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
#include "dissoc/query.hpp"
#include "dissoc/varset.hpp"
#include <string>
#include <vector>

namespace dissoc {

/// Per-atom sets of added variables, index-aligned with the atoms of a query.
struct Dissociation
{
    std::vector<VarSet> added;

    Dissociation() = default;
    explicit Dissociation(std::vector<VarSet> added) : added(std::move(added)) { }

    /// The empty dissociation of an `m`-atom query.
    static Dissociation Bottom(std::size_t m) { return Dissociation(std::vector<VarSet>(m)); }
    /// Every atom receives every query variable it lacks.
    static Dissociation Top(const Query &q);

    std::size_t size() const { return added.size(); }
    VarSet operator[](std::size_t i) const { return added.at(i); }
    bool empty() const;

    friend bool operator==(const Dissociation&, const Dissociation&) = default;
    friend auto operator<=>(const Dissociation &a, const Dissociation &b) { return a.added <=> b.added; }
};

/// True iff `d` has one entry per atom and each entry lies in Var(q) - Var(atom).
bool is_valid(const Dissociation &d, const Query &q);
/// Throws InvalidDissociation unless `is_valid(d, q)`.
void validate(const Dissociation &d, const Query &q);

/// Variables of atom i in q^d, i.e. Var(atom i) ∪ d[i].
std::vector<VarSet> dissociated_vars(const Query &q, const Dissociation &d);
/// Whether q^d is hierarchical.
bool is_safe(const Query &q, const Dissociation &d);

/// `R__y1_y2`: the relation name of R dissociated on `added`, variable names sorted.
std::string dissociated_name(const Query &q, std::size_t atom, VarSet added);
/// Added variables in the column order used by the dissociated query and database (sorted by name).
std::vector<VarId> added_columns(const Query &q, VarSet added);

/// q^d: atom i becomes `R__y(x_i, y_i)`.  The head is unchanged.
Query dissociate_query(const Query &q, const Dissociation &d);

/// D^d: every dissociated relation is R × ADom_y1 × ... × ADom_yk, copies keeping the source probability.
/// Relations of atoms with an empty added set are copied unchanged, under their original names.
Database dissociate_database(const Database &db, const Query &q, const Dissociation &d);

/// A catalog for q^d: dissociated relations inherit the probabilistic flag of their source.
Catalog dissociate_catalog(const Catalog &catalog, const Query &q, const Dissociation &d);

enum class Order
{
    plain,    ///< y_i ⊆ y'_i for all atoms
    prob,     ///< only probabilistic atoms compared
    prob_fd,  ///< probabilistic atoms, after removing the FD closure of x_i
};

/// d1 ⪯ d2 under `order`.
bool less_equal(const Dissociation &d1, const Dissociation &d2, Order order, const Query &q, const Catalog &catalog);
inline bool equivalent(const Dissociation &d1, const Dissociation &d2, Order order, const Query &q,
                       const Catalog &catalog)
{
    return less_equal(d1, d2, order, q, catalog) and less_equal(d2, d1, order, q, catalog);
}

/// The catalog FDs of q's relations, rewritten on query variables.
struct VarDependency
{
    VarSet determinant;
    VarSet dependent;
};
std::vector<VarDependency> query_dependencies(const Query &q, const Catalog &catalog);

/// Attribute closure of `attrs` under the FDs of q's relations.
VarSet fd_closure(VarSet attrs, const Query &q, const Catalog &catalog);

/// Δ_Γ: atom i receives closure(x_i) - x_i.
Dissociation delta_gamma(const Query &q, const Catalog &catalog);

std::string to_string(const Dissociation &d, const Query &q);

}
