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
#include "dissoc/varset.hpp"
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dissoc {

/// Interned variable names of one query.  Ids are assigned head variables first, in declaration order.
class SymbolTable
{
    std::vector<std::string> names_;
    std::unordered_map<std::string, VarId> index_;

  public:
    VarId intern(std::string_view name);
    std::optional<VarId> find(std::string_view name) const;
    const std::string & name(VarId id) const { return names_.at(id); }
    std::size_t size() const { return names_.size(); }
};

struct Atom
{
    std::string relation;
    std::vector<VarId> args;

    VarSet vars() const {
        VarSet s;
        for (VarId v : args) s.insert(v);
        return s;
    }
};

/** A self-join-free conjunctive query `q(head) :- R1(x1), ..., Rm(xm)`.
 *
 * Atom order is significant: dissociations and plans refer to atoms by index.  Immutable once constructed. */
class Query
{
    std::shared_ptr<const SymbolTable> symbols_;
    std::vector<Atom> atoms_;
    std::vector<VarSet> atom_vars_;
    VarSet head_;
    VarSet vars_;
    std::string name_;

  public:
    /// Throws SelfJoinError on a repeated relation and SchemaError if the head is not covered by the atoms.
    Query(std::shared_ptr<const SymbolTable> symbols, std::vector<Atom> atoms, VarSet head, std::string name = "q");

    const std::string & name() const { return name_; }
    const std::vector<Atom> & atoms() const { return atoms_; }
    const Atom & atom(std::size_t i) const { return atoms_.at(i); }
    std::size_t size() const { return atoms_.size(); }

    VarSet head() const { return head_; }
    VarSet vars() const { return vars_; }
    VarSet existential() const { return vars_ - head_; }
    VarSet atom_vars(std::size_t i) const { return atom_vars_.at(i); }
    std::span<const VarSet> all_atom_vars() const { return atom_vars_; }
    AtomSet all_atoms() const { return AtomSet::Prefix(atoms_.size()); }
    /// Union of the variables of `atoms`.
    VarSet vars_of(AtomSet atoms) const;
    bool is_boolean() const { return head_.empty(); }

    const SymbolTable & symbols() const { return *symbols_; }
    const std::shared_ptr<const SymbolTable> & symbols_ptr() const { return symbols_; }
    const std::string & var_name(VarId v) const { return symbols_->name(v); }
    std::optional<std::size_t> find_atom(std::string_view relation) const;

    /// The subquery over `atoms` with head `head ∩ Var(atoms)`.
    Query restrict(AtomSet atoms, VarSet head) const;
    Query with_head(VarSet head) const { return restrict(all_atoms(), head); }

    /// Variable names of `s` in id order, comma separated.
    std::string format_vars(VarSet s) const;
    std::string to_string() const;
};

/// Existential variables, separator variables, and connected components of a query.
struct VariableReport
{
    VarSet evar;
    VarSet separator_vars;
    std::vector<Query> components;
};

/// Atoms sharing at least one variable outside `anchors` are connected.  Components are ordered by lowest atom.
std::vector<AtomSet> connected_components(std::span<const VarSet> atom_vars, AtomSet atoms, VarSet anchors);

/// Components of `q` after treating `anchors` as constants; each component's head is HVar(q) ∩ Var(component).
std::vector<Query> connected_components(const Query &q, VarSet anchors);

/// Hierarchy test on explicit atom variable sets; variables in `head` are ignored.
bool is_hierarchical(std::span<const VarSet> atom_vars, AtomSet atoms, VarSet head);
bool is_hierarchical(const Query &q);

/// Existential variables that occur in every atom.
VarSet separator_vars(const Query &q);

VariableReport analyze(const Query &q);

/// Parses `name(vars) :- R(vars), S(vars), ...` without checking against a catalog.
Query parse_query(std::string_view text);
/// Parses and validates relation names and arities against `catalog`.
Query parse_query(std::string_view text, const Catalog &catalog);

}
