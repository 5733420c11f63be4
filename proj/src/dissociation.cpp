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

#include "dissoc/dissociation.hpp"

#include "dissoc/error.hpp"
#include <algorithm>
#include <set>

namespace dissoc {

Dissociation Dissociation::Top(const Query &q)
{
    Dissociation d;
    for (std::size_t i = 0; i != q.size(); ++i) d.added.push_back(q.vars() - q.atom_vars(i));
    return d;
}

bool Dissociation::empty() const
{
    return std::all_of(added.begin(), added.end(), [](VarSet s) { return s.empty(); });
}

bool is_valid(const Dissociation &d, const Query &q)
{
    if (d.size() != q.size()) return false;
    for (std::size_t i = 0; i != q.size(); ++i)
        if (not d[i].is_subset_of(q.vars() - q.atom_vars(i))) return false;
    return true;
}

void validate(const Dissociation &d, const Query &q)
{
    if (d.size() != q.size())
        throw InvalidDissociation("dissociation has " + std::to_string(d.size()) + " entries for a query with " +
                                  std::to_string(q.size()) + " atoms");
    for (std::size_t i = 0; i != q.size(); ++i) {
        if (d[i].intersects(q.atom_vars(i)))
            throw InvalidDissociation("atom " + q.atom(i).relation + " already contains " +
                                      q.format_vars(d[i] & q.atom_vars(i)));
        if (not d[i].is_subset_of(q.vars()))
            throw InvalidDissociation("atom " + q.atom(i).relation + " dissociated on a variable not in the query");
    }
}

std::vector<VarSet> dissociated_vars(const Query &q, const Dissociation &d)
{
    validate(d, q);
    std::vector<VarSet> out;
    for (std::size_t i = 0; i != q.size(); ++i) out.push_back(q.atom_vars(i) | d[i]);
    return out;
}

bool is_safe(const Query &q, const Dissociation &d)
{
    auto vars = dissociated_vars(q, d);
    return is_hierarchical(vars, q.all_atoms(), q.head());
}

std::vector<VarId> added_columns(const Query &q, VarSet added)
{
    std::vector<VarId> cols;
    for (auto v : added) cols.push_back(static_cast<VarId>(v));
    std::sort(cols.begin(), cols.end(), [&](VarId a, VarId b) { return q.var_name(a) < q.var_name(b); });
    return cols;
}

std::string dissociated_name(const Query &q, std::size_t atom, VarSet added)
{
    std::string name = q.atom(atom).relation;
    if (added.empty()) return name;
    name += '_';
    for (VarId v : added_columns(q, added)) name += "_" + q.var_name(v);
    return name;
}

Query dissociate_query(const Query &q, const Dissociation &d)
{
    validate(d, q);
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i != q.size(); ++i) {
        Atom a{dissociated_name(q, i, d[i]), q.atom(i).args};
        for (VarId v : added_columns(q, d[i])) a.args.push_back(v);
        atoms.push_back(std::move(a));
    }
    return Query(q.symbols_ptr(), std::move(atoms), q.head(), q.name());
}

Database dissociate_database(const Database &db, const Query &q, const Dissociation &d)
{
    validate(d, q);

    /* ADom_x: the values x takes in the relations of the atoms mentioning it. */
    std::vector<std::set<Value>> adom(q.symbols().size());
    for (std::size_t i = 0; i != q.size(); ++i) {
        const Relation &rel = db.at(q.atom(i).relation);
        auto &args = q.atom(i).args;
        for (auto &row : rel.rows())
            for (std::size_t pos = 0; pos != args.size(); ++pos) adom[args[pos]].insert(row.values[pos]);
    }

    Database out;
    for (std::size_t i = 0; i != q.size(); ++i) {
        const Relation &src = db.at(q.atom(i).relation);
        auto cols = added_columns(q, d[i]);
        Relation rel(dissociated_name(q, i, d[i]), src.arity() + cols.size(), src.probabilistic());

        std::vector<std::vector<Value>> domains;
        for (VarId v : cols) domains.emplace_back(adom[v].begin(), adom[v].end());
        bool any_empty = std::any_of(domains.begin(), domains.end(), [](auto &dom) { return dom.empty(); });

        if (not any_empty) {
            for (auto &row : src.rows()) {
                std::vector<std::size_t> pick(cols.size(), 0);
                auto advance = [&] {
                    for (std::size_t k = cols.size(); k-- != 0; ) {
                        if (++pick[k] != domains[k].size()) return true;
                        pick[k] = 0;
                    }
                    return false;
                };
                do {
                    Tuple t = row.values;
                    for (std::size_t k = 0; k != cols.size(); ++k) t.push_back(domains[k][pick[k]]);
                    rel.add(std::move(t), row.probability);
                } while (advance());
            }
        }
        out.add_relation(std::move(rel));
    }
    return out;
}

Catalog dissociate_catalog(const Catalog &catalog, const Query &q, const Dissociation &d)
{
    validate(d, q);
    Catalog out;
    for (std::size_t i = 0; i != q.size(); ++i) {
        auto &schema = catalog.at(q.atom(i).relation);
        out.add_relation(RelationSchema{dissociated_name(q, i, d[i]), schema.arity + d[i].size(), schema.probabilistic});
    }
    for (std::size_t i = 0; i != q.size(); ++i)
        for (auto &fd : catalog.fds())
            if (fd.relation == q.atom(i).relation)
                out.add_fd(FunctionalDependency{dissociated_name(q, i, d[i]), fd.determinant, fd.dependent});
    return out;
}

std::vector<VarDependency> query_dependencies(const Query &q, const Catalog &catalog)
{
    std::vector<VarDependency> deps;
    for (auto &fd : catalog.fds()) {
        auto atom = q.find_atom(fd.relation);
        if (not atom) continue;
        auto &args = q.atom(*atom).args;
        VarDependency dep;
        for (auto pos : fd.determinant) dep.determinant.insert(args.at(pos));
        for (auto pos : fd.dependent) dep.dependent.insert(args.at(pos));
        deps.push_back(dep);
    }
    return deps;
}

VarSet fd_closure(VarSet attrs, const Query &q, const Catalog &catalog)
{
    auto deps = query_dependencies(q, catalog);
    for (bool grown = true; grown; ) {
        grown = false;
        for (auto &dep : deps) {
            if (dep.determinant.is_subset_of(attrs) and not dep.dependent.is_subset_of(attrs)) {
                attrs |= dep.dependent;
                grown = true;
            }
        }
    }
    return attrs;
}

Dissociation delta_gamma(const Query &q, const Catalog &catalog)
{
    Dissociation d;
    for (std::size_t i = 0; i != q.size(); ++i)
        d.added.push_back(fd_closure(q.atom_vars(i), q, catalog) - q.atom_vars(i));
    return d;
}

bool less_equal(const Dissociation &d1, const Dissociation &d2, Order order, const Query &q, const Catalog &catalog)
{
    if (d1.size() != q.size() or d2.size() != q.size())
        throw InvalidDissociation("dissociation size does not match the query");
    for (std::size_t i = 0; i != q.size(); ++i) {
        VarSet a = d1[i], b = d2[i];
        if (order != Order::plain and not catalog.is_probabilistic(q.atom(i).relation)) continue;
        if (order == Order::prob_fd) {
            VarSet closure = fd_closure(q.atom_vars(i), q, catalog);
            a -= closure;
            b -= closure;
        }
        if (not a.is_subset_of(b)) return false;
    }
    return true;
}

std::string to_string(const Dissociation &d, const Query &q)
{
    std::string out = "(";
    for (std::size_t i = 0; i != d.size(); ++i) {
        if (i) out += ", ";
        out += '{' + q.format_vars(d[i]) + '}';
    }
    return out + ")";
}

}
