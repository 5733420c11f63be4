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

#include "dissoc/enumerate.hpp"

#include "dissoc/error.hpp"
#include "plan_context.hpp"
#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace dissoc {

namespace detail {

VarSet union_of(std::span<const VarSet> vars, AtomSet atoms)
{
    VarSet s;
    for (auto i : atoms) s |= vars[i];
    return s;
}

std::vector<VarSet> minimal_cut_sets(std::span<const VarSet> work, AtomSet atoms, VarSet head,
                                     const std::vector<bool> *probabilistic)
{
    std::vector<VarId> candidates;
    for (auto v : union_of(work, atoms) - head) candidates.push_back(static_cast<VarId>(v));
    if (candidates.size() > 30) throw ResourceLimitError("too many existential variables for cut enumeration");

    auto cuts = [&](VarSet cut) {
        auto comps = connected_components(work, atoms, head | cut);
        if (not probabilistic) return comps.size() >= 2;
        std::size_t with_prob = 0;
        for (auto c : comps)
            if (std::any_of(c.begin(), c.end(), [&](std::size_t i) { return (*probabilistic)[i]; })) ++with_prob;
        return with_prob >= 2;
    };

    std::vector<VarSet> accepted;
    const std::size_t n = candidates.size();
    for (std::size_t size = 0; size <= n; ++size) {
        /* Gosper's hack over the n-bit masks with `size` bits set. */
        std::uint64_t mask = size == 0 ? 0 : (std::uint64_t(1) << size) - 1;
        const std::uint64_t limit = std::uint64_t(1) << n;
        while (mask < limit) {
            VarSet cut;
            for (std::size_t b = 0; b != n; ++b)
                if ((mask >> b) & 1) cut.insert(candidates[b]);
            bool dominated = std::any_of(accepted.begin(), accepted.end(),
                                         [&](VarSet a) { return a.is_subset_of(cut); });
            if (not dominated and cuts(cut)) accepted.push_back(cut);
            if (mask == 0) break;
            std::uint64_t c = mask & -mask, r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
        if (size == 0 and not accepted.empty()) break;
    }
    std::sort(accepted.begin(), accepted.end(), [](VarSet a, VarSet b) {
        return a.size() != b.size() ? a.size() < b.size() : a.bits() < b.bits();
    });
    return accepted;
}

Plan safe_plan(const Query &q, std::span<const VarSet> work, AtomSet atoms, VarSet head)
{
    if (atoms.size() == 1) {
        auto i = atoms.front();
        return make_project(make_scan(q.atom(i).relation, q.atom(i).args), head & q.atom_vars(i));
    }
    auto comps = connected_components(work, atoms, head);
    if (comps.size() > 1) {
        std::vector<Plan> children;
        for (auto c : comps) children.push_back(safe_plan(q, work, c, head & union_of(work, c)));
        return make_join(std::move(children));
    }
    VarSet sep = union_of(work, atoms) - head;
    for (auto i : atoms) sep &= work[i];
    if (sep.empty()) throw NotSafeError("query is not hierarchical: no separator variable");
    return make_project(safe_plan(q, work, atoms, head | sep), head & q.vars_of(atoms));
}

PlanContext::PlanContext(const Query &q, const Catalog &catalog, bool use_schema)
    : q(q), use_schema(use_schema)
{
    auto gamma = use_schema ? delta_gamma(q, catalog) : Dissociation::Bottom(q.size());
    for (std::size_t i = 0; i != q.size(); ++i) {
        work.push_back(q.atom_vars(i) | gamma[i]);
        probabilistic.push_back(use_schema ? catalog.is_probabilistic(q.atom(i).relation) : true);
    }
}

std::vector<AtomSet> PlanContext::components(AtomSet atoms, VarSet head) const
{
    return connected_components(work, atoms, head);
}

std::vector<VarSet> PlanContext::top_sets(AtomSet atoms, VarSet head) const
{
    return minimal_cut_sets(work, atoms, head, use_schema ? &probabilistic : nullptr);
}

bool PlanContext::stops(AtomSet atoms) const
{
    if (not use_schema) return false;
    std::size_t n = 0;
    for (auto i : atoms) n += probabilistic[i];
    return n <= 1;
}

Plan PlanContext::stop_plan(AtomSet atoms, VarSet head) const
{
    if (atoms.size() == 1) return leaf(atoms.front(), head);
    std::vector<VarSet> w = work;
    VarSet all = working_vars(atoms) - head;
    for (auto i : atoms)
        if (not probabilistic[i]) w[i] |= all;
    return safe_plan(q, w, atoms, head);
}

Plan PlanContext::leaf(std::size_t atom, VarSet head) const
{
    return make_project(make_scan(q.atom(atom).relation, q.atom(atom).args), head & q.atom_vars(atom));
}

}

/*======================================================================================================================
 * Plan ↔ dissociation
 *====================================================================================================================*/

namespace {

bool safe_below(const PlanNode &n, VarSet constants)
{
    if (n.kind == PlanKind::join)
        for (auto &c : n.children)
            if (c->head - constants != n.children.front()->head - constants) return false;
    return std::all_of(n.children.begin(), n.children.end(),
                       [&](const Plan &c) { return safe_below(*c, constants); });
}

}

bool is_safe_plan(const Plan &plan)
{
    /* Head variables of the query, i.e. the root's, act as constants. */
    return safe_below(*plan, plan->head);
}

Dissociation plan_to_dissociation(const Plan &plan, const Query &q)
{
    Dissociation d = Dissociation::Bottom(q.size());
    std::vector<int> seen(q.size(), 0);

    /* Returns the atoms below `n`. */
    auto walk = [&](auto &self, const PlanNode &n) -> AtomSet {
        switch (n.kind) {
            case PlanKind::scan: {
                auto i = q.find_atom(n.relation);
                if (not i) throw PlanQueryMismatch("plan scans " + n.relation + ", which is not in the query");
                if (n.args != q.atom(*i).args)
                    throw PlanQueryMismatch("plan scans " + n.relation + " with different variables");
                if (seen[*i]++) throw PlanQueryMismatch("plan scans " + n.relation + " twice");
                return AtomSet::Singleton(*i);
            }
            case PlanKind::project: {
                AtomSet below = self(self, *n.children.front());
                for (auto v : n.children.front()->head - n.head) {
                    for (std::size_t i = 0; i != q.size(); ++i)
                        if (q.atom_vars(i).contains(v) and not below.contains(i))
                            throw PlanQueryMismatch("variable " + q.var_name(static_cast<VarId>(v)) +
                                                    " projected away before joining " + q.atom(i).relation);
                }
                return below;
            }
            case PlanKind::join: {
                AtomSet all;
                for (auto &c : n.children) {
                    AtomSet below = self(self, *c);
                    VarSet missing = n.head - c->head;
                    if (missing.intersects(q.vars_of(below)))
                        throw PlanQueryMismatch("variable " + q.format_vars(missing & q.vars_of(below)) +
                                                " joined after it was projected away");
                    for (auto i : below) d.added[i] |= missing - q.head();
                    all |= below;
                }
                return all;
            }
            case PlanKind::min: throw PlanQueryMismatch("plan contains a min operator");
            case PlanKind::view: throw PlanQueryMismatch("plan references view " + n.view_name);
        }
        return {};
    };
    walk(walk, *plan);
    for (std::size_t i = 0; i != q.size(); ++i)
        if (seen[i] != 1) throw PlanQueryMismatch("plan does not scan " + q.atom(i).relation);
    if (plan->head != q.head())
        throw PlanQueryMismatch("plan head [" + q.format_vars(plan->head) + "] differs from the query head [" +
                                q.format_vars(q.head()) + "]");
    return d;
}

Plan dissociation_to_plan(const Query &q, const Dissociation &d)
{
    auto work = dissociated_vars(q, d);
    if (not is_hierarchical(work, q.all_atoms(), q.head()))
        throw NotSafeError("dissociation " + to_string(d, q) + " is not safe");
    return detail::safe_plan(q, work, q.all_atoms(), q.head());
}

/*======================================================================================================================
 * Cuts and Algorithm MP
 *====================================================================================================================*/

std::vector<VarSet> min_cuts(const Query &q)
{
    return detail::minimal_cut_sets(q.all_atom_vars(), q.all_atoms(), q.head(), nullptr);
}

std::vector<VarSet> min_p_cuts(const Query &q, const Catalog &catalog)
{
    std::vector<bool> prob;
    for (auto &a : q.atoms()) prob.push_back(catalog.is_probabilistic(a.relation));
    return detail::minimal_cut_sets(q.all_atom_vars(), q.all_atoms(), q.head(), &prob);
}

namespace {

struct Enumerator
{
    detail::PlanContext ctx;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<Plan>> memo;

    static void add_unique(std::vector<Plan> &plans, std::unordered_set<std::string> &keys, Plan p)
    {
        if (keys.insert(p->key).second) plans.push_back(std::move(p));
    }

    const std::vector<Plan> & mp(AtomSet atoms, VarSet head)
    {
        auto memo_key = std::make_pair(atoms.bits(), head.bits());
        if (auto it = memo.find(memo_key); it != memo.end()) return it->second;

        std::vector<Plan> plans;
        std::unordered_set<std::string> keys;
        if (ctx.stops(atoms)) {
            plans.push_back(ctx.stop_plan(atoms, head));
        } else if (atoms.size() == 1) {
            plans.push_back(ctx.leaf(atoms.front(), head));
        } else if (auto comps = ctx.components(atoms, head); comps.size() > 1) {
            std::vector<const std::vector<Plan>*> parts;
            for (auto c : comps) parts.push_back(&mp(c, head & ctx.working_vars(c)));
            std::vector<std::size_t> pick(parts.size(), 0);
            for (;;) {
                std::vector<Plan> children;
                for (std::size_t k = 0; k != parts.size(); ++k) children.push_back((*parts[k])[pick[k]]);
                add_unique(plans, keys, make_join(std::move(children)));
                std::size_t k = parts.size();
                while (k != 0 and ++pick[k - 1] == parts[k - 1]->size()) pick[--k] = 0;
                if (k == 0) break;
            }
        } else {
            VarSet out = ctx.final_head(atoms, head);
            for (VarSet y : ctx.top_sets(atoms, head))
                for (auto &p : mp(atoms, head | y)) add_unique(plans, keys, make_project(p, out));
        }
        std::sort(plans.begin(), plans.end(), [](const Plan &a, const Plan &b) { return a->key < b->key; });
        return memo.emplace(memo_key, std::move(plans)).first->second;
    }
};

}

std::vector<Plan> enumerate_minimal_plans(const Query &q, const Catalog &catalog, bool use_schema)
{
    Enumerator e{detail::PlanContext(q, catalog, use_schema), {}};
    return e.mp(q.all_atoms(), q.head());
}

}
