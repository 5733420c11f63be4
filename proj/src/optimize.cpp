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

#include "dissoc/optimize.hpp"

#include "dissoc/error.hpp"
#include "plan_context.hpp"
#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace dissoc {

namespace {

using SubqueryKey = std::pair<std::uint64_t, std::uint64_t>;

SubqueryKey key_of(AtomSet atoms, VarSet head) { return {atoms.bits(), head.bits()}; }

struct SinglePlanner
{
    detail::PlanContext ctx;
    std::map<SubqueryKey, Plan> memo;

    Plan sp(AtomSet atoms, VarSet head)
    {
        auto k = key_of(atoms, head);
        if (auto it = memo.find(k); it != memo.end()) return it->second;
        Plan p;
        if (ctx.stops(atoms)) {
            p = ctx.stop_plan(atoms, head);
        } else if (atoms.size() == 1) {
            p = ctx.leaf(atoms.front(), head);
        } else if (auto comps = ctx.components(atoms, head); comps.size() > 1) {
            std::vector<Plan> children;
            for (auto c : comps) children.push_back(sp(c, head & ctx.working_vars(c)));
            p = make_join(std::move(children));
        } else {
            std::vector<Plan> branches;
            VarSet out = ctx.final_head(atoms, head);
            for (VarSet y : ctx.top_sets(atoms, head)) branches.push_back(make_project(sp(atoms, head | y), out));
            p = make_min(std::move(branches));
        }
        memo.emplace(k, p);
        return p;
    }
};

struct ViewPlanner
{
    detail::PlanContext ctx;
    std::set<SubqueryKey> seen;                  // HS
    std::set<SubqueryKey> shared;                // keys of HM
    std::map<SubqueryKey, std::string> names;    // HM once ordered
    std::map<SubqueryKey, Plan> memo;

    void fs(AtomSet atoms, VarSet head)
    {
        if (ctx.stops(atoms)) return;
        if (auto comps = ctx.components(atoms, head); comps.size() > 1) {
            for (auto c : comps) fs(c, head & ctx.working_vars(c));
            return;
        }
        auto k = key_of(atoms, head);
        if ((atoms.size() == 1 and ctx.working_vars(atoms).is_subset_of(head)) or shared.contains(k)) return;
        if (seen.contains(k)) shared.insert(k);
        seen.insert(k);
        for (VarSet y : ctx.top_sets(atoms, head)) fs(atoms, head | y);
    }

    Plan rp(AtomSet atoms, VarSet head, bool allow_view = true)
    {
        auto k = key_of(atoms, head);
        if (allow_view) {
            if (auto it = names.find(k); it != names.end())
                return make_view_ref(it->second, ctx.final_head(atoms, head));
            if (auto it = memo.find(k); it != memo.end()) return it->second;
        }
        Plan p;
        if (ctx.stops(atoms)) {
            p = ctx.stop_plan(atoms, head);
        } else if (atoms.size() == 1) {
            p = ctx.leaf(atoms.front(), head);
        } else if (auto comps = ctx.components(atoms, head); comps.size() > 1) {
            std::vector<Plan> children;
            for (auto c : comps) children.push_back(rp(c, head & ctx.working_vars(c)));
            p = make_join(std::move(children));
        } else {
            std::vector<Plan> branches;
            VarSet out = ctx.final_head(atoms, head);
            for (VarSet y : ctx.top_sets(atoms, head)) branches.push_back(make_project(rp(atoms, head | y), out));
            p = make_min(std::move(branches));
        }
        if (allow_view) memo.emplace(k, p);
        return p;
    }
};

}

Plan single_plan(const Query &q, const Catalog &catalog, bool use_schema)
{
    SinglePlanner s{detail::PlanContext(q, catalog, use_schema), {}};
    return s.sp(q.all_atoms(), q.head());
}

const ViewDefinition * ViewSet::find(std::string_view name) const
{
    for (auto &v : views)
        if (v.name == name) return &v;
    return nullptr;
}

ViewSet shared_view_plan(const Query &q, const Catalog &catalog, bool use_schema)
{
    ViewPlanner vp{detail::PlanContext(q, catalog, use_schema), {}, {}, {}, {}};
    vp.fs(q.all_atoms(), q.head());

    /* Smaller subqueries first: a view body only refers to strictly smaller atom sets. */
    std::vector<SubqueryKey> order(vp.shared.begin(), vp.shared.end());
    auto rank = [&](const SubqueryKey &k) {
        AtomSet atoms = AtomSet::FromBits(k.first);
        VarSet head = VarSet::FromBits(k.second);
        return std::make_tuple(atoms.size(), vp.ctx.working_vars(atoms).size(), head.size(), k);
    };
    std::sort(order.begin(), order.end(), [&](auto &a, auto &b) { return rank(a) < rank(b); });
    for (std::size_t i = 0; i != order.size(); ++i) vp.names.emplace(order[i], "V" + std::to_string(i + 1));

    ViewSet vs;
    for (auto &k : order)
        vs.views.push_back({vp.names.at(k), vp.rp(AtomSet::FromBits(k.first), VarSet::FromBits(k.second), false)});
    vs.main = vp.rp(q.all_atoms(), q.head());
    return vs;
}

bool is_topologically_ordered(const ViewSet &vs)
{
    std::unordered_set<std::string> defined;
    auto refs_ok = [&](auto &self, const PlanNode &n) -> bool {
        if (n.kind == PlanKind::view and not defined.contains(n.view_name)) return false;
        return std::all_of(n.children.begin(), n.children.end(), [&](const Plan &c) { return self(self, *c); });
    };
    for (auto &v : vs.views) {
        if (not refs_ok(refs_ok, *v.plan)) return false;
        if (not defined.insert(v.name).second) return false;
    }
    return refs_ok(refs_ok, *vs.main);
}

std::string format_view_set(const ViewSet &vs, const Query &q)
{
    std::ostringstream out;
    for (auto &v : vs.views) {
        out << "view " << v.name << " [" << q.format_vars(v.plan->head) << "]\n";
        std::istringstream body(format_plan(v.plan, q));
        for (std::string line; std::getline(body, line); ) out << "  " << line << '\n';
    }
    out << "main\n";
    std::istringstream body(format_plan(vs.main, q));
    for (std::string line; std::getline(body, line); ) out << "  " << line << '\n';
    return out.str();
}

/*======================================================================================================================
 * Semi-join reduction
 *====================================================================================================================*/

Database semijoin_reduce(const Database &db, const Query &q)
{
    const std::size_t m = q.size();
    std::vector<const Relation*> rels;
    std::vector<std::vector<char>> alive;
    for (std::size_t i = 0; i != m; ++i) {
        rels.push_back(&db.at(q.atom(i).relation));
        auto &args = q.atom(i).args;
        std::vector<char> keep(rels[i]->size(), 1);
        /* Repeated variables inside one atom must bind equal values. */
        for (std::size_t r = 0; r != rels[i]->size(); ++r) {
            auto &vals = rels[i]->row(r).values;
            for (std::size_t a = 0; a != args.size() and keep[r]; ++a)
                for (std::size_t b = 0; b != a; ++b)
                    if (args[a] == args[b] and vals[a] != vals[b]) { keep[r] = 0; break; }
        }
        alive.push_back(std::move(keep));
    }

    auto first_position = [&](std::size_t atom, VarId v) {
        auto &args = q.atom(atom).args;
        return static_cast<std::size_t>(std::find(args.begin(), args.end(), v) - args.begin());
    };
    auto project = [&](std::size_t atom, std::size_t row, const std::vector<std::size_t> &positions) {
        Tuple t;
        for (auto pos : positions) t.push_back(rels[atom]->row(row).values[pos]);
        return t;
    };

    for (std::size_t pass = 0; pass < std::max<std::size_t>(1, m * m); ++pass) {
        bool changed = false;
        for (std::size_t i = 0; i != m; ++i) {
            for (std::size_t j = 0; j != m; ++j) {
                VarSet shared = q.atom_vars(i) & q.atom_vars(j);
                if (i == j or shared.empty()) continue;
                std::vector<std::size_t> pi, pj;
                for (auto v : shared) {
                    pi.push_back(first_position(i, static_cast<VarId>(v)));
                    pj.push_back(first_position(j, static_cast<VarId>(v)));
                }
                std::unordered_set<Tuple, TupleHash> present;
                for (std::size_t r = 0; r != rels[j]->size(); ++r)
                    if (alive[j][r]) present.insert(project(j, r, pj));
                for (std::size_t r = 0; r != rels[i]->size(); ++r) {
                    if (alive[i][r] and not present.contains(project(i, r, pi))) {
                        alive[i][r] = 0;
                        changed = true;
                    }
                }
            }
        }
        if (not changed) break;
    }

    Database out;
    for (auto &rel : db.relations()) {
        auto atom = q.find_atom(rel.name());
        if (not atom) {
            out.add_relation(rel);
            continue;
        }
        Relation reduced(rel.name(), rel.arity(), rel.probabilistic());
        for (std::size_t r = 0; r != rel.size(); ++r)
            if (alive[*atom][r]) reduced.add(rel.row(r).values, rel.row(r).probability);
        out.add_relation(std::move(reduced));
    }
    return out;
}

}
