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

#include "dissoc/lineage.hpp"

#include "dissoc/error.hpp"
#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

namespace dissoc {

const LineageEntry * LineageDNF::find(const Tuple &answer) const
{
    auto it = std::lower_bound(answers.begin(), answers.end(), answer,
                               [](const LineageEntry &e, const Tuple &t) { return e.answer < t; });
    return it != answers.end() and it->answer == answer ? &*it : nullptr;
}

std::size_t LineageDNF::monomial_count() const
{
    std::size_t n = 0;
    for (auto &e : answers) n += e.monomials.size();
    return n;
}

namespace {

/** Calls `visit(rows, binding)` once per valuation of q over db.  `rows[i]` is the row matched by atom i and
 * `binding[v]` the value of variable v.  Atoms are visited greedily: next the one with most bound variables. */
void for_each_valuation(const Query &q, const Database &db,
                        const std::function<void(const std::vector<std::uint32_t>&,
                                                 const std::vector<const Value*>&)> &visit)
{
    const std::size_t m = q.size();
    std::vector<std::size_t> order;
    std::vector<VarSet> bound_before;
    {
        VarSet bound;
        AtomSet left = q.all_atoms();
        while (not left.empty()) {
            std::size_t best = left.front();
            for (auto i : left)
                if ((q.atom_vars(i) & bound).size() > (q.atom_vars(best) & bound).size()) best = i;
            order.push_back(best);
            bound_before.push_back(bound);
            bound |= q.atom_vars(best);
            left.erase(best);
        }
    }

    struct Step
    {
        const Relation *rel;
        std::vector<std::size_t> key_positions;
        std::unordered_map<Tuple, std::vector<std::uint32_t>, TupleHash> index;
        std::vector<std::uint32_t> all;
    };
    std::vector<Step> steps(m);
    for (std::size_t s = 0; s != m; ++s) {
        auto &atom = q.atom(order[s]);
        Step &st = steps[s];
        st.rel = &db.at(atom.relation);
        if (st.rel->arity() != atom.args.size())
            throw DataError("relation " + atom.relation + " has arity " + std::to_string(st.rel->arity()));
        for (auto v : bound_before[s])
            if (q.atom_vars(order[s]).contains(v))
                st.key_positions.push_back(std::find(atom.args.begin(), atom.args.end(), v) - atom.args.begin());
        for (std::uint32_t r = 0; r != st.rel->size(); ++r) {
            if (st.key_positions.empty()) {
                st.all.push_back(r);
                continue;
            }
            Tuple k;
            for (auto pos : st.key_positions) k.push_back(st.rel->row(r).values[pos]);
            st.index[std::move(k)].push_back(r);
        }
    }

    std::vector<std::uint32_t> rows(m);
    std::vector<const Value*> binding(q.symbols().size(), nullptr);
    std::vector<std::vector<VarId>> fresh(m);

    auto rec = [&](auto &self, std::size_t s) -> void {
        if (s == m) {
            visit(rows, binding);
            return;
        }
        Step &st = steps[s];
        auto &atom = q.atom(order[s]);
        const std::vector<std::uint32_t> *candidates = &st.all;
        if (not st.key_positions.empty()) {
            Tuple k;
            for (auto pos : st.key_positions) k.push_back(*binding[atom.args[pos]]);
            auto it = st.index.find(k);
            if (it == st.index.end()) return;
            candidates = &it->second;
        }
        for (auto r : *candidates) {
            auto &vals = st.rel->row(r).values;
            bool ok = true;
            auto &bound_here = fresh[s];
            bound_here.clear();
            for (std::size_t pos = 0; pos != atom.args.size(); ++pos) {
                VarId v = atom.args[pos];
                if (binding[v]) {
                    if (*binding[v] != vals[pos]) { ok = false; break; }
                } else {
                    binding[v] = &vals[pos];
                    bound_here.push_back(v);
                }
            }
            if (ok) {
                rows[order[s]] = r;
                self(self, s + 1);
            }
            for (VarId v : bound_here) binding[v] = nullptr;
        }
    };
    rec(rec, 0);
}

Tuple answer_of(const Query &q, const std::vector<const Value*> &binding)
{
    Tuple t;
    for (auto v : q.head()) t.push_back(*binding[v]);
    return t;
}

}

LineageDNF lineage(const Query &q, const Database &db, const LineageOptions &options)
{
    std::vector<std::uint32_t> rel_index;
    for (auto &a : q.atoms()) rel_index.push_back(static_cast<std::uint32_t>(db.index_of(a.relation)));

    std::map<Tuple, std::vector<Monomial>> grouped;
    std::size_t count = 0;
    for_each_valuation(q, db, [&](const auto &rows, const auto &binding) {
        if (++count > options.max_monomials)
            throw LineageTooLarge("lineage exceeds " + std::to_string(options.max_monomials) + " monomials");
        Monomial mono;
        for (std::size_t i = 0; i != rows.size(); ++i) mono.push_back(TupleId{rel_index[i], rows[i]});
        grouped[answer_of(q, binding)].push_back(std::move(mono));
    });

    LineageDNF f;
    for (auto v : q.head()) f.columns.push_back(static_cast<VarId>(v));
    for (auto &[answer, monos] : grouped) f.answers.push_back({answer, std::move(monos)});
    return f;
}

std::vector<Tuple> eval_deterministic(const Query &q, const Database &db)
{
    std::map<Tuple, bool> answers;
    for_each_valuation(q, db, [&](const auto&, const auto &binding) { answers.emplace(answer_of(q, binding), true); });
    std::vector<Tuple> out;
    for (auto &[t, _] : answers) out.push_back(t);
    return out;
}

std::string format_lineage(const LineageDNF &f, const Database &db)
{
    std::string out;
    for (auto &e : f.answers) {
        out += '(';
        for (std::size_t i = 0; i != e.answer.size(); ++i) out += (i ? "," : "") + e.answer[i];
        out += ")\t";
        for (std::size_t m = 0; m != e.monomials.size(); ++m) {
            if (m) out += ';';
            for (std::size_t i = 0; i != e.monomials[m].size(); ++i)
                out += (i ? "," : "") + db.format_tuple_id(e.monomials[m][i]);
        }
        out += '\n';
    }
    return out;
}

}
