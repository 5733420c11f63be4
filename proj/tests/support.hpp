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

// Independent reference implementations and random instance builders shared by the tests.

#include "dissoc/catalog.hpp"
#include "dissoc/database.hpp"
#include "dissoc/dissociation.hpp"
#include "dissoc/eval.hpp"
#include "dissoc/lineage.hpp"
#include "dissoc/oracle.hpp"
#include "dissoc/query.hpp"
#include "dissoc/random.hpp"
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing {

using namespace dissoc;

inline Catalog catalog_for(const Query &q, const std::vector<std::string> &deterministic = {})
{
    Catalog c;
    for (auto &a : q.atoms()) {
        bool det = std::find(deterministic.begin(), deterministic.end(), a.relation) != deterministic.end();
        c.add_relation({a.relation, a.args.size(), not det});
    }
    return c;
}

inline Database make_db(const Catalog &catalog, const std::map<std::string, std::vector<std::pair<Tuple, double>>> &rows)
{
    Database db;
    for (auto &schema : catalog.relations()) {
        Relation r(schema);
        if (auto it = rows.find(schema.name); it != rows.end())
            for (auto &[t, p] : it->second) r.add(t, p);
        db.add_relation(std::move(r));
    }
    return db;
}

/// P[f] by summing over all 2^n assignments.
inline double brute_force_dnf(const Dnf &f, const AssignmentDistribution &dist)
{
    const std::size_t n = dist.size();
    if (n > 22) throw std::invalid_argument("too many variables for enumeration");
    double total = 0.0;
    for (std::uint64_t w = 0; w != (std::uint64_t(1) << n); ++w) {
        double pw = 1.0;
        for (std::size_t x = 0; x != n; ++x) pw *= ((w >> x) & 1) ? dist[x] : 1.0 - dist[x];
        bool sat = false;
        for (auto &t : f.terms) {
            bool all = true;
            for (auto x : t) all = all and ((w >> x) & 1);
            if (all) { sat = true; break; }
        }
        if (sat) total += pw;
    }
    return total;
}

/// Per-answer probability by evaluating q deterministically in every possible world.
inline std::map<Tuple, double> brute_force_query(const Query &q, const Database &db)
{
    std::vector<std::pair<std::size_t, std::size_t>> ids;
    for (std::size_t r = 0; r != db.relations().size(); ++r)
        for (std::size_t i = 0; i != db.relations()[r].size(); ++i) ids.emplace_back(r, i);
    if (ids.size() > 18) throw std::invalid_argument("too many tuples for world enumeration");
    std::map<Tuple, double> out;
    for (std::uint64_t w = 0; w != (std::uint64_t(1) << ids.size()); ++w) {
        double pw = 1.0;
        Database world;
        std::vector<Relation> rels;
        for (auto &rel : db.relations()) rels.emplace_back(rel.name(), rel.arity(), rel.probabilistic());
        for (std::size_t k = 0; k != ids.size(); ++k) {
            auto &row = db.relations()[ids[k].first].row(ids[k].second);
            if ((w >> k) & 1) {
                pw *= row.probability;
                rels[ids[k].first].add(row.values, row.probability);
            } else {
                pw *= 1.0 - row.probability;
            }
        }
        if (pw == 0.0) continue;
        for (auto &r : rels) world.add_relation(std::move(r));
        for (auto &t : eval_deterministic(q, world)) out[t] += pw;
    }
    return out;
}

/// A random self-join-free query over variables v0.. with relations A0, A1, ...
inline Query random_query(Xoshiro256 &rng, std::size_t max_atoms, std::size_t max_vars, bool allow_head = true)
{
    for (;;) {
        std::size_t m = 1 + rng.uniform_below(max_atoms);
        std::size_t nv = 1 + rng.uniform_below(max_vars);
        std::vector<std::vector<std::size_t>> atoms(m);
        std::vector<bool> used(nv, false);
        for (auto &a : atoms) {
            std::size_t arity = 1 + rng.uniform_below(std::min<std::size_t>(3, nv));
            while (a.size() < arity) {
                std::size_t v = rng.uniform_below(nv);
                if (std::find(a.begin(), a.end(), v) == a.end()) a.push_back(v);
            }
            for (auto v : a) used[v] = true;
        }
        std::vector<std::size_t> present;
        for (std::size_t v = 0; v != nv; ++v)
            if (used[v]) present.push_back(v);
        std::string head;
        if (allow_head)
            for (auto v : present)
                if (rng.uniform_below(4) == 0) head += (head.empty() ? "" : ",") + ("v" + std::to_string(v));
        std::string text = "q(" + head + ") :- ";
        for (std::size_t i = 0; i != m; ++i) {
            text += (i ? ", A" : "A") + std::to_string(i) + "(";
            for (std::size_t j = 0; j != atoms[i].size(); ++j)
                text += (j ? ",v" : "v") + std::to_string(atoms[i][j]);
            text += ")";
        }
        return parse_query(text);
    }
}

/// A random hierarchical query: every atom's variables form a root path of a random variable forest.
inline Query random_hierarchical_query(Xoshiro256 &rng, std::size_t max_atoms, std::size_t max_vars)
{
    std::size_t nv = 1 + rng.uniform_below(max_vars);
    std::vector<int> parent(nv, -1);
    for (std::size_t v = 1; v != nv; ++v)
        parent[v] = rng.uniform_below(3) == 0 ? -1 : static_cast<int>(rng.uniform_below(v));
    std::size_t m = 1 + rng.uniform_below(max_atoms);
    std::string text = "q() :- ";
    for (std::size_t i = 0; i != m; ++i) {
        std::vector<std::size_t> path;
        for (int v = static_cast<int>(rng.uniform_below(nv)); v != -1; v = parent[v])
            path.push_back(static_cast<std::size_t>(v));
        text += (i ? ", A" : "A") + std::to_string(i) + "(";
        for (std::size_t j = 0; j != path.size(); ++j) text += (j ? ",v" : "v") + std::to_string(path[j]);
        text += ")";
    }
    return parse_query(text);
}

/// Random tuples over 1..domain for every relation of q, at most `max_tuples` in total.
inline Database random_db(Xoshiro256 &rng, const Query &q, const Catalog &catalog, std::size_t domain,
                          std::size_t max_tuples, std::size_t per_relation = 4)
{
    Database db;
    std::size_t left = max_tuples;
    for (auto &a : q.atoms()) {
        auto &schema = catalog.at(a.relation);
        Relation r(schema);
        std::size_t want = std::min(left, 1 + rng.uniform_below(per_relation));
        for (std::size_t tries = 0; r.size() < want and tries < 50; ++tries) {
            Tuple t;
            for (std::size_t j = 0; j != schema.arity; ++j) t.push_back(std::to_string(1 + rng.uniform_below(domain)));
            if (r.find(t) >= 0) continue;
            double p = schema.probabilistic ? 0.05 + 0.9 * rng.uniform01() : 1.0;
            r.add(std::move(t), p);
        }
        left -= r.size();
        db.add_relation(std::move(r));
    }
    return db;
}

/// Every dissociation adding only existential variables.
inline std::vector<Dissociation> all_dissociations(const Query &q, std::size_t cap = 1u << 16)
{
    std::vector<std::vector<VarId>> options;
    std::size_t total = 1;
    for (std::size_t i = 0; i != q.size(); ++i) {
        std::vector<VarId> free;
        for (auto v : q.existential() - q.atom_vars(i)) free.push_back(static_cast<VarId>(v));
        total <<= free.size();
        if (total > cap) throw std::invalid_argument("too many dissociations");
        options.push_back(std::move(free));
    }
    std::vector<Dissociation> out;
    for (std::size_t code = 0; code != total; ++code) {
        Dissociation d = Dissociation::Bottom(q.size());
        std::size_t c = code;
        for (std::size_t i = 0; i != q.size(); ++i) {
            std::size_t bits = options[i].size();
            for (std::size_t b = 0; b != bits; ++b)
                if ((c >> b) & 1) d.added[i].insert(options[i][b]);
            c >>= bits;
        }
        out.push_back(d);
    }
    return out;
}

inline std::vector<Dissociation> minimal_safe_dissociations(const Query &q)
{
    std::vector<Dissociation> safe;
    for (auto &d : all_dissociations(q))
        if (is_safe(q, d)) safe.push_back(d);
    Catalog none;
    std::vector<Dissociation> minimal;
    for (auto &d : safe) {
        bool dominated = false;
        for (auto &e : safe)
            if (e != d and less_equal(e, d, Order::plain, q, none)) { dominated = true; break; }
        if (not dominated) minimal.push_back(d);
    }
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

inline bool near(double a, double b, double eps = 1e-12) { return std::abs(a - b) <= eps; }

}
