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

#include "dissoc/eval.hpp"

#include "dissoc/enumerate.hpp"
#include "dissoc/error.hpp"
#include <algorithm>
#include <charconv>
#include <future>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace dissoc {

std::optional<double> ScoredRelation::score_of(const Tuple &values) const
{
    auto it = std::lower_bound(rows.begin(), rows.end(), values,
                               [](const ScoredTuple &r, const Tuple &v) { return r.values < v; });
    if (it == rows.end() or it->values != values) return std::nullopt;
    return it->score;
}

std::map<Tuple, double> ScoredRelation::to_map() const
{
    std::map<Tuple, double> m;
    for (auto &r : rows) m.emplace(r.values, r.score);
    return m;
}

namespace {

using Code = std::uint32_t;
using Key = std::vector<Code>;

struct KeyHash
{
    std::size_t operator()(const Key &k) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (Code c : k) h = (h ^ c) * 0x100000001b3ull;
        return h;
    }
};

/// The database with values replaced by dense codes.  Built once, read-only afterwards.
struct EncodedDatabase
{
    struct Rel
    {
        std::size_t arity = 0;
        std::vector<Code> data;
        std::vector<double> p;
    };

    std::unordered_map<Value, Code> dict;
    std::vector<const Value*> values;
    std::unordered_map<std::string, Rel> relations;

    explicit EncodedDatabase(const Database &db)
    {
        for (auto &rel : db.relations()) {
            Rel &r = relations[rel.name()];
            r.arity = rel.arity();
            for (auto &row : rel.rows()) {
                for (auto &v : row.values) {
                    auto [it, fresh] = dict.emplace(v, static_cast<Code>(values.size()));
                    if (fresh) values.push_back(&it->first);
                    r.data.push_back(it->second);
                }
                r.p.push_back(row.probability);
            }
        }
    }
};

struct Table
{
    std::vector<VarId> cols;
    std::vector<Code> data;
    std::vector<double> score;

    std::size_t rows() const { return score.size(); }
    const Code * row(std::size_t i) const { return data.data() + i * cols.size(); }
    Key key(std::size_t i, const std::vector<std::size_t> &positions) const {
        Key k;
        k.reserve(positions.size());
        for (auto pos : positions) k.push_back(row(i)[pos]);
        return k;
    }
};

void normalize(Table &t)
{
    const std::size_t w = t.cols.size();
    std::vector<std::size_t> order(t.rows());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(t.row(a), t.row(a) + w, t.row(b), t.row(b) + w);
    });
    Table out{t.cols, {}, {}};
    out.data.reserve(t.data.size());
    out.score.reserve(t.rows());
    for (auto i : order) {
        out.data.insert(out.data.end(), t.row(i), t.row(i) + w);
        out.score.push_back(t.score[i]);
    }
    t = std::move(out);
}

std::vector<std::size_t> positions_of(const std::vector<VarId> &cols, const std::vector<VarId> &wanted)
{
    std::vector<std::size_t> pos;
    for (VarId v : wanted) pos.push_back(std::find(cols.begin(), cols.end(), v) - cols.begin());
    return pos;
}

Table scan(const EncodedDatabase &edb, const PlanNode &n)
{
    auto it = edb.relations.find(n.relation);
    if (it == edb.relations.end()) throw DataError("database has no relation '" + n.relation + "'");
    auto &rel = it->second;
    if (rel.arity != n.args.size())
        throw DataError("relation " + n.relation + " has arity " + std::to_string(rel.arity) + ", plan scans " +
                        std::to_string(n.args.size()) + " columns");

    Table t;
    for (auto v : n.head) t.cols.push_back(static_cast<VarId>(v));
    std::vector<std::size_t> first;
    for (VarId v : t.cols) first.push_back(std::find(n.args.begin(), n.args.end(), v) - n.args.begin());

    const std::size_t a = rel.arity;
    for (std::size_t r = 0; r != rel.p.size(); ++r) {
        const Code *vals = rel.data.data() + r * a;
        bool ok = true;
        for (std::size_t i = 0; i != a and ok; ++i)
            for (std::size_t j = 0; j != i; ++j)
                if (n.args[i] == n.args[j] and vals[i] != vals[j]) { ok = false; break; }
        if (not ok) continue;
        for (auto pos : first) t.data.push_back(vals[pos]);
        t.score.push_back(rel.p[r]);
    }
    normalize(t);
    return t;
}

Table join2(const Table &a, const Table &b)
{
    std::vector<VarId> shared;
    std::set_intersection(a.cols.begin(), a.cols.end(), b.cols.begin(), b.cols.end(), std::back_inserter(shared));
    Table out;
    std::set_union(a.cols.begin(), a.cols.end(), b.cols.begin(), b.cols.end(), std::back_inserter(out.cols));

    /* Each output column comes from a (first) or b (second). */
    std::vector<std::pair<int, std::size_t>> source;
    for (VarId v : out.cols) {
        auto ia = std::find(a.cols.begin(), a.cols.end(), v);
        if (ia != a.cols.end()) source.emplace_back(0, ia - a.cols.begin());
        else source.emplace_back(1, std::find(b.cols.begin(), b.cols.end(), v) - b.cols.begin());
    }
    auto pa = positions_of(a.cols, shared), pb = positions_of(b.cols, shared);

    std::unordered_map<Key, std::vector<std::size_t>, KeyHash> index;
    for (std::size_t j = 0; j != b.rows(); ++j) index[b.key(j, pb)].push_back(j);
    for (std::size_t i = 0; i != a.rows(); ++i) {
        auto it = index.find(a.key(i, pa));
        if (it == index.end()) continue;
        for (auto j : it->second) {
            for (auto [side, pos] : source) out.data.push_back(side == 0 ? a.row(i)[pos] : b.row(j)[pos]);
            out.score.push_back(a.score[i] * b.score[j]);
        }
    }
    return out;
}

Table project(const Table &in, VarSet head)
{
    Table out;
    for (auto v : head) out.cols.push_back(static_cast<VarId>(v));
    auto pos = positions_of(in.cols, out.cols);
    std::unordered_map<Key, std::size_t, KeyHash> groups;
    std::vector<double> miss;
    for (std::size_t i = 0; i != in.rows(); ++i) {
        auto [it, fresh] = groups.emplace(in.key(i, pos), miss.size());
        if (fresh) {
            out.data.insert(out.data.end(), it->first.begin(), it->first.end());
            miss.push_back(1.0);
        }
        miss[it->second] *= 1.0 - in.score[i];
    }
    for (double m : miss) out.score.push_back(1.0 - m);
    normalize(out);
    return out;
}

Table take_min(std::vector<Table> inputs)
{
    Table out = std::move(inputs.front());
    for (std::size_t k = 1; k != inputs.size(); ++k) {
        const Table &t = inputs[k];
        if (t.cols != out.cols or t.data != out.data)
            throw std::logic_error("min inputs produce different answer sets");
        for (std::size_t i = 0; i != t.rows(); ++i) out.score[i] = std::min(out.score[i], t.score[i]);
    }
    return out;
}

struct Evaluator
{
    const EncodedDatabase &edb;
    const std::unordered_map<std::string, Table> &views;
    bool parallel;

    Table eval(const PlanNode &n) const
    {
        switch (n.kind) {
            case PlanKind::scan: return scan(edb, n);
            case PlanKind::project: return project(eval(*n.children.front()), n.head);
            case PlanKind::join: {
                Table acc = eval(*n.children.front());
                for (std::size_t i = 1; i != n.children.size(); ++i) acc = join2(acc, eval(*n.children[i]));
                normalize(acc);
                return acc;
            }
            case PlanKind::min: {
                std::vector<Table> inputs;
                if (parallel) {
                    std::vector<std::future<Table>> pending;
                    for (auto &c : n.children)
                        pending.push_back(std::async(std::launch::async, [this, &c] { return eval(*c); }));
                    for (auto &f : pending) inputs.push_back(f.get());
                } else {
                    for (auto &c : n.children) inputs.push_back(eval(*c));
                }
                return take_min(std::move(inputs));
            }
            case PlanKind::view: {
                auto it = views.find(n.view_name);
                if (it == views.end()) throw std::logic_error("view " + n.view_name + " used before its definition");
                return it->second;
            }
        }
        throw std::logic_error("unknown plan operator");
    }
};

ScoredRelation decode(const EncodedDatabase &edb, const Table &t)
{
    ScoredRelation r;
    r.columns = t.cols;
    for (std::size_t i = 0; i != t.rows(); ++i) {
        Tuple values;
        for (std::size_t c = 0; c != t.cols.size(); ++c) values.push_back(*edb.values[t.row(i)[c]]);
        r.rows.push_back({std::move(values), t.score[i]});
    }
    std::sort(r.rows.begin(), r.rows.end(), [](auto &a, auto &b) { return a.values < b.values; });
    return r;
}

}

ScoredRelation eval_plan_score(const Plan &plan, const Database &db, bool parallel)
{
    EncodedDatabase edb(db);
    std::unordered_map<std::string, Table> none;
    return decode(edb, Evaluator{edb, none, parallel}.eval(*plan));
}

ScoredRelation eval_view_set(const ViewSet &vs, const Database &db, bool parallel)
{
    EncodedDatabase edb(db);
    std::unordered_map<std::string, Table> views;
    for (auto &v : vs.views) {
        Table t = Evaluator{edb, views, parallel}.eval(*v.plan);
        views.emplace(v.name, std::move(t));
    }
    return decode(edb, Evaluator{edb, views, parallel}.eval(*vs.main));
}

Strategy parse_strategy(std::string_view text)
{
    if (text == "all" or text == "none" or text == "all_plans") return Strategy::all_plans;
    if (text == "1" or text == "opt1") return Strategy::opt1;
    if (text == "12" or text == "opt12") return Strategy::opt12;
    if (text == "123" or text == "opt123") return Strategy::opt123;
    throw ParseError("unknown strategy '" + std::string(text) + "' (expected none, 1, 12 or 123)");
}

std::string to_string(Strategy s)
{
    switch (s) {
        case Strategy::all_plans: return "all_plans";
        case Strategy::opt1: return "opt1";
        case Strategy::opt12: return "opt12";
        case Strategy::opt123: return "opt123";
    }
    return "?";
}

ScoredRelation propagation_score(const Query &q, const Database &db, const Catalog &catalog,
                                 const PropagationOptions &options)
{
    switch (options.strategy) {
        case Strategy::all_plans: {
            auto plans = enumerate_minimal_plans(q, catalog, options.use_schema);
            std::vector<ScoredRelation> results;
            if (options.parallel) {
                std::vector<std::future<ScoredRelation>> pending;
                for (auto &p : plans)
                    pending.push_back(std::async(std::launch::async, [&db, &p] { return eval_plan_score(p, db); }));
                for (auto &f : pending) results.push_back(f.get());
            } else {
                for (auto &p : plans) results.push_back(eval_plan_score(p, db));
            }
            ScoredRelation out = std::move(results.front());
            for (std::size_t k = 1; k != results.size(); ++k) {
                auto &r = results[k];
                if (r.rows.size() != out.rows.size()) throw std::logic_error("plans disagree on the answers");
                for (std::size_t i = 0; i != r.rows.size(); ++i) {
                    if (r.rows[i].values != out.rows[i].values) throw std::logic_error("plans disagree on the answers");
                    out.rows[i].score = std::min(out.rows[i].score, r.rows[i].score);
                }
            }
            return out;
        }
        case Strategy::opt1:
            return eval_plan_score(single_plan(q, catalog, options.use_schema), db, options.parallel);
        case Strategy::opt12:
            return eval_view_set(shared_view_plan(q, catalog, options.use_schema), db, options.parallel);
        case Strategy::opt123:
            return eval_view_set(shared_view_plan(q, catalog, options.use_schema), semijoin_reduce(db, q),
                                 options.parallel);
    }
    throw std::logic_error("unknown strategy");
}

std::string format_answer(const Tuple &values)
{
    std::string out = "(";
    for (std::size_t i = 0; i != values.size(); ++i) out += (i ? "," : "") + values[i];
    return out + ")";
}

std::string format_scored_relation(const ScoredRelation &r)
{
    std::string out;
    for (auto &row : r.rows) {
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, row.score);
        out += format_answer(row.values) + '\t' + std::string(buf, end) + '\n';
    }
    return out;
}

}
