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

// Acceptance checks.  One line per criterion; the exit status is zero when every criterion passes or is listed
// with --expect-fail.

#include "dissoc/bench.hpp"
#include "dissoc/dissociation.hpp"
#include "dissoc/enumerate.hpp"
#include "dissoc/eval.hpp"
#include "dissoc/generate.hpp"
#include "dissoc/oracle.hpp"
#include "dissoc/ranking.hpp"
#include "support.hpp"
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace dissoc;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

double only_score(const ScoredRelation &r) { return r.rows.empty() ? 0.0 : r.rows.front().score; }

Outcome plan_counts()
{
    auto start = std::chrono::steady_clock::now();
    const std::size_t chain[] = {1, 2, 5, 14, 42, 132, 429};
    const std::size_t star[] = {1, 2, 6, 24, 120, 720, 5040};
    std::ostringstream got;
    bool ok = true;
    got << "chain";
    for (std::size_t k = 2; k <= 8; ++k) {
        auto n = enumerate_minimal_plans(shape_query(Shape::chain, k), shape_catalog(Shape::chain, k), false).size();
        got << ' ' << n;
        ok = ok and n == chain[k - 2];
    }
    got << ", star";
    for (std::size_t k = 1; k <= 7; ++k) {
        auto n = enumerate_minimal_plans(shape_query(Shape::star, k), shape_catalog(Shape::star, k), false).size();
        got << ' ' << n;
        ok = ok and n == star[k - 1];
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    got << ", " << secs << " s";
    return {ok and secs < 60, got.str()};
}

Outcome four_atom_probabilities()
{
    auto q = parse_query("q() :- R(x), S(x), T(x,y), U(y)");
    auto cat = testing::catalog_for(q);
    auto db = testing::make_db(cat, {{"R", {{{"1"}, .5}, {{"2"}, .5}}}, {"S", {{{"1"}, .5}, {{"2"}, .5}}},
                                     {"T", {{{"1", "1"}, .5}, {{"1", "2"}, .5}, {{"2", "2"}, .5}}},
                                     {"U", {{{"1"}, .5}, {{"2"}, .5}}}});
    double exact = only_score(exact_query_prob(q, db));
    std::vector<double> plans;
    for (auto &p : enumerate_minimal_plans(q, cat, false)) plans.push_back(only_score(eval_plan_score(p, db)));
    std::sort(plans.begin(), plans.end());
    double rho = only_score(propagation_score(q, db, cat));
    bool ok = testing::near(exact, 83.0 / 512) and plans.size() == 2 and testing::near(plans[0], 169.0 / 1024) and
              testing::near(plans[1], 353.0 / 2048) and testing::near(rho, 169.0 / 1024);
    std::ostringstream d;
    d.precision(12);
    d << "exact " << exact << ", plans";
    for (double s : plans) d << ' ' << s;
    d << ", rho " << rho;
    return {ok, d.str()};
}

Outcome boolean_algebra()
{
    Xoshiro256 rng(2024);
    int bad = 0;
    for (int i = 0; i != 5; ++i) {
        double p = rng.uniform01(), q = rng.uniform01(), r = rng.uniform01();
        double f = exact_dnf_prob(Dnf{{{0, 1}, {0, 2}}}, {{p, q, r}});
        double g = exact_dnf_prob(Dnf{{{0, 1}, {2, 3}}}, {{p, q, p, r}});
        bad += not testing::near(f, p * q + p * r - p * q * r);
        bad += not testing::near(g, p * q + p * r - p * p * q * r);
    }
    auto inv = check_oblivious_bound(Dnf{{{0}}}, Dnf{{{0, 1}}}, {{0, 0}}, {{0.6}});
    bool ok = bad == 0 and not inv.valid and testing::near(inv.dissociated, 0.36);
    return {ok, std::to_string(bad) + " mismatches at 5 points, X -> X'X'' valid=" + (inv.valid ? "yes" : "no") +
                    " P=" + std::to_string(inv.dissociated)};
}

Outcome conservativity()
{
    Xoshiro256 rng(4);
    int bad = 0;
    for (int i = 0; i != 20; ++i) {
        auto q = testing::random_hierarchical_query(rng, 4, 4);
        auto cat = testing::catalog_for(q);
        auto plans = enumerate_minimal_plans(q, cat, false);
        auto db = testing::random_db(rng, q, cat, 3, 16, 6);
        if (plans.size() != 1 or not is_safe_plan(plans[0])) {
            ++bad;
            continue;
        }
        auto exact = exact_query_prob(q, db).to_map();
        auto score = eval_plan_score(plans[0], db).to_map();
        if (score.size() != exact.size()) ++bad;
        for (auto &[t, p] : exact)
            if (not testing::near(score[t], p)) ++bad;
    }
    auto q = parse_query("q() :- R(x), S(x,y), T(y)");
    auto cat = testing::catalog_for(q, {"T"});
    auto plans = enumerate_minimal_plans(q, cat, true);
    int dr_bad = plans.size() != 1;
    for (int i = 0; i != 20 and plans.size() == 1; ++i) {
        auto db = testing::random_db(rng, q, cat, 3, 12, 5);
        auto exact = exact_query_prob(q, db).to_map();
        auto score = eval_plan_score(plans[0], db).to_map();
        for (auto &[t, p] : exact)
            if (not testing::near(score[t], p)) ++dr_bad;
    }
    return {bad == 0 and dr_bad == 0, std::to_string(bad) + " violations over 20 hierarchical queries, " +
                                          std::to_string(plans.size()) + " plan(s) with T deterministic, " +
                                          std::to_string(dr_bad) + " violations"};
}

Outcome bounds()
{
    Xoshiro256 rng(5);
    Catalog none;
    int violations = 0;
    std::size_t comparisons = 0;
    for (int i = 0; i != 50; ++i) {
        auto q = testing::random_query(rng, 4, 4);
        auto cat = testing::catalog_for(q);
        auto db = testing::random_db(rng, q, cat, 3, 12);
        auto exact = exact_query_prob(q, db).to_map();
        std::vector<Dissociation> ds;
        std::vector<std::map<Tuple, double>> scores;
        for (auto &d : testing::all_dissociations(q)) {
            if (not is_safe(q, d)) continue;
            ds.push_back(d);
            scores.push_back(eval_plan_score(dissociation_to_plan(q, d), db).to_map());
            for (auto &[t, p] : exact) {
                ++comparisons;
                if (scores.back()[t] < p - 1e-12) ++violations;
            }
        }
        for (std::size_t a = 0; a != ds.size(); ++a)
            for (std::size_t b = 0; b != ds.size(); ++b)
                if (a != b and less_equal(ds[a], ds[b], Order::plain, q, none))
                    for (auto &[t, s] : scores[a]) {
                        ++comparisons;
                        if (s > scores[b][t] + 1e-12) ++violations;
                    }
    }
    return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(comparisons) +
                                 " comparisons"};
}

Outcome optimization_equivalence()
{
    int disagree = 0;
    double worst = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GenSpec spec;
        spec.shape = seed % 2 ? Shape::chain : Shape::star;
        spec.k = 2 + seed % 3;
        spec.n = 12;
        spec.N = 4;
        spec.seed = seed;
        auto inst = generate(spec);
        auto base = propagation_score(inst.query, inst.db, inst.catalog, {Strategy::all_plans}).to_map();
        bool same = true;
        for (auto s : {Strategy::opt1, Strategy::opt12, Strategy::opt123}) {
            auto other = propagation_score(inst.query, inst.db, inst.catalog, {s}).to_map();
            if (other.size() != base.size()) same = false;
            for (auto &[t, v] : base) {
                double diff = std::abs(v - other[t]);
                worst = std::max(worst, diff);
                if (diff > 1e-9) same = false;
            }
        }
        disagree += not same;
    }
    std::ostringstream d;
    d << disagree << " of 20 instances disagree, max difference " << worst;
    return {disagree == 0, d.str()};
}

Outcome tied_baseline()
{
    ScoredRelation tied, truth;
    tied.columns = truth.columns = {0};
    for (int i = 0; i != 25; ++i) {
        Tuple t{(i < 10 ? "a0" : "a") + std::to_string(i)};
        tied.rows.push_back({t, 0.5});
        truth.rows.push_back({t, 1.0 / (i + 2)});
    }
    double ap = average_precision_at_k(tied, truth, 10);
    return {std::abs(ap - 0.22) <= 1e-3, "AP@10 = " + std::to_string(ap)};
}

Outcome convergence()
{
    int violating = 0, used = 0;
    for (std::uint64_t seed = 1; used < 20 and seed <= 200; ++seed) {
        GenSpec spec;
        spec.k = 3;
        spec.n = 12;
        spec.N = 5;
        spec.seed = seed;
        auto inst = generate(spec);
        if (eval_deterministic(inst.query, inst.db).empty()) continue;
        auto rows = scaling_experiment(inst.query, inst.db, inst.catalog, {0.5, 0.1, 0.01});
        if (rows[0].answers_used == 0) continue;
        ++used;
        bool ok = true;
        for (std::size_t i = 1; i != rows.size(); ++i)
            ok = ok and rows[i].mean_relative_error <= rows[i - 1].mean_relative_error + 1e-8;
        violating += not ok;
    }
    return {used == 20 and violating <= 1,
            std::to_string(violating) + " of " + std::to_string(used) + " instances increase"};
}

Outcome ranking_quality()
{
    BenchConfig c;
    c.gen.shape = Shape::chain;
    c.gen.k = 4;
    c.gen.n = 200;
    c.gen.N = 300;
    c.gen.p_max = 0.1;
    c.gen.seed = 1;
    c.trials = 20;
    c.answers = {{20, 50}};
    c.methods = {{MethodKind::dissociation}, {MethodKind::mc, 1000}};
    auto report = run_rank_bench(c);
    auto &diss = report.methods.at(0);
    auto &mc = report.methods.at(1);
    std::ostringstream d;
    d.precision(4);
    d << "MAP dissociation " << diss.map << " (" << diss.ap.size() << " trials), MC(1000) " << mc.map << " ("
      << mc.ap.size() << " trials)";
    return {diss.available and mc.available and diss.ap.size() == 20 and diss.map >= mc.map, d.str()};
}

}

int main(int argc, char **argv)
{
    std::set<int> expected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--expect-fail") == 0 and i + 1 < argc) {
            std::stringstream list(argv[++i]);
            for (std::string item; std::getline(list, item, ',');) expected.insert(std::atoi(item.c_str()));
        } else {
            std::fprintf(stderr, "usage: %s [--expect-fail N[,N...]]\n", argv[0]);
            return 2;
        }
    }

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"plan counts for chains and stars", plan_counts},
        {"four-atom query probabilities", four_atom_probabilities},
        {"boolean dissociation algebra", boolean_algebra},
        {"conservativity", conservativity},
        {"upper bound and monotonicity", bounds},
        {"optimization equivalence", optimization_equivalence},
        {"tie-aware baseline", tied_baseline},
        {"small-probability convergence", convergence},
        {"ranking quality at small probabilities", ranking_quality},
    };

    int unexpected = 0;
    for (std::size_t i = 0; i != criteria.size(); ++i) {
        int n = static_cast<int>(i + 1);
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        bool xfail = expected.count(n) != 0;
        const char *tag = o.pass ? (xfail ? " (unexpected pass)" : "") : (xfail ? " (expected)" : "");
        std::printf("criterion %d %s: %s%s -- %s\n", n, criteria[i].first, o.pass ? "PASS" : "FAIL", tag,
                    o.detail.c_str());
        std::fflush(stdout);
        if (o.pass == xfail) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
