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

#include "dissoc/error.hpp"
#include "dissoc/oracle.hpp"
#include "dissoc/random.hpp"
#include "support.hpp"
#include <cmath>
#include <doctest.h>
#include <numeric>

using namespace dissoc;
using testing::near;

namespace {

Dnf random_dnf(Xoshiro256 &rng, std::size_t vars, std::size_t max_terms, std::size_t max_width)
{
    Dnf f;
    std::size_t terms = 1 + rng.uniform_below(max_terms);
    for (std::size_t t = 0; t != terms; ++t) {
        std::vector<DnfVar> term;
        std::size_t width = 1 + rng.uniform_below(max_width);
        for (std::size_t j = 0; j != width; ++j) {
            auto x = static_cast<DnfVar>(rng.uniform_below(vars));
            if (std::find(term.begin(), term.end(), x) == term.end()) term.push_back(x);
        }
        f.terms.push_back(term);
    }
    return f;
}

AssignmentDistribution random_dist(Xoshiro256 &rng, std::size_t vars)
{
    AssignmentDistribution d;
    for (std::size_t x = 0; x != vars; ++x) d.probability.push_back(rng.uniform01());
    return d;
}

/* Every occurrence of x picks one of copies[x] fresh variables. */
std::pair<Dnf, DissociationMap> random_dissociation(Xoshiro256 &rng, const Dnf &f, std::size_t vars)
{
    std::vector<std::vector<DnfVar>> copies(vars);
    DissociationMap theta;
    for (std::size_t x = 0; x != vars; ++x) {
        std::size_t k = 1 + rng.uniform_below(3);
        for (std::size_t c = 0; c != k; ++c) {
            copies[x].push_back(static_cast<DnfVar>(theta.theta.size()));
            theta.theta.push_back(static_cast<DnfVar>(x));
        }
    }
    Dnf g;
    for (auto &t : f.terms) {
        std::vector<DnfVar> term;
        for (auto x : t) term.push_back(copies[x][rng.uniform_below(copies[x].size())]);
        g.terms.push_back(term);
    }
    return {g, theta};
}

}

TEST_SUITE("prob_oracle") {

TEST_CASE("probability of a shared-variable formula") {
    const double p = 0.3, q = 0.5, r = 0.7;
    Dnf f{{{0, 1}, {0, 2}}};
    CHECK(near(exact_dnf_prob(f, {{p, q, r}}), p * q + p * r - p * q * r));
}

TEST_CASE("probability of its dissociation") {
    const double p = 0.3, q = 0.5, r = 0.7;
    Dnf f{{{0, 1}, {2, 3}}};
    CHECK(near(exact_dnf_prob(f, {{p, q, p, r}}), p * q + p * r - p * p * q * r));
}

TEST_CASE("trivial formulas") {
    CHECK(exact_dnf_prob(Dnf{{{0}}}, {{0.7}}) == 0.7);
    CHECK(exact_dnf_prob(Dnf{}, {{0.7}}) == 0.0);
    CHECK(exact_dnf_prob(Dnf{{{}}}, {{}}) == 1.0);
    CHECK(exact_dnf_prob(Dnf{{{0, 1}}}, {{0.5, 1.0}}) == 0.5);
    CHECK(exact_dnf_prob(Dnf{{{0, 1}, {2}}}, {{0.5, 0.0, 0.25}}) == 0.25);
}

TEST_CASE("exact probability matches world enumeration") {
    Xoshiro256 rng(81);
    for (int trial = 0; trial != 50; ++trial) {
        std::size_t vars = 1 + rng.uniform_below(15);
        auto f = random_dnf(rng, vars, 12, 4);
        auto dist = random_dist(rng, vars);
        CHECK(near(exact_dnf_prob(f, dist), testing::brute_force_dnf(f, dist)));
    }
}

TEST_CASE("exact probability on wider formulas") {
    Xoshiro256 rng(83);
    for (int trial = 0; trial != 20; ++trial) {
        auto f = random_dnf(rng, 20, 40, 3);
        auto dist = random_dist(rng, 20);
        CHECK(near(exact_dnf_prob(f, dist), testing::brute_force_dnf(f, dist), 1e-11));
    }
}

TEST_CASE("exact probability is monotone in each variable") {
    Xoshiro256 rng(85);
    for (int trial = 0; trial != 50; ++trial) {
        std::size_t vars = 1 + rng.uniform_below(12);
        auto f = random_dnf(rng, vars, 10, 4);
        auto dist = random_dist(rng, vars);
        double base = exact_dnf_prob(f, dist);
        auto x = rng.uniform_below(vars);
        auto up = dist;
        up.probability[x] = std::min(1.0, dist[x] + 0.1);
        CHECK(exact_dnf_prob(f, up) >= base - 1e-12);
    }
}

TEST_CASE("step budget") {
    Xoshiro256 rng(87);
    auto f = random_dnf(rng, 30, 60, 3);
    CHECK_THROWS_AS(exact_dnf_prob(f, random_dist(rng, 30), {10}), OracleTooLarge);
}

TEST_CASE("Monte Carlo is reproducible") {
    Dnf f{{{0, 1}, {0, 2}}};
    AssignmentDistribution d{{0.3, 0.5, 0.7}};
    CHECK(mc_estimate(f, d, 1000, 5) == mc_estimate(f, d, 1000, 5));
    CHECK(mc_estimate(Dnf{{{0, 1}}}, {{1.0, 1.0}}, 100, 9) == 1.0);
}

TEST_CASE("Monte Carlo on a single variable") {
    int close = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
        if (std::abs(mc_estimate(Dnf{{{0}}}, {{0.5}}, 10'000, seed) - 0.5) <= 0.02) ++close;
    CHECK(close >= 95);
}

TEST_CASE("Monte Carlo converges") {
    Dnf f{{{0, 1}, {0, 2}}};
    AssignmentDistribution d{{0.3, 0.5, 0.7}};
    CHECK(std::abs(mc_estimate(f, d, 100'000, 17) - exact_dnf_prob(f, d)) <= 1e-2);
}

TEST_CASE("Monte Carlo is unbiased") {
    Xoshiro256 rng(89);
    for (int trial = 0; trial != 5; ++trial) {
        auto f = random_dnf(rng, 8, 6, 3);
        auto dist = random_dist(rng, 8);
        double exact = exact_dnf_prob(f, dist);
        double sum = 0;
        for (std::uint64_t seed = 0; seed != 100; ++seed) sum += mc_estimate(f, dist, 1000, derive_seed(99, seed));
        double mean = sum / 100;
        double sigma = std::sqrt(exact * (1 - exact) / (1000.0 * 100));
        CHECK(std::abs(mean - exact) <= 3 * sigma + 1e-12);
    }
}

TEST_CASE("oblivious bound on the shared-variable formula") {
    Dnf f{{{0, 1}, {0, 2}}};
    Dnf g{{{3, 1}, {4, 2}}};
    DissociationMap theta{{0, 1, 2, 0, 0}};
    auto r = check_oblivious_bound(f, g, theta, {{0.3, 0.5, 0.7}});
    CHECK(r.valid);
    CHECK(r.bound_holds);
    CHECK(near(r.dissociated, 0.3 * 0.5 + 0.3 * 0.7 - 0.09 * 0.35));
}

TEST_CASE("two copies in one implicant break the bound") {
    auto r = check_oblivious_bound(Dnf{{{0}}}, Dnf{{{0, 1}}}, {{0, 0}}, {{0.6}});
    CHECK_FALSE(r.valid);
    CHECK(near(r.original, 0.6));
    CHECK(near(r.dissociated, 0.36));
    CHECK_FALSE(r.bound_holds);
}

TEST_CASE("identity substitution") {
    Dnf f{{{0, 1}, {1, 2}}};
    auto r = check_oblivious_bound(f, f, {{0, 1, 2}}, {{0.2, 0.4, 0.6}});
    CHECK(r.valid);
    CHECK(r.original == r.dissociated);
}

TEST_CASE("substitution must reproduce the formula") {
    Dnf f{{{0, 1}}};
    CHECK_THROWS_AS(check_oblivious_bound(f, Dnf{{{0}}}, {{0}}, {{0.5, 0.5}}), InvalidSubstitution);
    CHECK_THROWS_AS(check_oblivious_bound(f, Dnf{{{0, 1}}}, {{0}}, {{0.5, 0.5}}), InvalidSubstitution);
}

TEST_CASE("oblivious bound on random dissociations") {
    Xoshiro256 rng(91);
    int valid = 0;
    for (int trial = 0; trial != 200; ++trial) {
        std::size_t vars = 1 + rng.uniform_below(6);
        auto f = random_dnf(rng, vars, 6, 3);
        auto dist = random_dist(rng, vars);
        bool det = trial % 4 == 0;
        if (det)
            for (auto &p : dist.probability) p = rng.uniform_below(2) ? 1.0 : 0.0;
        auto [g, theta] = random_dissociation(rng, f, vars);
        auto r = check_oblivious_bound(f, g, theta, dist);
        CHECK(r.valid);
        valid += r.valid;
        CHECK(r.bound_holds);
        CHECK(near(r.original, testing::brute_force_dnf(f, dist)));
        if (det) {
            CHECK(r.deterministic_copies);
            CHECK(near(r.original, r.dissociated));
        }
    }
    CHECK(valid == 200);
}

TEST_CASE("probability of the four-atom query") {
    auto q = parse_query("q() :- R(x), S(x), T(x,y), U(y)");
    auto cat = testing::catalog_for(q);
    auto db = testing::make_db(cat, {{"R", {{{"1"}, .5}, {{"2"}, .5}}}, {"S", {{{"1"}, .5}, {{"2"}, .5}}},
                                     {"T", {{{"1", "1"}, .5}, {{"1", "2"}, .5}, {{"2", "2"}, .5}}},
                                     {"U", {{{"1"}, .5}, {{"2"}, .5}}}});
    auto p = exact_query_prob(q, db);
    REQUIRE(p.size() == 1);
    CHECK(near(p.rows[0].score, 83.0 / 512));
    CHECK(near(testing::brute_force_query(q, db).at({}), 83.0 / 512));
}

TEST_CASE("exact query probability matches world enumeration") {
    Xoshiro256 rng(93);
    for (int seed = 0; seed != 60; ++seed) {
        auto q = testing::random_query(rng, 4, 4);
        auto cat = testing::catalog_for(q);
        auto db = testing::random_db(rng, q, cat, 3, 16, 6);
        auto truth = testing::brute_force_query(q, db);
        auto exact = exact_query_prob(q, db).to_map();
        REQUIRE(exact.size() == truth.size());
        for (auto &[t, p] : truth) CHECK(near(exact[t], p));
    }
}

TEST_CASE("Monte Carlo on queries") {
    auto q = parse_query("q(x) :- R(x), S(x,y)");
    auto cat = testing::catalog_for(q);
    auto db = testing::make_db(cat, {{"R", {{{"1"}, 0.3}, {{"2"}, 0.6}}},
                                     {"S", {{{"1", "4"}, 0.5}, {{"1", "5"}, 0.7}, {{"2", "4"}, 0.2}}}});
    auto a = mc_query_prob(q, db, 20'000, 3);
    auto b = mc_query_prob(q, db, 20'000, 3);
    auto exact = exact_query_prob(q, db);
    REQUIRE(a.size() == 2);
    for (std::size_t i = 0; i != a.size(); ++i) {
        CHECK(a.rows[i].score == b.rows[i].score);
        CHECK(std::abs(a.rows[i].score - exact.rows[i].score) < 0.02);
    }
}

}
