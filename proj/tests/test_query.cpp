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

#include "dissoc/catalog.hpp"
#include "dissoc/error.hpp"
#include "dissoc/query.hpp"
#include "support.hpp"
#include <doctest.h>

using namespace dissoc;

namespace {

VarSet vars(const Query &q, std::initializer_list<const char*> names)
{
    VarSet s;
    for (auto n : names) s.insert(*q.symbols().find(n));
    return s;
}

std::vector<std::vector<std::string>> relation_groups(const std::vector<Query> &parts)
{
    std::vector<std::vector<std::string>> out;
    for (auto &p : parts) {
        std::vector<std::string> names;
        for (auto &a : p.atoms()) names.push_back(a.relation);
        out.push_back(names);
    }
    return out;
}

/// The recursive characterization: one atom; or all components hierarchical; or a separator variable whose
/// removal leaves a hierarchical query.
bool recursive_hierarchical(std::vector<VarSet> atoms, VarSet head)
{
    for (auto &a : atoms) a -= head;
    if (atoms.size() == 1) return true;
    AtomSet all = AtomSet::Prefix(atoms.size());
    auto comps = connected_components(atoms, all, VarSet());
    if (comps.size() > 1) {
        for (auto c : comps) {
            std::vector<VarSet> sub;
            for (auto i : c) sub.push_back(atoms[i]);
            if (not recursive_hierarchical(sub, VarSet())) return false;
        }
        return true;
    }
    VarSet sep = atoms.front();
    for (auto &a : atoms) sep &= a;
    if (sep.empty()) return false;
    return recursive_hierarchical(atoms, sep);
}

}

TEST_SUITE("query_core") {

TEST_CASE("parse a query with a head variable") {
    auto q = parse_query("q(z) :- R(z,x), S(x,y), T(y)");
    REQUIRE(q.size() == 3);
    CHECK(q.atom(0).relation == "R");
    CHECK(q.atom(2).relation == "T");
    CHECK(q.head() == vars(q, {"z"}));
    CHECK(q.existential() == vars(q, {"x", "y"}));
    CHECK(q.to_string() == "q(z) :- R(z,x), S(x,y), T(y)");
}

TEST_CASE("boolean query") {
    auto q = parse_query("q() :- R(x)");
    CHECK(q.is_boolean());
    CHECK(q.head().empty());
}

TEST_CASE("self-joins are rejected") {
    CHECK_THROWS_AS(parse_query("q() :- R(x), R(y)"), SelfJoinError);
}

TEST_CASE("syntax errors") {
    CHECK_THROWS_AS(parse_query("q() :- R(x"), ParseError);
    CHECK_THROWS_AS(parse_query("q() R(x)"), ParseError);
    CHECK_THROWS_AS(parse_query("q() :- R('a', x)"), ParseError);
    CHECK_THROWS_AS(parse_query("q() :- R(A, x)"), ParseError);
    CHECK_THROWS_AS(parse_query("q() :- R(1, x)"), ParseError);
    CHECK_THROWS_AS(parse_query("q(x,x) :- R(x)"), ParseError);
    CHECK_THROWS_AS(parse_query("q(w) :- R(x)"), SchemaError);
}

TEST_CASE("catalog validation of queries") {
    auto c = parse_catalog("R/2 prob\nS/1 det\n");
    CHECK_NOTHROW(parse_query("q() :- R(x,y), S(y)", c));
    CHECK_THROWS_AS(parse_query("q() :- R(x), S(y)", c), SchemaError);
    CHECK_THROWS_AS(parse_query("q() :- R(x,y), U(y)", c), SchemaError);
}

TEST_CASE("comments and trailing period") {
    auto q = parse_query("# chain\nq(x) :- R(x,y),\n  S(y).  # done\n");
    CHECK(q.size() == 2);
}

TEST_CASE("connected components") {
    auto q = parse_query("q() :- R(x,y), S(z,u), T(u,v)");
    auto parts = connected_components(q, VarSet());
    CHECK(relation_groups(parts) == std::vector<std::vector<std::string>>{{"R"}, {"S", "T"}});

    auto q2 = parse_query("q(z,x,y) :- R(z,x), S(x,y)");
    CHECK(relation_groups(connected_components(q2, q2.head())) == std::vector<std::vector<std::string>>{{"R"}, {"S"}});

    auto q3 = parse_query("q() :- R(x,y)");
    CHECK(connected_components(q3, VarSet()).size() == 1);
}

TEST_CASE("component heads are restricted to their variables") {
    auto q = parse_query("q(x,u) :- R(x,y), S(z,u), T(z,v)");
    auto parts = connected_components(q, q.head());
    REQUIRE(parts.size() == 2);
    CHECK(q.format_vars(parts[0].head()) == "x");
    CHECK(q.format_vars(parts[1].head()) == "u");
}

TEST_CASE("hierarchy") {
    CHECK(is_hierarchical(parse_query("q() :- R(x,y), S(y,z), T(y,z,u)")));
    CHECK_FALSE(is_hierarchical(parse_query("q() :- R(x,y), S(y,z), T(z,u)")));
    CHECK(is_hierarchical(parse_query("q() :- R(x,y,z)")));
    CHECK_FALSE(is_hierarchical(parse_query("q() :- R(x), S(x,y), T(y)")));
    CHECK(is_hierarchical(parse_query("q(x) :- R(x), S(x,y), T(y)")));
}

TEST_CASE("separator variables") {
    auto q1 = parse_query("q() :- R(x,y), S(y,z)");
    CHECK(separator_vars(q1) == vars(q1, {"y"}));
    CHECK(separator_vars(parse_query("q() :- R(x), T(y)")).empty());
    auto q3 = parse_query("q() :- R(x,y), S(x,y), T(x,y)");
    CHECK(separator_vars(q3) == vars(q3, {"x", "y"}));
    auto q4 = parse_query("q(y) :- R(x,y), S(x,y)");
    CHECK(separator_vars(q4) == vars(q4, {"x"}));
}

TEST_CASE("variable report") {
    auto r = analyze(parse_query("q(z) :- R(z,x), S(x,y), T(y)"));
    CHECK(r.evar.size() == 2);
    CHECK(r.separator_vars.empty());
    CHECK(r.components.size() == 1);
}

TEST_CASE("parse catalogs") {
    auto c = parse_catalog("R/2 prob\nT/1 det");
    REQUIRE(c.relations().size() == 2);
    CHECK(c.is_probabilistic("R"));
    CHECK_FALSE(c.is_probabilistic("T"));

    auto f = parse_catalog("S/2 prob\nfd S: 1 -> 2");
    REQUIRE(f.fds().size() == 1);
    CHECK(f.fds()[0].determinant == std::vector<std::size_t>{0});
    CHECK(f.fds()[0].dependent == std::vector<std::size_t>{1});

    CHECK_THROWS_AS(parse_catalog("R/2 prob\nR/3 prob"), SchemaError);
    CHECK_THROWS_AS(parse_catalog("S/2 prob\nfd S: 1 -> 3"), SchemaError);
    CHECK_THROWS_AS(parse_catalog("fd S: 1 -> 2"), SchemaError);
    CHECK_THROWS_AS(parse_catalog("R/x prob"), ParseError);
    CHECK_THROWS_AS(parse_catalog("R/2 maybe"), ParseError);
}

TEST_CASE("hierarchy agrees with the recursive test on random queries") {
    Xoshiro256 rng(7);
    int hierarchical = 0;
    for (int trial = 0; trial != 400; ++trial) {
        auto q = testing::random_query(rng, 6, 6);
        std::vector<VarSet> atoms(q.all_atom_vars().begin(), q.all_atom_vars().end());
        bool expected = recursive_hierarchical(atoms, q.head());
        CHECK(is_hierarchical(q) == expected);
        hierarchical += expected;
    }
    CHECK(hierarchical > 20);
    CHECK(hierarchical < 380);
}

TEST_CASE("components partition the atoms") {
    Xoshiro256 rng(11);
    for (int trial = 0; trial != 200; ++trial) {
        auto q = testing::random_query(rng, 6, 6);
        VarSet anchors = q.head();
        auto comps = connected_components(q.all_atom_vars(), q.all_atoms(), anchors);
        AtomSet seen;
        for (auto c : comps) {
            CHECK_FALSE(seen.intersects(c));
            seen |= c;
        }
        CHECK(seen == q.all_atoms());
        for (std::size_t a = 0; a != comps.size(); ++a)
            for (std::size_t b = 0; b != a; ++b)
                CHECK_FALSE((q.vars_of(comps[a]) - anchors).intersects(q.vars_of(comps[b]) - anchors));
    }
}

TEST_CASE("separator variables occur in every atom") {
    Xoshiro256 rng(13);
    for (int trial = 0; trial != 200; ++trial) {
        auto q = testing::random_query(rng, 5, 5);
        VarSet sep = separator_vars(q);
        CHECK(sep.is_subset_of(q.existential()));
        for (auto v : q.existential()) {
            bool everywhere = true;
            for (std::size_t i = 0; i != q.size(); ++i) everywhere = everywhere and q.atom_vars(i).contains(v);
            CHECK(sep.contains(v) == everywhere);
        }
    }
}

}
