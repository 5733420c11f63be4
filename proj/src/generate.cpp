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

#include "dissoc/generate.hpp"

#include "dissoc/error.hpp"
#include "dissoc/random.hpp"
#include <cmath>
#include <set>

namespace dissoc {

Shape parse_shape(std::string_view text)
{
    if (text == "chain") return Shape::chain;
    if (text == "star") return Shape::star;
    throw ParseError("unknown shape '" + std::string(text) + "' (expected chain or star)");
}

std::string to_string(Shape s) { return s == Shape::chain ? "chain" : "star"; }

void validate(const GenSpec &spec)
{
    if (spec.shape == Shape::chain and spec.k < 2) throw DataError("a chain needs k >= 2");
    if (spec.shape == Shape::star and spec.k < 1) throw DataError("a star needs k >= 1");
    if (spec.k + 1 > kMaxVariables) throw DataError("k too large");
    if (spec.n < 1 or spec.N < 1) throw DataError("n and N must be positive");
    if (not (spec.p_max > 0.0 and spec.p_max <= 1.0)) throw DataError("p_max must lie in (0,1]");
    if (spec.p_const and not (*spec.p_const >= 0.0 and *spec.p_const <= 1.0))
        throw DataError("p_const must lie in [0,1]");
}

Query shape_query(Shape shape, std::size_t k)
{
    std::string text;
    if (shape == Shape::chain) {
        text = "q(x0,x" + std::to_string(k) + ") :- ";
        for (std::size_t i = 1; i <= k; ++i)
            text += (i > 1 ? ", " : "") + ("R" + std::to_string(i)) + "(x" + std::to_string(i - 1) + ",x" +
                    std::to_string(i) + ")";
    } else {
        text = "q() :- ";
        for (std::size_t i = 1; i <= k; ++i) text += "R" + std::to_string(i) + "(x" + std::to_string(i) + "), ";
        text += "R0(";
        for (std::size_t i = 1; i <= k; ++i) text += (i > 1 ? "," : "") + ("x" + std::to_string(i));
        text += ")";
    }
    return parse_query(text);
}

Catalog shape_catalog(Shape shape, std::size_t k)
{
    Catalog c;
    if (shape == Shape::chain) {
        for (std::size_t i = 1; i <= k; ++i) c.add_relation({"R" + std::to_string(i), 2, true});
    } else {
        for (std::size_t i = 1; i <= k; ++i) c.add_relation({"R" + std::to_string(i), 1, true});
        c.add_relation({"R0", k, true});
    }
    return c;
}

namespace {

class Drawer
{
    Xoshiro256 rng_;
    const GenSpec &spec_;

  public:
    explicit Drawer(const GenSpec &spec) : rng_(spec.seed), spec_(spec) { }

    std::string value() { return std::to_string(rng_.uniform_below(spec_.N) + 1); }

    double probability()
    {
        double u = rng_.uniform01();
        return spec_.p_const ? *spec_.p_const : u * spec_.p_max;
    }

    /// Up to `n` distinct tuples of the given arity; stops early once the domain is exhausted.
    Relation relation(const std::string &name, std::size_t arity)
    {
        Relation rel(name, arity, true);
        double space = std::pow(static_cast<double>(spec_.N), static_cast<double>(arity));
        std::size_t target = space < static_cast<double>(spec_.n) ? static_cast<std::size_t>(space) : spec_.n;
        std::set<Tuple> seen;
        while (rel.size() < target) {
            Tuple t;
            for (std::size_t i = 0; i != arity; ++i) t.push_back(value());
            double p = probability();
            if (seen.insert(t).second) rel.add(std::move(t), p);
        }
        return rel;
    }
};

}

Instance generate(const GenSpec &spec)
{
    validate(spec);
    Drawer draw(spec);
    Database db;
    if (spec.shape == Shape::chain) {
        for (std::size_t i = 1; i <= spec.k; ++i) db.add_relation(draw.relation("R" + std::to_string(i), 2));
    } else {
        Relation pairs = draw.relation("R1", 2);
        Relation r1("R1", 1, true);
        for (auto &row : pairs.rows())
            if (row.values[0] == "1") r1.add({row.values[1]}, row.probability);
        db.add_relation(std::move(r1));
        for (std::size_t i = 2; i <= spec.k; ++i) db.add_relation(draw.relation("R" + std::to_string(i), 1));
        db.add_relation(draw.relation("R0", spec.k));
    }
    return Instance{shape_query(spec.shape, spec.k), shape_catalog(spec.shape, spec.k), std::move(db)};
}

}
