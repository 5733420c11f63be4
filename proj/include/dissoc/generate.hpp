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

#include "dissoc/catalog.hpp"
#include "dissoc/database.hpp"
#include "dissoc/query.hpp"
#include <cstdint>
#include <optional>
#include <string>

namespace dissoc {

enum class Shape { chain, star };

Shape parse_shape(std::string_view text);
std::string to_string(Shape s);

struct GenSpec
{
    Shape shape = Shape::chain;
    std::size_t k = 2;           ///< query length
    std::size_t n = 10;          ///< tuples per relation (fewer if the domain is too small)
    std::size_t N = 5;           ///< values are drawn from 1..N
    double p_max = 1.0;          ///< probabilities uniform in [0, p_max]
    std::uint64_t seed = 1;
    std::optional<double> p_const;  ///< if set, every tuple gets this probability instead
};

/// Throws DataError for an invalid spec.
void validate(const GenSpec &spec);

struct Instance
{
    Query query;
    Catalog catalog;
    Database db;
};

/// The query shape alone: chain `q(x0,xk) :- R1(x0,x1), ..., Rk(x(k-1),xk)`;
/// star `q() :- R1(x1), ..., Rk(xk), R0(x1,...,xk)`.
Query shape_query(Shape shape, std::size_t k);
Catalog shape_catalog(Shape shape, std::size_t k);

/** A random instance.  Chain relations hold `n` distinct pairs.  For stars, the hub R0 holds `n` distinct k-tuples,
 * R2..Rk hold `n` values each, and R1 keeps the values x1 of `n` drawn pairs (a, x1) whose first entry is 1
 * (the star's constant, filtered in advance). */
Instance generate(const GenSpec &spec);

}
