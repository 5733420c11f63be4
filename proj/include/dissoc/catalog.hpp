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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dissoc {

struct RelationSchema
{
    std::string name;
    std::size_t arity = 0;
    bool probabilistic = true;
};

/// A functional dependency inside one relation, on zero-based attribute positions.
struct FunctionalDependency
{
    std::string relation;
    std::vector<std::size_t> determinant;
    std::vector<std::size_t> dependent;
};

/// Relation signatures, the deterministic/probabilistic marking, and per-relation FDs.
class Catalog
{
    std::vector<RelationSchema> relations_;
    std::vector<FunctionalDependency> fds_;

  public:
    /// Throws SchemaError on a duplicate name.
    void add_relation(RelationSchema schema);
    /// Throws SchemaError for an unknown relation or a position out of range.
    void add_fd(FunctionalDependency fd);

    const std::vector<RelationSchema> & relations() const { return relations_; }
    const std::vector<FunctionalDependency> & fds() const { return fds_; }

    const RelationSchema * find(std::string_view name) const;
    /// Throws SchemaError when `name` is not declared.
    const RelationSchema & at(std::string_view name) const;
    bool is_probabilistic(std::string_view name) const { return at(name).probabilistic; }

    std::string to_string() const;
};

/** Parses the line-oriented catalog format:
 *
 *     R/2 prob
 *     T/1 det
 *     fd S: 1 -> 2
 *
 * FD positions are one-based and may list several attributes (`fd R: 1,2 -> 3`).  `#` starts a comment. */
Catalog parse_catalog(std::string_view text);

}
