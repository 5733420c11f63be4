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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dissoc {

using Value = std::string;
using Tuple = std::vector<Value>;

struct TupleHash
{
    std::size_t operator()(const Tuple &t) const noexcept {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (auto &v : t) h = (h ^ std::hash<std::string>{}(v)) * 0x100000001b3ull;
        return h;
    }
};

/// Identifies an input tuple: relation index within its database and row index in load order.
struct TupleId
{
    std::uint32_t relation = 0;
    std::uint32_t row = 0;

    friend auto operator<=>(const TupleId&, const TupleId&) = default;
};

struct StoredTuple
{
    Tuple values;
    double probability = 1.0;
};

/// One table of a tuple-independent database.  Tuples are distinct; deterministic tables only hold p = 1.
class Relation
{
    std::string name_;
    std::size_t arity_ = 0;
    bool probabilistic_ = true;
    std::vector<StoredTuple> rows_;
    std::unordered_map<Tuple, std::size_t, TupleHash> index_;

  public:
    Relation() = default;
    Relation(std::string name, std::size_t arity, bool probabilistic);
    explicit Relation(const RelationSchema &schema) : Relation(schema.name, schema.arity, schema.probabilistic) { }

    /// Throws DataError on wrong arity, duplicate tuple, or a probability outside [0,1] (or != 1 if deterministic).
    void add(Tuple values, double probability = 1.0);

    const std::string & name() const { return name_; }
    std::size_t arity() const { return arity_; }
    bool probabilistic() const { return probabilistic_; }
    const std::vector<StoredTuple> & rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    const StoredTuple & row(std::size_t i) const { return rows_.at(i); }
    /// Row index of `values`, or -1.
    std::ptrdiff_t find(const Tuple &values) const;
};

class Database
{
    std::vector<Relation> relations_;
    std::unordered_map<std::string, std::size_t> index_;

  public:
    /// Throws DataError if a relation with this name exists.
    void add_relation(Relation relation);
    /// Adds or replaces.
    void put_relation(Relation relation);

    const std::vector<Relation> & relations() const { return relations_; }
    const Relation * find(std::string_view name) const;
    /// Throws DataError when absent.
    const Relation & at(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;

    const StoredTuple & tuple(TupleId id) const { return relations_.at(id.relation).row(id.row); }
    double probability(TupleId id) const { return tuple(id).probability; }
    /// "R:3" (relation name, zero-based row).
    std::string format_tuple_id(TupleId id) const;
    std::size_t tuple_count() const;
};

/// Parses one relation's TSV text: one tuple per line, last column the probability (optional when deterministic).
Relation parse_relation(std::string_view text, const RelationSchema &schema);

/// Loads `<dir>/<name>.tsv` for every catalog relation.  A missing file yields an empty relation.
Database load_database(const std::filesystem::path &dir, const Catalog &catalog);

/// Writes every relation to `<dir>/<name>.tsv`, probabilities printed round-trip exact.
void write_database(const std::filesystem::path &dir, const Database &db);
std::string format_relation(const Relation &relation);

/// Multiplies every probabilistic tuple's probability by `factor` ∈ (0, 1].
Database scale_database(const Database &db, double factor);

/// True iff every catalog FD holds on the stored tuples (ignoring probabilities).
bool satisfies_fds(const Database &db, const Catalog &catalog);

}
