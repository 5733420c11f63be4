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

#include "dissoc/database.hpp"

#include "dissoc/error.hpp"
#include "text.hpp"
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace dissoc {

Relation::Relation(std::string name, std::size_t arity, bool probabilistic)
    : name_(std::move(name)), arity_(arity), probabilistic_(probabilistic)
{ }

void Relation::add(Tuple values, double probability)
{
    if (values.size() != arity_)
        throw DataError(name_ + ": tuple has " + std::to_string(values.size()) + " values, expected " +
                        std::to_string(arity_));
    if (not (probability >= 0.0 and probability <= 1.0))
        throw DataError(name_ + ": probability " + std::to_string(probability) + " outside [0,1]");
    if (not probabilistic_ and probability != 1.0)
        throw DataError(name_ + ": deterministic relation with probability " + std::to_string(probability));
    auto [it, fresh] = index_.emplace(values, rows_.size());
    if (not fresh) throw DataError(name_ + ": duplicate tuple");
    rows_.push_back(StoredTuple{std::move(values), probability});
}

std::ptrdiff_t Relation::find(const Tuple &values) const
{
    auto it = index_.find(values);
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

void Database::add_relation(Relation relation)
{
    if (index_.contains(relation.name())) throw DataError("relation '" + relation.name() + "' loaded twice");
    index_.emplace(relation.name(), relations_.size());
    relations_.push_back(std::move(relation));
}

void Database::put_relation(Relation relation)
{
    if (auto it = index_.find(relation.name()); it != index_.end())
        relations_[it->second] = std::move(relation);
    else
        add_relation(std::move(relation));
}

const Relation * Database::find(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    return it == index_.end() ? nullptr : &relations_[it->second];
}

const Relation & Database::at(std::string_view name) const
{
    if (auto r = find(name)) return *r;
    throw DataError("database has no relation '" + std::string(name) + "'");
}

std::size_t Database::index_of(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw DataError("database has no relation '" + std::string(name) + "'");
    return it->second;
}

std::string Database::format_tuple_id(TupleId id) const
{
    return relations_.at(id.relation).name() + ":" + std::to_string(id.row);
}

std::size_t Database::tuple_count() const
{
    std::size_t n = 0;
    for (auto &r : relations_) n += r.size();
    return n;
}

Relation parse_relation(std::string_view input, const RelationSchema &schema)
{
    Relation rel(schema);
    std::size_t line_no = 0;
    for (auto raw : text::split(input, '\n')) {
        ++line_no;
        if (not raw.empty() and raw.back() == '\r') raw.remove_suffix(1);
        auto line = text::strip_comment(raw);
        if (text::trim(line).empty()) continue;
        auto where = [&] { return schema.name + " line " + std::to_string(line_no) + ": "; };

        std::vector<std::string_view> cols;
        for (auto c : text::split(line, '\t')) cols.push_back(text::trim(c));

        double p = 1.0;
        if (cols.size() == schema.arity + 1) {
            auto parsed = text::parse_double(cols.back());
            if (not parsed) throw DataError(where() + "non-numeric probability '" + std::string(cols.back()) + "'");
            p = *parsed;
            cols.pop_back();
        } else if (cols.size() != schema.arity or schema.probabilistic) {
            throw DataError(where() + "expected " + std::to_string(schema.arity) + " values" +
                            (schema.probabilistic ? " and a probability" : "") + ", got " +
                            std::to_string(cols.size()) + " columns");
        }
        Tuple values(cols.begin(), cols.end());
        try {
            rel.add(std::move(values), p);
        } catch (const DataError &e) {
            throw DataError(where() + e.what());
        }
    }
    return rel;
}

Database load_database(const std::filesystem::path &dir, const Catalog &catalog)
{
    Database db;
    for (auto &schema : catalog.relations()) {
        auto path = dir / (schema.name + ".tsv");
        if (not std::filesystem::exists(path)) {
            db.add_relation(Relation(schema));
            continue;
        }
        std::ifstream in(path);
        if (not in) throw DataError("cannot read " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        db.add_relation(parse_relation(buf.str(), schema));
    }
    return db;
}

namespace {

std::string format_probability(double p)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p);
    return std::string(buf, ptr);
}

}

std::string format_relation(const Relation &relation)
{
    std::string out;
    for (auto &row : relation.rows()) {
        for (std::size_t i = 0; i != row.values.size(); ++i) {
            if (i) out += '\t';
            out += row.values[i];
        }
        if (relation.probabilistic()) {
            if (not row.values.empty()) out += '\t';
            out += format_probability(row.probability);
        }
        out += '\n';
    }
    return out;
}

void write_database(const std::filesystem::path &dir, const Database &db)
{
    std::filesystem::create_directories(dir);
    for (auto &rel : db.relations()) {
        std::ofstream out(dir / (rel.name() + ".tsv"));
        if (not out) throw DataError("cannot write " + (dir / (rel.name() + ".tsv")).string());
        out << format_relation(rel);
    }
}

Database scale_database(const Database &db, double factor)
{
    if (not (factor > 0.0 and factor <= 1.0))
        throw DataError("scale factor " + std::to_string(factor) + " outside (0,1]");
    Database out;
    for (auto &rel : db.relations()) {
        Relation scaled(rel.name(), rel.arity(), rel.probabilistic());
        for (auto &row : rel.rows())
            scaled.add(row.values, rel.probabilistic() ? row.probability * factor : row.probability);
        out.add_relation(std::move(scaled));
    }
    return out;
}

bool satisfies_fds(const Database &db, const Catalog &catalog)
{
    for (auto &fd : catalog.fds()) {
        const Relation *rel = db.find(fd.relation);
        if (not rel) continue;
        std::map<Tuple, Tuple> seen;
        for (auto &row : rel->rows()) {
            Tuple lhs, rhs;
            for (auto pos : fd.determinant) lhs.push_back(row.values.at(pos));
            for (auto pos : fd.dependent) rhs.push_back(row.values.at(pos));
            auto [it, fresh] = seen.emplace(std::move(lhs), rhs);
            if (not fresh and it->second != rhs) return false;
        }
    }
    return true;
}

}
