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
#include "text.hpp"
#include <sstream>

namespace dissoc {

void Catalog::add_relation(RelationSchema schema)
{
    if (schema.name.empty())
        throw SchemaError("relation name must not be empty");
    if (find(schema.name))
        throw SchemaError("relation '" + schema.name + "' declared twice");
    relations_.push_back(std::move(schema));
}

void Catalog::add_fd(FunctionalDependency fd)
{
    const RelationSchema &rel = at(fd.relation);
    if (fd.determinant.empty() or fd.dependent.empty())
        throw SchemaError("functional dependency on '" + fd.relation + "' needs both sides");
    for (auto pos : fd.determinant)
        if (pos >= rel.arity)
            throw SchemaError("FD position " + std::to_string(pos + 1) + " out of range for " + fd.relation + "/" +
                              std::to_string(rel.arity));
    for (auto pos : fd.dependent)
        if (pos >= rel.arity)
            throw SchemaError("FD position " + std::to_string(pos + 1) + " out of range for " + fd.relation + "/" +
                              std::to_string(rel.arity));
    fds_.push_back(std::move(fd));
}

const RelationSchema * Catalog::find(std::string_view name) const
{
    for (auto &r : relations_)
        if (r.name == name) return &r;
    return nullptr;
}

const RelationSchema & Catalog::at(std::string_view name) const
{
    if (auto r = find(name)) return *r;
    throw SchemaError("unknown relation '" + std::string(name) + "'");
}

std::string Catalog::to_string() const
{
    std::ostringstream out;
    for (auto &r : relations_)
        out << r.name << '/' << r.arity << (r.probabilistic ? " prob" : " det") << '\n';
    for (auto &fd : fds_) {
        out << "fd " << fd.relation << ": ";
        for (std::size_t i = 0; i != fd.determinant.size(); ++i)
            out << (i ? "," : "") << fd.determinant[i] + 1;
        out << " -> ";
        for (std::size_t i = 0; i != fd.dependent.size(); ++i)
            out << (i ? "," : "") << fd.dependent[i] + 1;
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::size_t> parse_positions(std::string_view list, std::size_t line_no)
{
    std::vector<std::size_t> out;
    for (auto item : text::split(list, ',')) {
        for (auto word : text::split_whitespace(item)) {
            auto n = text::parse_unsigned(word);
            if (not n or *n == 0)
                throw ParseError("line " + std::to_string(line_no) + ": bad attribute position '" +
                                 std::string(word) + "'");
            out.push_back(*n - 1);
        }
    }
    return out;
}

}

Catalog parse_catalog(std::string_view input)
{
    Catalog catalog;
    std::vector<FunctionalDependency> fds;
    std::size_t line_no = 0;
    for (auto raw : text::split(input, '\n')) {
        ++line_no;
        auto line = text::trim(text::strip_comment(raw));
        if (line.empty()) continue;

        auto where = [&] { return "line " + std::to_string(line_no) + ": "; };

        if (line.starts_with("fd ") or line.starts_with("fd\t")) {
            auto body = text::trim(line.substr(2));
            auto colon = body.find(':');
            auto arrow = body.find("->");
            if (colon == std::string_view::npos or arrow == std::string_view::npos or arrow < colon)
                throw ParseError(where() + "expected 'fd R: i -> j'");
            FunctionalDependency fd;
            fd.relation = std::string(text::trim(body.substr(0, colon)));
            fd.determinant = parse_positions(body.substr(colon + 1, arrow - colon - 1), line_no);
            fd.dependent = parse_positions(body.substr(arrow + 2), line_no);
            if (fd.relation.empty() or fd.determinant.empty() or fd.dependent.empty())
                throw ParseError(where() + "expected 'fd R: i -> j'");
            fds.push_back(std::move(fd));
            continue;
        }

        auto words = text::split_whitespace(line);
        if (words.size() != 2)
            throw ParseError(where() + "expected 'Name/arity prob|det'");
        auto slash = words[0].find('/');
        if (slash == std::string_view::npos)
            throw ParseError(where() + "expected 'Name/arity'");
        RelationSchema schema;
        schema.name = std::string(words[0].substr(0, slash));
        if (not text::is_identifier(schema.name))
            throw ParseError(where() + "bad relation name '" + schema.name + "'");
        auto arity = text::parse_unsigned(words[0].substr(slash + 1));
        if (not arity)
            throw ParseError(where() + "bad arity in '" + std::string(words[0]) + "'");
        schema.arity = *arity;
        if (words[1] == "prob" or words[1] == "probabilistic")
            schema.probabilistic = true;
        else if (words[1] == "det" or words[1] == "deterministic")
            schema.probabilistic = false;
        else
            throw ParseError(where() + "expected 'prob' or 'det', got '" + std::string(words[1]) + "'");
        catalog.add_relation(std::move(schema));
    }
    for (auto &fd : fds)
        catalog.add_fd(std::move(fd));
    return catalog;
}

}
