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

#include "dissoc/sql.hpp"

#include "dissoc/error.hpp"
#include <algorithm>
#include <sstream>

namespace dissoc {

namespace {

constexpr const char *kLogClamp = "0.999999999999";

struct Emitter
{
    const Query &q;
    const Catalog &catalog;
    int next_alias = 0;

    std::string col(std::size_t v) const { return "v_" + q.var_name(static_cast<VarId>(v)); }

    std::string head_list(VarSet head, const std::string &prefix = "") const
    {
        std::string out;
        for (auto v : head) out += prefix + col(v) + ", ";
        return out;
    }

    std::string group_by(VarSet head) const
    {
        if (head.empty()) return "HAVING COUNT(*) > 0";
        std::string out = "GROUP BY ";
        bool first = true;
        for (auto v : head) {
            out += (first ? "" : ", ") + col(v);
            first = false;
        }
        return out;
    }

    std::string alias() { return "t" + std::to_string(++next_alias); }

    std::string indent(const std::string &sql, int by) const
    {
        std::string pad(by, ' '), out;
        std::istringstream in(sql);
        for (std::string line; std::getline(in, line); ) out += pad + line + '\n';
        if (not out.empty()) out.pop_back();
        return out;
    }

    std::string emit(const PlanNode &n)
    {
        switch (n.kind) {
            case PlanKind::scan: {
                auto &schema = catalog.at(n.relation);
                std::string sel, where;
                for (auto v : n.head) {
                    auto pos = std::find(n.args.begin(), n.args.end(), v) - n.args.begin();
                    sel += "c" + std::to_string(pos + 1) + " AS " + col(v) + ", ";
                }
                for (std::size_t i = 0; i != n.args.size(); ++i)
                    for (std::size_t j = 0; j != i; ++j)
                        if (n.args[i] == n.args[j]) {
                            where += where.empty() ? " WHERE " : " AND ";
                            where += "c" + std::to_string(j + 1) + " = c" + std::to_string(i + 1);
                            break;
                        }
                sel += schema.probabilistic ? "p" : "1.0 AS p";
                return "SELECT " + sel + " FROM " + n.relation + where;
            }
            case PlanKind::join: {
                std::string from, where, score;
                std::vector<std::pair<std::size_t, std::string>> owner;  // variable -> first alias carrying it
                for (auto &c : n.children) {
                    std::string a = alias();
                    from += (from.empty() ? "" : ",\n") + ("(\n" + indent(emit(*c), 2) + "\n) AS " + a);
                    for (auto v : c->head) {
                        auto it = std::find_if(owner.begin(), owner.end(), [&](auto &o) { return o.first == v; });
                        if (it == owner.end()) {
                            owner.emplace_back(v, a);
                        } else {
                            where += where.empty() ? "\nWHERE " : " AND ";
                            where += it->second + "." + col(v) + " = " + a + "." + col(v);
                        }
                    }
                    score += (score.empty() ? "" : " * ") + a + ".p";
                }
                std::string sel;
                for (auto v : n.head) {
                    auto it = std::find_if(owner.begin(), owner.end(), [&](auto &o) { return o.first == v; });
                    sel += it->second + "." + col(v) + ", ";
                }
                return "SELECT " + sel + score + " AS p\nFROM " + from + where;
            }
            case PlanKind::project: {
                std::string a = alias();
                return "SELECT " + head_list(n.head) + "1 - EXP(SUM(LN(1 - LEAST(p, " + kLogClamp + ")))) AS p\n" +
                       "FROM (\n" + indent(emit(*n.children.front()), 2) + "\n) AS " + a + "\n" + group_by(n.head);
            }
            case PlanKind::min: {
                std::string branches;
                for (auto &c : n.children)
                    branches += (branches.empty() ? "" : "\n  UNION ALL\n") + indent(emit(*c), 2);
                std::string a = alias();
                return "SELECT " + head_list(n.head) + "MIN(p) AS p\nFROM (\n" + branches + "\n) AS " + a + "\n" +
                       group_by(n.head);
            }
            case PlanKind::view:
                return "SELECT " + head_list(n.head) + "p FROM " + n.view_name;
        }
        return {};
    }
};

void check_dialect(std::string_view dialect)
{
    if (dialect != "ansi") throw ParseError("unsupported SQL dialect '" + std::string(dialect) + "'");
}

}

std::string emit_sql(const ViewSet &vs, const Query &q, const Catalog &catalog, std::string_view dialect)
{
    check_dialect(dialect);
    Emitter e{q, catalog};
    std::string out;
    for (std::size_t i = 0; i != vs.views.size(); ++i) {
        out += (i == 0 ? "WITH " : ",\n") + vs.views[i].name + " AS (\n" + e.indent(e.emit(*vs.views[i].plan), 2) +
               "\n)";
    }
    if (not out.empty()) out += '\n';
    out += "SELECT *\nFROM (\n" + e.indent(e.emit(*vs.main), 2) + "\n) AS answer\nORDER BY p DESC;\n";
    return out;
}

std::string emit_sql(const Plan &plan, const Query &q, const Catalog &catalog, std::string_view dialect)
{
    return emit_sql(ViewSet{{}, plan}, q, catalog, dialect);
}

}
