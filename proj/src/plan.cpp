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

#include "dissoc/plan.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dissoc {

namespace {

std::string hex(std::uint64_t bits)
{
    std::ostringstream out;
    out << std::hex << bits;
    return out.str();
}

void sort_by_key(std::vector<Plan> &plans)
{
    std::sort(plans.begin(), plans.end(), [](const Plan &a, const Plan &b) { return a->key < b->key; });
}

std::string joined_keys(const std::vector<Plan> &plans)
{
    std::string out;
    for (auto &p : plans) {
        if (not out.empty()) out += ',';
        out += p->key;
    }
    return out;
}

}

Plan make_scan(std::string relation, std::vector<VarId> args)
{
    auto node = std::make_shared<PlanNode>();
    node->kind = PlanKind::scan;
    node->key = relation + '(';
    for (std::size_t i = 0; i != args.size(); ++i) {
        node->head.insert(args[i]);
        node->key += (i ? "," : "") + std::to_string(args[i]);
    }
    node->key += ')';
    node->relation = std::move(relation);
    node->args = std::move(args);
    return node;
}

Plan make_join(std::vector<Plan> children)
{
    if (children.size() < 2) throw std::invalid_argument("join needs at least two inputs");
    sort_by_key(children);
    auto node = std::make_shared<PlanNode>();
    node->kind = PlanKind::join;
    for (auto &c : children) node->head |= c->head;
    node->key = "J[" + joined_keys(children) + "]";
    node->children = std::move(children);
    return node;
}

Plan make_project(Plan child, VarSet head)
{
    if (not head.is_subset_of(child->head)) throw std::invalid_argument("projection onto variables not in its input");
    auto node = std::make_shared<PlanNode>();
    node->kind = PlanKind::project;
    node->head = head;
    node->key = "P{" + hex(head.bits()) + "}(" + child->key + ")";
    node->children.push_back(std::move(child));
    return node;
}

Plan make_min(std::vector<Plan> children)
{
    if (children.empty()) throw std::invalid_argument("min over no inputs");
    sort_by_key(children);
    children.erase(std::unique(children.begin(), children.end(),
                               [](const Plan &a, const Plan &b) { return a->key == b->key; }),
                   children.end());
    if (children.size() == 1) return children.front();
    for (auto &c : children)
        if (c->head != children.front()->head) throw std::invalid_argument("min inputs with different heads");
    auto node = std::make_shared<PlanNode>();
    node->kind = PlanKind::min;
    node->head = children.front()->head;
    node->key = "M[" + joined_keys(children) + "]";
    node->children = std::move(children);
    return node;
}

Plan make_view_ref(std::string name, VarSet head)
{
    auto node = std::make_shared<PlanNode>();
    node->kind = PlanKind::view;
    node->head = head;
    node->key = "V:" + name;
    node->view_name = std::move(name);
    return node;
}

std::vector<std::string> scanned_relations(const Plan &plan)
{
    std::vector<std::string> out;
    auto walk = [&](auto &self, const PlanNode &n) -> void {
        if (n.kind == PlanKind::scan) out.push_back(n.relation);
        for (auto &c : n.children) self(self, *c);
    };
    walk(walk, *plan);
    return out;
}

std::size_t count_nodes(const Plan &plan, PlanKind kind)
{
    std::size_t n = plan->kind == kind;
    for (auto &c : plan->children) n += count_nodes(c, kind);
    return n;
}

bool alternates(const Plan &plan)
{
    /* The operator kind reached when looking through min nodes. */
    auto below = [](auto &self, const PlanNode &n, std::vector<PlanKind> &out) -> void {
        if (n.kind == PlanKind::min) {
            for (auto &c : n.children) self(self, *c, out);
        } else {
            out.push_back(n.kind);
        }
    };
    auto walk = [&](auto &self, const PlanNode &n) -> bool {
        if (n.kind == PlanKind::join or n.kind == PlanKind::project) {
            for (auto &c : n.children) {
                std::vector<PlanKind> kinds;
                below(below, *c, kinds);
                for (auto k : kinds)
                    if (k == n.kind) return false;
            }
        }
        for (auto &c : n.children)
            if (not self(self, *c)) return false;
        return true;
    };
    return walk(walk, *plan);
}

namespace {

std::string var_list(const Query &q, VarSet s)
{
    return q.format_vars(s);
}

std::string scan_text(const PlanNode &n, const Query &q)
{
    std::string out = n.relation + '(';
    for (std::size_t i = 0; i != n.args.size(); ++i) out += (i ? "," : "") + q.var_name(n.args[i]);
    return out + ')';
}

}

std::string format_plan_inline(const Plan &plan, const Query &q)
{
    const PlanNode &n = *plan;
    auto list = [&] {
        std::string out;
        for (std::size_t i = 0; i != n.children.size(); ++i)
            out += (i ? ", " : "") + format_plan_inline(n.children[i], q);
        return out;
    };
    switch (n.kind) {
        case PlanKind::scan: return scan_text(n, q);
        case PlanKind::join: return "join(" + list() + ")";
        case PlanKind::project: return "pi[" + var_list(q, n.head) + "](" + list() + ")";
        case PlanKind::min: return "min(" + list() + ")";
        case PlanKind::view: return n.view_name;
    }
    return {};
}

std::string format_plan(const Plan &plan, const Query &q)
{
    std::ostringstream out;
    auto walk = [&](auto &self, const PlanNode &n, int depth) -> void {
        out << std::string(2 * depth, ' ');
        switch (n.kind) {
            case PlanKind::scan: out << "scan " << scan_text(n, q); break;
            case PlanKind::join: out << "join [" << var_list(q, n.head) << ']'; break;
            case PlanKind::project: out << "project [" << var_list(q, n.head) << ']'; break;
            case PlanKind::min: out << "min [" << var_list(q, n.head) << ']'; break;
            case PlanKind::view: out << "view " << n.view_name << " [" << var_list(q, n.head) << ']'; break;
        }
        out << '\n';
        for (auto &c : n.children) self(self, *c, depth + 1);
    };
    walk(walk, *plan, 0);
    return out.str();
}

}
