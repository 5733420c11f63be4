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

// Command-line front end.

#include "dissoc/bench.hpp"
#include "dissoc/database.hpp"
#include "dissoc/enumerate.hpp"
#include "dissoc/error.hpp"
#include "dissoc/eval.hpp"
#include "dissoc/generate.hpp"
#include "dissoc/lineage.hpp"
#include "dissoc/optimize.hpp"
#include "dissoc/oracle.hpp"
#include "dissoc/ranking.hpp"
#include "dissoc/sql.hpp"
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace dissoc;
namespace fs = std::filesystem;

namespace {

/* A file's contents if `arg` names a file, else `arg` itself. */
std::string file_or_text(const std::string &arg)
{
    std::error_code ec;
    if (not fs::is_regular_file(arg, ec)) return arg;
    std::ifstream in(arg);
    if (not in) throw DataError("cannot read " + arg);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct QueryArgs
{
    std::string query;
    std::string catalog;
    bool schema = false;
    std::string opt;
};

struct Loaded
{
    Query query;
    Catalog catalog;
};

Loaded load(const QueryArgs &a)
{
    if (a.catalog.empty()) {
        auto q = parse_query(file_or_text(a.query));
        Catalog c;
        for (auto &atom : q.atoms()) c.add_relation({atom.relation, atom.args.size(), true});
        return {q, c};
    }
    auto c = parse_catalog(file_or_text(a.catalog));
    return {parse_query(file_or_text(a.query), c), c};
}

void add_query_args(CLI::App *cmd, QueryArgs &a)
{
    cmd->add_option("query", a.query, "query text or file")->required();
    cmd->add_option("catalog", a.catalog, "catalog text or file (default: every relation probabilistic)");
}

void plan_command(const QueryArgs &a)
{
    auto [q, cat] = load(a);
    auto strategy = parse_strategy(a.opt);
    switch (strategy) {
        case Strategy::all_plans: {
            auto plans = enumerate_minimal_plans(q, cat, a.schema);
            std::cout << plans.size() << " minimal plan" << (plans.size() == 1 ? "" : "s") << '\n';
            for (std::size_t i = 0; i != plans.size(); ++i) {
                std::cout << "\nplan " << i + 1 << "  dissociation "
                          << to_string(plan_to_dissociation(plans[i], q), q) << '\n'
                          << format_plan(plans[i], q);
            }
            break;
        }
        case Strategy::opt1: std::cout << format_plan(single_plan(q, cat, a.schema), q); break;
        case Strategy::opt12:
        case Strategy::opt123: std::cout << format_view_set(shared_view_plan(q, cat, a.schema), q); break;
    }
}

void emit_sql_command(const QueryArgs &a, const std::string &dialect)
{
    auto [q, cat] = load(a);
    switch (parse_strategy(a.opt)) {
        case Strategy::all_plans:
            std::cout << emit_sql(make_min(enumerate_minimal_plans(q, cat, a.schema)), q, cat, dialect);
            break;
        case Strategy::opt1: std::cout << emit_sql(single_plan(q, cat, a.schema), q, cat, dialect); break;
        case Strategy::opt12:
        case Strategy::opt123: std::cout << emit_sql(shared_view_plan(q, cat, a.schema), q, cat, dialect); break;
    }
    std::cout << '\n';
}

}

int main(int argc, char **argv)
{
    CLI::App app{"Ranking queries over probabilistic databases by dissociation"};
    app.require_subcommand(1);

    QueryArgs qa;
    std::string data;
    bool parallel = false;
    std::size_t samples = 1000, max_steps = OracleLimits{}.max_steps, max_monomials = LineageOptions{}.max_monomials;
    std::uint64_t seed = 1;
    std::string dialect = "ansi";

    auto *plan = app.add_subcommand("plan", "print the minimal plans, the single plan or the view set");
    add_query_args(plan, qa);
    plan->add_flag("--schema", qa.schema, "use deterministic relations and FDs from the catalog");
    std::string plan_opt = "none", eval_opt = "12", sql_opt = "12";
    plan->add_option("--opt", plan_opt, "none, 1, 12 or 123");

    auto *eval = app.add_subcommand("eval", "propagation score of every answer");
    add_query_args(eval, qa);
    eval->add_option("--data", data, "directory with one <relation>.tsv per relation")->required();
    eval->add_flag("--schema", qa.schema, "use deterministic relations and FDs from the catalog");
    eval->add_option("--opt", eval_opt, "none, 1, 12 or 123");
    eval->add_flag("--parallel", parallel, "evaluate min branches concurrently");

    auto *exact = app.add_subcommand("exact", "exact probability of every answer");
    add_query_args(exact, qa);
    exact->add_option("--data", data, "data directory")->required();
    exact->add_option("--max-steps", max_steps, "Shannon expansion budget per answer");
    exact->add_option("--max-monomials", max_monomials, "lineage size limit");

    auto *mc = app.add_subcommand("mc", "Monte Carlo estimate for every answer");
    add_query_args(mc, qa);
    mc->add_option("--data", data, "data directory")->required();
    mc->add_option("--samples", samples, "samples per answer")->check(CLI::PositiveNumber);
    mc->add_option("--seed", seed, "random seed");
    mc->add_option("--max-monomials", max_monomials, "lineage size limit");

    auto *lin = app.add_subcommand("lineage", "lineage DNF of every answer");
    add_query_args(lin, qa);
    lin->add_option("--data", data, "data directory")->required();
    lin->add_option("--max-monomials", max_monomials, "lineage size limit");

    GenSpec gen;
    std::string shape = "chain", out_dir;
    std::optional<double> pconst;
    auto *g = app.add_subcommand("gen", "generate a chain or star instance");
    g->add_option("--shape", shape, "chain or star");
    g->add_option("--k", gen.k, "query length");
    g->add_option("--n", gen.n, "tuples per relation");
    g->add_option("--N", gen.N, "domain size");
    g->add_option("--pmax", gen.p_max, "probabilities are uniform in [0, pmax]");
    g->add_option("--pconst", pconst, "give every tuple this probability");
    g->add_option("--seed", gen.seed, "random seed");
    g->add_option("--out", out_dir, "output directory")->required();

    std::string mode, config;
    auto *bench = app.add_subcommand("bench", "run a ranking or scaling experiment");
    bench->add_option("mode", mode, "rank or scale")->required()->check(CLI::IsMember({"rank", "scale"}));
    bench->add_option("--config", config, "key = value configuration file")->required();

    auto *sql = app.add_subcommand("emit-sql", "print SQL computing the propagation score");
    add_query_args(sql, qa);
    sql->add_flag("--schema", qa.schema, "use deterministic relations and FDs from the catalog");
    sql->add_option("--opt", sql_opt, "none, 1, 12 or 123");
    sql->add_option("--dialect", dialect, "SQL dialect")->default_val("ansi");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (plan->parsed()) {
            qa.opt = plan_opt;
            plan_command(qa);
        } else if (eval->parsed()) {
            auto [q, cat] = load(qa);
            PropagationOptions opts{parse_strategy(eval_opt), qa.schema, parallel};
            std::cout << format_scored_relation(propagation_score(q, load_database(data, cat), cat, opts));
        } else if (exact->parsed()) {
            auto [q, cat] = load(qa);
            std::cout << format_scored_relation(
                exact_query_prob(q, load_database(data, cat), {max_steps}, {max_monomials}));
        } else if (mc->parsed()) {
            auto [q, cat] = load(qa);
            std::cout << format_scored_relation(
                mc_query_prob(q, load_database(data, cat), samples, seed, {max_monomials}));
        } else if (lin->parsed()) {
            auto [q, cat] = load(qa);
            auto db = load_database(data, cat);
            std::cout << format_lineage(lineage(q, db, {max_monomials}), db);
        } else if (g->parsed()) {
            gen.shape = parse_shape(shape);
            gen.p_const = pconst;
            auto inst = generate(gen);
            fs::create_directories(out_dir);
            write_database(out_dir, inst.db);
            std::ofstream(fs::path(out_dir) / "query.dl") << inst.query.to_string() << '\n';
            std::ofstream(fs::path(out_dir) / "catalog.txt") << inst.catalog.to_string();
            std::cout << inst.query.to_string() << '\n';
        } else if (bench->parsed()) {
            auto cfg = parse_bench_config(file_or_text(config));
            if (mode == "rank")
                std::cout << format_ranking_report(run_rank_bench(cfg));
            else
                std::cout << format_scaling_summary(run_scale_bench(cfg));
        } else if (sql->parsed()) {
            qa.opt = sql_opt;
            emit_sql_command(qa, dialect);
        }
    } catch (const ResourceLimitError &e) {
        std::cerr << "dissoc: " << e.what() << '\n';
        return 3;
    } catch (const Error &e) {
        std::cerr << "dissoc: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
