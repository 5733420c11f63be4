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

#include "dissoc/bench.hpp"

#include "dissoc/error.hpp"
#include "dissoc/lineage.hpp"
#include "dissoc/random.hpp"
#include "text.hpp"
#include <sstream>

namespace dissoc {

namespace {

bool parse_flag(std::string_view v)
{
    if (v == "true" or v == "1" or v == "yes" or v == "on") return true;
    if (v == "false" or v == "0" or v == "no" or v == "off") return false;
    throw ParseError("expected a boolean, got '" + std::string(v) + "'");
}

std::size_t count(std::string_view key, std::string_view v)
{
    auto n = text::parse_unsigned(v);
    if (not n) throw ParseError(std::string(key) + ": expected a non-negative integer, got '" + std::string(v) + "'");
    return *n;
}

double real(std::string_view key, std::string_view v)
{
    auto x = text::parse_double(v);
    if (not x) throw ParseError(std::string(key) + ": expected a number, got '" + std::string(v) + "'");
    return *x;
}

}

BenchConfig parse_bench_config(std::string_view input)
{
    BenchConfig c;
    std::size_t line_no = 0;
    for (auto raw : text::split(input, '\n')) {
        ++line_no;
        auto line = text::trim(text::strip_comment(raw));
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
        auto key = text::trim(line.substr(0, eq));
        auto value = text::trim(line.substr(eq + 1));

        if (key == "shape") c.gen.shape = parse_shape(value);
        else if (key == "k") c.gen.k = count(key, value);
        else if (key == "n") c.gen.n = count(key, value);
        else if (key == "N") c.gen.N = count(key, value);
        else if (key == "pmax" or key == "p_max") c.gen.p_max = real(key, value);
        else if (key == "pconst" or key == "p_const") c.gen.p_const = real(key, value);
        else if (key == "seed") c.gen.seed = count(key, value);
        else if (key == "trials" or key == "seeds") c.trials = count(key, value);
        else if (key == "top_k") c.top_k = count(key, value);
        else if (key == "schema") c.propagation.use_schema = parse_flag(value);
        else if (key == "strategy") c.propagation.strategy = parse_strategy(value);
        else if (key == "methods") {
            c.methods.clear();
            for (auto m : text::split(value, ',')) c.methods.push_back(parse_method(m));
        } else if (key == "factors") {
            c.factors.clear();
            for (auto f : text::split(value, ',')) c.factors.push_back(real(key, f));
        } else if (key == "answers") {
            auto dash = value.find('-');
            if (dash == std::string_view::npos) throw ParseError("answers: expected lo-hi");
            c.answers = std::make_pair(count(key, value.substr(0, dash)), count(key, value.substr(dash + 1)));
        } else {
            throw ParseError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
    }
    validate(c.gen);
    return c;
}

std::optional<std::size_t> tune_domain(GenSpec spec, std::size_t lo, std::size_t hi)
{
    auto answers_at = [&](std::size_t N) {
        spec.N = N;
        auto inst = generate(spec);
        return eval_deterministic(inst.query, inst.db).size();
    };
    /* Past its peak the answer count falls as the domain grows; search that side. */
    std::size_t left = 2, right = std::max<std::size_t>(4, 8 * spec.n);
    while (answers_at(right) > hi and right < (std::size_t(1) << 30)) right *= 2;
    while (left + 1 < right) {
        std::size_t mid = left + (right - left) / 2;
        if (answers_at(mid) > hi) left = mid;
        else right = mid;
    }
    for (std::size_t N = right; N < right + 64; ++N) {
        auto a = answers_at(N);
        if (a >= lo and a <= hi) return N;
        if (a < lo) break;
    }
    for (std::size_t N = right; N-- > std::max<std::size_t>(2, right > 64 ? right - 64 : 2); ) {
        auto a = answers_at(N);
        if (a >= lo and a <= hi) return N;
    }
    return std::nullopt;
}

GenSpec trial_spec(const BenchConfig &config, std::size_t i)
{
    GenSpec spec = config.gen;
    spec.seed = derive_seed(config.gen.seed, i);
    if (config.answers) {
        auto N = tune_domain(spec, config.answers->first, config.answers->second);
        if (N) spec.N = *N;
    }
    return spec;
}

RankingReport run_rank_bench(const BenchConfig &config)
{
    std::vector<RankingReport> trials;
    for (std::size_t i = 0; i != config.trials; ++i) {
        GenSpec spec = trial_spec(config, i);
        auto inst = generate(spec);
        RankOptions opt;
        opt.k = config.top_k;
        opt.seed = spec.seed;
        opt.propagation = config.propagation;
        trials.push_back(rank_methods(inst.query, inst.db, inst.catalog, config.methods, opt));
    }
    return merge_reports(trials);
}

ScalingSummary run_scale_bench(const BenchConfig &config)
{
    ScalingSummary s;
    s.factors = config.factors;
    s.mean_error.assign(config.factors.size(), 0.0);
    for (std::size_t i = 0; i != config.trials; ++i) {
        GenSpec spec = trial_spec(config, i);
        auto inst = generate(spec);
        RankOptions opt;
        opt.k = config.top_k;
        opt.propagation = config.propagation;
        s.trials.push_back(scaling_experiment(inst.query, inst.db, inst.catalog, config.factors, opt));
        for (std::size_t f = 0; f != config.factors.size(); ++f)
            s.mean_error[f] += s.trials.back()[f].mean_relative_error;
    }
    if (config.trials)
        for (auto &e : s.mean_error) e /= static_cast<double>(config.trials);
    return s;
}

std::string format_scaling_summary(const ScalingSummary &s)
{
    std::ostringstream out;
    out << "factor\tmean_relative_error\tmean_ap_vs_unscaled\n";
    for (std::size_t f = 0; f != s.factors.size(); ++f) {
        double ap = 0.0;
        for (auto &t : s.trials) ap += t[f].ap_vs_unscaled;
        if (not s.trials.empty()) ap /= static_cast<double>(s.trials.size());
        out << s.factors[f] << '\t' << s.mean_error[f] << '\t' << ap << '\n';
    }
    out << "# trials " << s.trials.size() << '\n';
    return out.str();
}

}
