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

#include "dissoc/ranking.hpp"

#include "dissoc/error.hpp"
#include "dissoc/lineage.hpp"
#include "dissoc/random.hpp"
#include "text.hpp"
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace dissoc {

namespace {

/// For each answer: how many answers rank strictly above its tie group, and the group's size.
struct Placement
{
    std::size_t above = 0;
    std::size_t group = 1;
};

std::map<Tuple, Placement> placements(const ScoredRelation &r, double tolerance)
{
    std::vector<const ScoredTuple*> sorted;
    for (auto &row : r.rows) sorted.push_back(&row);
    std::stable_sort(sorted.begin(), sorted.end(), [](auto *a, auto *b) { return a->score > b->score; });

    std::map<Tuple, Placement> out;
    std::size_t start = 0;
    while (start < sorted.size()) {
        std::size_t end = start + 1;
        while (end < sorted.size() and sorted[end - 1]->score - sorted[end]->score <= tolerance) ++end;
        for (std::size_t i = start; i != end; ++i)
            if (not out.emplace(sorted[i]->values, Placement{start, end - start}).second)
                throw DataError("answer " + format_answer(sorted[i]->values) + " listed twice");
        start = end;
    }
    return out;
}

double in_top(const Placement &p, std::size_t j)
{
    double x = (static_cast<double>(j) - static_cast<double>(p.above)) / static_cast<double>(p.group);
    return std::clamp(x, 0.0, 1.0);
}

}

double average_precision_at_k(const ScoredRelation &returned, const ScoredRelation &truth, std::size_t k)
{
    auto ret = placements(returned, 0.0);
    auto gt = placements(truth, 1e-12);
    if (ret.size() != gt.size()) throw DataError("rankings cover different answers");
    for (auto &[answer, _] : ret)
        if (not gt.contains(answer)) throw DataError("answer " + format_answer(answer) + " missing from the truth");
    const std::size_t m = ret.size();
    if (m == 0 or k == 0) return 1.0;
    k = std::min(k, m);

    double sum = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        double overlap = 0.0;
        for (auto &[answer, p] : ret) overlap += in_top(p, j) * in_top(gt.at(answer), j);
        sum += overlap / static_cast<double>(j);
    }
    return sum / static_cast<double>(k);
}

std::string RankingMethod::label() const
{
    switch (kind) {
        case MethodKind::dissociation: return "dissociation";
        case MethodKind::mc: return "MC(" + std::to_string(samples) + ")";
        case MethodKind::lineage_size: return "lineage_size";
        case MethodKind::exact: return "exact";
    }
    return "?";
}

RankingMethod parse_method(std::string_view text)
{
    text = text::trim(text);
    if (text == "dissociation" or text == "diss") return {MethodKind::dissociation};
    if (text == "lineage_size" or text == "lineage") return {MethodKind::lineage_size};
    if (text == "exact") return {MethodKind::exact};
    if (text.starts_with("mc") or text.starts_with("MC")) {
        auto rest = text.substr(2);
        if (rest.empty()) return {MethodKind::mc, 1000};
        if (rest.front() == ':') rest.remove_prefix(1);
        else if (rest.front() == '(' and rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
        auto n = text::parse_unsigned(rest);
        if (n and *n > 0) return {MethodKind::mc, *n};
    }
    throw ParseError("unknown ranking method '" + std::string(text) + "'");
}

namespace {

void summarize(MethodResult &m)
{
    if (not m.available or m.ap.empty()) {
        m.map = m.stddev = 0.0;
        return;
    }
    double mean = 0.0;
    for (double a : m.ap) mean += a;
    mean /= static_cast<double>(m.ap.size());
    double var = 0.0;
    for (double a : m.ap) var += (a - mean) * (a - mean);
    m.map = mean;
    m.stddev = m.ap.size() > 1 ? std::sqrt(var / static_cast<double>(m.ap.size() - 1)) : 0.0;
}

}

RankingReport rank_methods(const Query &q, const Database &db, const Catalog &catalog,
                           const std::vector<RankingMethod> &methods, const RankOptions &options)
{
    RankingReport report;
    report.k = options.k;
    report.seeds.push_back(options.seed);

    ScoredRelation truth;
    std::string truth_error;
    try {
        truth = exact_query_prob(q, db, options.limits, options.lineage);
    } catch (const ResourceLimitError &e) {
        truth_error = e.what();
    }

    for (auto &method : methods) {
        MethodResult r;
        r.label = method.label();
        if (not truth_error.empty()) {
            r.available = false;
            r.note = "no ground truth: " + truth_error;
            report.methods.push_back(std::move(r));
            continue;
        }
        try {
            ScoredRelation returned;
            switch (method.kind) {
                case MethodKind::dissociation:
                    returned = propagation_score(q, db, catalog, options.propagation);
                    break;
                case MethodKind::mc:
                    returned = mc_query_prob(q, db, method.samples, options.seed, options.lineage);
                    break;
                case MethodKind::lineage_size: {
                    auto f = lineage(q, db, options.lineage);
                    returned.columns = f.columns;
                    for (auto &e : f.answers)
                        returned.rows.push_back({e.answer, static_cast<double>(e.monomials.size())});
                    break;
                }
                case MethodKind::exact:
                    returned = truth;
                    break;
            }
            r.ap.push_back(average_precision_at_k(returned, truth, options.k));
        } catch (const ResourceLimitError &e) {
            r.available = false;
            r.note = e.what();
        }
        summarize(r);
        report.methods.push_back(std::move(r));
    }
    return report;
}

RankingReport merge_reports(const std::vector<RankingReport> &trials)
{
    RankingReport out;
    if (trials.empty()) return out;
    out.k = trials.front().k;
    for (auto &t : trials) {
        out.seeds.insert(out.seeds.end(), t.seeds.begin(), t.seeds.end());
        for (std::size_t i = 0; i != t.methods.size(); ++i) {
            if (out.methods.size() <= i) {
                out.methods.push_back({});
                out.methods[i].label = t.methods[i].label;
            }
            auto &m = out.methods[i];
            if (t.methods[i].available) {
                m.ap.insert(m.ap.end(), t.methods[i].ap.begin(), t.methods[i].ap.end());
            } else if (m.note.empty()) {
                m.note = t.methods[i].note;
            }
        }
    }
    for (auto &m : out.methods) {
        m.available = not m.ap.empty();
        summarize(m);
    }
    return out;
}

std::vector<ScalingRow> scaling_experiment(const Query &q, const Database &db, const Catalog &catalog,
                                           const std::vector<double> &factors, const RankOptions &options)
{
    auto unscaled = exact_query_prob(q, db, options.limits, options.lineage);
    std::vector<ScalingRow> rows;
    for (double f : factors) {
        Database scaled = scale_database(db, f);
        auto exact = exact_query_prob(q, scaled, options.limits, options.lineage);
        auto rho = propagation_score(q, scaled, catalog, options.propagation);
        ScalingRow row;
        row.factor = f;
        double sum = 0.0;
        for (auto &r : exact.rows) {
            if (r.score <= 0.0) continue;
            auto s = rho.score_of(r.values);
            if (not s) throw std::logic_error("propagation score misses an answer");
            sum += (*s - r.score) / r.score;
            ++row.answers_used;
        }
        row.mean_relative_error = row.answers_used ? sum / static_cast<double>(row.answers_used) : 0.0;
        row.ap_vs_unscaled = average_precision_at_k(exact, unscaled, options.k);
        rows.push_back(row);
    }
    return rows;
}

std::string format_ranking_report(const RankingReport &r)
{
    std::ostringstream out;
    out << "method\tMAP@" << r.k << "\tstddev\ttrials\tnote\n";
    for (auto &m : r.methods) {
        out << m.label << '\t';
        if (m.available) out << m.map << '\t' << m.stddev;
        else out << "NA\tNA";
        out << '\t' << m.ap.size() << '\t' << m.note << '\n';
    }
    out << "# seeds";
    for (auto s : r.seeds) out << ' ' << s;
    out << '\n';
    return out.str();
}

std::string format_scaling_rows(const std::vector<ScalingRow> &rows)
{
    std::ostringstream out;
    out << "factor\tmean_relative_error\tanswers\tap_vs_unscaled\n";
    for (auto &r : rows)
        out << r.factor << '\t' << r.mean_relative_error << '\t' << r.answers_used << '\t' << r.ap_vs_unscaled << '\n';
    return out.str();
}

}
