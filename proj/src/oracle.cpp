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

#include "dissoc/oracle.hpp"

#include "dissoc/error.hpp"
#include "dissoc/random.hpp"
#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace dissoc {

std::size_t Dnf::variable_bound() const
{
    std::size_t n = 0;
    for (auto &t : terms)
        for (auto x : t) n = std::max<std::size_t>(n, x + 1);
    return n;
}

namespace {

using Term = std::vector<DnfVar>;
using Terms = std::vector<Term>;

constexpr std::size_t kAbsorbLimit = 512;
constexpr std::size_t kInclusionExclusionLimit = 4;

void absorb_in_place(Terms &terms)
{
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    Terms kept;
    for (auto &t : terms) {
        bool covered = std::any_of(kept.begin(), kept.end(), [&](const Term &k) {
            return std::includes(t.begin(), t.end(), k.begin(), k.end());
        });
        if (not covered) kept.push_back(std::move(t));
    }
    terms = std::move(kept);
}

/// Sorted variables per term, sorted unique terms, absorbed while small.
void canonicalize(Terms &terms)
{
    for (auto &t : terms) {
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
    }
    if (terms.size() <= kAbsorbLimit) absorb_in_place(terms);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
}

class ShannonSolver
{
    const std::vector<double> &p_;
    std::size_t budget_;
    std::size_t steps_ = 0;
    std::unordered_map<std::string, double> memo_;

    static std::string key_of(const Terms &terms)
    {
        std::string key;
        for (auto &t : terms) {
            key.append(reinterpret_cast<const char*>(t.data()), t.size() * sizeof(DnfVar));
            key.append(4, '\xff');
        }
        return key;
    }

    double product(const Term &t) const
    {
        double r = 1.0;
        for (auto x : t) r *= p_[x];
        return r;
    }

    double inclusion_exclusion(const Terms &terms) const
    {
        const std::size_t n = terms.size();
        double total = 0.0;
        for (std::uint32_t mask = 1; mask != (1u << n); ++mask) {
            Term u;
            for (std::size_t i = 0; i != n; ++i)
                if ((mask >> i) & 1) u.insert(u.end(), terms[i].begin(), terms[i].end());
            std::sort(u.begin(), u.end());
            u.erase(std::unique(u.begin(), u.end()), u.end());
            double term = product(u);
            total += (std::popcount(mask) % 2 ? term : -term);
        }
        return total;
    }

    /// Splits into groups of terms sharing no variable.
    static std::vector<Terms> components(const Terms &terms)
    {
        std::vector<std::size_t> parent(terms.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::unordered_map<DnfVar, std::size_t> owner;
        for (std::size_t i = 0; i != terms.size(); ++i)
            for (auto x : terms[i]) {
                auto [it, fresh] = owner.emplace(x, i);
                if (not fresh) parent[find(i)] = find(it->second);
            }
        std::map<std::size_t, Terms> groups;
        for (std::size_t i = 0; i != terms.size(); ++i) groups[find(i)].push_back(terms[i]);
        std::vector<Terms> out;
        for (auto &[_, g] : groups) out.push_back(std::move(g));
        return out;
    }

  public:
    ShannonSolver(const std::vector<double> &p, std::size_t budget) : p_(p), budget_(budget) { }

    double solve(const Terms &terms)
    {
        if (terms.empty()) return 0.0;
        if (terms.front().empty()) return 1.0;
        if (++steps_ > budget_) throw OracleTooLarge("exact probability needs more than " +
                                                     std::to_string(budget_) + " expansion steps");
        if (terms.size() == 1) return product(terms.front());
        if (terms.size() <= kInclusionExclusionLimit) return inclusion_exclusion(terms);

        auto key = key_of(terms);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        double result;
        auto comps = components(terms);
        if (comps.size() > 1) {
            double miss = 1.0;
            for (auto &c : comps) miss *= 1.0 - solve(c);
            result = 1.0 - miss;
        } else {
            std::unordered_map<DnfVar, std::size_t> freq;
            for (auto &t : terms)
                for (auto x : t) ++freq[x];
            DnfVar pivot = terms.front().front();
            for (auto [x, n] : freq)
                if (n > freq[pivot] or (n == freq[pivot] and x < pivot)) pivot = x;

            Terms pos, neg;
            for (auto &t : terms) {
                if (std::binary_search(t.begin(), t.end(), pivot)) {
                    Term r;
                    for (auto x : t)
                        if (x != pivot) r.push_back(x);
                    pos.push_back(std::move(r));
                } else {
                    pos.push_back(t);
                    neg.push_back(t);
                }
            }
            canonicalize(pos);
            canonicalize(neg);
            double p = p_[pivot];
            result = p * solve(pos) + (1.0 - p) * solve(neg);
        }
        memo_.emplace(std::move(key), result);
        return result;
    }
};

void check_distribution(const Dnf &f, const AssignmentDistribution &dist)
{
    if (f.variable_bound() > dist.size()) throw DataError("formula mentions a variable without a probability");
    for (double p : dist.probability)
        if (not (p >= 0.0 and p <= 1.0)) throw DataError("variable probability outside [0,1]");
}

}

Dnf absorb(Dnf f)
{
    canonicalize(f.terms);
    absorb_in_place(f.terms);
    std::sort(f.terms.begin(), f.terms.end());
    return f;
}

Dnf substitute(const Dnf &f, const DissociationMap &theta)
{
    Dnf out;
    for (auto &t : f.terms) {
        Term r;
        for (auto x : t) r.push_back(theta(x));
        out.terms.push_back(std::move(r));
    }
    return out;
}

double exact_dnf_prob(const Dnf &f, const AssignmentDistribution &dist, const OracleLimits &limits)
{
    check_distribution(f, dist);
    /* Certain variables vanish from their terms; impossible ones kill the term. */
    Terms terms;
    for (auto &t : f.terms) {
        Term r;
        bool dead = false;
        for (auto x : t) {
            if (dist[x] == 0.0) { dead = true; break; }
            if (dist[x] != 1.0) r.push_back(x);
        }
        if (not dead) terms.push_back(std::move(r));
    }
    canonicalize(terms);
    ShannonSolver solver(dist.probability, limits.max_steps);
    return std::clamp(solver.solve(terms), 0.0, 1.0);
}

double mc_estimate(const Dnf &f, const AssignmentDistribution &dist, std::size_t samples, std::uint64_t seed)
{
    check_distribution(f, dist);
    if (samples == 0) throw DataError("Monte Carlo needs at least one sample");
    Xoshiro256 rng(seed);
    std::vector<char> world(dist.size());
    std::size_t hits = 0;
    for (std::size_t s = 0; s != samples; ++s) {
        for (std::size_t x = 0; x != dist.size(); ++x) world[x] = rng.uniform01() < dist.probability[x];
        bool sat = std::any_of(f.terms.begin(), f.terms.end(), [&](const Term &t) {
            return std::all_of(t.begin(), t.end(), [&](DnfVar x) { return world[x] != 0; });
        });
        hits += sat;
    }
    return static_cast<double>(hits) / static_cast<double>(samples);
}

ObliviousCheck check_oblivious_bound(const Dnf &f, const Dnf &f_diss, const DissociationMap &theta,
                                     const AssignmentDistribution &dist, const OracleLimits &limits)
{
    if (f_diss.variable_bound() > theta.theta.size())
        throw InvalidSubstitution("substitution does not cover every variable of the dissociated formula");
    for (auto x : theta.theta)
        if (x >= dist.size()) throw InvalidSubstitution("substitution maps to a variable without a probability");
    if (absorb(substitute(f_diss, theta)).terms != absorb(f).terms)
        throw InvalidSubstitution("the substituted formula is not equivalent to the original");

    AssignmentDistribution copies;
    for (auto x : theta.theta) copies.probability.push_back(dist[x]);

    ObliviousCheck r;
    r.valid = true;
    for (auto &t : absorb(f_diss).terms) {
        std::vector<DnfVar> images;
        for (auto x : t) images.push_back(theta(x));
        std::sort(images.begin(), images.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end()) r.valid = false;
    }

    std::vector<std::size_t> preimages(dist.size(), 0);
    for (DnfVar x = 0; x != f_diss.variable_bound(); ++x) ++preimages[theta(x)];
    r.deterministic_copies = true;
    for (DnfVar x = 0; x != dist.size(); ++x)
        if (preimages[x] >= 2 and dist[x] != 0.0 and dist[x] != 1.0) r.deterministic_copies = false;

    r.original = exact_dnf_prob(f, dist, limits);
    r.dissociated = exact_dnf_prob(f_diss, copies, limits);
    r.bound_holds = r.original <= r.dissociated + 1e-12;
    return r;
}

EncodedLineage encode(const LineageEntry &entry, const Database &db)
{
    std::map<TupleId, DnfVar> ids;
    for (auto &m : entry.monomials)
        for (auto t : m) ids.emplace(t, 0);
    EncodedLineage out;
    for (auto &[t, id] : ids) {
        id = static_cast<DnfVar>(out.tuples.size());
        out.tuples.push_back(t);
        out.dist.probability.push_back(db.probability(t));
    }
    for (auto &m : entry.monomials) {
        Term term;
        for (auto t : m) term.push_back(ids.at(t));
        out.dnf.terms.push_back(std::move(term));
    }
    return out;
}

ScoredRelation exact_query_prob(const Query &q, const Database &db, const OracleLimits &limits,
                                const LineageOptions &lineage_options)
{
    auto f = lineage(q, db, lineage_options);
    ScoredRelation r;
    r.columns = f.columns;
    for (auto &e : f.answers) {
        auto enc = encode(e, db);
        r.rows.push_back({e.answer, exact_dnf_prob(enc.dnf, enc.dist, limits)});
    }
    return r;
}

ScoredRelation mc_query_prob(const Query &q, const Database &db, std::size_t samples, std::uint64_t seed,
                             const LineageOptions &lineage_options)
{
    auto f = lineage(q, db, lineage_options);
    ScoredRelation r;
    r.columns = f.columns;
    for (std::size_t i = 0; i != f.answers.size(); ++i) {
        auto enc = encode(f.answers[i], db);
        r.rows.push_back({f.answers[i].answer, mc_estimate(enc.dnf, enc.dist, samples, derive_seed(seed, i))});
    }
    return r;
}

}
