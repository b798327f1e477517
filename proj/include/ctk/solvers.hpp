#pragma once

// Deterministic constraint search: constrained integer decompositions,
// fusion-map enumeration under order/centralizer/power-map constraints,
// power-map refinement, and Sylow-normalizer feasibility.
//
// No randomization anywhere; result lists are sorted canonically so that
// every run and every platform produces identical output.

#include "cyclotomic.hpp"
#include "numeric.hpp"
#include "problems.hpp"
#include "tables.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ctk {

using MultiplicityVector = std::vector<BigInt>;

namespace detail {

// Candidates with equal degree and equal values on every designated class
// are interchangeable during the degree search; they are collapsed into one
// search variable and expanded into individual multiplicities afterwards.
struct CandidateGroup {
    BigInt degree;
    std::vector<Cyclotomic> values;  // per designated class, aligned with problem.classes
    std::vector<bool> value_known;
    std::vector<int> members;        // candidate indices, ascending
    BigInt member_bound_total;       // sum of per-member multiplicity bounds
};

struct DecompSearch {
    const DecompositionProblem& prob;
    std::vector<CandidateGroup> groups;            // sorted by descending degree
    std::vector<Cyclotomic> running;               // per designated class: current combination value
    std::vector<MultiplicityVector> group_solutions;

    explicit DecompSearch(const DecompositionProblem& p) : prob(p) {}

    BigInt member_bound(int idx) const {
        BigInt bound = prob.target_degree / prob.candidates[idx].degree;
        for (const auto& con : prob.constraints)
            if (con.kind == Constraint::Kind::MultiplicityBound && prob.candidate_index(con.candidate) == idx)
                bound = std::min(bound, con.bound);
        // a candidate with an unknown value on any constrained class is
        // inadmissible for this problem
        for (const auto& con : prob.constraints) {
            if (con.kind == Constraint::Kind::MaxDistinctValues) {
                for (const auto& label : con.classes)
                    if (!prob.candidates[idx].values.count(label)) bound = 0;
            } else if (con.kind == Constraint::Kind::FixedValue) {
                if (!prob.candidates[idx].values.count(con.cls)) bound = 0;
            }
        }
        return bound;
    }

    void build_groups() {
        std::map<std::pair<BigInt, std::vector<std::pair<bool, Cyclotomic>>>, std::vector<int>> buckets;
        for (int i = 0; i < static_cast<int>(prob.candidates.size()); ++i) {
            std::vector<std::pair<bool, Cyclotomic>> key;
            for (const auto& label : prob.classes) {
                auto it = prob.candidates[i].values.find(label);
                key.emplace_back(it != prob.candidates[i].values.end(),
                                 it != prob.candidates[i].values.end() ? it->second : Cyclotomic());
            }
            buckets[{prob.candidates[i].degree, key}].push_back(i);
        }
        for (auto& [key, members] : buckets) {
            CandidateGroup g;
            g.degree = key.first;
            for (const auto& [known, v] : key.second) {
                g.value_known.push_back(known);
                g.values.push_back(v);
            }
            g.members = members;
            g.member_bound_total = 0;
            for (int m : members) g.member_bound_total += member_bound(m);
            groups.push_back(std::move(g));
        }
        std::sort(groups.begin(), groups.end(), [](const CandidateGroup& a, const CandidateGroup& b) {
            if (a.degree != b.degree) return a.degree > b.degree;
            return a.members < b.members;
        });
    }

    bool leaf_constraints_ok() const {
        for (const auto& con : prob.constraints) {
            if (con.kind == Constraint::Kind::FixedValue) {
                std::size_t ci = index_of_class(con.cls);
                if (running[ci] != con.value) return false;
            } else if (con.kind == Constraint::Kind::MaxDistinctValues) {
                std::set<Cyclotomic> distinct;
                for (const auto& label : con.classes) distinct.insert(running[index_of_class(label)]);
                if (static_cast<long>(distinct.size()) > con.max_distinct) return false;
            }
        }
        return true;
    }

    std::size_t index_of_class(const std::string& label) const {
        for (std::size_t i = 0; i < prob.classes.size(); ++i)
            if (prob.classes[i] == label) return i;
        throw Error("decomposition " + prob.id + ": unknown class label '" + label + "'");
    }

    void dfs(std::size_t level, const BigInt& remaining, MultiplicityVector& current) {
        if (level == groups.size()) {
            if (remaining == 0 && leaf_constraints_ok()) group_solutions.push_back(current);
            return;
        }
        const CandidateGroup& g = groups[level];
        BigInt by_degree = remaining / g.degree;
        BigInt max_m = std::min(by_degree, g.member_bound_total);
        if (level + 1 == groups.size()) {
            // last group: the multiplicity is forced by exact division
            if (remaining % g.degree == 0 && remaining / g.degree <= max_m) {
                BigInt m = remaining / g.degree;
                current[level] = m;
                bump(g, m, 1);
                dfs(level + 1, BigInt(0), current);
                bump(g, m, -1);
            }
            if (remaining == 0 && g.degree != 0) {
                // covered by the branch above (m = 0); nothing else to do
            }
            return;
        }
        for (BigInt m = 0; m <= max_m; ++m) {
            current[level] = m;
            if (m > 0) bump(g, BigInt(1), 1);
            dfs(level + 1, remaining - m * g.degree, current);
        }
        bump(g, max_m, -1);
        current[level] = 0;
    }

    void bump(const CandidateGroup& g, const BigInt& m, int sign) {
        if (m == 0) return;
        for (std::size_t i = 0; i < prob.classes.size(); ++i) {
            if (!g.value_known[i]) continue;
            Cyclotomic delta = g.values[i] * Cyclotomic(BigRat(m));
            if (sign > 0)
                running[i] += delta;
            else
                running[i] -= delta;
        }
    }

    // Expand grouped multiplicities into per-candidate vectors honoring the
    // individual multiplicity bounds.
    void expand(std::size_t level, const MultiplicityVector& grouped, MultiplicityVector& vec,
                std::vector<MultiplicityVector>& out) const {
        if (level == groups.size()) {
            for (const auto& con : prob.constraints)
                if (con.kind == Constraint::Kind::ExcludeSolution && vec == con.excluded) return;
            out.push_back(vec);
            return;
        }
        const CandidateGroup& g = groups[level];
        distribute(g, 0, grouped[level], vec, [&] { expand(level + 1, grouped, vec, out); });
    }

    template <typename Fn>
    void distribute(const CandidateGroup& g, std::size_t mi, const BigInt& left, MultiplicityVector& vec,
                    Fn&& done) const {
        if (mi + 1 == g.members.size()) {
            int idx = g.members[mi];
            if (left <= member_bound(idx)) {
                vec[idx] = left;
                done();
                vec[idx] = 0;
            }
            return;
        }
        int idx = g.members[mi];
        BigInt cap = std::min(left, member_bound(idx));
        for (BigInt m = 0; m <= cap; ++m) {
            vec[idx] = m;
            distribute(g, mi + 1, left - m, vec, done);
        }
        vec[idx] = 0;
    }
};

}  // namespace detail

// All nonnegative-integer multiplicity vectors m with
// sum m_i * degree_i = target satisfying every constraint, in lexicographic
// order. Exhaustive; an empty list is a valid outcome.
inline std::vector<MultiplicityVector> solve_decomposition(const DecompositionProblem& prob) {
    prob.validate();
    detail::DecompSearch search(prob);
    search.build_groups();
    search.running.assign(prob.classes.size(), Cyclotomic(0));
    MultiplicityVector current(search.groups.size(), BigInt(0));
    search.dfs(0, prob.target_degree, current);

    std::vector<MultiplicityVector> out;
    MultiplicityVector vec(prob.candidates.size(), BigInt(0));
    for (const auto& grouped : search.group_solutions) search.expand(0, grouped, vec, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Groups solution vectors by the value pattern they induce on the designated
// classes (Galois-conjugate constituents produce identical patterns).
inline std::vector<std::vector<std::size_t>> group_solutions_by_value_pattern(
    const DecompositionProblem& prob, const std::vector<MultiplicityVector>& solutions) {
    std::map<std::vector<Cyclotomic>, std::vector<std::size_t>> buckets;
    for (std::size_t s = 0; s < solutions.size(); ++s) {
        std::vector<Cyclotomic> pattern;
        for (const auto& label : prob.classes) {
            Cyclotomic v;
            for (std::size_t i = 0; i < prob.candidates.size(); ++i) {
                if (solutions[s][i] == 0) continue;
                auto it = prob.candidates[i].values.find(label);
                if (it != prob.candidates[i].values.end()) v += it->second * Cyclotomic(BigRat(solutions[s][i]));
            }
            pattern.push_back(std::move(v));
        }
        buckets[pattern].push_back(s);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto& [pattern, idxs] : buckets) out.push_back(idxs);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Fusion enumeration
// ---------------------------------------------------------------------------

// All total fusions sub -> big extending the seed that preserve element
// orders, satisfy centralizer divisibility, and commute with every power map
// resolved on both sides. Results sorted by image vector.
inline std::vector<FusionMap> possible_fusions(const TableHead& sub, const TableHead& big, const FusionMap& seed) {
    sub.validate();
    big.validate();
    if (!seed.entries.empty() && static_cast<int>(seed.entries.size()) != sub.n_classes())
        throw Error("possible_fusions: seed entry count mismatch");

    std::vector<std::vector<int>> domains(static_cast<std::size_t>(sub.n_classes()));
    for (int h = 0; h < sub.n_classes(); ++h) {
        std::vector<int> dom;
        for (int g = 0; g < big.n_classes(); ++g) {
            if (big.classes[g].element_order != sub.classes[h].element_order) continue;
            if (!divides(sub.classes[h].centralizer_order, big.classes[g].centralizer_order)) continue;
            dom.push_back(g);
        }
        if (h == 0) dom = {0};
        if (!seed.entries.empty()) {
            try {
                dom = seed.entries[h].refine(dom).candidate_set();
            } catch (const Error&) {
                throw Error("possible_fusions: seed inconsistent at class " + sub.classes[h].name);
            }
        }
        if (dom.empty())
            throw Error("possible_fusions: no candidate for class " + sub.classes[h].name);
        domains[h] = std::move(dom);
    }

    // assign classes in order of ascending domain size, index as tie break
    std::vector<int> order(static_cast<std::size_t>(sub.n_classes()));
    for (int h = 0; h < sub.n_classes(); ++h) order[h] = h;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (domains[a].size() != domains[b].size()) return domains[a].size() < domains[b].size();
        return a < b;
    });

    std::vector<int> assignment(static_cast<std::size_t>(sub.n_classes()), -1);
    std::vector<std::vector<int>> results;

    // commutativity against everything already assigned: fus(h^p) = fus(h)^p
    auto consistent = [&](int h) {
        for (const auto& [p, pm] : sub.power_maps) {
            if (!pm[h].is_resolved()) continue;
            int hp = pm[h].value();
            auto bit = big.power_maps.find(p);
            if (bit == big.power_maps.end()) continue;
            const MapEntry& be = bit->second[assignment[h]];
            if (be.is_unknown()) continue;
            if (assignment[hp] >= 0 && !be.contains(assignment[hp])) return false;
            // reverse direction: h appears as h2^p for some assigned h2
            for (int h2 = 0; h2 < sub.n_classes(); ++h2) {
                if (assignment[h2] < 0 || !pm[h2].is_resolved() || pm[h2].value() != h) continue;
                const MapEntry& be2 = bit->second[assignment[h2]];
                if (!be2.is_unknown() && !be2.contains(assignment[h])) return false;
            }
        }
        return true;
    };

    auto dfs = [&](auto&& self, std::size_t level) -> void {
        if (level == order.size()) {
            results.push_back(assignment);
            return;
        }
        int h = order[level];
        for (int g : domains[h]) {
            assignment[h] = g;
            bool ok = true;
            for (int h2 = 0; h2 < sub.n_classes() && ok; ++h2)
                if (assignment[h2] >= 0) ok = consistent(h2);
            if (ok) self(self, level + 1);
            assignment[h] = -1;
        }
    };
    dfs(dfs, 0);

    std::sort(results.begin(), results.end());
    std::vector<FusionMap> out;
    out.reserve(results.size());
    for (const auto& img : results) {
        FusionMap f;
        f.from_head = sub.id;
        f.to_head = big.id;
        for (int g : img) f.entries.push_back(MapEntry::resolved(g));
        out.push_back(std::move(f));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Power-map refinement
// ---------------------------------------------------------------------------

struct PowerMapAmbiguity {
    long p;
    int cls;
    std::vector<int> candidates;
};

struct RefineResult {
    TableHead head;
    std::vector<PowerMapAmbiguity> ambiguities;
};

// Replaces every unknown or multi-valued power-map entry by the set of
// classes passing order arithmetic and centralizer divisibility. Monotone
// (candidate sets only shrink) and idempotent; an empty intersection means
// the head data is inconsistent.
inline RefineResult refine_power_maps(const TableHead& head) {
    head.validate();
    RefineResult result;
    result.head = head;
    for (auto& [p, pm] : result.head.power_maps) {
        for (int c = 0; c < result.head.n_classes(); ++c) {
            long expected = head.classes[c].element_order / lgcd(head.classes[c].element_order, p);
            std::vector<int> allowed;
            for (int img = 0; img < head.n_classes(); ++img) {
                if (head.classes[img].element_order != expected) continue;
                if (!divides(head.classes[c].centralizer_order, head.classes[img].centralizer_order)) continue;
                allowed.push_back(img);
            }
            try {
                pm[c] = pm[c].refine(allowed);
            } catch (const Error&) {
                throw Error(head.id + ": power map " + std::to_string(p) + " at class " + head.classes[c].name +
                            " admits no candidate; head data inconsistent");
            }
            if (!pm[c].is_resolved())
                result.ambiguities.push_back({p, c, pm[c].candidate_set()});
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Sylow feasibility
// ---------------------------------------------------------------------------

struct SylowResult {
    std::vector<BigInt> precongruence;  // candidates passing the divisor constraints
    std::vector<BigInt> survivors;      // also passing |G|/N == 1 mod p
};

// Feasible orders N of the normalizer of a Sylow p-subgroup: sylow_order
// divides N, N divides the group order, the divisor constraints hold, and
// the number of Sylow subgroups |G|/N is congruent to 1 mod p.
inline SylowResult sylow_feasible(const SylowProblem& prob) {
    prob.validate();
    BigInt domain = prob.group_order;
    if (prob.must_divide != 0) domain = big_gcd(domain, prob.must_divide);
    // guard against divisor explosions when no MUSTDIVIDE constraint is given
    {
        BigInt count = 1;
        for (const auto& [q, e] : factorize(domain)) {
            (void)q;
            count *= (e + 1);
            if (count > 2000000) throw Error("sylow_feasible: divisor domain too large; add a MUSTDIVIDE constraint");
        }
    }
    SylowResult result;
    for (const BigInt& n : divisors(domain)) {
        if (!divides(prob.sylow_order, n)) continue;
        if (!divides(prob.must_be_divisible_by, n)) continue;
        if (n <= prob.strict_lower_bound) continue;
        if (prob.require_proper && n == prob.group_order) continue;
        result.precongruence.push_back(n);
        if (exact_div(prob.group_order, n, "sylow_feasible") % prob.p == 1) result.survivors.push_back(n);
    }
    return result;
}

}  // namespace ctk
