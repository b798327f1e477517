#pragma once

// Plain data for the search and bookkeeping jobs: constrained decomposition
// problems, fusion problems, Sylow-normalizer feasibility problems, partial
// characters, and the class-count ledger. Operations live in solvers.hpp,
// completion.hpp and verify.hpp; the CTB sidecar stanzas in ctb.hpp mirror
// these fields one to one.

#include "cyclotomic.hpp"
#include "numeric.hpp"
#include "tables.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ctk {

struct DecompCandidate {
    std::string name;
    BigInt degree;
    // values on the problem's designated classes; a missing label means the
    // value is unknown there
    std::map<std::string, Cyclotomic> values;
};

struct Constraint {
    enum class Kind { MaxDistinctValues, FixedValue, MultiplicityBound, ExcludeSolution };

    Kind kind = Kind::MaxDistinctValues;
    std::vector<std::string> classes;  // MaxDistinctValues: the class subset
    long max_distinct = 1;             // MaxDistinctValues
    std::string cls;                   // FixedValue: class label
    Cyclotomic value;                  // FixedValue
    std::string candidate;             // MultiplicityBound: candidate name
    BigInt bound;                      // MultiplicityBound
    std::vector<BigInt> excluded;      // ExcludeSolution: full multiplicity vector
};

struct DecompositionProblem {
    std::string id;
    BigInt target_degree;
    std::vector<std::string> classes;  // designated class labels
    std::vector<DecompCandidate> candidates;
    std::vector<Constraint> constraints;
    // presentation-only grouping of Galois-conjugate candidates, used when
    // reporting solution classes
    std::vector<std::pair<std::string, std::string>> conjugate_pairs;

    int candidate_index(const std::string& name) const {
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (candidates[i].name == name) return static_cast<int>(i);
        throw Error("decomposition " + id + ": no candidate named '" + name + "'");
    }

    void validate() const {
        if (target_degree < 1) throw Error("decomposition " + id + ": target degree must be positive");
        for (const auto& c : candidates) {
            if (c.degree < 1) throw Error("decomposition " + id + ": candidate " + c.name + " has nonpositive degree");
            for (const auto& [label, v] : c.values) {
                (void)v;
                if (std::find(classes.begin(), classes.end(), label) == classes.end())
                    throw Error("decomposition " + id + ": candidate " + c.name + " has a value on undesignated class '" +
                                label + "'");
            }
        }
        for (const auto& con : constraints) {
            switch (con.kind) {
                case Constraint::Kind::MaxDistinctValues:
                    if (con.max_distinct < 1) throw Error("decomposition " + id + ": MAXDISTINCT needs k >= 1");
                    for (const auto& label : con.classes)
                        if (std::find(classes.begin(), classes.end(), label) == classes.end())
                            throw Error("decomposition " + id + ": MAXDISTINCT references undesignated class '" + label + "'");
                    break;
                case Constraint::Kind::FixedValue:
                    if (std::find(classes.begin(), classes.end(), con.cls) == classes.end())
                        throw Error("decomposition " + id + ": FIXEDVALUE references undesignated class '" + con.cls + "'");
                    break;
                case Constraint::Kind::MultiplicityBound:
                    if (con.bound < 0) throw Error("decomposition " + id + ": MULTBOUND needs max >= 0");
                    candidate_index(con.candidate);
                    break;
                case Constraint::Kind::ExcludeSolution:
                    if (con.excluded.size() != candidates.size())
                        throw Error("decomposition " + id + ": EXCLUDE vector length mismatch");
                    break;
            }
        }
    }
};

struct SylowProblem {
    std::string id;
    BigInt group_order;
    long p = 2;
    BigInt sylow_order;
    BigInt must_divide = 0;           // 0: unconstrained
    BigInt must_be_divisible_by = 1;
    BigInt strict_lower_bound = 0;
    bool require_proper = false;      // demand n_p > 1
    long expect_precongruence = -1;   // claimed size of the pre-congruence list; -1 unstated

    void validate() const {
        if (!is_prime(p)) throw Error("sylow " + id + ": " + std::to_string(p) + " is not prime");
        if (group_order < 1) throw Error("sylow " + id + ": group order must be positive");
        BigInt ppart = 1;
        BigInt n = group_order;
        while (n % p == 0) { n /= p; ppart *= p; }
        if (sylow_order != ppart)
            throw Error("sylow " + id + ": stated Sylow order " + sylow_order.str() + " is not the exact " +
                        std::to_string(p) + "-part " + ppart.str() + " of the group order");
    }
};

struct FusionProblem {
    std::string id;
    std::string from;
    std::string to;
    PartialClassMap seed;  // empty: all entries unknown
};

struct LedgerEntry {
    std::string label;
    BigInt count;
};

struct ClassLedger {
    std::string id;
    BigInt target;
    std::vector<LedgerEntry> entries;
};

struct PartialCharacter {
    std::string name;
    std::string head_id;
    std::vector<std::optional<Cyclotomic>> values;

    int unknown_count() const {
        int k = 0;
        for (const auto& v : values)
            if (!v) ++k;
        return k;
    }

    bool known(int c) const { return values.at(static_cast<std::size_t>(c)).has_value(); }

    const Cyclotomic& at(int c) const {
        const auto& v = values.at(static_cast<std::size_t>(c));
        if (!v) throw Error("partial character " + name + ": value at class index " + std::to_string(c) + " unknown");
        return *v;
    }

    ClassFunction to_class_function() const {
        ClassFunction f;
        f.head_id = head_id;
        f.values.reserve(values.size());
        for (const auto& v : values) {
            if (!v) throw Error("partial character " + name + ": still incomplete");
            f.values.push_back(*v);
        }
        return f;
    }

    void validate(const TableHead& head) const {
        if (head_id != head.id) throw Error("partial character " + name + ": head mismatch");
        if (static_cast<int>(values.size()) != head.n_classes())
            throw Error("partial character " + name + ": wrong value count");
        if (values.empty() || !values[0])
            throw Error("partial character " + name + ": degree (class 0) must be known");
    }
};

}  // namespace ctk
