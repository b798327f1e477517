#pragma once

// Filling unknown character values:
//   * defect-0 vanishing: when the degree carries the full p-part of |G|,
//     the value is 0 on every p-singular class,
//   * congruence filling: on rational classes, v = chi(c) is a rational
//     integer with v = chi(c^p) mod p and v^2 < |C(c)| for each usable
//     prime p | order(c); the candidate sets are intersected,
//   * constituent solving: unique nonnegative-integer multiplicities from
//     the values on a class subset where the constituent matrix has full
//     column rank,
//   * orthogonality: a single remaining unknown is solved from the scalar
//     product with the trivial character.
//
// The pipeline runs defect-0, congruence, constituent (when subgroup data
// is supplied), and orthogonality last. Every fill is attributed to its
// rule in the report.

#include "charfun.hpp"
#include "cyclotomic.hpp"
#include "numeric.hpp"
#include "problems.hpp"
#include "tables.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ctk {

struct FillEvent {
    std::string rule;      // "defect0(p)", "congruence", "orthogonality", "constituent"
    std::string cls;       // class name
    std::string detail;    // filled value, candidate set, or warning text
    bool warning = false;
};

struct FillReport {
    std::vector<FillEvent> events;

    void fill(const std::string& rule, const std::string& cls, const std::string& value) {
        events.push_back({rule, cls, value, false});
    }
    void note(const std::string& rule, const std::string& cls, const std::string& text, bool warning = false) {
        events.push_back({rule, cls, text, warning});
    }
};

namespace detail {

// A class is certified rational when every Galois conjugate c^k,
// gcd(k, order) = 1, resolves to c itself through the power maps.
inline bool class_certified_rational(const TableHead& head, int c) {
    long n = head.classes[c].element_order;
    for (long k = 2; k < n; ++k) {
        if (lgcd(k, n) != 1) continue;
        try {
            if (head.power_class_general(k, c) != c) return false;
        } catch (const Error&) {
            return false;  // unresolved power map: cannot certify
        }
    }
    return true;
}

}  // namespace detail

// Congruence filling: for each unknown value on a certified-rational class,
// intersect over primes p | order(c) the sets
//   { v integer : v = chi(c^p) mod p, v^2 < |C(c)| }.
// A singleton fills the value; an empty intersection is an inconsistency.
inline PartialCharacter congruence_fill(const PartialCharacter& chi, const TableHead& head, FillReport& report) {
    chi.validate(head);
    PartialCharacter out = chi;
    for (int c = 0; c < head.n_classes(); ++c) {
        if (out.known(c)) continue;
        const ClassRecord& rec = head.classes[c];
        if (!detail::class_certified_rational(head, c)) {
            report.note("congruence", rec.name, "skipped: class not certified rational");
            continue;
        }
        std::optional<std::vector<BigInt>> candidates;
        for (long p : prime_factors(rec.element_order)) {
            int cp;
            try {
                cp = head.power_class(p, c);
            } catch (const Error&) {
                continue;  // unresolved map for this prime
            }
            if (!out.known(cp)) continue;
            const Cyclotomic& vp = out.at(cp);
            if (!vp.is_integer()) continue;
            BigInt r = vp.integer_value() % p;
            if (r < 0) r += p;
            BigInt bound = isqrt_floor(rec.centralizer_order - 1);  // |v| <= bound  <=>  v^2 < |C|
            std::vector<BigInt> vs;
            BigInt v = r - ((r + bound) / p) * p;  // smallest value >= -bound congruent to r
            for (; v <= bound; v += p)
                if (v >= -bound) vs.push_back(v);
            if (!candidates) {
                candidates = vs;
            } else {
                std::vector<BigInt> merged;
                std::set_intersection(candidates->begin(), candidates->end(), vs.begin(), vs.end(),
                                      std::back_inserter(merged));
                candidates = merged;
            }
        }
        if (!candidates) {
            report.note("congruence", rec.name, "no usable prime (values at p-th powers unknown or irrational)");
            continue;
        }
        if (candidates->empty())
            throw Error("congruence_fill: empty candidate set at class " + rec.name + "; inputs inconsistent");
        if (candidates->size() == 1) {
            out.values[c] = Cyclotomic((*candidates)[0]);
            report.fill("congruence", rec.name, (*candidates)[0].str());
        } else {
            std::ostringstream os;
            os << "candidates";
            for (const auto& v : *candidates) os << " " << v.str();
            report.note("congruence", rec.name, os.str());
        }
    }
    return out;
}

// Defect-0 vanishing: if v_p(degree) = v_p(|G|), the character vanishes on
// every class of order divisible by p. Fails loudly when a known nonzero
// value contradicts the rule.
inline PartialCharacter defect_zero_fill(const PartialCharacter& chi, const TableHead& head, long p,
                                         FillReport& report) {
    chi.validate(head);
    PartialCharacter out = chi;
    const Cyclotomic& deg = out.at(0);
    if (!deg.is_integer()) throw Error("defect_zero_fill: degree must be a rational integer");
    if (head.group_order % p != 0) {
        report.note("defect0(" + std::to_string(p) + ")", "-", "no-op: prime does not divide the group order");
        return out;
    }
    if (valuation(deg.integer_value(), p) != valuation(head.group_order, p)) {
        report.note("defect0(" + std::to_string(p) + ")", "-",
                    "no-op: degree does not carry the full " + std::to_string(p) + "-part of the group order");
        return out;
    }
    for (int c = 0; c < head.n_classes(); ++c) {
        if (head.classes[c].element_order % p != 0) continue;
        if (out.known(c)) {
            if (!out.at(c).is_zero())
                throw Error("defect_zero_fill: class " + head.classes[c].name + " carries nonzero value " +
                            out.at(c).str() + " but lies in a defect-0 block for p=" + std::to_string(p));
            continue;
        }
        out.values[c] = Cyclotomic(0);
        report.fill("defect0(" + std::to_string(p) + ")", head.classes[c].name, "0");
    }
    return out;
}

// Orthogonality filling: with exactly one unknown left and chi orthogonal
// to the trivial character, solve sum_c |class c| * chi(c) = 0 for it.
inline PartialCharacter orthogonality_fill(const PartialCharacter& chi, const TableHead& head, FillReport& report) {
    chi.validate(head);
    if (chi.unknown_count() != 1)
        throw Error("orthogonality_fill: expected exactly one unknown value, found " +
                    std::to_string(chi.unknown_count()));
    PartialCharacter out = chi;
    int missing = -1;
    Cyclotomic sum;
    for (int c = 0; c < head.n_classes(); ++c) {
        if (!out.known(c)) {
            missing = c;
            continue;
        }
        sum += out.at(c) * Cyclotomic(BigRat(head.class_size(c)));
    }
    Cyclotomic v = -sum * Cyclotomic(BigRat(1, head.class_size(missing)));
    const std::string& cls = head.classes[missing].name;
    if (!v.is_integral())
        report.note("orthogonality", cls, "solved value " + v.str() + " is not an algebraic integer", true);
    if (v.is_integer()) {
        BigInt iv = v.integer_value();
        if (iv * iv >= head.classes[missing].centralizer_order)
            report.note("orthogonality", cls,
                        "suspicious: value " + iv.str() + " squared is not below the centralizer order " +
                            head.classes[missing].centralizer_order.str(),
                        true);
    }
    out.values[missing] = v;
    report.fill("orthogonality", cls, v.str());
    return out;
}

struct ConstituentResult {
    std::vector<BigInt> multiplicities;
    ClassFunction completed;
};

// Unique nonnegative-integer multiplicities of the irr_H consistent with
// the known values on known_classes; requires the constituent value matrix
// to have full column rank over the rationals.
inline ConstituentResult constituent_fill(const PartialCharacter& chi, const std::vector<Character>& irr,
                                          const std::vector<int>& known_classes, const TableHead& head,
                                          FillReport& report) {
    chi.validate(head);
    if (irr.empty()) throw Error("constituent_fill: no constituents given");
    for (int c : known_classes)
        if (!chi.known(c))
            throw Error("constituent_fill: class " + head.classes[c].name + " is listed as known but has no value");

    // flatten each equation row over a per-class power basis
    std::vector<std::vector<BigRat>> rows;  // coefficients: one column per constituent, last = rhs
    for (int c : known_classes) {
        long big_n = 1;
        for (const auto& ch : irr) big_n = llcm(big_n, ch.fn.values.at(c).conductor());
        big_n = llcm(big_n, chi.at(c).conductor());
        long dim = big_n == 1 ? 1 : euler_phi(big_n);
        std::vector<std::vector<BigRat>> cols;
        for (const auto& ch : irr) cols.push_back(ch.fn.values.at(c).power_basis_coords(big_n));
        std::vector<BigRat> rhs = chi.at(c).power_basis_coords(big_n);
        for (long d = 0; d < dim; ++d) {
            std::vector<BigRat> row;
            for (const auto& col : cols) row.push_back(col[d]);
            row.push_back(rhs[d]);
            rows.push_back(std::move(row));
        }
    }

    const std::size_t k = irr.size();
    // Gaussian elimination
    std::size_t rank = 0;
    std::vector<long> pivot_col;
    for (std::size_t col = 0; col < k && rank < rows.size(); ++col) {
        std::size_t pr = rank;
        while (pr < rows.size() && rows[pr][col] == 0) ++pr;
        if (pr == rows.size()) continue;
        std::swap(rows[rank], rows[pr]);
        BigRat piv = rows[rank][col];
        for (std::size_t j = col; j <= k; ++j) rows[rank][j] /= piv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            BigRat f = rows[r][col];
            for (std::size_t j = col; j <= k; ++j) rows[r][j] -= f * rows[rank][j];
        }
        pivot_col.push_back(static_cast<long>(col));
        ++rank;
    }
    if (rank < k)
        throw Error("constituent_fill: constituent matrix has rank " + std::to_string(rank) + " < " +
                    std::to_string(k) + " on the known classes");
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (rows[r][k] != 0) throw Error("constituent_fill: known values are inconsistent with the constituents");

    std::vector<BigInt> mult(k);
    for (std::size_t r = 0; r < rank; ++r) {
        BigRat v = rows[r][k];
        if (boost::multiprecision::denominator(v) != 1)
            throw Error("constituent_fill: multiplicity of " + irr[pivot_col[r]].name + " is non-integral (" +
                        v.str() + ")");
        BigInt m = boost::multiprecision::numerator(v);
        if (m < 0)
            throw Error("constituent_fill: multiplicity of " + irr[pivot_col[r]].name + " is negative (" + m.str() +
                        ")");
        mult[pivot_col[r]] = m;
    }

    ClassFunction completed;
    completed.head_id = head.id;
    completed.values.assign(static_cast<std::size_t>(head.n_classes()), Cyclotomic(0));
    for (std::size_t i = 0; i < k; ++i) {
        if (mult[i] == 0) continue;
        for (int c = 0; c < head.n_classes(); ++c)
            completed.values[c] += irr[i].fn.values[c] * Cyclotomic(BigRat(mult[i]));
    }
    // sanity: completion agrees with every known value, not only the solved subset
    for (int c = 0; c < head.n_classes(); ++c)
        if (chi.known(c) && completed.values[c] != chi.at(c))
            throw Error("constituent_fill: completed restriction disagrees with the known value at class " +
                        head.classes[c].name);
    std::ostringstream os;
    for (std::size_t i = 0; i < k; ++i) {
        if (i) os << " ";
        os << mult[i].str();
    }
    report.note("constituent", "-", "multiplicities " + os.str());
    return {std::move(mult), std::move(completed)};
}

// defect-0 over all primes, then congruence, then (last) orthogonality when
// exactly one unknown remains.
inline PartialCharacter run_fill_pipeline(const PartialCharacter& chi, const TableHead& head, FillReport& report) {
    PartialCharacter cur = chi;
    for (const auto& [p, e] : factorize(head.group_order)) {
        (void)e;
        long lp = p.convert_to<long>();
        const Cyclotomic& deg = cur.at(0);
        if (deg.is_integer() && valuation(deg.integer_value(), lp) == valuation(head.group_order, lp))
            cur = defect_zero_fill(cur, head, lp, report);
    }
    cur = congruence_fill(cur, head, report);
    if (cur.unknown_count() == 1) cur = orthogonality_fill(cur, head, report);
    return cur;
}

}  // namespace ctk
