#pragma once

// Global verification: first and second orthogonality relations, norm-one
// checks, membership in an integer character lattice, and the class-count
// ledger.
//
// The lattice coordinatizes class functions over a fixed rational basis
// (cyclotomic values flattened to rational coordinate blocks per class) and
// row-reduces the generator matrix with exact integer elimination, smallest
// nonzero pivot first, lowest index as the tie break.

#include "charfun.hpp"
#include "cyclotomic.hpp"
#include "numeric.hpp"
#include "problems.hpp"
#include "report.hpp"
#include "tables.hpp"

#include <algorithm>
#include <future>
#include <optional>
#include <string>
#include <vector>

namespace ctk {

// First orthogonality <chi_i, chi_j> = delta_ij and second orthogonality
// sum_i chi_i(c) conj(chi_i(c')) = delta_cc' |C(c)|, both exact. Requires a
// square system. Pair checks may run on several threads; the report order
// is independent of the thread count.
inline Report check_orthogonality(const TableHead& head, const std::vector<Character>& irreducibles, int jobs = 1) {
    Report report;
    if (static_cast<int>(irreducibles.size()) != head.n_classes())
        throw Error("check_orthogonality: need a square system (" + std::to_string(irreducibles.size()) +
                    " characters, " + std::to_string(head.n_classes()) + " classes)");
    const int n = head.n_classes();

    struct Cell {
        bool ok;
        std::string check, loc, details;
    };
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) pairs.emplace_back(i, j);

    auto run_first = [&](std::size_t from, std::size_t to) {
        std::vector<Cell> cells;
        for (std::size_t t = from; t < to; ++t) {
            auto [i, j] = pairs[t];
            Cyclotomic s = scalar_product(head, irreducibles[i].fn, irreducibles[j].fn);
            Cyclotomic expected{i == j ? 1 : 0};
            cells.push_back({s == expected, "orthogonality1",
                             irreducibles[i].name + "," + irreducibles[j].name,
                             s == expected ? "ok" : "scalar product " + s.str()});
        }
        return cells;
    };

    std::vector<Cell> first_cells;
    if (jobs <= 1 || pairs.size() < 64) {
        first_cells = run_first(0, pairs.size());
    } else {
        std::size_t chunk = (pairs.size() + jobs - 1) / jobs;
        std::vector<std::future<std::vector<Cell>>> futures;
        for (std::size_t from = 0; from < pairs.size(); from += chunk)
            futures.push_back(std::async(std::launch::async, run_first, from, std::min(from + chunk, pairs.size())));
        for (auto& f : futures) {
            auto cells = f.get();
            first_cells.insert(first_cells.end(), cells.begin(), cells.end());
        }
    }
    long bad = 0;
    for (const auto& c : first_cells)
        if (!c.ok) {
            report.fail(c.check, c.loc, c.details);
            ++bad;
        }
    if (bad == 0) report.pass("orthogonality1", head.id, "all " + std::to_string(pairs.size()) + " pairs");

    bad = 0;
    for (int c = 0; c < n; ++c) {
        for (int c2 = c; c2 < n; ++c2) {
            Cyclotomic s;
            for (int i = 0; i < n; ++i) s += irreducibles[i].fn.values[c] * irreducibles[i].fn.values[c2].conj();
            Cyclotomic expected = c == c2 ? Cyclotomic(BigInt(head.classes[c].centralizer_order)) : Cyclotomic(0);
            if (s != expected) {
                report.fail("orthogonality2", head.classes[c].name + "," + head.classes[c2].name,
                            "column sum " + s.str() + ", expected " + expected.str());
                ++bad;
            }
        }
    }
    if (bad == 0) report.pass("orthogonality2", head.id, "all columns");
    return report;
}

inline bool check_norm_one(const TableHead& head, const Character& chi) {
    Cyclotomic norm = scalar_product(head, chi.fn, chi.fn);
    if (norm != Cyclotomic(1)) return false;
    const Cyclotomic& deg = chi.fn.values.at(0);
    return deg.is_integer() && deg.integer_value() > 0;
}

// ---------------------------------------------------------------------------
// Character lattice
// ---------------------------------------------------------------------------

class CharacterLattice {
public:
    // Generators must have algebraic-integer values (virtual characters).
    static CharacterLattice build(const TableHead& head, std::vector<ClassFunction> generators) {
        CharacterLattice lat;
        lat.head_id_ = head.id;
        lat.n_classes_ = head.n_classes();
        lat.conductors_.assign(static_cast<std::size_t>(head.n_classes()), 1);
        for (const auto& g : generators) {
            if (g.head_id != head.id) throw Error("CharacterLattice: generator lives on " + g.head_id);
            if (static_cast<int>(g.values.size()) != head.n_classes())
                throw Error("CharacterLattice: generator has wrong length");
            for (int c = 0; c < head.n_classes(); ++c) {
                if (!g.values[c].is_integral())
                    throw Error("CharacterLattice: generator value " + g.values[c].str() + " at class " +
                                head.classes[c].name + " is not an algebraic integer");
                lat.conductors_[c] = llcm(lat.conductors_[c], g.values[c].conductor());
            }
        }
        lat.generators_ = std::move(generators);
        std::vector<std::vector<BigInt>> rows;
        for (const auto& g : lat.generators_) rows.push_back(*lat.flatten(g));
        lat.reduce(std::move(rows));
        return lat;
    }

    const std::vector<ClassFunction>& generators() const { return generators_; }
    const std::vector<std::vector<BigInt>>& basis() const { return basis_; }

    // Integer coordinates of f over the triangular basis, or nullopt when f
    // is not in the lattice.
    std::optional<std::vector<BigInt>> membership(const ClassFunction& f) const {
        if (f.head_id != head_id_) throw Error("lattice_membership: head mismatch");
        for (const auto& v : f.values)
            if (!v.is_integral()) throw Error("lattice_membership: values must be algebraic integers");
        auto vec = flatten(f);
        if (!vec) return std::nullopt;  // conductor outside the lattice's value fields
        std::vector<BigInt> coords(basis_.size(), 0);
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            std::size_t pc = pivot_cols_[r];
            if ((*vec)[pc] == 0) continue;
            if ((*vec)[pc] % basis_[r][pc] != 0) return std::nullopt;
            BigInt q = (*vec)[pc] / basis_[r][pc];
            coords[r] = q;
            for (std::size_t j = 0; j < vec->size(); ++j) (*vec)[j] -= q * basis_[r][j];
        }
        for (const auto& x : *vec)
            if (x != 0) return std::nullopt;
        return coords;
    }

    // Reconstruct the class function with the given basis coordinates.
    ClassFunction combine(const std::vector<BigInt>& coords) const {
        if (coords.size() != basis_.size()) throw Error("CharacterLattice: coordinate count mismatch");
        std::vector<BigInt> vec(dim_, 0);
        for (std::size_t r = 0; r < coords.size(); ++r)
            for (std::size_t j = 0; j < dim_; ++j) vec[j] += coords[r] * basis_[r][j];
        return unflatten(vec);
    }

private:
    std::string head_id_;
    int n_classes_ = 0;
    std::vector<long> conductors_;           // per class: basis conductor N_c
    std::vector<ClassFunction> generators_;
    std::vector<std::vector<BigInt>> basis_;  // triangular integer rows
    std::vector<std::size_t> pivot_cols_;
    std::size_t dim_ = 0;

    std::optional<std::vector<BigInt>> flatten(const ClassFunction& f) const {
        std::vector<BigInt> out;
        for (int c = 0; c < n_classes_; ++c) {
            long nc = conductors_[c];
            if (nc % f.values[c].conductor() != 0) return std::nullopt;
            for (const auto& q : f.values[c].power_basis_coords(nc)) {
                if (boost::multiprecision::denominator(q) != 1)
                    throw Error("CharacterLattice: non-integral coordinate");  // guarded by is_integral above
                out.push_back(boost::multiprecision::numerator(q));
            }
        }
        return out;
    }

    ClassFunction unflatten(const std::vector<BigInt>& vec) const {
        ClassFunction f;
        f.head_id = head_id_;
        std::size_t at = 0;
        for (int c = 0; c < n_classes_; ++c) {
            long nc = conductors_[c];
            long block = nc == 1 ? 1 : euler_phi(nc);
            Cyclotomic v;
            for (long j = 0; j < block; ++j)
                if (vec[at + j] != 0) v += Cyclotomic(vec[at + j]) * Cyclotomic::root_of_unity(nc, j);
            f.values.push_back(std::move(v));
            at += static_cast<std::size_t>(block);
        }
        return f;
    }

    void reduce(std::vector<std::vector<BigInt>> rows) {
        dim_ = rows.empty() ? 0 : rows[0].size();
        std::vector<bool> used(rows.size(), false);
        for (std::size_t col = 0; col < dim_; ++col) {
            // Euclidean elimination in this column until one unused row remains nonzero
            while (true) {
                long best = -1;
                int nonzero = 0;
                BigInt best_abs = 0;
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    if (used[r] || rows[r][col] == 0) continue;
                    ++nonzero;
                    BigInt a = abs(rows[r][col]);
                    if (best < 0 || a < best_abs) {
                        best = static_cast<long>(r);
                        best_abs = a;
                    }
                }
                if (nonzero == 0) { best = -1; }
                if (nonzero <= 1) {
                    if (nonzero == 1) {
                        std::size_t r = static_cast<std::size_t>(best);
                        if (rows[r][col] < 0)
                            for (auto& x : rows[r]) x = -x;
                        used[r] = true;
                        basis_.push_back(rows[r]);
                        pivot_cols_.push_back(col);
                    }
                    break;
                }
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    if (used[r] || static_cast<long>(r) == best || rows[r][col] == 0) continue;
                    BigInt q = rows[r][col] / rows[static_cast<std::size_t>(best)][col];
                    for (std::size_t j = 0; j < dim_; ++j) rows[r][j] -= q * rows[static_cast<std::size_t>(best)][j];
                }
            }
        }
        // normalize entries above each pivot for a canonical triangular form
        for (std::size_t r = basis_.size(); r-- > 0;) {
            for (std::size_t r2 = 0; r2 < r; ++r2) {
                std::size_t pc = pivot_cols_[r];
                BigInt piv = basis_[r][pc];
                BigInt q = basis_[r2][pc] / piv;
                if (basis_[r2][pc] % piv != 0 && basis_[r2][pc] < 0) q -= 1;  // floor division
                if (q == 0) continue;
                for (std::size_t j = 0; j < dim_; ++j) basis_[r2][j] -= q * basis_[r][j];
            }
        }
    }
};

inline std::optional<std::vector<BigInt>> lattice_membership(const ClassFunction& f, const CharacterLattice& lat) {
    return lat.membership(f);
}

// ---------------------------------------------------------------------------
// Class-count ledger
// ---------------------------------------------------------------------------

inline Report ledger_check(const ClassLedger& ledger, const TableHead* head = nullptr) {
    Report report;
    BigInt total = 0;
    bool ok = true;
    std::vector<std::string> seen;
    for (const auto& e : ledger.entries) {
        if (e.count < 1) {
            report.fail("ledger", ledger.id + ":" + e.label, "nonpositive count " + e.count.str());
            ok = false;
            continue;
        }
        if (std::find(seen.begin(), seen.end(), e.label) != seen.end()) {
            report.fail("ledger", ledger.id + ":" + e.label, "source counted twice");
            ok = false;
            continue;
        }
        seen.push_back(e.label);
        total += e.count;
        report.info("ledger", ledger.id + ":" + e.label, "+" + e.count.str() + " -> " + total.str());
    }
    if (total == ledger.target)
        report.pass("ledger-total", ledger.id, "running total " + total.str() + " meets target");
    else {
        report.fail("ledger-total", ledger.id, "running total " + total.str() + ", target " + ledger.target.str());
        ok = false;
    }
    if (head) {
        if (BigInt(head->n_classes()) == ledger.target)
            report.pass("ledger-classes", ledger.id, "head has " + std::to_string(head->n_classes()) + " classes");
        else
            report.fail("ledger-classes", ledger.id,
                        "head has " + std::to_string(head->n_classes()) + " classes, target " + ledger.target.str());
        BigInt sum = 0;
        for (int c = 0; c < head->n_classes(); ++c) sum += head->class_size(c);
        if (sum == head->group_order)
            report.pass("class-equation", head->id, "class sizes sum to the group order");
        else
            report.fail("class-equation", head->id,
                        "class sizes sum to " + sum.str() + ", group order " + head->group_order.str());
    }
    (void)ok;
    return report;
}

}  // namespace ctk
