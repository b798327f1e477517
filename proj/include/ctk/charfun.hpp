#pragma once

// Class-function arithmetic: scalar products, restriction and induction
// along resolved fusions, induction from cyclic subgroups located through
// the power maps, permutation characters assembled one suborbit at a time,
// and centralizer orders recovered from permutation-character values by
// Frobenius reciprocity.
//
// Division is exact throughout; a non-integer where an integer is required
// is an error, never a rounding.

#include "cyclotomic.hpp"
#include "numeric.hpp"
#include "tables.hpp"

#include <string>
#include <vector>

namespace ctk {

inline Cyclotomic scalar_product(const TableHead& head, const ClassFunction& f, const ClassFunction& g) {
    if (f.head_id != head.id || g.head_id != head.id)
        throw Error("scalar_product: head mismatch (" + f.head_id + ", " + g.head_id + " on " + head.id + ")");
    if (static_cast<int>(f.values.size()) != head.n_classes() || static_cast<int>(g.values.size()) != head.n_classes())
        throw Error("scalar_product: value count mismatch on " + head.id);
    Cyclotomic sum;
    for (int c = 0; c < head.n_classes(); ++c) {
        if (f.values[c].is_zero() || g.values[c].is_zero()) continue;
        Cyclotomic term = f.values[c] * g.values[c].conj();
        term *= Cyclotomic(BigRat(head.class_size(c)));
        sum += term;
    }
    sum *= Cyclotomic(BigRat(1, head.group_order));
    return sum;
}

inline ClassFunction trivial_character(const TableHead& head) {
    ClassFunction f;
    f.head_id = head.id;
    f.values.assign(static_cast<std::size_t>(head.n_classes()), Cyclotomic(1));
    return f;
}

inline ClassFunction regular_character(const TableHead& head) {
    ClassFunction f;
    f.head_id = head.id;
    f.values.assign(static_cast<std::size_t>(head.n_classes()), Cyclotomic(0));
    f.values[0] = Cyclotomic(BigInt(head.group_order));
    return f;
}

// Restriction of f on G to H along a fully resolved fusion H -> G.
inline ClassFunction restrict_along(const ClassFunction& f, const FusionMap& fus, const TableHead& sub,
                                    const TableHead& big) {
    if (f.head_id != big.id) throw Error("restrict: class function lives on " + f.head_id + ", not " + big.id);
    fus.validate(sub, big);
    if (!fus.is_total()) throw Error("restrict: fusion " + fus.from_head + " -> " + fus.to_head + " is not resolved");
    ClassFunction r;
    r.head_id = sub.id;
    r.values.reserve(static_cast<std::size_t>(sub.n_classes()));
    for (int h = 0; h < sub.n_classes(); ++h) r.values.push_back(f.values.at(fus.image(h)));
    return r;
}

// Induction of f on H to G along a fully resolved fusion H -> G:
//   (Ind f)(g) = |C_G(g)| * sum over h with fus(h) = g of f(h)/|C_H(h)|.
inline ClassFunction induce_along(const ClassFunction& f, const FusionMap& fus, const TableHead& sub,
                                  const TableHead& big) {
    if (f.head_id != sub.id) throw Error("induce: class function lives on " + f.head_id + ", not " + sub.id);
    fus.validate(sub, big);
    if (!fus.is_total()) throw Error("induce: fusion " + fus.from_head + " -> " + fus.to_head + " is not resolved");
    ClassFunction r;
    r.head_id = big.id;
    r.values.assign(static_cast<std::size_t>(big.n_classes()), Cyclotomic(0));
    for (int h = 0; h < sub.n_classes(); ++h) {
        if (f.values[h].is_zero()) continue;
        Cyclotomic term = f.values[h];
        term *= Cyclotomic(BigRat(1, sub.classes[h].centralizer_order));
        r.values[fus.image(h)] += term;
    }
    for (int g = 0; g < big.n_classes(); ++g) r.values[g] *= Cyclotomic(BigRat(big.classes[g].centralizer_order));
    return r;
}

// The order(c) inductions of the linear characters of the cyclic subgroup
// generated by a class-c representative. The fusion of <g> into G is read
// off the power maps; unresolved maps along the way are an error.
inline std::vector<ClassFunction> induce_from_cyclic(const TableHead& head, int c) {
    long n = head.classes.at(static_cast<std::size_t>(c)).element_order;
    std::vector<int> class_of_power(static_cast<std::size_t>(n));
    for (long m = 0; m < n; ++m) class_of_power[m] = head.power_class_general(m, c);

    std::vector<ClassFunction> result;
    result.reserve(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) {
        ClassFunction f;
        f.head_id = head.id;
        f.values.assign(static_cast<std::size_t>(head.n_classes()), Cyclotomic(0));
        for (long m = 0; m < n; ++m)
            f.values[class_of_power[m]] += Cyclotomic::root_of_unity(n, (j * m) % n);
        for (int g = 0; g < head.n_classes(); ++g)
            f.values[g] *= Cyclotomic(BigRat(head.classes[g].centralizer_order, n));
        result.push_back(std::move(f));
    }
    return result;
}

struct SuborbitDatum {
    const TableHead* stabilizer = nullptr;
    FusionMap fusion;  // stabilizer -> acting group H
    BigInt orbit_length;
};

// Permutation character of G on the cosets of H, restricted to H, assembled
// one suborbit at a time as the sum of trivial characters induced from the
// suborbit stabilizers.
inline ClassFunction perm_char_restricted(const std::vector<SuborbitDatum>& suborbits, const TableHead& H) {
    ClassFunction sum;
    sum.head_id = H.id;
    sum.values.assign(static_cast<std::size_t>(H.n_classes()), Cyclotomic(0));
    for (const auto& sub : suborbits) {
        if (!sub.stabilizer) throw Error("perm_char_restricted: missing stabilizer table");
        BigInt expected = exact_div(H.group_order, sub.stabilizer->group_order, "perm_char_restricted(orbit length)");
        if (expected != sub.orbit_length)
            throw Error("perm_char_restricted: orbit length " + sub.orbit_length.str() + " for stabilizer " +
                        sub.stabilizer->id + " should be " + expected.str());
        ClassFunction ind = induce_along(trivial_character(*sub.stabilizer), sub.fusion, *sub.stabilizer, H);
        for (int g = 0; g < H.n_classes(); ++g) sum.values[g] += ind.values[g];
    }
    return sum;
}

// Given the value v of the permutation character 1_H^G at a G-class g and
// the complete list of (H-class, |C_H|) pairs fusing to g, recover |C_G(g)|
// from v = |C_G(g)| * sum(1/|C_H(h_i)|). A non-integral result means the
// fusion hypothesis is wrong.
inline BigInt centralizer_from_perm_char(const BigInt& v, const std::vector<std::pair<int, BigInt>>& fused) {
    if (v < 1) throw Error("centralizer_from_perm_char: permutation character value must be a positive integer");
    if (fused.empty()) throw Error("centralizer_from_perm_char: fused class list is empty");
    BigRat s(0);
    for (const auto& [h, ch] : fused) {
        (void)h;
        if (ch < 1) throw Error("centralizer_from_perm_char: centralizer orders must be positive");
        s += BigRat(1, ch);
    }
    BigRat c = BigRat(v) / s;
    if (boost::multiprecision::denominator(c) != 1)
        throw Error("centralizer_from_perm_char: no integral centralizer order (got " + c.str() +
                    "); wrong fusion hypothesis");
    return boost::multiprecision::numerator(c);
}

}  // namespace ctk
