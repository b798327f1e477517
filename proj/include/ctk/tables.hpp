#pragma once

// Class-level data of a finite group: class list with element orders and
// centralizer orders, power maps, characters, and (possibly partial,
// possibly multi-valued) fusion maps between tables.
//
// Partiality is first-class: a power-map or fusion entry is either Unknown,
// a set of candidate class indices, or resolved (a singleton). Refinement
// only ever shrinks candidate sets.

#include "cyclotomic.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ctk {

class MapEntry {
public:
    MapEntry() = default;  // Unknown

    static MapEntry unknown() { return MapEntry(); }

    static MapEntry resolved(int c) { return MapEntry(std::vector<int>{c}); }

    static MapEntry candidates(std::vector<int> cs) {
        if (cs.empty()) throw Error("MapEntry: empty candidate set");
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        return MapEntry(std::move(cs));
    }

    bool is_unknown() const { return !cands_.has_value(); }
    bool is_resolved() const { return cands_ && cands_->size() == 1; }

    int value() const {
        if (!is_resolved()) throw Error("MapEntry: entry not resolved");
        return (*cands_)[0];
    }

    const std::vector<int>& candidate_set() const {
        if (is_unknown()) throw Error("MapEntry: entry unknown");
        return *cands_;
    }

    // Intersect with a candidate list; Unknown is treated as "everything".
    // Throws when the intersection is empty (inconsistent data).
    MapEntry refine(const std::vector<int>& allowed) const {
        std::vector<int> sorted_allowed = allowed;
        std::sort(sorted_allowed.begin(), sorted_allowed.end());
        std::vector<int> out;
        if (is_unknown()) {
            out = sorted_allowed;
            out.erase(std::unique(out.begin(), out.end()), out.end());
        } else {
            std::set_intersection(cands_->begin(), cands_->end(), sorted_allowed.begin(), sorted_allowed.end(),
                                  std::back_inserter(out));
        }
        if (out.empty()) throw Error("MapEntry: refinement produced an empty candidate set");
        return MapEntry(std::move(out));
    }

    bool contains(int c) const { return is_unknown() || std::binary_search(cands_->begin(), cands_->end(), c); }

    friend bool operator==(const MapEntry& a, const MapEntry& b) { return a.cands_ == b.cands_; }
    friend bool operator!=(const MapEntry& a, const MapEntry& b) { return !(a == b); }

private:
    explicit MapEntry(std::vector<int> cs) : cands_(std::move(cs)) {}
    std::optional<std::vector<int>> cands_;
};

using PartialClassMap = std::vector<MapEntry>;

inline bool fully_resolved(const PartialClassMap& m) {
    return std::all_of(m.begin(), m.end(), [](const MapEntry& e) { return e.is_resolved(); });
}

struct ClassRecord {
    std::string name;
    long element_order = 1;
    BigInt centralizer_order;
};

struct TableHead {
    std::string id;
    BigInt group_order;
    std::vector<ClassRecord> classes;
    std::map<long, PartialClassMap> power_maps;  // prime -> entry per class

    int n_classes() const { return static_cast<int>(classes.size()); }

    // Order-only stub: GROUPORDER recorded, no class data. Used for tables
    // that enter a computation only through their order (e.g. suborbit
    // stabilizers too large to bundle).
    bool is_stub() const { return classes.empty(); }

    BigInt class_size(int c) const {
        const ClassRecord& rec = classes.at(static_cast<std::size_t>(c));
        return exact_div(group_order, rec.centralizer_order, ("class_size(" + rec.name + ")").c_str());
    }

    int identity_class() const { return 0; }

    const MapEntry& power_entry(long p, int c) const {
        auto it = power_maps.find(p);
        if (it == power_maps.end()) throw Error(id + ": no power map for prime " + std::to_string(p));
        return it->second.at(static_cast<std::size_t>(c));
    }

    // Class of g^p for resolved entries (throws otherwise).
    int power_class(long p, int c) const {
        const MapEntry& e = power_entry(p, c);
        if (!e.is_resolved())
            throw Error(id + ": power map " + std::to_string(p) + " unresolved at class " + classes[c].name);
        return e.value();
    }

    // Class of g^m for arbitrary m >= 0, via the prime power maps.
    int power_class_general(long m, int c) const {
        long n = classes.at(static_cast<std::size_t>(c)).element_order;
        m %= n;
        if (m < 0) m += n;
        if (m == 0) return identity_class();
        int cur = c;
        long rest = m;
        for (long p = 2; p * p <= rest; ++p)
            while (rest % p == 0) {
                cur = power_class(p, cur);
                rest /= p;
            }
        if (rest > 1) cur = power_class(rest, cur);
        return cur;
    }

    void validate() const {
        if (group_order < 1) throw Error(id + ": group order must be positive");
        if (is_stub()) return;
        if (classes[0].element_order != 1)
            throw Error(id + ": class 0 (" + classes[0].name + ") must have element order 1");
        if (classes[0].centralizer_order != group_order)
            throw Error(id + ": identity centralizer " + classes[0].centralizer_order.str() +
                        " differs from group order " + group_order.str());
        BigInt total = 0;
        for (int c = 0; c < n_classes(); ++c) {
            const ClassRecord& rec = classes[c];
            if (rec.element_order < 1) throw Error(id + ": class " + rec.name + " has nonpositive element order");
            if (rec.centralizer_order < 1) throw Error(id + ": class " + rec.name + " has nonpositive centralizer order");
            if (rec.element_order > rec.centralizer_order)
                throw Error(id + ": class " + rec.name + " element order exceeds centralizer order");
            if (!divides(rec.centralizer_order, group_order))
                throw Error(id + ": centralizer order of class " + rec.name + " does not divide the group order");
            total += class_size(c);
        }
        if (total != group_order)
            throw Error(id + ": class equation fails: sizes sum to " + total.str() + ", group order is " +
                        group_order.str());
        for (const auto& [p, pm] : power_maps) {
            if (!is_prime(p)) throw Error(id + ": power map for non-prime " + std::to_string(p));
            if (static_cast<int>(pm.size()) != n_classes())
                throw Error(id + ": power map " + std::to_string(p) + " has wrong length");
            for (int c = 0; c < n_classes(); ++c) {
                const MapEntry& e = pm[c];
                if (e.is_unknown()) continue;
                long expected = classes[c].element_order / lgcd(classes[c].element_order, p);
                for (int img : e.candidate_set()) {
                    if (img < 0 || img >= n_classes())
                        throw Error(id + ": power map " + std::to_string(p) + " image out of range at " + classes[c].name);
                    if (classes[img].element_order != expected)
                        throw Error(id + ": power map " + std::to_string(p) + " at class " + classes[c].name +
                                    " violates order arithmetic (expected order " + std::to_string(expected) +
                                    ", candidate " + classes[img].name + ")");
                    if (!divides(classes[c].centralizer_order, classes[img].centralizer_order))
                        throw Error(id + ": power map " + std::to_string(p) + " at class " + classes[c].name +
                                    " violates centralizer divisibility toward " + classes[img].name);
                }
            }
        }
    }

    int class_index(const std::string& name) const {
        for (int c = 0; c < n_classes(); ++c)
            if (classes[c].name == name) return c;
        throw Error(id + ": no class named '" + name + "'");
    }
};

struct ClassFunction {
    std::string head_id;
    std::vector<Cyclotomic> values;

    const Cyclotomic& at(int c) const { return values.at(static_cast<std::size_t>(c)); }

    friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
        return a.head_id == b.head_id && a.values == b.values;
    }
};

struct Character {
    std::string name;
    ClassFunction fn;
    bool claimed_irreducible = false;

    const Cyclotomic& degree() const { return fn.values.at(0); }

    void validate(const TableHead& head) const {
        if (fn.head_id != head.id) throw Error("character " + name + ": head mismatch");
        if (static_cast<int>(fn.values.size()) != head.n_classes())
            throw Error("character " + name + ": expected " + std::to_string(head.n_classes()) + " values, got " +
                        std::to_string(fn.values.size()));
        if (!fn.values.empty()) {
            const Cyclotomic& deg = fn.values[0];
            if (!deg.is_integer() || deg.integer_value() < 1)
                throw Error("character " + name + ": degree " + deg.str() + " is not a positive integer");
        }
    }
};

struct FusionMap {
    std::string from_head;
    std::string to_head;
    PartialClassMap entries;

    bool is_total() const { return fully_resolved(entries); }

    int image(int h) const {
        const MapEntry& e = entries.at(static_cast<std::size_t>(h));
        if (!e.is_resolved())
            throw Error("fusion " + from_head + " -> " + to_head + ": unresolved at class index " + std::to_string(h));
        return e.value();
    }

    // fusion(h^p) = fusion(h)^p wherever both power maps are resolved
    bool commutes_with_power_maps(const TableHead& sub, const TableHead& big) const {
        for (int h = 0; h < sub.n_classes(); ++h) {
            const MapEntry& eh = entries.at(static_cast<std::size_t>(h));
            if (!eh.is_resolved()) continue;
            for (const auto& [p, pm] : sub.power_maps) {
                if (!pm[h].is_resolved()) continue;
                auto bit = big.power_maps.find(p);
                if (bit == big.power_maps.end()) continue;
                const MapEntry& eg = bit->second[eh.value()];
                if (!eg.is_resolved()) continue;
                const MapEntry& ehp = entries.at(static_cast<std::size_t>(pm[h].value()));
                if (ehp.is_resolved() && ehp.value() != eg.value()) return false;
            }
        }
        return true;
    }

    void validate(const TableHead& sub, const TableHead& big) const {
        if (sub.id != from_head || big.id != to_head)
            throw Error("fusion " + from_head + " -> " + to_head + ": table mismatch");
        if (static_cast<int>(entries.size()) != sub.n_classes())
            throw Error("fusion " + from_head + " -> " + to_head + ": wrong entry count");
        if (!entries.empty() && !entries[0].is_unknown() && !(entries[0].is_resolved() && entries[0].value() == 0))
            throw Error("fusion " + from_head + " -> " + to_head + ": identity must map to identity");
        for (int h = 0; h < sub.n_classes(); ++h) {
            const MapEntry& e = entries[h];
            if (e.is_unknown()) continue;
            for (int g : e.candidate_set()) {
                if (g < 0 || g >= big.n_classes())
                    throw Error("fusion " + from_head + " -> " + to_head + ": image out of range at " +
                                sub.classes[h].name);
                if (big.classes[g].element_order != sub.classes[h].element_order)
                    throw Error("fusion " + from_head + " -> " + to_head + ": candidate " + big.classes[g].name +
                                " for class " + sub.classes[h].name + " does not preserve element order");
                if (!divides(sub.classes[h].centralizer_order, big.classes[g].centralizer_order))
                    throw Error("fusion " + from_head + " -> " + to_head + ": centralizer of " + sub.classes[h].name +
                                " does not divide centralizer of candidate " + big.classes[g].name);
            }
        }
    }
};

}  // namespace ctk
