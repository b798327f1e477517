#include "ctk/charfun.hpp"
#include "ctk/ctb.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

using namespace ctk;

namespace {

const std::string kFixtures = CTK_FIXTURES_DIR;

struct Pool {
    CtbFile file;

    Pool() {
        for (const char* name : {"c2.ctb", "c3.ctb", "c4.ctb", "c5.ctb", "c6.ctb", "c7.ctb", "s3.ctb", "d8.ctb",
                                 "q8.ctb", "a4.ctb", "s4.ctb", "a5.ctb", "s5.ctb"}) {
            CtbFile f = parse_ctb_file(kFixtures + "/" + std::string(name));
            for (auto& t : f.tables) file.tables.push_back(std::move(t));
        }
        CtbFile fus = parse_ctb_file(kFixtures + "/fusions.ctb");
        file.fusions = std::move(fus.fusions);
    }

    const TableBundle& table(const std::string& id) const {
        const TableBundle* t = file.find_table(id);
        REQUIRE(t != nullptr);
        return *t;
    }

    const FusionMap& fusion(const std::string& from, const std::string& to) const {
        const FusionMap* f = file.find_fusion(from, to);
        REQUIRE(f != nullptr);
        return *f;
    }
};

Pool& pool() {
    static Pool p;
    return p;
}

ClassFunction cf(const std::string& head_id, std::vector<std::string> literals) {
    ClassFunction f;
    f.head_id = head_id;
    for (const auto& lit : literals) f.values.push_back(parse_cyclotomic(lit));
    return f;
}

}  // namespace

TEST_CASE("scalar products on S3") {
    const TableHead& s3 = pool().table("S3").head;
    CHECK(scalar_product(s3, trivial_character(s3), trivial_character(s3)) == Cyclotomic(1));
    ClassFunction chi3 = cf("S3", {"2", "0", "-1"});
    CHECK(scalar_product(s3, chi3, chi3) == Cyclotomic(1));
    ClassFunction perm = cf("S3", {"3", "1", "0"});
    CHECK(scalar_product(s3, perm, trivial_character(s3)) == Cyclotomic(1));
    CHECK(scalar_product(s3, perm, perm) == Cyclotomic(2));
    ClassFunction wrong = cf("S4", {"1", "1", "1", "1", "1"});
    CHECK_THROWS_AS(scalar_product(s3, perm, wrong), Error);
}

TEST_CASE("scalar product of the trivial character is 1 on every fixture") {
    for (const auto& bundle : pool().file.tables) {
        const TableHead& head = bundle.head;
        CHECK(scalar_product(head, trivial_character(head), trivial_character(head)) == Cyclotomic(1));
    }
}

TEST_CASE("restriction") {
    const TableBundle& s3 = pool().table("S3");
    const TableBundle& c3 = pool().table("C3");
    ClassFunction chi3 = s3.characters[2].fn;

    FusionMap identity;
    identity.from_head = "S3";
    identity.to_head = "S3";
    for (int c = 0; c < 3; ++c) identity.entries.push_back(MapEntry::resolved(c));
    CHECK(restrict_along(chi3, identity, s3.head, s3.head) == chi3);

    ClassFunction res = restrict_along(chi3, pool().fusion("C3", "S3"), c3.head, s3.head);
    CHECK(res == cf("C3", {"2", "-1", "-1"}));

    FusionMap partial = pool().fusion("C3", "S3");
    partial.entries[2] = MapEntry::unknown();
    CHECK_THROWS_AS(restrict_along(chi3, partial, c3.head, s3.head), Error);
}

TEST_CASE("induction examples") {
    const TableBundle& s3 = pool().table("S3");
    const TableBundle& c2 = pool().table("C2");
    const TableBundle& c3 = pool().table("C3");

    FusionMap identity;
    identity.from_head = "S3";
    identity.to_head = "S3";
    for (int c = 0; c < 3; ++c) identity.entries.push_back(MapEntry::resolved(c));
    CHECK(induce_along(trivial_character(s3.head), identity, s3.head, s3.head) == trivial_character(s3.head));

    ClassFunction ind = induce_along(trivial_character(c2.head), pool().fusion("C2", "S3"), c2.head, s3.head);
    CHECK(ind == cf("S3", {"3", "1", "0"}));

    // inducing the nontrivial linear characters of C3 gives the 2-dimensional
    ClassFunction lin = cf("C3", {"1", "E(3)", "E(3)^2"});
    CHECK(induce_along(lin, pool().fusion("C3", "S3"), c3.head, s3.head) == cf("S3", {"2", "0", "-1"}));
}

TEST_CASE("induction degree is index times degree") {
    const TableBundle& s5 = pool().table("S5");
    const TableBundle& s4 = pool().table("S4");
    const FusionMap& fus = pool().fusion("S4", "S5");
    for (const auto& ch : s4.characters) {
        ClassFunction ind = induce_along(ch.fn, fus, s4.head, s5.head);
        BigInt index = exact_div(s5.head.group_order, s4.head.group_order, "index");
        CHECK(ind.values[0] == Cyclotomic(index) * ch.fn.values[0]);
    }
}

TEST_CASE("Frobenius reciprocity across all bundled pairs") {
    for (const auto& fus : pool().file.fusions) {
        const TableBundle& sub = pool().table(fus.from_head);
        const TableBundle& big = pool().table(fus.to_head);
        for (const auto& f : sub.characters) {
            ClassFunction ind = induce_along(f.fn, fus, sub.head, big.head);
            for (const auto& chi : big.characters) {
                Cyclotomic lhs = scalar_product(big.head, ind, chi.fn);
                Cyclotomic rhs = scalar_product(sub.head, f.fn, restrict_along(chi.fn, fus, sub.head, big.head));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("induction from cyclic subgroups") {
    const TableBundle& s3 = pool().table("S3");

    // from the identity class: the single induction is the regular character
    auto from_identity = induce_from_cyclic(s3.head, 0);
    REQUIRE(from_identity.size() == 1);
    CHECK(from_identity[0] == regular_character(s3.head));

    // from the 3a class: the three inductions sum to the induction of the
    // regular character of C3
    auto from_3a = induce_from_cyclic(s3.head, 2);
    REQUIRE(from_3a.size() == 3);
    ClassFunction total;
    total.head_id = "S3";
    total.values.assign(3, Cyclotomic(0));
    for (const auto& f : from_3a)
        for (int c = 0; c < 3; ++c) total.values[c] += f.values[c];
    const TableBundle& c3 = pool().table("C3");
    ClassFunction reg_ind = induce_along(regular_character(c3.head), pool().fusion("C3", "S3"), c3.head, s3.head);
    CHECK(total == reg_ind);
    // trivial linear character: 1_{C3}^{S3} = trivial + sign
    CHECK(from_3a[0] == cf("S3", {"2", "0", "2"}));
    // nontrivial linear characters induce the 2-dimensional irreducible
    CHECK(from_3a[1] == cf("S3", {"2", "0", "-1"}));
    CHECK(from_3a[2] == cf("S3", {"2", "0", "-1"}));

    // sum of the n inductions = induction of the regular character, on A5
    const TableBundle& a5 = pool().table("A5");
    for (int c = 0; c < a5.head.n_classes(); ++c) {
        auto inds = induce_from_cyclic(a5.head, c);
        long n = a5.head.classes[c].element_order;
        REQUIRE(static_cast<long>(inds.size()) == n);
        ClassFunction sum;
        sum.head_id = "A5";
        sum.values.assign(5, Cyclotomic(0));
        for (const auto& f : inds)
            for (int g = 0; g < 5; ++g) sum.values[g] += f.values[g];
        for (int g = 0; g < 5; ++g) {
            if (g == 0)
                CHECK(sum.values[0] == Cyclotomic(BigInt(a5.head.group_order)));
            else
                CHECK(sum.values[g].is_zero());
        }
    }
}

TEST_CASE("induced characters are characters: reciprocity against irreducibles") {
    // multiplicities of irreducibles in cyclic inductions are nonnegative integers
    const TableBundle& s4 = pool().table("S4");
    for (int c = 0; c < s4.head.n_classes(); ++c) {
        for (const auto& ind : induce_from_cyclic(s4.head, c)) {
            for (const auto& chi : s4.characters) {
                Cyclotomic m = scalar_product(s4.head, ind, chi.fn);
                CHECK(m.is_integer());
                CHECK(m.integer_value() >= 0);
            }
        }
    }
}

TEST_CASE("permutation character of S4 on 4 points, restricted to S3") {
    const TableBundle& s3 = pool().table("S3");
    const TableBundle& c2 = pool().table("C2");

    FusionMap identity;
    identity.from_head = "S3";
    identity.to_head = "S3";
    for (int c = 0; c < 3; ++c) identity.entries.push_back(MapEntry::resolved(c));

    SuborbitDatum fixed{&s3.head, identity, BigInt(1)};
    SuborbitDatum moved{&c2.head, pool().fusion("C2", "S3"), BigInt(3)};

    ClassFunction pc = perm_char_restricted({fixed, moved}, s3.head);
    CHECK(pc == cf("S3", {"4", "2", "1"}));

    // restriction route: the natural permutation character of S4 is (4,2,0,1,0)
    const TableBundle& s4 = pool().table("S4");
    ClassFunction nat = cf("S4", {"4", "2", "0", "1", "0"});
    CHECK(restrict_along(nat, pool().fusion("S3", "S4"), s3.head, s4.head) == pc);

    // multiplicity of the trivial character equals the number of suborbits
    CHECK(scalar_product(s3.head, pc, trivial_character(s3.head)) == Cyclotomic(2));

    // single suborbit with stabilizer H itself: the trivial character
    ClassFunction only = perm_char_restricted({fixed}, s3.head);
    CHECK(only == trivial_character(s3.head));

    // wrong orbit length is refused
    SuborbitDatum bad{&c2.head, pool().fusion("C2", "S3"), BigInt(2)};
    CHECK_THROWS_AS(perm_char_restricted({fixed, bad}, s3.head), Error);
}

TEST_CASE("centralizer orders from permutation character values") {
    // g self-paired: single fused class with |C_H| = n
    CHECK(centralizer_from_perm_char(BigInt(1), {{0, BigInt(12)}}) == 12);

    // S4/S3: transpositions (v = 2, fused 2a with |C_H| = 2) and 3-cycles
    CHECK(centralizer_from_perm_char(BigInt(2), {{1, BigInt(2)}}) == 4);
    CHECK(centralizer_from_perm_char(BigInt(1), {{2, BigInt(3)}}) == 3);
    // identity: v = 4, fused 1a with |C_H| = 6 -> |C_G| = 24
    CHECK(centralizer_from_perm_char(BigInt(4), {{0, BigInt(6)}}) == 24);

    // non-integral solution signals a wrong fusion hypothesis
    CHECK_THROWS_AS(centralizer_from_perm_char(BigInt(1), {{0, BigInt(2)}, {1, BigInt(3)}}), Error);
    CHECK_THROWS_AS(centralizer_from_perm_char(BigInt(0), {{0, BigInt(2)}}), Error);
    CHECK_THROWS_AS(centralizer_from_perm_char(BigInt(1), {}), Error);
}

TEST_CASE("centralizer recovery inverts the defining identity on fixtures") {
    // for H <= G with resolved fusion: 1_H^G value at g recovers |C_G(g)|
    struct Pair {
        const char* sub;
        const char* big;
    };
    for (const Pair& pr : {Pair{"S4", "S5"}, Pair{"A5", "S5"}, Pair{"S3", "S4"}}) {
        const TableBundle& sub = pool().table(pr.sub);
        const TableBundle& big = pool().table(pr.big);
        const FusionMap& fus = pool().fusion(pr.sub, pr.big);
        ClassFunction ind = induce_along(trivial_character(sub.head), fus, sub.head, big.head);
        for (int g = 0; g < big.head.n_classes(); ++g) {
            std::vector<std::pair<int, BigInt>> fused;
            for (int h = 0; h < sub.head.n_classes(); ++h)
                if (fus.image(h) == g) fused.emplace_back(h, sub.head.classes[h].centralizer_order);
            if (fused.empty()) continue;
            BigInt derived = centralizer_from_perm_char(ind.values[g].integer_value(), fused);
            CHECK(derived == big.head.classes[g].centralizer_order);
        }
    }
}
