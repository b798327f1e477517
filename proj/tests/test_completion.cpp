#include "ctk/completion.hpp"
#include "ctk/ctb.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

using namespace ctk;

namespace {

const std::string kFixtures = CTK_FIXTURES_DIR;

TableBundle load_bundle(const std::string& file) {
    CtbFile f = parse_ctb_file(kFixtures + "/" + file);
    return f.tables.at(0);
}

PartialCharacter blank(const Character& ch, const std::vector<int>& classes) {
    PartialCharacter pc;
    pc.name = ch.name;
    pc.head_id = ch.fn.head_id;
    for (const auto& v : ch.fn.values) pc.values.emplace_back(v);
    for (int c : classes) pc.values[c] = std::nullopt;
    return pc;
}

}  // namespace

TEST_CASE("congruence fill on S3") {
    TableBundle s3 = load_bundle("s3.ctb");
    // chi3 = (2, ?, -1): v = 2 mod 2 and v^2 < 2 forces v = 0
    PartialCharacter pc = blank(s3.characters[2], {1});
    FillReport report;
    PartialCharacter out = congruence_fill(pc, s3.head, report);
    CHECK(out.known(1));
    CHECK(out.at(1) == Cyclotomic(0));
}

TEST_CASE("congruence fill leaves ambiguous values open and reports the set") {
    TableBundle s5 = load_bundle("s5.ctb");
    // chi7 = (6,0,-2,0,0,0,1): blank at 2a; chi(2a^2) = chi(1a) = 6 = 0 mod 2,
    // v^2 < 12 allows v in {-2, 0, 2}: must stay unknown
    PartialCharacter pc = blank(s5.characters[6], {1});
    FillReport report;
    PartialCharacter out = congruence_fill(pc, s5.head, report);
    CHECK(!out.known(1));
    bool saw_candidates = false;
    for (const auto& ev : report.events)
        if (ev.cls == "2a" && ev.detail.find("candidates") == 0) saw_candidates = true;
    CHECK(saw_candidates);
}

TEST_CASE("congruence fill skips irrational classes") {
    TableBundle a5 = load_bundle("a5.ctb");
    // 5a and 5b are exchanged by squaring: not certified rational
    PartialCharacter pc = blank(a5.characters[1], {3});
    FillReport report;
    PartialCharacter out = congruence_fill(pc, a5.head, report);
    CHECK(!out.known(3));
}

TEST_CASE("congruence fill is sound on every rational fixture value") {
    for (const char* name : {"s3.ctb", "s4.ctb", "s5.ctb", "d8.ctb", "q8.ctb"}) {
        TableBundle bundle = load_bundle(name);
        for (const auto& ch : bundle.characters) {
            for (int c = 1; c < bundle.head.n_classes(); ++c) {
                PartialCharacter pc = blank(ch, {c});
                FillReport report;
                PartialCharacter out = congruence_fill(pc, bundle.head, report);
                if (out.known(c)) CHECK(out.at(c) == ch.fn.values[c]);
            }
        }
    }
}

TEST_CASE("trivial character is consistent with every congruence") {
    TableBundle s4 = load_bundle("s4.ctb");
    for (int c = 1; c < s4.head.n_classes(); ++c) {
        PartialCharacter pc = blank(s4.characters[0], {c});
        FillReport report;
        PartialCharacter out = congruence_fill(pc, s4.head, report);
        if (out.known(c)) CHECK(out.at(c) == Cyclotomic(1));
    }
}

TEST_CASE("defect zero fill on A5 at p = 5") {
    TableBundle a5 = load_bundle("a5.ctb");
    // the degree-5 character vanishes on both order-5 classes
    PartialCharacter pc = blank(a5.characters[4], {3, 4});
    FillReport report;
    PartialCharacter out = defect_zero_fill(pc, a5.head, 5, report);
    CHECK(out.at(3) == Cyclotomic(0));
    CHECK(out.at(4) == Cyclotomic(0));

    // p not dividing the group order: no-op with a report line
    PartialCharacter pc2 = blank(a5.characters[4], {3});
    FillReport report2;
    PartialCharacter out2 = defect_zero_fill(pc2, a5.head, 7, report2);
    CHECK(!out2.known(3));
    REQUIRE(!report2.events.empty());
    CHECK(report2.events[0].detail.find("no-op") == 0);

    // valuation mismatch: the degree-4 character for p = 5 is a no-op
    PartialCharacter pc3 = blank(a5.characters[3], {3});
    FillReport report3;
    PartialCharacter out3 = defect_zero_fill(pc3, a5.head, 5, report3);
    CHECK(!out3.known(3));

    // contradiction with a known nonzero value is loud
    PartialCharacter pc4 = blank(a5.characters[4], {4});
    pc4.values[3] = Cyclotomic(1);
    FillReport report4;
    CHECK_THROWS_AS(defect_zero_fill(pc4, a5.head, 5, report4), Error);
}

TEST_CASE("orthogonality fill solves the last unknown") {
    TableBundle s3 = load_bundle("s3.ctb");
    // (2, ?, -1) -> 0 at 2a
    PartialCharacter pc = blank(s3.characters[2], {1});
    FillReport report;
    PartialCharacter out = orthogonality_fill(pc, s3.head, report);
    CHECK(out.at(1) == Cyclotomic(0));

    // (1, 1, ?) -> -2 at 3a, flagged since 4 >= |C| = 3
    PartialCharacter odd;
    odd.name = "odd";
    odd.head_id = "S3";
    odd.values = {Cyclotomic(1), Cyclotomic(1), std::nullopt};
    FillReport report2;
    PartialCharacter out2 = orthogonality_fill(odd, s3.head, report2);
    CHECK(out2.at(2) == Cyclotomic(-2));
    bool flagged = false;
    for (const auto& ev : report2.events)
        if (ev.warning && ev.detail.find("suspicious") == 0) flagged = true;
    CHECK(flagged);

    // complete characters or two unknowns are errors
    PartialCharacter complete = blank(s3.characters[2], {});
    FillReport report3;
    CHECK_THROWS_AS(orthogonality_fill(complete, s3.head, report3), Error);
    PartialCharacter two = blank(s3.characters[2], {1, 2});
    CHECK_THROWS_AS(orthogonality_fill(two, s3.head, report3), Error);
}

TEST_CASE("constituent fill on S3 from two known classes") {
    TableBundle s3 = load_bundle("s3.ctb");
    PartialCharacter pc;
    pc.name = "restriction";
    pc.head_id = "S3";
    pc.values = {Cyclotomic(3), Cyclotomic(1), std::nullopt};
    FillReport report;
    // possible constituents {trivial, 2-dimensional}: full column rank on
    // {1a, 2a}, unique solution 1*(1,1,1) + 1*(2,0,-1), value 0 at 3a
    std::vector<Character> constituents = {s3.characters[0], s3.characters[2]};
    ConstituentResult r = constituent_fill(pc, constituents, {0, 1}, s3.head, report);
    CHECK(r.multiplicities == std::vector<BigInt>{BigInt(1), BigInt(1)});
    CHECK(r.completed.values[2] == Cyclotomic(0));

    // with all three irreducibles the 2x3 value matrix is rank deficient
    try {
        constituent_fill(pc, s3.characters, {0, 1}, s3.head, report);
        FAIL("expected a rank error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("rank 2") != std::string::npos);
    }

    // inconsistent values: no nonnegative integer solution
    PartialCharacter bad = pc;
    bad.values[1] = Cyclotomic(BigRat(1, 2));
    CHECK_THROWS_AS(constituent_fill(bad, constituents, {0, 1}, s3.head, report), Error);
}

TEST_CASE("constituent fill with the trivial subgroup pattern") {
    TableBundle c2 = load_bundle("c2.ctb");
    PartialCharacter pc;
    pc.name = "x";
    pc.head_id = "C2";
    pc.values = {Cyclotomic(5), Cyclotomic(1)};
    FillReport report;
    ConstituentResult r = constituent_fill(pc, c2.characters, {0, 1}, c2.head, report);
    CHECK(r.multiplicities == std::vector<BigInt>{BigInt(3), BigInt(2)});
}

TEST_CASE("constituent completion has nonnegative integral products with the irreducibles") {
    TableBundle s4 = load_bundle("s4.ctb");
    PartialCharacter pc;
    pc.name = "perm";
    pc.head_id = "S4";
    // the natural permutation character (4,2,0,1,0) known on two classes,
    // possible constituents {trivial, standard}
    pc.values = {Cyclotomic(4), Cyclotomic(2), std::nullopt, std::nullopt, std::nullopt};
    std::vector<Character> constituents = {s4.characters[0], s4.characters[3]};
    FillReport report;
    ConstituentResult r = constituent_fill(pc, constituents, {0, 1}, s4.head, report);
    CHECK(r.multiplicities == std::vector<BigInt>{BigInt(1), BigInt(1)});
    CHECK(r.completed.values[2] == Cyclotomic(0));
    CHECK(r.completed.values[3] == Cyclotomic(1));
    CHECK(r.completed.values[4] == Cyclotomic(0));
    for (const auto& chi : s4.characters) {
        Cyclotomic m = scalar_product(s4.head, r.completed, chi.fn);
        CHECK(m.is_integer());
        CHECK(m.integer_value() >= 0);
    }
}

TEST_CASE("fill rules restore deliberately blanked fixture values") {
    // the closing orthogonality rule presumes the character is orthogonal to
    // the trivial one, so the trivial character itself is exercised only
    // through the congruence soundness test above
    for (const char* name : {"s3.ctb", "s4.ctb", "a5.ctb", "d8.ctb"}) {
        TableBundle bundle = load_bundle(name);
        for (const auto& ch : bundle.characters) {
            if (scalar_product(bundle.head, ch.fn, trivial_character(bundle.head)) != Cyclotomic(0)) continue;
            for (int c = 1; c < bundle.head.n_classes(); ++c) {
                PartialCharacter pc = blank(ch, {c});
                FillReport report;
                PartialCharacter out = run_fill_pipeline(pc, bundle.head, report);
                REQUIRE(out.unknown_count() == 0);
                CHECK(out.at(c) == ch.fn.values[c]);
            }
        }
    }
}

TEST_CASE("congruence and defect-zero fills agree on their common domain") {
    TableBundle a5 = load_bundle("a5.ctb");
    const Character& chi5 = a5.characters[4];
    for (int c : {3, 4}) {
        PartialCharacter pc = blank(chi5, {c});
        FillReport r1, r2;
        PartialCharacter via_defect = defect_zero_fill(pc, a5.head, 5, r1);
        PartialCharacter via_congruence = congruence_fill(pc, a5.head, r2);
        CHECK(via_defect.at(c) == Cyclotomic(0));
        if (via_congruence.known(c)) CHECK(via_congruence.at(c) == via_defect.at(c));
    }
}
