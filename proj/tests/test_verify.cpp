#include "ctk/ctb.hpp"
#include "ctk/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

using namespace ctk;

namespace {

const std::string kFixtures = CTK_FIXTURES_DIR;

TableBundle load_bundle(const std::string& file) {
    CtbFile f = parse_ctb_file(kFixtures + "/" + file);
    return f.tables.at(0);
}

std::vector<ClassFunction> cyclic_lattice_generators(const TableHead& head) {
    std::vector<ClassFunction> gens;
    gens.push_back(trivial_character(head));
    for (int c = 0; c < head.n_classes(); ++c)
        for (auto& f : induce_from_cyclic(head, c)) gens.push_back(std::move(f));
    return gens;
}

}  // namespace

TEST_CASE("orthogonality passes on every bundled complete fixture") {
    for (const char* name : {"c2.ctb", "c3.ctb", "c4.ctb", "c5.ctb", "c6.ctb", "c7.ctb", "s3.ctb", "d8.ctb",
                             "q8.ctb", "a4.ctb", "s4.ctb", "a5.ctb", "s5.ctb"}) {
        TableBundle bundle = load_bundle(name);
        Report report = check_orthogonality(bundle.head, bundle.characters);
        INFO(name);
        CHECK(report.all_pass());
    }
}

TEST_CASE("orthogonality fails when any single value is perturbed") {
    std::mt19937 rng(1312);
    for (const char* name : {"s3.ctb", "a4.ctb", "q8.ctb"}) {
        TableBundle bundle = load_bundle(name);
        // exhaustive single-cell mutations on these small tables
        for (std::size_t i = 0; i < bundle.characters.size(); ++i) {
            for (int c = 0; c < bundle.head.n_classes(); ++c) {
                TableBundle mutant = bundle;
                mutant.characters[i].fn.values[c] += Cyclotomic(1);
                Report report = check_orthogonality(mutant.head, mutant.characters);
                INFO(name << " chi" << i + 1 << " class " << c);
                CHECK(!report.all_pass());
            }
        }
    }
    // sampled sign flips on the larger fixtures
    for (const char* name : {"s5.ctb", "a5.ctb"}) {
        TableBundle bundle = load_bundle(name);
        std::uniform_int_distribution<std::size_t> chi_dist(0, bundle.characters.size() - 1);
        std::uniform_int_distribution<int> cls_dist(1, bundle.head.n_classes() - 1);
        for (int trial = 0; trial < 8; ++trial) {
            TableBundle mutant = bundle;
            std::size_t i = chi_dist(rng);
            int c = cls_dist(rng);
            mutant.characters[i].fn.values[c] = mutant.characters[i].fn.values[c] + Cyclotomic(3);
            Report report = check_orthogonality(mutant.head, mutant.characters);
            CHECK(!report.all_pass());
        }
    }
}

TEST_CASE("the located failure cell is reported") {
    TableBundle broken = parse_ctb_file(kFixtures + "/bad/s3_broken_char.ctb").tables.at(0);
    Report report = check_orthogonality(broken.head, broken.characters);
    CHECK(!report.all_pass());
    bool located = false;
    for (const auto& line : report.lines)
        if (line.verdict == Verdict::Fail && line.location.find("chi3") != std::string::npos) located = true;
    CHECK(located);
}

TEST_CASE("parallel orthogonality matches sequential") {
    TableBundle s5 = load_bundle("s5.ctb");
    Report seq = check_orthogonality(s5.head, s5.characters, 1);
    Report par = check_orthogonality(s5.head, s5.characters, 4);
    REQUIRE(seq.lines.size() == par.lines.size());
    for (std::size_t i = 0; i < seq.lines.size(); ++i) {
        CHECK(seq.lines[i].check == par.lines[i].check);
        CHECK(seq.lines[i].details == par.lines[i].details);
    }
}

TEST_CASE("norm-one check") {
    TableBundle s3 = load_bundle("s3.ctb");
    CHECK(check_norm_one(s3.head, s3.characters[0]));
    Character perm;
    perm.name = "perm";
    perm.fn.head_id = "S3";
    perm.fn.values = {Cyclotomic(3), Cyclotomic(1), Cyclotomic(0)};
    CHECK(!check_norm_one(s3.head, perm));  // norm 2
}

TEST_CASE("lattice membership on S3") {
    TableBundle s3 = load_bundle("s3.ctb");
    CharacterLattice lat = CharacterLattice::build(s3.head, cyclic_lattice_generators(s3.head));

    // generators and integer combinations are members and reconstruct exactly
    for (const auto& g : lat.generators()) {
        auto coords = lat.membership(g);
        REQUIRE(coords.has_value());
        CHECK(lat.combine(*coords) == g);
    }
    // the 2-dimensional irreducible is in the induced lattice
    auto coords = lat.membership(s3.characters[2].fn);
    REQUIRE(coords.has_value());
    CHECK(lat.combine(*coords) == s3.characters[2].fn);

    // the indicator class function (1,0,0) is not
    ClassFunction indicator;
    indicator.head_id = "S3";
    indicator.values = {Cyclotomic(1), Cyclotomic(0), Cyclotomic(0)};
    CHECK(!lat.membership(indicator).has_value());
}

TEST_CASE("half the regular character of C2 stays outside the character lattice") {
    TableBundle c2 = load_bundle("c2.ctb");
    std::vector<ClassFunction> gens;
    for (const auto& ch : c2.characters) gens.push_back(ch.fn);
    CharacterLattice lat = CharacterLattice::build(c2.head, gens);
    // (1,0) = (chi1 + chi2)/2: integer values, half-integer coordinates
    ClassFunction half;
    half.head_id = "C2";
    half.values = {Cyclotomic(1), Cyclotomic(0)};
    CHECK(!lat.membership(half).has_value());
    ClassFunction reg;
    reg.head_id = "C2";
    reg.values = {Cyclotomic(2), Cyclotomic(0)};
    auto coords = lat.membership(reg);
    REQUIRE(coords.has_value());
    CHECK(lat.combine(*coords) == reg);
}

TEST_CASE("basis rows give unit coordinate vectors") {
    TableBundle s4 = load_bundle("s4.ctb");
    CharacterLattice lat = CharacterLattice::build(s4.head, cyclic_lattice_generators(s4.head));
    for (std::size_t r = 0; r < lat.basis().size(); ++r) {
        ClassFunction row = lat.combine([&] {
            std::vector<BigInt> unit(lat.basis().size(), 0);
            unit[r] = 1;
            return unit;
        }());
        auto coords = lat.membership(row);
        REQUIRE(coords.has_value());
        for (std::size_t i = 0; i < coords->size(); ++i) CHECK((*coords)[i] == (i == r ? 1 : 0));
    }
}

TEST_CASE("every small-group irreducible lies in the cyclic-induction lattice") {
    for (const char* name : {"c2.ctb", "c3.ctb", "c4.ctb", "c5.ctb", "c6.ctb", "c7.ctb", "s3.ctb", "d8.ctb",
                             "q8.ctb", "a4.ctb", "s4.ctb", "a5.ctb", "s5.ctb"}) {
        TableBundle bundle = load_bundle(name);
        CharacterLattice lat = CharacterLattice::build(bundle.head, cyclic_lattice_generators(bundle.head));
        for (const auto& ch : bundle.characters) {
            auto coords = lat.membership(ch.fn);
            INFO(name << " " << ch.name);
            REQUIRE(coords.has_value());
            CHECK(lat.combine(*coords) == ch.fn);
        }
    }
}

TEST_CASE("irrational-valued functions flatten correctly") {
    TableBundle a5 = load_bundle("a5.ctb");
    std::vector<ClassFunction> gens;
    for (const auto& ch : a5.characters) gens.push_back(ch.fn);
    CharacterLattice lat = CharacterLattice::build(a5.head, gens);
    ClassFunction sum = a5.characters[1].fn;  // chi2 with golden-ratio values
    for (int c = 0; c < 5; ++c) sum.values[c] += a5.characters[2].fn.values[c];
    auto coords = lat.membership(sum);
    REQUIRE(coords.has_value());
    CHECK(lat.combine(*coords) == sum);
    // a function with conductor outside the lattice fields is rejected
    ClassFunction alien;
    alien.head_id = "A5";
    alien.values = {Cyclotomic::root_of_unity(7), Cyclotomic(0), Cyclotomic(0), Cyclotomic(0), Cyclotomic(0)};
    CHECK(!lat.membership(alien).has_value());
}

TEST_CASE("ledger bookkeeping") {
    ClassLedger ledger;
    ledger.id = "demo";
    ledger.target = 10;
    ledger.entries = {{"x", BigInt(4)}, {"y", BigInt(6)}};
    CHECK(ledger_check(ledger).all_pass());

    ClassLedger twice = ledger;
    twice.entries.push_back({"x", BigInt(1)});
    CHECK(!ledger_check(twice).all_pass());

    ClassLedger off = ledger;
    off.target = 11;
    CHECK(!ledger_check(off).all_pass());

    ClassLedger empty;
    empty.id = "single";
    empty.target = 5;
    empty.entries = {{"all", BigInt(5)}};
    CHECK(ledger_check(empty).all_pass());
}

TEST_CASE("ledger with head checks the class equation") {
    TableBundle s4 = load_bundle("s4.ctb");
    ClassLedger ledger;
    ledger.id = "s4";
    ledger.target = 5;
    ledger.entries = {{"even", BigInt(3)}, {"odd", BigInt(2)}};
    Report r = ledger_check(ledger, &s4.head);
    CHECK(r.all_pass());
}
