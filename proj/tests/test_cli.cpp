#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

const std::string kFixtures = CTK_FIXTURES_DIR;

std::string ctk_bin() {
    const char* bin = std::getenv("CTK_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = ctk_bin() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("validate passes on the bundled fixture") {
    RunResult r = run("validate " + kFixtures + "/s3.ctb");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS head-invariants S3") != std::string::npos);
    CHECK(r.output.find("PASS orthogonality1") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("exit code 2 on parse and invariant errors") {
    RunResult r = run("validate " + kFixtures + "/bad/s3_broken_head.ctb");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("ERROR") != std::string::npos);
    RunResult missing = run("validate /nonexistent-file.ctb");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("exit code 1 on verification failure") {
    RunResult r = run("verify " + kFixtures + "/bad/s3_broken_char.ctb");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("FAIL") != std::string::npos);
}

TEST_CASE("verify passes on good fixtures") {
    RunResult r = run("verify " + kFixtures + "/a5.ctb");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS orthogonality1 A5") != std::string::npos);
    CHECK(r.output.find("PASS norm-one A5:chi2") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    std::string args = "verify " + kFixtures + "/s5.ctb";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.output == b.output);
    RunResult j1 = run("--jobs 1 " + args);
    RunResult j4 = run("--jobs 4 " + args);
    CHECK(j1.output == j4.output);
}

TEST_CASE("fuse command enumerates candidate fusions") {
    RunResult r = run("--fixtures " + kFixtures + " fuse C3 S3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("INFO fuse C3->S3 1 fusions") != std::string::npos);
    CHECK(r.output.find("INFO fusion-map C3->S3 0 2 2") != std::string::npos);
}

TEST_CASE("powermaps command reports ambiguities deterministically") {
    RunResult r = run("--fixtures " + kFixtures + " powermaps D8");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS powermaps D8") != std::string::npos);
}

TEST_CASE("permchar command runs the S4/S3 job") {
    RunResult r = run("--fixtures " + kFixtures + " permchar " + kFixtures + "/s4_s3_suborbits.ctb");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS permchar-index S3") != std::string::npos);
    CHECK(r.output.find("INFO permchar S3 4 2 1") != std::string::npos);
    CHECK(r.output.find("PASS centralizer S4:2a 4") != std::string::npos);
    CHECK(r.output.find("PASS centralizer S4:3a 3") != std::string::npos);
    CHECK(r.output.find("PASS centralizer S4:1a 24") != std::string::npos);
}

TEST_CASE("lattice command locates irreducibles") {
    RunResult r = run("--fixtures " + kFixtures + " lattice S3 chi3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS lattice S3:chi3") != std::string::npos);
}

TEST_CASE("suspicious orthogonality fill is flagged and the norm check fails") {
    // (1,1,1,?,1) on A5: the order-5 classes are not certified rational, so
    // the last unknown falls to the orthogonality rule, which solves -4 and
    // flags the centralizer bound; the result is no irreducible
    std::string partial = std::string("/tmp/ctk_test_partial.ctb");
    {
        FILE* f = fopen(partial.c_str(), "w");
        REQUIRE(f != nullptr);
        fputs("PARTIAL odd ON A5 1 1 1 ? 1\n", f);
        fclose(f);
    }
    RunResult r = run("--fixtures " + kFixtures + " complete " + partial + " " + kFixtures + "/a5.ctb");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("WARN fill-orthogonality odd:5a suspicious") != std::string::npos);
    CHECK(r.output.find("PASS fill-orthogonality odd:5a -4") != std::string::npos);
    CHECK(r.output.find("FAIL norm odd") != std::string::npos);
    CHECK(r.output.find("PASS trivial-product odd") != std::string::npos);
}

TEST_CASE("complete command restores a blanked fixture value by congruences") {
    // chi5 of S5 blanked at 6a: the intersection of the mod-2 and mod-3
    // congruence candidates is the singleton {1}
    std::string partial = std::string("/tmp/ctk_test_chi5.ctb");
    {
        FILE* f = fopen(partial.c_str(), "w");
        REQUIRE(f != nullptr);
        fputs("PARTIAL chi5cut ON S5 5 1 1 -1 ? -1 0\n", f);
        fclose(f);
    }
    RunResult r = run("--fixtures " + kFixtures + " complete " + partial + " " + kFixtures + "/s5.ctb");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS fill-congruence chi5cut:6a 1") != std::string::npos);
    CHECK(r.output.find("PASS norm chi5cut") != std::string::npos);
    CHECK(r.output.find("PASS trivial-product chi5cut") != std::string::npos);
}
