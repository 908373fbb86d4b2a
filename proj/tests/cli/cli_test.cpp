#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "cli_support.hpp"
#include "spannerforge/errors.hpp"

using namespace spannerforge;
using namespace spannerforge::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

// Runs the binary inside a scratch directory; stderr is discarded.
Outcome run(const std::string& args, const fs::path& dir) {
    const std::string cmd = "cd '" + dir.string() + "' && '" SPANNERFORGE_BIN "' " + args + " 2>/dev/null";
    Outcome r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("sf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

}  // namespace

TEST_F(Cli, HelpMatchesGolden) {
    EXPECT_EQ(run("--help", dir_).out, slurp(fs::path(GOLDEN_DIR) / "help_main.txt"));
    for (const char* sub : {"gen", "solve-ld2s", "solve-smes", "oracle", "faithfulness", "gap-demo", "export-lp"}) {
        const Outcome r = run(std::string(sub) + " --help", dir_);
        EXPECT_EQ(r.code, 0) << sub;
        EXPECT_EQ(r.out, slurp(fs::path(GOLDEN_DIR) / ("help_" + std::string(sub) + ".txt"))) << sub;
    }
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run("", dir_).code, 2);
    EXPECT_EQ(run("nosuch", dir_).code, 2);
    EXPECT_EQ(run("gen --n 0", dir_).code, 2);
    EXPECT_EQ(run("gen --mode sideways", dir_).code, 2);
    EXPECT_EQ(run("solve-ld2s --graph missing.txt", dir_).code, 1);
    ASSERT_EQ(run("gen --n 9 --alpha 0.9 --out g.txt", dir_).code, 0);
    EXPECT_EQ(run("solve-smes --graph g.txt --tau 1,2", dir_).code, 2);
    EXPECT_EQ(run("oracle ld2s --graph g.txt", dir_).code, 1);  // past the exhaustive cap
}

TEST_F(Cli, ManifestRecordsTheRun) {
    ASSERT_EQ(run("gen --n 7 --seed 11 --out g.txt --manifest m.json", dir_).code, 0);
    const Json m = Json::parse(slurp(dir_ / "m.json"));
    EXPECT_EQ(m["command"], "gen");
    EXPECT_EQ(m["seed"], 11);
    EXPECT_EQ(m["config"]["n"], "7");
    EXPECT_EQ(m["exit_code"], 0);
    EXPECT_EQ(m["outputs"][0], "g.txt");
    ASSERT_EQ(run("oracle smes --graph g.txt --m 2 --manifest m2.json", dir_).code, 0);
    EXPECT_EQ(Json::parse(slurp(dir_ / "m2.json"))["input_hash"], file_hash((dir_ / "g.txt").string()));
}

TEST_F(Cli, ConfigFileWithOverride) {
    std::ofstream(dir_ / "c.ini") << "seed=5\n[gen]\nn=6\nalpha=0.9\n";
    ASSERT_EQ(run("--config c.ini gen --out a.txt", dir_).code, 0);
    ASSERT_EQ(run("gen --n 6 --alpha 0.9 --seed 5 --out b.txt", dir_).code, 0);
    EXPECT_EQ(slurp(dir_ / "a.txt"), slurp(dir_ / "b.txt"));
    ASSERT_EQ(run("--config c.ini gen --n 8 --out c.txt", dir_).code, 0);
    EXPECT_EQ(slurp(dir_ / "c.txt").substr(0, 2), "8 ");
}

TEST_F(Cli, SameSeedSameBytes) {
    for (const char* tag : {"a", "b"}) {
        const std::string t(tag);
        ASSERT_EQ(run("gen --n 9 --seed 3 --mode planted --k 6 --beta 0.5 --out g" + t + ".txt --meta m" + t + ".json",
                      dir_).code, 0);
        ASSERT_EQ(run("solve-ld2s --graph ga.txt --seed 3 --out h" + t + ".txt --report r" + t + ".json", dir_).code,
                  0);
        ASSERT_EQ(run("faithfulness --trials 300 --seed 3 --report f" + t + ".json --csv f" + t + ".csv", dir_).code,
                  0);
    }
    for (const char* f : {"g%s.txt", "m%s.json", "h%s.txt", "r%s.json", "f%s.json", "f%s.csv"}) {
        char a[32], b[32];
        std::snprintf(a, sizeof a, f, "a");
        std::snprintf(b, sizeof b, f, "b");
        EXPECT_EQ(slurp(dir_ / a), slurp(dir_ / b)) << a;
    }
}

TEST_F(Cli, GapDemoTable) {
    const Outcome r = run("gap-demo --deltas 4,9", dir_);
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    const CsvTable t = parse_csv(in);
    ASSERT_EQ(t.header, (std::vector<std::string>{"delta", "lp_value", "brute_opt", "ratio"}));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0][2], "2");
    EXPECT_EQ(t.rows[1][2], "3");
}

TEST_F(Cli, ExportLpReadsBack) {
    ASSERT_EQ(run("gen --n 6 --alpha 0.9 --out g.txt", dir_).code, 0);
    for (const char* b : {"kp", "smes --tau 2,2,1,1", "bipartite-smes --tau 2,2,1,1", "ld2s --lambda 2"}) {
        const Outcome r = run("export-lp --graph g.txt --builder " + std::string(b), dir_);
        ASSERT_EQ(r.code, 0) << b;
        EXPECT_NE(r.out.find("Subject To"), std::string::npos) << b;
    }
}

TEST(CsvTable, RoundTrip) {
    CsvTable t;
    t.header = {"name", "value"};
    t.add_row({"plain", format_real(0.5)});
    t.add_row({"comma, inside", "\"quoted\""});
    t.add_row({"multi\nline", ""});
    std::ostringstream out;
    t.write(out);
    std::istringstream in(out.str());
    const CsvTable back = parse_csv(in);
    EXPECT_EQ(back.header, t.header);
    EXPECT_EQ(back.rows, t.rows);
}

TEST(CsvTable, Rejects) {
    CsvTable t;
    t.header = {"a", "b"};
    EXPECT_THROW(t.add_row({"1"}), InputError);
    std::istringstream ragged("a,b\n1\n");
    EXPECT_THROW(parse_csv(ragged), InputError);
    std::istringstream open("a\n\"x\n");
    EXPECT_THROW(parse_csv(open), InputError);
}

TEST(FormatReal, FixedDigits) {
    EXPECT_EQ(format_real(1.0 / 3), "0.333333333");
    EXPECT_EQ(format_real(-0.0), "0.000000000");
    EXPECT_EQ(format_real(2.5e-10), "0.000000000");
}

TEST(ContentHash, Fnv) {
    EXPECT_EQ(content_hash(""), "cbf29ce484222325");
    EXPECT_EQ(content_hash("a"), "af63dc4c8601ec8c");
}
