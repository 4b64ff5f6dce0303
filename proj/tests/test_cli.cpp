#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"

#include "fpsmax/formula.hpp"
#include "fpsmax/wcnf.hpp"
#include "support/process.hpp"

using namespace fpsmax;
using testkit::run_cli;
using testkit::TempDir;

namespace {

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string last_with_prefix(const std::vector<std::string>& ls, const std::string& prefix) {
    std::string found;
    for (const auto& l : ls) {
        if (l.rfind(prefix, 0) == 0) found = l;
    }
    return found;
}

const char* kWorked = "1 -1 2 0\n1 1 -2 0\n1 1 2 0\n";

}  // namespace

TEST(CliSolve, WorkedInstance) {
    TempDir dir;
    const auto p = dir.write("worked.wcnf", kWorked);
    auto r = run_cli("solve " + p + " --mode fps --seed 1 --max-flips 10000");
    ASSERT_EQ(r.exit_code, 0);
    auto ls = lines(r.out);
    EXPECT_EQ(last_with_prefix(ls, "o "), "o 0");
    ASSERT_GE(ls.size(), 2u);
    EXPECT_EQ(ls[ls.size() - 2], "s SATISFIABLE");
    EXPECT_EQ(ls.back(), "v 11");
}

TEST(CliSolve, ContradictoryHardInstance) {
    TempDir dir;
    const auto p = dir.write("unsat.wcnf", "h 1 0\nh -1 0\n");
    auto r = run_cli("solve " + p + " --max-flips 1000");
    ASSERT_EQ(r.exit_code, 0);
    auto ls = lines(r.out);
    EXPECT_EQ(ls.back(), "s UNKNOWN");
    EXPECT_EQ(last_with_prefix(ls, "v"), "");
    EXPECT_EQ(last_with_prefix(ls, "o"), "");
}

TEST(CliSolve, ZeroClauseInstance) {
    TempDir dir;
    const auto p = dir.write("empty.wcnf", "p wcnf 4 0 1\n");
    auto r = run_cli("solve " + p + " --max-flips 10");
    ASSERT_EQ(r.exit_code, 0);
    auto ls = lines(r.out);
    EXPECT_EQ(last_with_prefix(ls, "o "), "o 0");
    const auto v = last_with_prefix(ls, "v ");
    ASSERT_EQ(v.size(), 6u);
    EXPECT_EQ(v.find_first_not_of("01", 2), std::string::npos);
}

TEST(CliSolve, ModelReevaluatesToLastCost) {
    TempDir dir;
    const std::string text = "p wcnf 5 7 100\n100 1 2 0\n100 -1 3 0\n4 -3 0\n6 -2 0\n2 4 5 0\n3 -4 0\n9 1 0\n";
    const auto p = dir.write("w.wcnf", text);
    for (const char* mode : {"fps", "single", "fps-rw", "fps-always", "fps-nostop"}) {
        auto r = run_cli("solve " + p + " --max-flips 5000 --mode " + mode);
        ASSERT_EQ(r.exit_code, 0) << mode;
        auto ls = lines(r.out);
        const auto v = last_with_prefix(ls, "v ").substr(2);
        Assignment a(5);
        for (Var i = 1; i <= 5; ++i) a.set(i, v[i - 1] == '1');
        EXPECT_EQ("o " + evaluate_cost(parse_wcnf(text), a).to_string(), last_with_prefix(ls, "o ")) << mode;
    }
}

TEST(CliSolve, LiteralModelOutput) {
    TempDir dir;
    const auto p = dir.write("w.wcnf", kWorked);
    auto r = run_cli("solve " + p + " --max-flips 1000 --v-literals");
    EXPECT_EQ(lines(r.out).back(), "v 1 2");
}

TEST(CliSolve, JsonRecord) {
    TempDir dir;
    const auto p = dir.write("w.wcnf", kWorked);
    auto r = run_cli("solve " + p + " --max-flips 1000 --json --mode single --seed 4");
    ASSERT_EQ(r.exit_code, 0);
    auto doc = nlohmann::json::parse(lines(r.out).back());
    EXPECT_EQ(doc["status"], "feasible");
    EXPECT_EQ(doc["cost"], 0);
    EXPECT_EQ(doc["mode"], "single");
    EXPECT_EQ(doc["seed"], 4);
    EXPECT_TRUE(doc.contains("time_to_best_s"));
    EXPECT_TRUE(doc.contains("flips"));
}

TEST(CliSolve, ExitCodes) {
    TempDir dir;
    const auto bad = dir.write("bad.wcnf", "p wcnf 2 1 5\n1 3 0\n");
    EXPECT_EQ(run_cli("solve " + bad).exit_code, 2);
    EXPECT_EQ(run_cli("solve " + (dir.path() / "missing.wcnf").string()).exit_code, 2);
    const auto ok = dir.write("ok.wcnf", kWorked);
    EXPECT_EQ(run_cli("solve " + ok + " --mode maxfps9").exit_code, 1);
    EXPECT_EQ(run_cli("solve").exit_code, 1);
    EXPECT_EQ(run_cli("solve " + ok + " --sc-num 0").exit_code, 1);
    EXPECT_EQ(run_cli("frobnicate").exit_code, 1);
}

TEST(CliSolve, DeterministicOutput) {
    TempDir dir;
    const auto p = dir.write("g.wcnf", run_cli("gen --vars 40 --hard 100 --soft 80 --max-weight 20 --seed 3").out);
    const std::string args = "solve " + p + " --seed 1 --max-flips 20000";
    EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(CliOracle, ReportsOptimum) {
    TempDir dir;
    auto r = run_cli("oracle " + dir.write("w.wcnf", kWorked));
    EXPECT_EQ(r.out, "o 0\ns OPTIMUM FOUND\nv 11\n");
    r = run_cli("oracle " + dir.write("u.wcnf", "h 1 0\nh -1 0\n"));
    EXPECT_EQ(r.out, "s UNSATISFIABLE\n");
}

TEST(CliGen, OutputParsesInBothDialects) {
    Formula modern = parse_wcnf(run_cli("gen --vars 20 --hard 30 --soft 30 --max-weight 7 --seed 2").out);
    Formula legacy = parse_wcnf(run_cli("gen --vars 20 --hard 30 --soft 30 --max-weight 7 --seed 2 --legacy").out);
    EXPECT_EQ(modern.num_clauses(), legacy.num_clauses());
    EXPECT_EQ(legacy.num_vars(), 20u);
    EXPECT_EQ(legacy.num_hard(), 30u);
}

TEST(CliBench, CsvAndReport) {
    TempDir dir;
    dir.write("a.wcnf", kWorked);
    dir.write("b.wcnf", "h 1 2 0\n3 -1 0\n2 -2 0\n");
    dir.write("ignored.txt", "not an instance");
    const auto bk = dir.write("best.csv", "instance,cost\na.wcnf,0\nb.wcnf,2\n");
    const auto csv = (dir.path() / "out.csv").string();
    auto r = run_cli("bench " + dir.path().string() + " --modes fps,single --seeds 1,2 --max-flips 2000 --csv " + csv +
                     " --best-known " + bk);
    ASSERT_EQ(r.exit_code, 0);
    std::ifstream in(csv);
    std::stringstream content;
    content << in.rdbuf();
    auto ls = lines(content.str());
    ASSERT_EQ(ls.size(), 1u + 2 * 2 * 2);
    EXPECT_EQ(ls[0], "instance,mode,seed,status,cost,time_to_best_s,flips");
    EXPECT_NE(r.out.find("fps vs single"), std::string::npos);
    EXPECT_NE(r.out.find("1.0000"), std::string::npos);
}

TEST(CliBench, EmptyDirectoryIsUsageError) {
    TempDir dir;
    EXPECT_EQ(run_cli("bench " + dir.path().string()).exit_code, 1);
    EXPECT_EQ(run_cli("sweep " + dir.path().string()).exit_code, 1);
}

TEST(CliSweep, GridRows) {
    TempDir dir;
    dir.write("a.wcnf", kWorked);
    dir.write("b.wcnf", "h 1 2 0\n3 -1 0\n2 -2 0\n");
    auto r = run_cli("sweep " + dir.path().string() + " --max-flips 500");
    ASSERT_EQ(r.exit_code, 0);
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 13u);
    EXPECT_EQ(ls[0], "sc_num,sv_num,avg_score");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const double score = std::stod(ls[i].substr(ls[i].rfind(',') + 1));
        EXPECT_GE(score, 0.0);
        EXPECT_LE(score, 1.0);
    }

    r = run_cli("sweep " + dir.path().string() + " --sc-nums 10 --sv-nums 50 --max-flips 500");
    EXPECT_EQ(lines(r.out).size(), 2u);
}

TEST(CliSweep, SingleCellMatchesBenchAverage) {
    TempDir dir;
    dir.write("a.wcnf", kWorked);
    dir.write("b.wcnf", "h 1 2 0\n3 -1 0\n2 -2 0\n");
    const auto bk = dir.write("best.csv", "a.wcnf,0\nb.wcnf,2\n");
    auto sweep = run_cli("sweep " + dir.path().string() + " --sc-nums 10 --sv-nums 50 --max-flips 500 --best-known " + bk);
    auto bench = run_cli("bench " + dir.path().string() + " --modes fps --max-flips 500 --csv - --best-known " + bk,
                         "2>&1 >/dev/null");
    EXPECT_EQ(lines(sweep.out).at(1), "10,50,1");
    EXPECT_NE(bench.out.find("1.0000"), std::string::npos);
}
