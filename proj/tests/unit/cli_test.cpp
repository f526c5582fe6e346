#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "opeq/cli.hpp"

namespace fs = std::filesystem;
using opeq::ComplexMatrix;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;

    nlohmann::json report() const { return nlohmann::json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    CliRun r;
    r.code = opeq::cli::run_command(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path workdir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "opeq_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ComplexMatrix diag2(double a, double b) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST(Cli, GenerateThenSolveSylvester) {
    const fs::path dir = workdir("sylvester");
    const CliRun g = run({"gen", "--family", "sylvester-solvable", "--seed", "7", "--out", dir.string(), "--json"});
    ASSERT_EQ(g.code, 0) << g.err;
    EXPECT_EQ(g.report()["outputs"].size(), 5u);
    const CliRun s = run({"--json", "solve", "sylvester", "--A", (dir / "A.json").string(), "--B",
                       (dir / "B.json").string(), "--C", (dir / "C.json").string()});
    ASSERT_EQ(s.code, 0) << s.err;
    const auto rep = s.report();
    EXPECT_EQ(rep["status"], "solved");
    EXPECT_LE(rep["solution"]["residual"].get<double>(), 1e-8);
    EXPECT_TRUE(rep["certificate"]["pass"].get<bool>());

    const CliRun seeded = run({"--json", "--seed", "3", "solve", "sylvester", "--A", (dir / "A.json").string(), "--B",
                            (dir / "B.json").string(), "--C", (dir / "C.json").string()});
    EXPECT_EQ(seeded.code, 0);
    EXPECT_EQ(seeded.report()["solution"]["parameters"], "random");
}

TEST(Cli, DiagnoseUnsolvableExitsTwo) {
    const fs::path dir = workdir("unsolvable");
    opeq::save_matrix(dir / "A.json", diag2(1, 0));
    opeq::save_matrix(dir / "C.json", diag2(0, 1));
    const CliRun r = run({"diagnose", "sylvester", "--A", (dir / "A.json").string(), "--B", (dir / "A.json").string(),
                       "--C", (dir / "C.json").string(), "--json"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NEAR(r.report()["diagnosis"]["classical_residual"].get<double>(), 1.0, 1e-15);
}

TEST(Cli, IntersectIdentity) {
    const fs::path dir = workdir("intersect");
    opeq::save_matrix(dir / "I.json", opeq::identity(3));
    const CliRun r = run({"intersect", "--A", (dir / "I.json").string(), "--B", (dir / "I.json").string(), "--json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.report()["intersection"]["dim"], 3);
}

TEST(Cli, CongruenceOutcomes) {
    const fs::path dir = workdir("congruence");
    ComplexMatrix c = ComplexMatrix::Zero(2, 2);
    c(1, 0) = 1.0;
    opeq::save_matrix(dir / "A.json", diag2(1, 0));
    opeq::save_matrix(dir / "B.json", opeq::identity(2));
    opeq::save_matrix(dir / "Bv.json", diag2(0, 1));
    opeq::save_matrix(dir / "C.json", c);
    const std::string a = (dir / "A.json").string(), cc = (dir / "C.json").string();
    const CliRun ok = run({"solve", "congruence", "--A", a, "--B", (dir / "B.json").string(), "--C", cc, "--json"});
    EXPECT_EQ(ok.code, 0) << ok.out;
    const CliRun bad = run({"solve", "congruence", "--A", a, "--B", (dir / "Bv.json").string(), "--C", cc, "--json"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(bad.report()["status"], "unsolvable");
    const CliRun hyp = run({"solve", "congruence", "--A", a, "--B", a, "--C", (dir / "B.json").string(), "--json"});
    EXPECT_EQ(hyp.code, 1);
    EXPECT_EQ(hyp.report()["status"], "hypothesis-violated");
}

TEST(Cli, WritesSolutionFiles) {
    const fs::path dir = workdir("outputs");
    opeq::save_matrix(dir / "A.json", opeq::identity(2));
    opeq::save_matrix(dir / "C.json", 2.0 * opeq::identity(2));
    const CliRun r = run({"solve", "douglas", "--A", (dir / "A.json").string(), "--C", (dir / "C.json").string(), "--out",
                       (dir / "sol").string(), "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(r.report()["solution"]["lambda"].get<double>(), 4.0, 1e-14);
    EXPECT_LE((opeq::load_matrix(dir / "sol" / "X.json") - 2.0 * opeq::identity(2)).norm(), 1e-15);
}

TEST(Cli, DemoTable) {
    const CliRun r = run({"demo", "truncated-shift", "--n", "3", "--json"});
    ASSERT_EQ(r.code, 0);
    const auto rep = r.report();
    EXPECT_EQ(rep["rank"], 3);
    EXPECT_EQ(rep["table"]["rows"].size(), 3u);
    const CliRun human = run({"demo", "truncated-shift", "--n", "2"});
    EXPECT_NE(human.out.find("min_nonzero_sigma: 0.5"), std::string::npos) << human.out;
}

TEST(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"solve", "nonsense"}).code, 1);
    EXPECT_EQ(run({"solve", "sylvester"}).code, 1);
    EXPECT_EQ(run({"gen", "--family", "nope", "--out", workdir("bad").string()}).code, 1);
    EXPECT_EQ(run({"--tol-rank", "2", "demo", "truncated-shift"}).code, 1);
    const CliRun missing = run({"solve", "douglas", "--A", "/nonexistent.json", "--C", "/nonexistent.json"});
    EXPECT_EQ(missing.code, 1);
    EXPECT_NE(missing.err.find("error"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }
