#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <ggc/cli.hpp>

#include "support.hpp"

using namespace ggc;
using namespace ggc::test;
using io::json;

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "ggc");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
  protected:
    fs::path dir;

    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("ggc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string write(const std::string &name, const json &j) {
        const auto p = (dir / name).string();
        std::ofstream(p) << j.dump(2);
        return p;
    }
    static std::string sample(const std::string &name) { return std::string(GGC_SAMPLE_DIR) + "/" + name; }
    static std::string fixture(const std::string &name) { return std::string(GGC_FIXTURE_DIR) + "/" + name; }
};

} // namespace

TEST_F(Cli, NoSubcommandIsUsageError) { EXPECT_EQ(run_cli({}).code, 1); }

TEST_F(Cli, HelpExitsZero) { EXPECT_EQ(run_cli({"--help"}).code, 0); }

TEST_F(Cli, MissingFileIsIoError) {
    EXPECT_EQ(run_cli({"analyze", "--input", (dir / "absent.json").string()}).code, 1);
}

TEST_F(Cli, MalformedJsonIsIoError) {
    const auto p = (dir / "broken.json").string();
    std::ofstream(p) << "{ not json";
    EXPECT_EQ(run_cli({"analyze", "--input", p}).code, 1);
}

TEST_F(Cli, AnalyzeFixtureMatchesExpectedReport) {
    const auto r = run_cli({"analyze", "--input", fixture("single_active_edge.spec.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(fixture("single_active_edge.report.json"));
    std::stringstream expected;
    expected << in.rdbuf();
    EXPECT_EQ(r.out, expected.str());
}

TEST_F(Cli, AnalyzeIsDeterministic) {
    const auto a = run_cli({"analyze", "--input", sample("chain.spec.json"), "--crosscheck"});
    const auto b = run_cli({"analyze", "--input", sample("chain.spec.json"), "--crosscheck"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto j = json::parse(a.out);
    const auto rep = io::moduli_report_from_json(j);
    EXPECT_EQ(io::to_json(rep), j);
    EXPECT_EQ(rep.moduli_dim, 1u);
    EXPECT_EQ(rep.basis_edges, (std::vector<std::string>{"D1#D2"}));
}

TEST_F(Cli, AnalyzeWritesOutputFile) {
    const auto out = (dir / "report.json").string();
    const auto r = run_cli({"analyze", "--input", sample("type1.spec.json"), "--output", out});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(out);
    const auto j = json::parse(in);
    EXPECT_FALSE(io::moduli_report_from_json(j).finite_type);
}

TEST_F(Cli, AnalyzeSummary) {
    const auto r = run_cli({"analyze", "--input", sample("type1.spec.json"), "--summary"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_FALSE(r.out.empty());
    EXPECT_THROW((void)json::parse(r.out), json::parse_error);
    EXPECT_EQ(run_cli({"analyze", "--input", sample("type1.spec.json"), "--summary", "--json"}).code, 1);
}

TEST_F(Cli, InvalidSpecExitsTwo) {
    auto j = io::to_json(FoliationSpec{path_graph({"D1", "D2"}),
                                       {{VertexKind::invariant, GroupHolonomy{true, 4, 0}, std::nullopt},
                                        {VertexKind::invariant, GroupHolonomy{true, 3, 0}, std::nullopt}},
                                       {{EdgeKind::singular, std::nullopt, {LocalHolonomy{true, 3}, LocalHolonomy{true, 3}}}}});
    const auto r = run_cli({"analyze", "--input", write("bad.json", j)});
    EXPECT_EQ(r.code, 2);
    const auto out = json::parse(r.out);
    EXPECT_EQ(out.at("valid"), false);
    EXPECT_EQ(out.at("violations").size(), 1u);
}

TEST_F(Cli, EntirelyGreenCrosscheckExitsThree) {
    const auto j = io::to_json(FoliationSpec{path_graph({"D1"}), {{VertexKind::invariant, GroupHolonomy{true, 2, 0}, std::nullopt}}, {}});
    const auto p = write("green.json", j);
    EXPECT_EQ(run_cli({"analyze", "--input", p}).code, 0);
    const auto r = run_cli({"analyze", "--input", p, "--crosscheck"});
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(json::parse(r.out).at("characterization"), "hypothesis-violated");
}

TEST_F(Cli, CohomologyFiniteAuto) {
    const auto r = run_cli({"cohomology", "--input", sample("q8_path.finite.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto res = io::cohomology_result_from_json(json::parse(r.out));
    EXPECT_EQ(res.mode, "bruteforce");
    EXPECT_EQ(res.h0, 1u);
    EXPECT_EQ(res.h1, 8u);
    EXPECT_EQ(res.cocycles.size(), 8u);
    std::uint64_t total = 0;
    for (auto s : res.class_sizes)
        total += s;
    EXPECT_EQ(total, 64u);
}

TEST_F(Cli, CohomologyFiniteRegularAgrees) {
    const auto brute = io::cohomology_result_from_json(
        json::parse(run_cli({"cohomology", "--input", sample("q8_path.finite.json"), "--mode", "bruteforce"}).out));
    const auto r = run_cli({"cohomology", "--input", sample("q8_path.finite.json"), "--mode", "regular"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto reg = io::cohomology_result_from_json(json::parse(r.out));
    EXPECT_EQ(reg.h1, brute.h1);
    ASSERT_TRUE(reg.active.has_value());
    EXPECT_EQ(reg.active->a, 2u);
    EXPECT_EQ(reg.active->p, 1u);
    EXPECT_EQ(reg.class_sizes, brute.class_sizes);
}

TEST_F(Cli, CohomologyVector) {
    const auto r = run_cli({"cohomology", "--input", sample("segment.vector.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto res = io::cohomology_result_from_json(json::parse(r.out));
    EXPECT_EQ(res.mode, "vector");
    EXPECT_EQ(res.h0, 0u);
    EXPECT_EQ(res.h1, 1u);
    const auto reg = run_cli({"cohomology", "--input", sample("segment.vector.json"), "--mode", "regular"});
    ASSERT_EQ(reg.code, 0) << reg.err;
    EXPECT_EQ(io::cohomology_result_from_json(json::parse(reg.out)).h1, 1u);
}

TEST_F(Cli, CohomologyModeMismatch) {
    EXPECT_EQ(run_cli({"cohomology", "--input", sample("segment.vector.json"), "--mode", "bruteforce"}).code, 1);
    EXPECT_EQ(run_cli({"cohomology", "--input", sample("q8_path.finite.json"), "--mode", "vector"}).code, 1);
    EXPECT_EQ(run_cli({"cohomology", "--input", sample("q8_path.finite.json"), "--mode", "sideways"}).code, 1);
}

TEST_F(Cli, CohomologyBudgetExitsFour) {
    const auto r = run_cli({"cohomology", "--input", sample("q8_path.finite.json"), "--budget", "1"});
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST_F(Cli, CohomologyMaxOrder) {
    EXPECT_EQ(run_cli({"cohomology", "--input", sample("q8_path.finite.json"), "--max-order", "4"}).code, 1);
}

TEST_F(Cli, RegularModeOnIrregularInputExitsThree) {
    const auto g = vector_path({1, 1}, {1}, {{0, 1}});
    EXPECT_EQ(run_cli({"cohomology", "--input", write("irregular.json", io::to_json(g)), "--mode", "regular"}).code, 3);
}

TEST_F(Cli, SelfcheckPasses) {
    const auto a = run_cli({"selfcheck", "--seed", "0", "--count", "5"});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto b = run_cli({"selfcheck", "--seed", "0", "--count", "5"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_NO_THROW((void)json::parse(a.out));
}

TEST_F(Cli, SelfcheckBudgetExitsFour) {
    const auto r = run_cli({"selfcheck", "--seed", "0", "--count", "3", "--budget", "1"});
    EXPECT_EQ(r.code, 4) << r.err;
}
