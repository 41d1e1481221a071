#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "kisin/maxmin.hpp"
#include "kisin/module_file.hpp"
#include "scenarios.hpp"

using namespace kisin;

namespace {

const std::string kData = KISIN_TEST_DATA_DIR;

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"validate", kData + "/cyclic_2_1.yaml"}).code, 0);
    EXPECT_EQ(run({"validate", kData + "/height_violation.yaml"}).code, 1);
    EXPECT_EQ(run({"validate", kData + "/bad/malformed.yaml"}).code, 2);
    EXPECT_EQ(run({"validate", kData + "/bad/wrong_shape.yaml"}).code, 2);
    EXPECT_EQ(run({"validate", kData + "/missing.yaml"}).code, 2);
    EXPECT_EQ(run({"min", kData + "/unbounded.yaml"}).code, 1);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MaxOutputRoundTrips) {
    for (std::string method : {"census", "fixpoint", "closed-form"}) {
        Result r = run({"max", kData + "/cyclic_2_1.yaml", "--method", method});
        ASSERT_EQ(r.code, 0) << r.err;
        PhiModule m = parse_module_text(r.out);
        EXPECT_TRUE(is_maximal(m));
        EXPECT_EQ(m.frob(), max_r(load_module_file(kData + "/cyclic_2_1.yaml")).module.frob());
        EXPECT_NE(r.out.find("method: " + method), std::string::npos);
    }
}

TEST(Cli, JsonParses) {
    Result r = run({"--json", "min", kData + "/cyclic_2_1.yaml"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["kind"], "min");
    EXPECT_EQ(j["module"]["matrix"][1][0], "u^3");
    EXPECT_EQ(j["lattice_basis"][0][0], "u");
}

TEST(Cli, PosetExports) {
    Result r = run({"poset", kData + "/cyclic_2_1.yaml", "--dot", "-"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("digraph"), std::string::npos);
    r = run({"poset", kData + "/cyclic_2_1.yaml", "--csv", "-", "--method", "walk"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("index,divisors,det_valuation"), std::string::npos);
}

TEST(Cli, Simple) {
    Result r = run({"simple", "--n", "2,1", "--p", "2", "--r", "3", "--max"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("(1,0)"), std::string::npos);
    r = run({"simple", "--n", "1,1", "--p", "2", "--r", "3", "--info"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(run({"simple", "--n", "9", "--p", "2", "--r", "3", "--info"}).code, 1);
    EXPECT_EQ(run({"simple", "--n", "x", "--p", "2", "--info"}).code, 2);
}

TEST(Cli, ReproNames) {
    Result r = run({"repro", "--list"});
    ASSERT_EQ(r.code, 0);
    for (const auto& s : cli::scenario_registry()) EXPECT_NE(r.out.find(s.name), std::string::npos);
    EXPECT_EQ(run({"repro", "quotient-not-maximal"}).code, 0);
    EXPECT_NE(run({"repro", "no-such-scenario"}).code, 0);
}
