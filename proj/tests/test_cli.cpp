#include "invarank/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using invarank::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    auto p = std::filesystem::temp_directory_path() / ("invarank_test_" + name);
    std::ofstream(p) << content;
    return p.string();
}

}  // namespace

TEST(Cli, BoundSp6OnCube) {
    auto r = invoke({"bound", "sp", "3", "E3(V)", "--field", "q", "--seed", "7"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.json();
    EXPECT_EQ(j["bound"], 2);
    EXPECT_EQ(j["N"], 20);
    EXPECT_EQ(j["m"], 21);
    EXPECT_EQ(j["r"], 18);
    EXPECT_EQ(j["star_certified"], true);
}

TEST(Cli, BoundDefaultsToLargePrimeForRandomEval) {
    auto r = invoke({"bound", "sl", "2", "V + S2(V)", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["bound"], 2);
    EXPECT_EQ(r.json()["strategy"], "RandomEval");
    auto s = invoke({"bound", "sl", "2", "V + S2(V)", "--strategy", "symbolic"});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_EQ(s.json()["bound"], 2);
    EXPECT_TRUE(s.json()["failure_bound"].is_null());
}

TEST(Cli, BoundWarnsWithoutSquareZeroBasis) {
    auto r = invoke({"bound", "gl", "2", "V + S2(V)*", "--strategy", "symbolic"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.json()["bound"], 1);
    EXPECT_EQ(r.json()["star_certified"], false);
    EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, DeterministicOutput) {
    std::vector<std::string> args{"rank", "sp", "2", "S2(V)", "--seed", "99", "--field", "q"};
    auto a = invoke(args), b = invoke(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, StarCheckAndBasis) {
    auto r = invoke({"star-check", "sl", "4"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.json()["satisfied"], true);
    auto b = invoke({"basis", "sl", "2", "--squarezero"});
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(b.json()["labels"][2], "E(2,2)-E(1,1)-E(1,2)+E(2,1)");
    auto g = invoke({"star-check", "gl", "2"});
    ASSERT_EQ(g.code, 0);
    EXPECT_EQ(g.json()["satisfied"], false);
}

TEST(Cli, DomainErrorsExitOne) {
    auto r = invoke({"basis", "gl", "3", "--squarezero"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
    EXPECT_EQ(invoke({"bound", "sl", "2", "S2(", "--seed", "1"}).code, 1);
    EXPECT_EQ(invoke({"identity-decomp", "3"}).code, 1);
    EXPECT_EQ(invoke({"classify2x2", "/nonexistent/matrix.json"}).code, 1);
    auto bad = temp_file("bad.json", "{\"field\": \"q\", \"rows\": [[\"1\"], ");
    EXPECT_EQ(invoke({"classify2x2", bad}).code, 1);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"bound", "sp", "3"}).code, 2);
    EXPECT_EQ(invoke({"bound", "sp", "3", "E3(V)"}).code, 2);  // random strategy needs --seed
    EXPECT_EQ(invoke({"basis", "sl", "two"}).code, 2);
    EXPECT_EQ(invoke({"star-check", "sl", "3", "--output", "xml"}).code, 2);
}

TEST(Cli, LfAndIdentityDecomposition) {
    auto gram = temp_file("j3.json", R"({"field": "p:2", "rows": [["0","0","0"],["1","0","0"],["0","1","0"]]})");
    auto r = invoke({"lf", gram});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["dimension"], 2);
    EXPECT_EQ(r.json()["abelian"], true);
    auto d = invoke({"identity-decomp", "4"});
    ASSERT_EQ(d.code, 0);
    EXPECT_EQ(d.json()["count"], 6);
    EXPECT_EQ(d.json()["sum_is_identity"], true);
}

TEST(Cli, Classify2x2) {
    auto m = temp_file("jordan.json", R"({"field": "q", "rows": [["1","0"],["1","1"]]})");
    auto r = invoke({"classify2x2", m});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["class"], "TranscendentalOnly");
    auto t = invoke({"classify2x2", m, "--output", "text"});
    EXPECT_NE(t.out.find("class: TranscendentalOnly"), std::string::npos);
}

TEST(Cli, Invcheck) {
    auto r = invoke({"invcheck", "I2", "sl", "2", "V + S2(V)", "--seed", "5", "--samples", "25"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["all_annihilated"], true);
    EXPECT_EQ(r.json()["group_invariant"], true);
    auto g = invoke({"invcheck", "I2", "gl", "2", "V + S2(V)", "--seed", "5"});
    ASSERT_EQ(g.code, 0) << g.err;
    EXPECT_EQ(g.json()["all_annihilated"], false);
    EXPECT_EQ(invoke({"invcheck", "I2", "sl", "2", "V + S2(V)"}).code, 2);
    EXPECT_EQ(invoke({"invcheck", "I9", "sl", "2", "V", "--seed", "1"}).code, 1);
}
