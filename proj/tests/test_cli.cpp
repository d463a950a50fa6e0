#include <chowcalc/cli.hpp>

#include <gtest/gtest.h>

#include <cstdio>

using namespace chowcalc;
using cli::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "chowcalc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const json* find_check(const json& report, const std::string& name) {
    for (const auto& c : report["checks"])
        if (c["name"] == name) return &c;
    return nullptr;
}

}  // namespace

TEST(Cli, CyJson) {
    Result r = run_cli({"cy", "--degrees", "5", "--dim", "3", "--with-p", "--output", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    json rep = json::parse(r.out);
    EXPECT_EQ(rep["command"], "cy");
    EXPECT_EQ(rep["results"]["N"], "120");
    EXPECT_EQ(rep["results"]["a"], json({"24", "58", "37", "6"}));
    EXPECT_EQ(rep["results"]["P"]["H1^3*H2^3"], "-6");
    const json* coeff2 = find_check(rep, "coeff2");
    ASSERT_NE(coeff2, nullptr);
    EXPECT_TRUE((*coeff2)["pass"].get<bool>());
}

TEST(Cli, CyChernInputAndNonCy) {
    Result r = run_cli({"cy", "--chern", "6,9", "-n", "3", "--output", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["results"]["N"], "36");

    Result bad = run_cli({"cy", "--degrees", "4", "-n", "3"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_TRUE(bad.out.empty());
    EXPECT_NE(bad.err.find("Calabi-Yau"), std::string::npos);
}

TEST(Cli, HypText) {
    Result r = run_cli({"hyp", "-n", "3", "-d", "6", "--output", "text"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("lambda:\n  1 = 720\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("gamma_coefficient = -1/720"), std::string::npos);
}

TEST(Cli, VerifyStirling) {
    Result r = run_cli({"verify", "--suite", "stirling", "--m-max", "12", "--output", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    json rep = json::parse(r.out);
    int identities = 0;
    for (const auto& c : rep["checks"])
        if (c["name"].get<std::string>().rfind("identity_sum_", 0) == 0 && c["pass"].get<bool>()) ++identities;
    EXPECT_EQ(identities, 11);
}

TEST(Cli, Lines) {
    json quintic = json::parse(run_cli({"lines", "--degrees", "5", "--ambient", "4", "--output", "json"}).out);
    EXPECT_EQ(quintic["results"]["expected_dim"], 0);
    EXPECT_EQ(quintic["results"]["count"], "2875");
    json cubic = json::parse(run_cli({"lines", "--degrees", "3", "--ambient", "3", "--output", "json"}).out);
    EXPECT_EQ(cubic["results"]["count"], "27");
    json ci = json::parse(run_cli({"lines", "--degrees", "3,3", "--ambient", "5", "--output", "json"}).out);
    EXPECT_EQ(ci["results"]["expected_dim"], 0);
    EXPECT_TRUE(ci["results"].contains("count"));
    EXPECT_TRUE(ci["results"].contains("note"));
}

TEST(Cli, Partitions) {
    Result r = run_cli({"partitions", "-r", "4", "-s", "2", "--output", "json"});
    ASSERT_EQ(r.code, 0);
    json rep = json::parse(r.out);
    EXPECT_EQ(rep["results"]["count"], 7);
    EXPECT_EQ(rep["results"]["partitions"][0], "{1,2,3};{4}");
}

TEST(Cli, UsageErrors) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {}, {"bogus"}, {"cy", "-n", "3"}, {"hyp", "-n", "3"}, {"cy", "--degrees", "5", "-n", "3", "--output", "xml"},
             {"verify", "--suite", "allgamma"}, {"hyp", "-n", "3", "-d", "4"}, {"partitions", "-r", "2", "-s", "3"}}) {
        Result r = run_cli(args);
        EXPECT_EQ(r.code, 1) << args.size();
        EXPECT_TRUE(r.out.empty());
        EXPECT_FALSE(r.err.empty());
    }
}

TEST(Cli, ExitCodeMapping) {
    json rep{{"checks", json::array({{{"status", "pass"}}, {{"status", "inconclusive"}}})}};
    EXPECT_EQ(cli::exit_code(rep), 0);
    rep["checks"].push_back({{"status", "fail"}});
    EXPECT_EQ(cli::exit_code(rep), 2);
}

TEST(Cli, DeterministicAndRoundTrip) {
    std::vector<std::string> args{"hyp", "-n", "3", "-d", "5", "--with-p", "--output", "json"};
    Result a = run_cli(args), b = run_cli(args);
    EXPECT_EQ(a.out, b.out);
    json parsed = json::parse(a.out);
    EXPECT_EQ(parsed.dump(2) + "\n", a.out);
    Result t1 = run_cli({"cy", "--degrees", "3,3", "-n", "3"}), t2 = run_cli({"cy", "--degrees", "3,3", "-n", "3"});
    EXPECT_EQ(t1.out, t2.out);
}

TEST(Cli, OutFile) {
    std::string path = ::testing::TempDir() + "chowcalc_out.json";
    Result r = run_cli({"partitions", "-r", "3", "-s", "2", "--output", "json", "--out", path});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    json rep = json::parse(in);
    EXPECT_EQ(rep["results"]["count"], 3);
    std::remove(path.c_str());
}
