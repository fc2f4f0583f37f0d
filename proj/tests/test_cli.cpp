#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "hypcheck/cli.hpp"

using namespace hypcheck;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name)
{
    auto d = fs::temp_directory_path() / ("hypcheck_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

int run(const std::string& args)
{
    std::string cmd = std::string(HYPCHECK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json read_json(const fs::path& p)
{
    std::ifstream f(p);
    return nlohmann::json::parse(f);
}

} // namespace

TEST(CliBinary, VerifyDigitLemma)
{
    auto d = scratch("verify");
    EXPECT_EQ(run("verify-digit-lemma --family 3x13 --r-max 14 --out " + (d / "a.json").string()), 0);
    auto j = read_json(d / "a.json");
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["r_max"], 14);
    EXPECT_EQ(run("verify-digit-lemma --family 4x5 --r-max 7"), 0);
    EXPECT_EQ(run("verify-digit-lemma --family 28 --r-max 3"), 0);
}

TEST(CliBinary, ExitCodes)
{
    EXPECT_EQ(run("verify-digit-lemma --family 5x7 --r-max 3"), 2);
    EXPECT_EQ(run("verify-digit-lemma"), 2);
    EXPECT_EQ(run("no-such-command"), 2);
    EXPECT_EQ(run("verify-digit-lemma --family 3x13 --r-max 31"), 3);
    EXPECT_EQ(run("verify-digit-lemma --family 4x5 --r-max 19"), 3);
    EXPECT_EQ(run("trace-table --family 3x13 --field-degree 14"), 3);
    EXPECT_EQ(run("trace-table --family 3x13 --field-degree 3"), 2); // 3 does not divide 7
    EXPECT_EQ(run("trace-table --family 3x13 --field-degree 4 --mode fuzzy"), 2);
    EXPECT_EQ(run("verify-digit-lemma --family 3x13 --workers 0"), 2);
}

TEST(CliBinary, TraceTableWritesFiles)
{
    auto d = scratch("trace");
    EXPECT_EQ(run("trace-table --family 3x13 --field-degree 2 --out " + d.string()), 0);
    ASSERT_TRUE(fs::exists(d / "trace_3x13_q4.csv"));
    auto stats = read_json(d / "trace_3x13_q4_stats.json");
    EXPECT_EQ(stats["q"], 4);
    EXPECT_EQ(run("trace-table --family 4x5 --field-degree 2 --mode both --out " + d.string()), 0);
    EXPECT_TRUE(fs::exists(d / "trace_4x5_q9_exact.csv"));
    EXPECT_TRUE(fs::exists(d / "trace_4x5_q9_float.csv"));
    EXPECT_TRUE(read_json(d / "trace_4x5_q9_stats.json")["cross_mode_pass"].get<bool>());
}

TEST(CliBinary, ClassifyOutput)
{
    auto d = scratch("classify");
    EXPECT_EQ(run("classify --family 28 --out " + (d / "c.json").string()), 0);
    auto j = read_json(d / "c.json");
    EXPECT_EQ(j["n"], 12);
    EXPECT_EQ(j["inertia"]["N"], 11);
    EXPECT_EQ(j["primitivity"], "NOT_INDUCED");
    EXPECT_EQ(run("classify --p 2 --A 3 --B 5 --out " + (d / "d.json").string()), 0);
    EXPECT_EQ(read_json(d / "d.json")["n"], 8);
    EXPECT_EQ(run("classify --p 2"), 2);
}

TEST(CliBinary, CacheDirectoryIsUsed)
{
    auto d = scratch("cache");
    std::string cmd = std::string("HYPCHECK_CACHE_DIR=") + (d / "fields").string() + " " + HYPCHECK_CLI_PATH +
                      " trace-table --family 28 --field-degree 2 --out " + d.string() + " > /dev/null 2>&1";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_TRUE(fs::exists(d / "fields" / "F3_2.fld"));
}

TEST(CliFunctions, ReportsIndependentOfWorkers)
{
    cli::RunConfig a;
    a.family = "4x5";
    a.r_max = 9;
    a.workers = 1;
    auto b = a;
    b.workers = 5;
    std::ostringstream oa, ob;
    EXPECT_EQ(cli::verify_digit_lemma(a, oa), cli::ok);
    EXPECT_EQ(cli::verify_digit_lemma(b, ob), cli::ok);
    auto ja = nlohmann::json::parse(oa.str()), jb = nlohmann::json::parse(ob.str());
    cli::detail::strip_timings(ja);
    cli::detail::strip_timings(jb);
    EXPECT_EQ(ja, jb);
}

TEST(CliFunctions, ParsersAndGuard)
{
    EXPECT_EQ(cli::parse_mode("float"), cli::Mode::floating);
    EXPECT_THROW(cli::parse_mode("x"), error);
    EXPECT_EQ(cli::parse_family("28").p, 3u);
    EXPECT_EQ(cli::default_r_max(kubert::DigitFamily::f3x13), 24u);
    EXPECT_EQ(cli::default_r_max(kubert::DigitFamily::f4x5), 14u);
    std::ostringstream err;
    EXPECT_EQ(cli::guarded([]() -> int { throw error(errc::exact_cap_exceeded, "cap"); }, err), cli::resource_cap);
    EXPECT_EQ(cli::guarded([]() -> int { throw error(errc::invalid_spec, "bad"); }, err), cli::usage);
    EXPECT_EQ(cli::guarded([] { return 0; }, err), cli::ok);
    EXPECT_NE(err.str().find("cap"), std::string::npos);
}
