#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "causal_channels/cli.h"
#include "causal_channels/json_io.h"

using namespace causal_channels;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "causal_channels");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const char *name) {
    return std::string(CAUSAL_CHANNELS_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST(Cli, DiscriminateNineReportsNineStates) {
    auto r = run({"discriminate-nine"});
    ASSERT_EQ(r.code, kExitPass) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    ASSERT_EQ(j["result"]["states"].size(), 9u);
    for (const auto &s : j["result"]["states"]) {
        EXPECT_LE(s["distance"].get<double>(), 1e-9);
        EXPECT_TRUE(s.contains("output_fidelity"));
    }
}

TEST(Cli, LoopProcessFailsWithStrategyWitness) {
    auto r = run({"check-procmat", fixture("loop_process.json")});
    EXPECT_EQ(r.code, kExitFail);
    auto j = Json::parse(r.out);
    EXPECT_FALSE(j["pass"].get<bool>());
    EXPECT_TRUE(j["result"]["witness"].contains("f"));
    EXPECT_TRUE(j["result"]["witness"].contains("g"));
}

TEST(Cli, FixtureCommandsPass) {
    std::vector<std::vector<std::string>> commands{
        {"verify-instrument", fixture("instrument.json")},
        {"compose", "one-way", fixture("one_way.json")},
        {"compose", "protocol", fixture("protocol.json")},
        {"compose", "ccstar", fixture("ccstar.json")},
        {"compose", "loop", fixture("nine_state.json")},
        {"compile-sep", fixture("sep.json")},
        {"check-causal", fixture("protocol_wiring.json"), fixture("protocol_order.json")},
        {"reconstruct-locc", fixture("reconstruct_memoryful.json")},
        {"check-procmat", fixture("one_way_process.json")},
        {"decompose-procmat", fixture("decompose_with_instruments.json")},
        {"probe-procmat", fixture("probe_quantum.json")},
    };
    for (const auto &c : commands) {
        auto r = run(c);
        EXPECT_EQ(r.code, kExitPass) << c[0] << " " << c.back() << "\n" << r.out << r.err;
    }
}

TEST(Cli, VerificationFailuresExitOne) {
    EXPECT_EQ(run({"check-causal", fixture("loop_wiring.json"), fixture("order_a_before_b.json")}).code, kExitFail);
    EXPECT_EQ(run({"decompose-procmat", fixture("loop_process.json")}).code, kExitFail);
    EXPECT_EQ(run({"probe-procmat", fixture("loop_process.json")}).code, kExitFail);
}

TEST(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(run({}).code, kExitInput);
    auto unknown = run({"frobnicate"});
    EXPECT_EQ(unknown.code, kExitInput);
    EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
    EXPECT_EQ(run({"compose", "sideways", fixture("one_way.json")}).code, kExitInput);
    EXPECT_EQ(run({"verify-instrument", fixture("missing.json")}).code, kExitInput);
    EXPECT_EQ(run({"verify-instrument", fixture("loop_process.json")}).code, kExitInput);
    EXPECT_EQ(run({"check-causal", fixture("loop_wiring.json"), fixture("protocol_order.json")}).code, kExitInput);
    EXPECT_EQ(run({"--tol", "-1", "discriminate-nine"}).code, kExitInput);
}

TEST(Cli, ReportsAreByteDeterministic) {
    auto a = run({"probe-procmat", fixture("probe_quantum.json"), "--seed", "5"});
    auto b = run({"probe-procmat", fixture("probe_quantum.json"), "--seed", "5"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find("duration"), std::string::npos);
    auto timed = run({"--timing", "discriminate-nine"});
    EXPECT_NE(timed.out.find("duration_s"), std::string::npos);
}

TEST(Cli, TolFlagAndEnvironmentFallback) {
    auto tight = run({"--tol", "1e-30", "discriminate-nine"});
    EXPECT_EQ(tight.code, kExitFail);
    setenv("CAUSAL_CHANNELS_TOL", "1e-30", 1);
    EXPECT_EQ(run({"discriminate-nine"}).code, kExitFail);
    EXPECT_EQ(run({"discriminate-nine", "--tol", "1e-9"}).code, kExitPass);
    setenv("CAUSAL_CHANNELS_TOL", "nope", 1);
    EXPECT_EQ(run({"discriminate-nine"}).code, kExitInput);
    unsetenv("CAUSAL_CHANNELS_TOL");
}

TEST(Cli, OutPathAndTextFormat) {
    auto path = std::filesystem::temp_directory_path() / "causal_channels_report.txt";
    auto r = run({"discriminate-nine", "--format", "text", "--out", path.string()});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_EQ(r.out, "discriminate-nine: PASS\n");
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("PASS distance[9]"), std::string::npos);
}
