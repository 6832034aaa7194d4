#include <gtest/gtest.h>

#include <filesystem>

#include "causal_channels/errors.h"
#include "causal_channels/generators.h"
#include "causal_channels/json_io.h"

using namespace causal_channels;

namespace {

template <typename T, typename Load>
void expect_roundtrip(const T &value, Load load) {
    auto text = dump_deterministic(to_json(value));
    auto back = load(Json::parse(text));
    EXPECT_EQ(dump_deterministic(to_json(back)), text);
}

std::string error_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const InputError &e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(JsonIo, DeterministicWriterSortsKeysAndKeepsDigits) {
    Json j = {{"b", 0.1}, {"a", {1, 2}}, {"c", {{"z", true}, {"y", nullptr}}}};
    EXPECT_EQ(dump_deterministic(j, -1), "{\"a\":[1,2],\"b\":0.10000000000000001,\"c\":{\"y\":null,\"z\":true}}");
    EXPECT_EQ(dump_deterministic(Json(1.0), -1), "1.0");
    EXPECT_EQ(Json::parse(dump_deterministic(Json(1.0 / 3.0))).get<double>(), 1.0 / 3.0);
}

TEST(JsonIo, RoundTripsEveryDomainType) {
    Rng rng(1);
    auto spec = random_tp_joint_spec(2, 3, rng);
    expect_roundtrip(random_ginibre(2, 3, rng), [](const Json &j) { return matrix_from_json(j); });
    expect_roundtrip(random_cptp(2, 3, 2, rng), [](const Json &j) { return cpmap_from_json(j); });
    expect_roundtrip(spec.alice, [](const Json &j) { return instrument_from_json(j); });
    expect_roundtrip(spec.wiring, [](const Json &j) { return conddist_from_json(j); });
    expect_roundtrip(spec, [](const Json &j) { return joint_spec_from_json(j); });
    expect_roundtrip(random_locc_protocol("ABA", 2, 2, rng), [](const Json &j) { return protocol_from_json(j); });
    expect_roundtrip(random_sep_map(2, 3, rng), [](const Json &j) { return sepmap_from_json(j); });
    CausalOrder order(2, 2, {{{Party::A, 1}, {Party::B, 2}}});
    expect_roundtrip(order, [](const Json &j) { return order_from_json(j); });
    auto u = unroll_protocol(random_locc_protocol("ABAB", 2, 2, rng));
    expect_roundtrip(u.wiring, [](const Json &j) { return aggregate_from_json(j); });
    expect_roundtrip(random_one_way_mixture(2, 3, 2, 2, rng), [](const Json &j) { return process_from_json(j); });
}

TEST(JsonIo, LoadedValuesEqualOriginals) {
    Rng rng(2);
    auto inst = random_instrument(2, 2, 2, 3, 2, rng);
    EXPECT_EQ(instrument_from_json(to_json(inst)), inst);
    CausalOrder order(1, 2, {{{Party::B, 1}, {Party::A, 1}}});
    EXPECT_EQ(order_from_json(to_json(order)), order);
    auto w = random_one_way_mixture(2, 2, 2, 2, rng);
    EXPECT_EQ(process_from_json(to_json(w)), w);
}

TEST(JsonIo, SchemaErrorsNameTheField) {
    Json m = {{"rows", 2}, {"cols", 2}, {"data", {{1, 0}, {0, 0}, {0, 0}}}};
    auto msg = error_of([&] { matrix_from_json(m); });
    EXPECT_NE(msg.find("matrix.data"), std::string::npos) << msg;

    Json c = to_json(CpMap::identity(2));
    c.erase("out_dim");
    msg = error_of([&] { cpmap_from_json(c, "bob[1]"); });
    EXPECT_NE(msg.find("bob[1].out_dim"), std::string::npos) << msg;

    Json inst = to_json(random_instrument(2, 2, 2, 2, 2, std::uint64_t{3}));
    inst["elements"].erase("1");
    msg = error_of([&] { instrument_from_json(inst); });
    EXPECT_NE(msg.find("instrument.elements.1"), std::string::npos) << msg;

    Json dist = {{"input_alphabets", {2}}, {"output_alphabets", {1}}, {"table", {0.5, 0.6}}};
    msg = error_of([&] { conddist_from_json(dist); });
    EXPECT_NE(msg.find("wiring.table"), std::string::npos) << msg;

    Json order = {{"nodes", {{{"party", "C"}, {"round", 1}}}}, {"edges", Json::array()}};
    msg = error_of([&] { order_from_json(order); });
    EXPECT_NE(msg.find("order.nodes[0].party"), std::string::npos) << msg;
}

TEST(JsonIo, CheckedInNineStateFixtureMatchesProgrammatic) {
    auto j = read_json_file(std::string(CAUSAL_CHANNELS_FIXTURE_DIR) + "/nine_state.json");
    auto fx = nine_state_fixture();
    EXPECT_EQ(instrument_from_json(j["alice"], "alice"), fx.alice);
    EXPECT_EQ(instrument_from_json(j["bob"], "bob"), fx.bob);
}

TEST(JsonIo, MissingFileIsInputError) {
    EXPECT_THROW(read_json_file("/nonexistent/file.json"), InputError);
    auto path = std::filesystem::temp_directory_path() / "causal_channels_bad.json";
    write_text_file(path.string(), "{ not json");
    EXPECT_THROW(read_json_file(path.string()), InputError);
}
