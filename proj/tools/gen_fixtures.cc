#include <filesystem>
#include <iostream>

#include "causal_channels/generators.h"
#include "causal_channels/json_io.h"

using namespace causal_channels;

namespace {

void save(const std::filesystem::path &dir, const char *name, const Json &j) {
    write_text_file((dir / name).string(), dump_deterministic(j));
}

Json rounds_json(const std::vector<Instrument> &rounds) {
    Json out = Json::array();
    for (const auto &r : rounds) {
        out.push_back(to_json(r));
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_fixtures <output-dir>\n";
        return 2;
    }
    std::filesystem::path dir(argv[1]);
    std::filesystem::create_directories(dir);
    Rng rng(7);

    auto nine = nine_state_fixture();
    save(dir, "nine_state.json", {{"alice", to_json(nine.alice)}, {"bob", to_json(nine.bob)}});

    save(dir, "instrument.json", to_json(random_instrument(2, 2, 2, 3, 2, rng)));

    auto measure = random_instrument(2, 2, 1, 3, 2, rng);
    Json bob = Json::array();
    for (int k = 0; k < 3; k++) {
        bob.push_back(to_json(random_cptp(2, 2, 2, rng)));
    }
    save(dir, "one_way.json", {{"alice", to_json(measure)}, {"bob", bob}});

    auto protocol = random_locc_protocol("ABAB", 2, 2, rng);
    save(dir, "protocol.json", to_json(protocol));
    save(dir, "ccstar.json", to_json(random_tp_joint_spec(2, 2, rng)));
    save(dir, "sep.json", to_json(random_sep_map(2, 3, rng)));

    auto u = unroll_protocol(protocol);
    save(dir, "protocol_wiring.json", to_json(u.wiring));
    save(dir, "protocol_order.json", to_json(u.order));
    save(dir, "loop_wiring.json", to_json(AggregateWiring{1, 1, loop_wiring(2, 2)}));
    save(dir, "order_a_before_b.json", to_json(CausalOrder(1, 1, {{{Party::A, 1}, {Party::B, 1}}})));

    auto memo = memoryful_fixture(rng);
    save(dir, "reconstruct_memoryful.json",
         {{"alice", rounds_json(memo.alice_rounds)},
          {"bob", rounds_json(memo.bob_rounds)},
          {"wiring", to_json(memo.wiring)},
          {"order", to_json(memo.order)}});

    save(dir, "loop_process.json", to_json(loop_process(2, 2, 2, 2)));
    auto mixture = random_one_way_mixture(2, 2, 2, 2, rng);
    save(dir, "one_way_process.json", to_json(mixture));
    save(dir, "decompose_with_instruments.json",
         {{"process", to_json(mixture)},
          {"alice", to_json(random_instrument(2, 2, 2, 2, 2, rng))},
          {"bob", to_json(random_instrument(2, 2, 2, 2, 2, rng))}});
    save(dir, "probe_quantum.json",
         {{"dims", {{"i_a", 2}, {"o_a", 2}, {"i_b", 2}, {"o_b", 2}}}, {"matrix", to_json(embed_diagonal(mixture))}});
    return 0;
}
