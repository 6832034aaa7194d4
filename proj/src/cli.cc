#include "causal_channels/cli.h"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "causal_channels/acceptance.h"
#include "causal_channels/errors.h"
#include "causal_channels/json_io.h"

namespace causal_channels {

namespace {

struct Options {
    std::optional<double> tol;
    std::uint64_t seed = kAcceptanceSeed;
    std::string out_path;
    std::string format = "json";
    bool timing = false;
    std::string compose_mode;
    std::string file;
    std::string second_file;
};

struct Outcome {
    Report report;
    Json result;
};

double tolerance(const Options &opt, double fallback) {
    return opt.tol ? *opt.tol : fallback;
}

std::string join_witness(const CausalWitness &w, const CausalOrder &order) {
    std::ostringstream s;
    s << "k=" << w.k << " l=" << w.l << " slot=" << to_string(order.label(w.slot)) << " deviation=" << w.deviation;
    return s.str();
}

std::string strategy_text(const StrategyPair &s) {
    std::ostringstream out;
    out << "f=(";
    for (std::size_t k = 0; k < s.f.size(); k++) {
        out << (k ? "," : "") << s.f[k];
    }
    out << ") g=(";
    for (std::size_t k = 0; k < s.g.size(); k++) {
        out << (k ? "," : "") << s.g[k];
    }
    out << ") value=" << s.value;
    return out.str();
}

Outcome run_verify_instrument(const Options &opt) {
    auto inst = instrument_from_json(read_json_file(opt.file));
    double tol = tolerance(opt, kDefaultTol);
    auto check = check_instrument(inst, tol);
    Outcome o;
    for (std::size_t i = 0; i < check.defects.size(); i++) {
        o.report.add("tp_defect[" + std::to_string(i) + "]", check.defects[i], tol);
    }
    o.result = {{"defects", check.defects}};
    return o;
}

Outcome flagged_outcome(const FlaggedMap &m, double tol) {
    Outcome o;
    o.report.add("tp_defect", m.tp_defect, tol);
    o.result = {{"map", to_json(m.map)}, {"tp_defect", m.tp_defect}};
    return o;
}

Outcome run_compose(const Options &opt) {
    auto j = read_json_file(opt.file);
    double tol = tolerance(opt, kDefaultTol);
    if (opt.compose_mode == "one-way") {
        auto alice = instrument_from_json(j.contains("alice") ? j["alice"] : Json(), "alice");
        if (!j.contains("bob") || !j["bob"].is_array()) {
            throw InputError("bob: expected an array of maps, one per Alice outcome");
        }
        std::vector<CpMap> bob;
        for (std::size_t k = 0; k < j["bob"].size(); k++) {
            bob.push_back(cpmap_from_json(j["bob"][k], "bob[" + std::to_string(k) + "]"));
        }
        return flagged_outcome(flag(compose_one_way(alice, bob)), tol);
    }
    if (opt.compose_mode == "protocol") {
        return flagged_outcome(flag(compose_locc_protocol(protocol_from_json(j))), tol);
    }
    if (opt.compose_mode == "ccstar") {
        return flagged_outcome(compose_ccstar(joint_spec_from_json(j)), tol);
    }
    auto alice = instrument_from_json(j.contains("alice") ? j["alice"] : Json(), "alice");
    auto bob = instrument_from_json(j.contains("bob") ? j["bob"] : Json(), "bob");
    return flagged_outcome(compose_loop(alice, bob), tol);
}

Outcome run_compile_sep(const Options &opt) {
    auto sep = sepmap_from_json(read_json_file(opt.file));
    double tol = tolerance(opt, kDefaultTol);
    auto target = sep.joint_map();
    Outcome o;
    auto &tp = o.report.add("input_tp_defect", tp_defect(target), tol);
    if (!tp.pass) {
        tp.witness = "input is not trace preserving";
        return o;
    }
    auto loop = sep_to_locc_star(sep, tol);
    double defect = 0.0;
    for (const auto *inst : {&loop.alice, &loop.bob}) {
        for (double d : check_instrument(*inst, tol).defects) {
            defect = std::max(defect, d);
        }
    }
    o.report.add("instrument_defect", defect, tol);
    o.report.add("loop_distance", choi_distance(compose_loop(loop.alice, loop.bob).map, target), tolerance(opt, 1e-8));
    o.result = {{"alice", to_json(loop.alice)}, {"bob", to_json(loop.bob)}};
    return o;
}

Outcome run_discriminate_nine(const Options &opt) {
    double tol = tolerance(opt, kDefaultTol);
    auto report = verify_nine_state_discrimination(tol);
    Outcome o;
    for (const auto &r : report.records) {
        o.report.add("distance[" + std::to_string(r.state) + "]", r.distance, tol);
    }
    o.report.add("instrument_defect", report.instrument_defect, tolerance(opt, 1e-12));
    o.report.add("joint_tp_defect", report.joint_tp_defect, tol);
    o.result = to_json(report);
    return o;
}

Outcome run_check_causal(const Options &opt) {
    auto wiring = aggregate_from_json(read_json_file(opt.file));
    auto order = order_from_json(read_json_file(opt.second_file));
    double tol = tolerance(opt, 1e-12);
    auto check = respects_causal_order(wiring, order, tol);
    Outcome o;
    auto &c = o.report.add("signaling_deviation", check.witness ? check.witness->deviation : 0.0, tol);
    if (check.witness) {
        c.witness = join_witness(*check.witness, order);
        o.result = {{"witness",
                     {{"k", check.witness->k},
                      {"l", check.witness->l},
                      {"slot", to_string(order.label(check.witness->slot))},
                      {"deviation", check.witness->deviation}}}};
    }
    return o;
}

Outcome run_reconstruct(const Options &opt) {
    auto j = read_json_file(opt.file);
    auto rounds = [&](const char *name) {
        if (!j.contains(name) || !j[name].is_array()) {
            throw InputError(std::string(name) + ": expected an array of instruments");
        }
        std::vector<Instrument> out;
        for (std::size_t k = 0; k < j[name].size(); k++) {
            out.push_back(instrument_from_json(j[name][k], std::string(name) + "[" + std::to_string(k) + "]"));
        }
        return out;
    };
    auto alice = rounds("alice");
    auto bob = rounds("bob");
    auto wiring = aggregate_from_json(j.contains("wiring") ? j["wiring"] : Json(), "wiring");
    auto order = order_from_json(j.contains("order") ? j["order"] : Json(), "order");
    double tol = tolerance(opt, 1e-8);
    Outcome o;
    auto check = respects_causal_order(wiring, order);
    auto &c = o.report.add("signaling_deviation", check.witness ? check.witness->deviation : 0.0, 1e-12);
    if (check.witness) {
        c.witness = join_witness(*check.witness, order);
        return o;
    }
    auto protocol = reconstruct_locc(alice, bob, wiring, order, kDefaultTol);
    auto direct = compose_multiround(alice, bob, wiring.dist);
    o.report.add("alternation_violations", protocol.is_alternating() ? 0.0 : 1.0, 0.0);
    o.report.add("choi_distance", choi_distance(compose_locc_protocol(protocol), direct.map), tol);
    o.result = {{"protocol", to_json(protocol)}};
    return o;
}

Outcome run_check_procmat(const Options &opt) {
    auto w = process_from_json(read_json_file(opt.file));
    double tol = tolerance(opt, 1e-12);
    auto check = validate_classical_process(w, tol);
    Outcome o;
    auto &c = o.report.add("max_deviation", check.max_deviation, tol);
    o.result = {{"strategies", check.strategies}};
    if (check.witness) {
        c.witness = strategy_text(*check.witness);
        o.result["witness"] = to_json(*check.witness);
    }
    return o;
}

Outcome run_decompose_procmat(const Options &opt) {
    auto j = read_json_file(opt.file);
    bool with_instruments = j.contains("process");
    auto w = process_from_json(with_instruments ? j["process"] : j);
    double tol = tolerance(opt, 1e-7);
    Outcome o;
    auto check = validate_classical_process(w);
    if (!check.valid) {
        auto &c = o.report.add("max_deviation", check.max_deviation, 1e-12);
        if (check.witness) {
            c.witness = strategy_text(*check.witness);
        }
        return o;
    }
    auto dec = causal_decompose(w);
    o.report.add("recombination_error", dec.recombination_error, tol);
    o.result = to_json(dec);
    if (with_instruments) {
        auto alice = instrument_from_json(j.contains("alice") ? j["alice"] : Json(), "alice");
        auto bob = instrument_from_json(j.contains("bob") ? j["bob"] : Json(), "bob");
        auto mix = extract_one_way_mixture(dec, alice, bob);
        o.report.add(
            "mixture_distance", choi_distance(mix.joint_map(), compose_via_classical_process(w, alice, bob)),
            tolerance(opt, 1e-8));
    }
    return o;
}

Outcome run_probe_procmat(const Options &opt) {
    auto j = read_json_file(opt.file);
    ComplexMatrix w;
    ProcessDims dims;
    if (j.contains("matrix")) {
        const Json &d = j.contains("dims") ? j["dims"] : Json();
        auto dim = [&](const char *name) {
            if (!d.is_object() || !d.contains(name) || !d[name].is_number_integer() || d[name].get<long long>() < 1) {
                throw InputError(std::string("dims.") + name + ": expected a positive integer");
            }
            return d[name].get<std::size_t>();
        };
        dims = {dim("i_a"), dim("o_a"), dim("i_b"), dim("o_b")};
        w = matrix_from_json(j["matrix"], "matrix");
        if (static_cast<std::size_t>(w.rows()) != dims.total() || w.rows() != w.cols()) {
            throw InputError("matrix: expected a square matrix of dimension " + std::to_string(dims.total()));
        }
    } else {
        auto p = process_from_json(j);
        dims = {p.n_ia(), p.n_oa(), p.n_ib(), p.n_ob()};
        w = embed_diagonal(p);
    }
    double tol = tolerance(opt, kDefaultTol);
    auto report = probe_quantum_process(w, dims, 16, opt.seed, tol);
    Outcome o;
    auto &c = o.report.add("max_deviation", report.max_deviation, tol);
    for (const auto &p : report.probes) {
        if (p.deviation == report.max_deviation && report.max_deviation > tol) {
            c.witness = p.kind + " probe " + std::to_string(p.index);
            break;
        }
    }
    o.result = to_json(report);
    return o;
}

Outcome run_selftest(const Options &opt) {
    Outcome o;
    Json criteria = Json::array();
    for (auto &c : run_acceptance(opt.seed)) {
        std::string prefix = "c" + std::to_string(c.id) + ".";
        for (auto check : c.report.checks) {
            check.name = prefix + check.name;
            o.report.checks.push_back(std::move(check));
        }
        criteria.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.report.pass()}});
    }
    o.result = {{"criteria", criteria}};
    return o;
}

Json report_json(const std::string &command, const Outcome &o, bool timing) {
    Json checks = Json::array();
    for (const auto &c : o.report.checks) {
        if (c.timing && !timing && c.pass) {
            continue;
        }
        Json e = {{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}};
        if (!c.witness.empty()) {
            e["witness"] = c.witness;
        }
        checks.push_back(std::move(e));
    }
    Json j = {{"command", command}, {"pass", o.report.pass()}, {"checks", checks}};
    if (!o.result.is_null()) {
        j["result"] = o.result;
    }
    if (timing) {
        j["duration_s"] = o.report.seconds;
    }
    return j;
}

std::string report_text(const std::string &command, const Outcome &o) {
    std::ostringstream s;
    s << std::setprecision(3);
    for (const auto &c : o.report.checks) {
        s << (c.pass ? "PASS " : "FAIL ") << c.name << " " << c.value << " <= " << c.threshold;
        if (!c.witness.empty()) {
            s << "  [" << c.witness << "]";
        }
        s << "\n";
    }
    s << command << ": " << (o.report.pass() ? "PASS" : "FAIL") << " (" << std::fixed << o.report.seconds
      << " s)\n";
    return s.str();
}

bool is_input_error(const Error &e) {
    return dynamic_cast<const InputError *>(&e) || dynamic_cast<const DimensionError *>(&e) ||
           dynamic_cast<const PreconditionError *>(&e) || dynamic_cast<const DistributionError *>(&e) ||
           dynamic_cast<const NotAPartialOrderError *>(&e) || dynamic_cast<const SymmetryError *>(&e);
}

}  // namespace

int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Options opt;
    CLI::App app{"Verification tools for bipartite joint quantum operations", "causal_channels"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--tol", opt.tol, "Tolerance override for the subcommand's checks")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "Seed for randomized probes and the self-test");
    app.add_option("--out", opt.out_path, "Write the report to this path");
    app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timing", opt.timing, "Include wall-clock durations in JSON reports");

    std::map<std::string, std::function<Outcome(const Options &)>> runners;
    auto file_command = [&](const char *name, const char *help, auto runner) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("file", opt.file, "Input JSON file")->required();
        runners[name] = runner;
        return sub;
    };
    file_command("verify-instrument", "Check that an instrument sums to a CPTP map per input", run_verify_instrument);
    auto *compose = app.add_subcommand("compose", "Compose a joint map and report its TP defect");
    compose->add_option("mode", opt.compose_mode, "one-way, protocol, ccstar or loop")
        ->required()
        ->check(CLI::IsMember({"one-way", "protocol", "ccstar", "loop"}));
    compose->add_option("file", opt.file, "Input JSON file")->required();
    runners["compose"] = run_compose;
    file_command("compile-sep", "Compile a separable map into loop-wired local instruments", run_compile_sep);
    app.add_subcommand("discriminate-nine", "Verify the nine-state discrimination loop");
    runners["discriminate-nine"] = run_discriminate_nine;
    auto *causal = app.add_subcommand("check-causal", "Check a wiring against a causal order");
    causal->add_option("wiring", opt.file, "Aggregate wiring JSON")->required();
    causal->add_option("order", opt.second_file, "Causal order JSON")->required();
    runners["check-causal"] = run_check_causal;
    file_command("reconstruct-locc", "Rebuild an alternating protocol from a respecting wiring", run_reconstruct);
    file_command("check-procmat", "Validate a classical process by strategy enumeration", run_check_procmat);
    file_command("decompose-procmat", "Split a classical process into one-way parts", run_decompose_procmat);
    file_command("probe-procmat", "Probe a process matrix with local channels", run_probe_procmat);
    app.add_subcommand("selftest", "Run the acceptance criteria");
    runners["selftest"] = run_selftest;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitInput;
    }

    if (!opt.tol) {
        if (const char *env = std::getenv("CAUSAL_CHANNELS_TOL")) {
            char *end = nullptr;
            double v = std::strtod(env, &end);
            if (end == env || *end != '\0' || !(v > 0) || !std::isfinite(v)) {
                err << "error: CAUSAL_CHANNELS_TOL must be a positive number, got \"" << env << "\"\n";
                return kExitInput;
            }
            opt.tol = v;
        }
    }

    std::string command = app.get_subcommands().front()->get_name();
    Outcome outcome;
    auto start = std::chrono::steady_clock::now();
    try {
        outcome = runners.at(command)(opt);
    } catch (const Error &e) {
        if (is_input_error(e)) {
            err << "error: " << e.what() << "\n";
            return kExitInput;
        }
        outcome = Outcome{};
        outcome.report.add("completed", 1.0, 0.0).witness = e.what();
    }
    outcome.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::string text = opt.format == "json" ? dump_deterministic(report_json(command, outcome, opt.timing))
                                            : report_text(command, outcome);
    if (opt.out_path.empty()) {
        out << text;
    } else {
        try {
            write_text_file(opt.out_path, text);
        } catch (const InputError &e) {
            err << "error: " << e.what() << "\n";
            return kExitInput;
        }
        out << command << ": " << (outcome.report.pass() ? "PASS" : "FAIL") << "\n";
    }
    return outcome.report.pass() ? kExitPass : kExitFail;
}

}  // namespace causal_channels
