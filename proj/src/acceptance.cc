#include "causal_channels/acceptance.h"

#include <chrono>
#include <functional>
#include <cmath>
#include <random>
#include <sstream>

#include "causal_channels/errors.h"
#include "causal_channels/generators.h"

namespace causal_channels {

Check &Report::add(std::string name, double value, double threshold) {
    Check c;
    c.name = std::move(name);
    c.value = value;
    c.threshold = threshold;
    c.pass = std::isfinite(value) && value <= threshold;
    checks.push_back(std::move(c));
    return checks.back();
}

Check &Report::add_timing(std::string name, double seconds, double budget) {
    auto &c = add(std::move(name), seconds, budget);
    c.timing = true;
    return c;
}

bool Report::pass() const {
    if (checks.empty()) {
        return false;
    }
    for (const auto &c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string list(const std::vector<std::size_t> &v) {
    std::ostringstream out;
    out << '(';
    for (std::size_t k = 0; k < v.size(); k++) {
        out << (k ? "," : "") << v[k];
    }
    out << ')';
    return out.str();
}

// Brute force over strategy codes: digit k of a code is the response to input k.
bool process_oracle(const ClassicalProcess &w, double tol) {
    for (double v : w.table()) {
        if (!(v >= -tol)) {
            return false;
        }
    }
    auto pow = [](std::size_t b, std::size_t e) {
        std::size_t r = 1;
        while (e-- > 0) {
            r *= b;
        }
        return r;
    };
    std::size_t fa = pow(w.n_oa(), w.n_ia());
    std::size_t gb = pow(w.n_ob(), w.n_ib());
    for (std::size_t f = 0; f < fa; f++) {
        for (std::size_t g = 0; g < gb; g++) {
            double total = 0.0;
            std::size_t fcode = f;
            for (std::size_t ia = 0; ia < w.n_ia(); ia++, fcode /= w.n_oa()) {
                std::size_t gcode = g;
                for (std::size_t ib = 0; ib < w.n_ib(); ib++, gcode /= w.n_ob()) {
                    total += w(ia, ib, fcode % w.n_oa(), gcode % w.n_ob());
                }
            }
            if (std::abs(total - 1.0) > tol) {
                return false;
            }
        }
    }
    return true;
}

// ceil of the largest eigenvalue of tr_out of a Choi operator, at least 1.
std::size_t scale_oracle(const std::vector<ProductTerm> &terms) {
    double worst = 0.0;
    for (const auto &t : terms) {
        auto choi = choi_of(t.a);
        ComplexMatrix reduced = partial_trace(choi.matrix, {choi.in_dim, choi.out_dim}, {1});
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (reduced + reduced.adjoint()), Eigen::EigenvaluesOnly);
        worst = std::max(worst, eig.eigenvalues().maxCoeff());
    }
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(worst)));
}

// sum_{a,b} (A_{a|b} (x) B_{b|a}) rho (...)^dagger, straight from the Kraus lists.
ComplexMatrix loop_apply_direct(const Instrument &alice, const Instrument &bob, const ComplexMatrix &rho) {
    ComplexMatrix out = ComplexMatrix::Zero(alice.out_dim() * bob.out_dim(), alice.out_dim() * bob.out_dim());
    for (std::size_t a = 0; a < alice.out_alphabet(); a++) {
        for (std::size_t b = 0; b < bob.out_alphabet(); b++) {
            auto ea = alice.element(b, a);
            auto eb = bob.element(a, b);
            for (const auto &ka : ea.kraus()) {
                for (const auto &kb : eb.kraus()) {
                    ComplexMatrix k = tensor_product(ka, kb);
                    out += k * rho * k.adjoint();
                }
            }
        }
    }
    return out;
}

}  // namespace

CriterionResult criterion_nine_state() {
    CriterionResult r{1, "nine-state discrimination", {}};
    auto start = Clock::now();
    auto report = verify_nine_state_discrimination(1e-9);
    double worst = 0.0;
    std::size_t worst_state = 0;
    for (const auto &rec : report.records) {
        if (rec.distance >= worst) {
            worst = rec.distance;
            worst_state = static_cast<std::size_t>(rec.state);
        }
    }
    r.report.add("state_count_missing", 9.0 - static_cast<double>(report.records.size()), 0.0);
    r.report.add("max_state_distance", worst, 1e-9).witness = "state " + std::to_string(worst_state);
    r.report.add("instrument_defect", report.instrument_defect, 1e-12);

    auto fx = nine_state_fixture();
    double direct = 0.0;
    for (std::size_t k = 0; k < fx.states.size(); k++) {
        ComplexMatrix out = loop_apply_direct(fx.alice, fx.bob, fx.states[k]);
        ComplexMatrix expect = tensor_product(basis_projector(9, k), basis_projector(9, k));
        direct = std::max(direct, distance(out, expect));
    }
    r.report.add("direct_kraus_distance", direct, 1e-9);
    r.report.seconds = seconds_since(start);
    r.report.add_timing("runtime_s", r.report.seconds, 1.0);
    return r;
}

CriterionResult criterion_loop_form(std::uint64_t seed) {
    CriterionResult r{2, "loop form equals wired composition", {}};
    auto start = Clock::now();
    Rng rng(seed + 2);
    double worst = 0.0;
    double worst_tp = 0.0;
    std::size_t worst_case = 0;
    for (std::size_t n = 0; n < 20; n++) {
        auto spec = random_tp_joint_spec(3, 3, rng);
        auto wired = compose_ccstar(spec);
        auto loop = to_loop_form(spec);
        auto looped = compose_loop(loop.alice, loop.bob);
        double d = choi_distance(wired.map, looped.map);
        if (d >= worst) {
            worst = d;
            worst_case = n;
        }
        worst_tp = std::max(worst_tp, wired.tp_defect);
    }
    r.report.add("max_choi_distance", worst, 1e-8).witness = "case " + std::to_string(worst_case);
    r.report.add("max_tp_defect", worst_tp, 1e-9);
    r.report.seconds = seconds_since(start);
    r.report.add_timing("runtime_s", r.report.seconds, 10.0);
    return r;
}

CriterionResult criterion_sep(std::uint64_t seed) {
    CriterionResult r{3, "SEP equals LOCC*", {}};
    auto start = Clock::now();
    Rng rng(seed + 3);
    double input_tp = 0.0;
    double inst_defect = 0.0;
    double forward = 0.0;
    double back = 0.0;
    for (std::size_t n = 0; n < 20; n++) {
        auto sep = random_sep_map(3, 4, rng);
        auto target = sep.joint_map();
        input_tp = std::max(input_tp, tp_defect(target));
        auto loop = sep_to_locc_star(sep);
        for (const auto *inst : {&loop.alice, &loop.bob}) {
            for (double d : check_instrument(*inst).defects) {
                inst_defect = std::max(inst_defect, d);
            }
        }
        forward = std::max(forward, choi_distance(compose_loop(loop.alice, loop.bob).map, target));
        back = std::max(back, choi_distance(locc_star_to_sep(loop.alice, loop.bob).joint_map(), target));
    }
    r.report.add("input_tp_defect", input_tp, 1e-9);
    r.report.add("instrument_defect", inst_defect, 1e-9);
    r.report.add("sep_to_locc_star_distance", forward, 1e-8);
    r.report.add("locc_star_to_sep_distance", back, 1e-8);
    r.report.seconds = seconds_since(start);
    r.report.add_timing("runtime_s", r.report.seconds, 20.0);
    return r;
}

CriterionResult criterion_slocc(std::uint64_t seed) {
    CriterionResult r{4, "SLOCC* decomposition", {}};
    auto start = Clock::now();
    Rng rng(seed + 4);
    double worst = 0.0;
    double scale_mismatches = 0.0;
    std::string witness;
    for (std::size_t n = 0; n < 10; n++) {
        auto terms = random_cp_terms(3, 4, 4.0, 1.5, rng);
        auto dec = slocc_star_decompose(terms);
        worst = std::max(worst, choi_distance(compose_ccstar(dec.spec).map, sum_of_terms(terms)));
        auto oracle = scale_oracle(terms);
        if (dec.scale != oracle) {
            scale_mismatches += 1.0;
            witness = "case " + std::to_string(n) + ": M=" + std::to_string(dec.scale) + " oracle " +
                      std::to_string(oracle);
        }
    }
    r.report.add("recombination_distance", worst, 1e-8);
    r.report.add("scale_mismatches", scale_mismatches, 0.0).witness = witness;
    r.report.seconds = seconds_since(start);
    return r;
}

CriterionResult criterion_causal(std::uint64_t seed) {
    CriterionResult r{5, "causal order and LOCC reconstruction", {}};
    auto start = Clock::now();
    Rng rng(seed + 5);

    double not_respected = 0.0;
    double eq4 = 0.0;
    std::string witness_a;
    for (const char *pattern : {"AB", "BA", "ABA", "BAB", "ABAB", "BABA", "AAB", "ABB", "AABB", "BBAA"}) {
        auto protocol = random_locc_protocol(pattern, 2, 3, rng);
        auto u = unroll_protocol(protocol);
        auto check = respects_causal_order(u.wiring, u.order);
        if (!check.respects) {
            not_respected += 1.0;
            witness_a = pattern;
        }
        auto direct = compose_multiround(u.alice_rounds, u.bob_rounds, u.wiring.dist);
        eq4 = std::max(eq4, choi_distance(direct.map, compose_locc_protocol(protocol)));
    }
    r.report.add("delta_wirings_not_respecting", not_respected, 0.0).witness = witness_a;
    r.report.add("unrolled_contraction_distance", eq4, 1e-8);

    std::vector<ReconstructionFixture> fixtures;
    for (const char *pattern : {"AB", "BA", "ABAB", "BABA", "AABB", "ABBA"}) {
        auto u = unroll_protocol(random_locc_protocol(pattern, 2, 3, rng));
        fixtures.push_back({std::string("delta ") + pattern, u.alice_rounds, u.bob_rounds, u.wiring, u.order});
    }
    for (const char *pattern : {"AB", "BA", "ABAB", "AABB"}) {
        auto u = unroll_protocol(random_locc_protocol(pattern, 2, 2, rng, 2));
        fixtures.push_back(
            {std::string("noisy ") + pattern, u.alice_rounds, u.bob_rounds, noisy_wiring(u.wiring, 0.2), u.order});
    }
    fixtures.push_back(memoryful_fixture(rng));

    double reconstruct = 0.0;
    double failures = 0.0;
    std::string witness_b;
    std::string worst_fixture;
    for (const auto &f : fixtures) {
        try {
            auto protocol = reconstruct_locc(f.alice_rounds, f.bob_rounds, f.wiring, f.order);
            auto direct = compose_multiround(f.alice_rounds, f.bob_rounds, f.wiring.dist);
            double d = choi_distance(compose_locc_protocol(protocol), direct.map);
            if (!protocol.is_alternating()) {
                failures += 1.0;
                witness_b = f.name + ": not alternating";
            }
            if (d >= reconstruct) {
                reconstruct = d;
                worst_fixture = f.name;
            }
        } catch (const Error &e) {
            failures += 1.0;
            witness_b = f.name + ": " + e.what();
        }
    }
    r.report.add("reconstruction_failures", failures, 0.0).witness = witness_b;
    r.report.add("reconstruction_distance", reconstruct, 1e-8).witness = worst_fixture;

    AggregateWiring loop{1, 1, loop_wiring(2, 2)};
    double respected = 0.0;
    std::string witness_c;
    auto orders = enumerate_partial_orders(1, 1);
    for (const auto &order : orders) {
        if (respects_causal_order(loop, order).respects) {
            respected += 1.0;
            witness_c = "order with " + std::to_string(order.declared_edges().size()) + " edges";
        }
    }
    r.report.add("loop_orders_respected", respected, 0.0).witness = witness_c;
    r.report.add("loop_orders_missing", 3.0 - static_cast<double>(orders.size()), 0.0);
    r.report.seconds = seconds_since(start);
    r.report.add_timing("runtime_s", r.report.seconds, 60.0);
    return r;
}

CriterionResult criterion_procmat(std::uint64_t seed) {
    CriterionResult r{6, "classical process matrices", {}};
    auto start = Clock::now();
    Rng rng(seed + 6);
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };

    double disagreements = 0.0;
    double oracle_misclassified = 0.0;
    std::string witness_a;
    for (std::size_t n = 0; n < 40; n++) {
        bool want_valid = n < 20;
        std::size_t ia = pick(2, 3), ib = pick(2, 3), oa = pick(2, 3), ob = pick(2, 3);
        auto w = random_one_way_mixture(ia, ib, oa, ob, rng);
        if (!want_valid) {
            auto bad = loop_process(ia, ib, oa, ob);
            for (int attempt = 0; attempt < 100; attempt++) {
                double t = std::uniform_real_distribution<double>(0.2, 1.0)(rng);
                std::vector<double> table(w.table().size());
                for (std::size_t k = 0; k < table.size(); k++) {
                    table[k] = (1.0 - t) * w.table()[k] + t * bad.table()[k];
                }
                ClassicalProcess candidate(ia, ib, oa, ob, std::move(table));
                if (!process_oracle(candidate, 1e-6)) {
                    w = std::move(candidate);
                    break;
                }
            }
        }
        bool oracle = process_oracle(w, 1e-9);
        if (oracle != want_valid) {
            oracle_misclassified += 1.0;
        }
        if (validate_classical_process(w).valid != oracle) {
            disagreements += 1.0;
            witness_a = "fixture " + std::to_string(n);
        }
    }
    r.report.add("oracle_disagreements", disagreements, 0.0).witness = witness_a;
    r.report.add("fixture_misclassified", oracle_misclassified, 0.0);

    double reported = 0.0;
    double recomputed = 0.0;
    double mixture = 0.0;
    double decompose_failures = 0.0;
    std::string witness_b;
    for (std::size_t n = 0; n < 50; n++) {
        std::size_t ia = pick(1, 4), ib = pick(1, 4), oa = pick(1, 4), ob = pick(1, 4);
        auto w = random_one_way_mixture(ia, ib, oa, ob, rng);
        try {
            auto dec = causal_decompose(w);
            reported = std::max(reported, dec.recombination_error);
            auto back = dec.recombine();
            for (std::size_t k = 0; k < w.table().size(); k++) {
                recomputed = std::max(recomputed, std::abs(back.table()[k] - w.table()[k]));
            }
            if (n < 10) {
                std::size_t da = pick(1, 2), db = pick(1, 2);
                auto alice = random_instrument(da, pick(1, 2), ia, oa, da, rng);
                auto bob = random_instrument(db, pick(1, 2), ib, ob, db, rng);
                auto mix = extract_one_way_mixture(dec, alice, bob);
                mixture = std::max(
                    mixture, choi_distance(mix.joint_map(), compose_via_classical_process(w, alice, bob)));
            }
        } catch (const Error &e) {
            decompose_failures += 1.0;
            witness_b = "mixture " + std::to_string(n) + ": " + e.what();
        }
    }
    r.report.add("decompose_failures", decompose_failures, 0.0).witness = witness_b;
    r.report.add("reported_recombination_error", reported, 1e-7);
    r.report.add("recomputed_recombination_error", recomputed, 1e-7);
    r.report.add("one_way_mixture_distance", mixture, 1e-8);

    auto loop = validate_classical_process(loop_process(2, 2, 2, 2));
    auto &c = r.report.add("loop_process_valid", loop.valid ? 1.0 : 0.0, 0.0);
    if (loop.witness) {
        c.witness = "f=" + list(loop.witness->f) + " g=" + list(loop.witness->g) +
                    " value=" + std::to_string(loop.witness->value);
    }
    r.report.add("loop_witness_missing", loop.witness ? 0.0 : 1.0, 0.0);
    r.report.seconds = seconds_since(start);
    r.report.add_timing("runtime_s", r.report.seconds, 30.0);
    return r;
}

CriterionResult criterion_kernel(std::uint64_t seed) {
    CriterionResult r{7, "channel kernel", {}};
    auto start = Clock::now();
    Rng rng(seed + 7);
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    double roundtrip = 0.0;
    for (std::size_t n = 0; n < 50; n++) {
        std::size_t in = pick(1, 4), out = pick(1, 4);
        auto m = random_cptp(in, out, pick((in + out - 1) / out, 4), rng);
        roundtrip = std::max(roundtrip, choi_distance(kraus_from_choi(choi_of(m)), m));
    }
    r.report.add("choi_kraus_roundtrip", roundtrip, 1e-9);

    double completion = 0.0;
    for (std::size_t n = 0; n < 20; n++) {
        std::size_t in = pick(1, 4), out = pick(1, 4);
        auto m = random_cptp(in, out, in, rng);
        CpMap td = n % 2 == 0 ? scale(m, std::uniform_real_distribution<double>(0.05, 1.0)(rng))
                              : CpMap(in, out, {m.kraus().begin(), m.kraus().end() - 1});
        completion = std::max(completion, tp_defect(add(td, complementary_map(td))));
    }
    r.report.add("completion_tp_defect", completion, 1e-9);
    r.report.seconds = seconds_since(start);
    return r;
}

namespace {

CriterionResult guarded(int id, const char *title, const std::function<CriterionResult()> &run) {
    try {
        return run();
    } catch (const std::exception &e) {
        CriterionResult r{id, title, {}};
        r.report.add("completed", 1.0, 0.0).witness = e.what();
        return r;
    }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
    return {
        guarded(1, "nine-state discrimination", [] { return criterion_nine_state(); }),
        guarded(2, "loop form equals wired composition", [&] { return criterion_loop_form(seed); }),
        guarded(3, "SEP equals LOCC*", [&] { return criterion_sep(seed); }),
        guarded(4, "SLOCC* decomposition", [&] { return criterion_slocc(seed); }),
        guarded(5, "causal order and LOCC reconstruction", [&] { return criterion_causal(seed); }),
        guarded(6, "classical process matrices", [&] { return criterion_procmat(seed); }),
        guarded(7, "channel kernel", [&] { return criterion_kernel(seed); }),
    };
}

}  // namespace causal_channels
