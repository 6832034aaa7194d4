#include "causal_channels/generators.h"

#include <cmath>
#include <random>

#include "causal_channels/errors.h"

namespace causal_channels {

namespace {

std::size_t pick(std::size_t lo, std::size_t hi, Rng &rng) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

std::vector<double> random_simplex(std::size_t n, Rng &rng) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> v(n);
    double total = 0.0;
    for (auto &x : v) {
        x = exp1(rng);
        total += x;
    }
    for (auto &x : v) {
        x /= total;
    }
    return v;
}

ClassicalProcess random_a_to_b_process(
    std::size_t n_ia, std::size_t n_ib, std::size_t n_oa, std::size_t n_ob, Rng &rng) {
    ClassicalProcess w(n_ia, n_ib, n_oa, n_ob);
    auto pa = random_simplex(n_ia, rng);
    for (std::size_t ia = 0; ia < n_ia; ia++) {
        for (std::size_t oa = 0; oa < n_oa; oa++) {
            auto pb = random_simplex(n_ib, rng);
            for (std::size_t ib = 0; ib < n_ib; ib++) {
                for (std::size_t ob = 0; ob < n_ob; ob++) {
                    w(ia, ib, oa, ob) = pa[ia] * pb[ib];
                }
            }
        }
    }
    return w;
}

ClassicalProcess random_b_to_a_process(
    std::size_t n_ia, std::size_t n_ib, std::size_t n_oa, std::size_t n_ob, Rng &rng) {
    ClassicalProcess w(n_ia, n_ib, n_oa, n_ob);
    auto pb = random_simplex(n_ib, rng);
    for (std::size_t ib = 0; ib < n_ib; ib++) {
        for (std::size_t ob = 0; ob < n_ob; ob++) {
            auto pa = random_simplex(n_ia, rng);
            for (std::size_t ia = 0; ia < n_ia; ia++) {
                for (std::size_t oa = 0; oa < n_oa; oa++) {
                    w(ia, ib, oa, ob) = pb[ib] * pa[ia];
                }
            }
        }
    }
    return w;
}

ClassicalProcess random_one_way_mixture(
    std::size_t n_ia, std::size_t n_ib, std::size_t n_oa, std::size_t n_ob, Rng &rng) {
    double q = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto ab = random_a_to_b_process(n_ia, n_ib, n_oa, n_ob, rng);
    auto ba = random_b_to_a_process(n_ia, n_ib, n_oa, n_ob, rng);
    std::vector<double> table(ab.table().size());
    for (std::size_t k = 0; k < table.size(); k++) {
        table[k] = q * ab.table()[k] + (1.0 - q) * ba.table()[k];
    }
    return ClassicalProcess(n_ia, n_ib, n_oa, n_ob, std::move(table));
}

ClassicalProcess loop_process(std::size_t n_ia, std::size_t n_ib, std::size_t n_oa, std::size_t n_ob) {
    ClassicalProcess w(n_ia, n_ib, n_oa, n_ob);
    for (std::size_t oa = 0; oa < n_oa; oa++) {
        for (std::size_t ob = 0; ob < n_ob; ob++) {
            w(ob % n_ia, oa % n_ib, oa, ob) = 1.0;
        }
    }
    return w;
}

JointMapSpec random_tp_joint_spec(std::size_t max_dim, std::size_t max_alphabet, Rng &rng) {
    std::size_t a_in = pick(1, max_dim, rng);
    std::size_t a_out = pick(1, max_dim, rng);
    std::size_t b_in = pick(1, max_dim, rng);
    std::size_t b_out = pick(1, max_dim, rng);
    std::size_t n_ia = pick(1, max_alphabet, rng);
    std::size_t n_oa = pick(1, max_alphabet, rng);
    std::size_t n_ib = pick(1, max_alphabet, rng);
    std::size_t n_ob = pick(1, max_alphabet, rng);
    auto alice = random_instrument(a_in, a_out, n_ia, n_oa, a_in, rng);
    auto bob = random_instrument(b_in, b_out, n_ib, n_ob, b_in, rng);
    auto w = random_one_way_mixture(n_ia, n_ib, n_oa, n_ob, rng);
    return {std::move(alice), std::move(bob), w.as_wiring()};
}

SepMap random_sep_map(std::size_t max_dim, std::size_t max_terms, Rng &rng) {
    std::size_t a_in = pick(1, max_dim, rng);
    std::size_t a_out = pick(1, max_dim, rng);
    std::size_t b_in = pick(1, max_dim, rng);
    std::size_t b_out = pick(1, max_dim, rng);
    std::size_t count = pick(1, max_terms, rng);
    bool a_first = pick(0, 1, rng) == 0;
    std::uniform_real_distribution<double> log_scale(std::log(0.25), std::log(4.0));

    std::size_t m_in = a_first ? a_in : b_in;
    std::size_t m_out = a_first ? a_out : b_out;
    std::size_t r_in = a_first ? b_in : a_in;
    std::size_t r_out = a_first ? b_out : a_out;
    auto measure = random_instrument(m_in, m_out, 1, count, m_in, rng);
    SepMap m;
    for (std::size_t k = 0; k < count; k++) {
        auto respond = random_cptp(r_in, r_out, r_in, rng);
        double c = std::exp(log_scale(rng));
        auto first = scale(measure.element(0, k), c);
        auto second = scale(respond, 1.0 / c);
        if (a_first) {
            m.terms.push_back({std::move(first), std::move(second)});
        } else {
            m.terms.push_back({std::move(second), std::move(first)});
        }
    }
    return m;
}

std::vector<ProductTerm> random_cp_terms(
    std::size_t max_dim, std::size_t max_terms, double max_scale_a, double max_scale_b, Rng &rng) {
    std::size_t a_in = pick(1, max_dim, rng);
    std::size_t a_out = pick(1, max_dim, rng);
    std::size_t b_in = pick(1, max_dim, rng);
    std::size_t b_out = pick(1, max_dim, rng);
    std::size_t count = pick(1, max_terms, rng);
    auto factor = [&](std::size_t in, std::size_t out, double max_scale) {
        std::vector<ComplexMatrix> kraus;
        for (std::size_t j = pick(1, 2, rng); j > 0; j--) {
            kraus.push_back(random_ginibre(out, in, rng));
        }
        CpMap m(in, out, std::move(kraus));
        double norm = max_eigenvalue(m.kraus_gram());
        double target = std::uniform_real_distribution<double>(0.2, max_scale)(rng);
        return scale(m, target / norm);
    };
    std::vector<ProductTerm> terms;
    for (std::size_t k = 0; k < count; k++) {
        auto a = factor(a_in, a_out, max_scale_a);
        auto b = factor(b_in, b_out, max_scale_b);
        terms.push_back({std::move(a), std::move(b)});
    }
    return terms;
}

LoccProtocol random_locc_protocol(
    const std::string &pattern, std::size_t max_dim, std::size_t max_alphabet, Rng &rng, std::size_t min_alphabet) {
    if (pattern.empty()) {
        throw PreconditionError("empty round pattern");
    }
    std::size_t dim_a = pick(1, max_dim, rng);
    std::size_t dim_b = pick(1, max_dim, rng);
    std::size_t alphabet = 1;
    LoccProtocol protocol;
    for (char c : pattern) {
        Party party = party_from_char(c);
        std::size_t &dim = party == Party::A ? dim_a : dim_b;
        std::size_t out_dim = pick(1, max_dim, rng);
        std::size_t out_alphabet = pick(min_alphabet, max_alphabet, rng);
        protocol.rounds.push_back({party, random_instrument(dim, out_dim, alphabet, out_alphabet, dim, rng)});
        dim = out_dim;
        alphabet = out_alphabet;
    }
    return protocol;
}

AggregateWiring wiring_from_rule(
    std::size_t rounds_a,
    std::size_t rounds_b,
    std::vector<std::size_t> input_alphabets,
    std::vector<std::size_t> output_alphabets,
    const WiringRule &rule) {
    CondDist dist(input_alphabets, output_alphabets);
    for (std::size_t o = 0; o < dist.output_size(); o++) {
        auto outputs = decode_digits(o, output_alphabets);
        for (const auto &[inputs, prob] : rule(outputs)) {
            dist(encode_digits(inputs, input_alphabets), o) += prob;
        }
    }
    AggregateWiring p{rounds_a, rounds_b, std::move(dist)};
    p.check();
    return p;
}

AggregateWiring noisy_wiring(const AggregateWiring &delta, double flip) {
    const auto &ins = delta.dist.input_alphabets();
    const auto &outs = delta.dist.output_alphabets();
    auto rule = [&](const std::vector<std::size_t> &outputs) {
        std::size_t o = encode_digits(outputs, outs);
        std::size_t hit = delta.dist.input_size();
        for (std::size_t i = 0; i < delta.dist.input_size(); i++) {
            double v = delta.dist(i, o);
            if (std::abs(v - 1.0) <= 1e-12) {
                hit = i;
            } else if (std::abs(v) > 1e-12) {
                throw PreconditionError("noisy_wiring needs a deterministic wiring");
            }
        }
        if (hit == delta.dist.input_size()) {
            throw PreconditionError("noisy_wiring needs a deterministic wiring");
        }
        auto clean = decode_digits(hit, ins);
        std::vector<std::pair<std::vector<std::size_t>, double>> out;
        for (std::size_t i = 0; i < delta.dist.input_size(); i++) {
            auto digits = decode_digits(i, ins);
            double prob = 1.0;
            for (std::size_t s = 0; s < digits.size(); s++) {
                if (ins[s] == 1) {
                    continue;
                }
                prob *= digits[s] == clean[s] ? 1.0 - flip : flip / static_cast<double>(ins[s] - 1);
            }
            out.emplace_back(std::move(digits), prob);
        }
        return out;
    };
    return wiring_from_rule(delta.rounds_a, delta.rounds_b, ins, outs, rule);
}

ReconstructionFixture memoryful_fixture(Rng &rng) {
    ReconstructionFixture f{
        "memoryful",
        {random_instrument(2, 2, 2, 2, 2, rng), random_instrument(2, 2, 2, 2, 2, rng)},
        {random_instrument(2, 2, 2, 2, 2, rng), random_instrument(2, 2, 2, 2, 2, rng)},
        AggregateWiring{2, 2, CondDist({2, 2, 2, 2}, {2, 2, 2, 2})},
        CausalOrder(2, 2, {{{Party::A, 1}, {Party::B, 2}}, {{Party::B, 1}, {Party::A, 2}}})};
    // Slots: A1, A2, B1, B2.
    auto rule = [](const std::vector<std::size_t> &o) {
        std::vector<std::pair<std::vector<std::size_t>, double>> out;
        for (std::size_t r = 0; r < 2; r++) {
            std::size_t b2 = (o[0] + o[2]) % 2;
            out.push_back({{r, o[2] ^ r, r, b2}, 0.5 * 0.8});
            out.push_back({{r, o[2] ^ r, r, b2 ^ 1}, 0.5 * 0.2});
        }
        return out;
    };
    f.wiring = wiring_from_rule(2, 2, {2, 2, 2, 2}, {2, 2, 2, 2}, rule);
    return f;
}

}  // namespace causal_channels
