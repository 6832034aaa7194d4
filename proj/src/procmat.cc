#include "causal_channels/procmat.h"

#include <algorithm>
#include <cmath>

#include "causal_channels/errors.h"
#include "causal_channels/simplex.h"

namespace causal_channels {

namespace {

constexpr double kZeroMass = 1e-12;

}  // namespace

ClassicalProcess::ClassicalProcess(std::size_t n_ia, std::size_t n_ib, std::size_t n_oa, std::size_t n_ob)
    : n_ia_(n_ia), n_ib_(n_ib), n_oa_(n_oa), n_ob_(n_ob) {
    if (n_ia == 0 || n_ib == 0 || n_oa == 0 || n_ob == 0) {
        throw DimensionError("classical process alphabets must be nonempty");
    }
    table_.assign(n_ia * n_ib * n_oa * n_ob, 0.0);
}

ClassicalProcess::ClassicalProcess(
    std::size_t n_ia, std::size_t n_ib, std::size_t n_oa, std::size_t n_ob, std::vector<double> table)
    : ClassicalProcess(n_ia, n_ib, n_oa, n_ob) {
    if (table.size() != table_.size()) {
        throw DimensionError(
            "classical process table has " + std::to_string(table.size()) + " entries, expected " +
            std::to_string(table_.size()));
    }
    table_ = std::move(table);
}

CondDist ClassicalProcess::as_wiring() const {
    return CondDist({n_ia_, n_ib_}, {n_oa_, n_ob_}, table_);
}

ClassicalProcess ClassicalProcess::from_wiring(const CondDist &wiring) {
    const auto &ins = wiring.input_alphabets();
    const auto &outs = wiring.output_alphabets();
    if (ins.size() != 2 || outs.size() != 2) {
        throw DimensionError("a classical process needs two input and two output slots");
    }
    return ClassicalProcess(ins[0], ins[1], outs[0], outs[1], wiring.table());
}

void ClassicalProcess::require_nonnegative() const {
    for (double v : table_) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw PositivityError("classical process has a negative or non-finite entry");
        }
    }
}

std::vector<std::vector<std::size_t>> deterministic_functions(std::size_t n, std::size_t m) {
    std::vector<std::size_t> radices(n, m);
    std::size_t count = radix_product(radices);
    std::vector<std::vector<std::size_t>> out;
    out.reserve(count);
    for (std::size_t c = 0; c < count; c++) {
        out.push_back(decode_digits(c, radices));
    }
    return out;
}

ProcessCheck validate_classical_process(const ClassicalProcess &w, double tol) {
    w.require_nonnegative();
    auto fs = deterministic_functions(w.n_ia(), w.n_oa());
    auto gs = deterministic_functions(w.n_ib(), w.n_ob());
    ProcessCheck check;
    for (const auto &f : fs) {
        for (const auto &g : gs) {
            double value = 0.0;
            for (std::size_t ia = 0; ia < w.n_ia(); ia++) {
                for (std::size_t ib = 0; ib < w.n_ib(); ib++) {
                    value += w(ia, ib, f[ia], g[ib]);
                }
            }
            double dev = std::abs(value - 1.0);
            check.strategies++;
            if (dev > check.max_deviation) {
                check.max_deviation = dev;
                if (dev > tol) {
                    check.witness = StrategyPair{f, g, value};
                }
            }
        }
    }
    check.valid = check.max_deviation <= tol;
    return check;
}

CpMap compose_via_classical_process(
    const ClassicalProcess &w, const Instrument &alice, const Instrument &bob, double tol) {
    auto check = validate_classical_process(w, tol);
    if (!check.valid) {
        throw ProcessValidityError(
            "classical process is invalid (strategy sum deviates by " + std::to_string(check.max_deviation) + ")");
    }
    return compose_ccstar(JointMapSpec{alice, bob, w.as_wiring()}).map;
}

ClassicalProcess CausalDecomposition::recombine() const {
    std::size_t n_ia = p_ab.input_alphabets()[0];
    std::size_t n_ib = p_ab.input_alphabets()[1];
    std::size_t n_oa = p_ab.output_alphabets()[0];
    std::size_t n_ob = p_ba.output_alphabets()[0];
    ClassicalProcess w(n_ia, n_ib, n_oa, n_ob);
    for (std::size_t ob = 0; ob < n_ob; ob++) {
        for (std::size_t oa = 0; oa < n_oa; oa++) {
            for (std::size_t ib = 0; ib < n_ib; ib++) {
                for (std::size_t ia = 0; ia < n_ia; ia++) {
                    std::size_t i = ia + n_ia * ib;
                    w(ia, ib, oa, ob) = q * p_ab(i, oa) + (1.0 - q) * p_ba(i, ob);
                }
            }
        }
    }
    return w;
}

CausalDecomposition causal_decompose(const ClassicalProcess &w, double tol) {
    auto check = validate_classical_process(w, tol);
    if (!check.valid) {
        throw ProcessValidityError(
            "classical process is invalid (strategy sum deviates by " + std::to_string(check.max_deviation) + ")");
    }
    const std::size_t n_ia = w.n_ia();
    const std::size_t n_ib = w.n_ib();
    const std::size_t n_oa = w.n_oa();
    const std::size_t n_ob = w.n_ob();
    const std::size_t n_in = n_ia * n_ib;
    const std::size_t n_x = n_in * n_oa;
    const std::size_t n_y = n_in * n_ob;
    auto x_var = [&](std::size_t ia, std::size_t ib, std::size_t oa) { return ia + n_ia * (ib + n_ib * oa); };
    auto y_var = [&](std::size_t ia, std::size_t ib, std::size_t ob) {
        return n_x + ia + n_ia * (ib + n_ib * ob);
    };

    const std::size_t rows = n_in * n_oa * n_ob + n_ia * (n_oa - 1) + n_ib * (n_ob - 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n_x + n_y));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows));
    Eigen::Index r = 0;
    for (std::size_t ob = 0; ob < n_ob; ob++) {
        for (std::size_t oa = 0; oa < n_oa; oa++) {
            for (std::size_t ib = 0; ib < n_ib; ib++) {
                for (std::size_t ia = 0; ia < n_ia; ia++) {
                    a(r, static_cast<Eigen::Index>(x_var(ia, ib, oa))) = 1.0;
                    a(r, static_cast<Eigen::Index>(y_var(ia, ib, ob))) = 1.0;
                    b(r) = w(ia, ib, oa, ob);
                    r++;
                }
            }
        }
    }
    // sum_{i_B} x(i_A, i_B, o_A) equal across o_A.
    for (std::size_t ia = 0; ia < n_ia; ia++) {
        for (std::size_t oa = 1; oa < n_oa; oa++) {
            for (std::size_t ib = 0; ib < n_ib; ib++) {
                a(r, static_cast<Eigen::Index>(x_var(ia, ib, oa))) += 1.0;
                a(r, static_cast<Eigen::Index>(x_var(ia, ib, 0))) -= 1.0;
            }
            r++;
        }
    }
    // sum_{i_A} y(i_A, i_B, o_B) equal across o_B.
    for (std::size_t ib = 0; ib < n_ib; ib++) {
        for (std::size_t ob = 1; ob < n_ob; ob++) {
            for (std::size_t ia = 0; ia < n_ia; ia++) {
                a(r, static_cast<Eigen::Index>(y_var(ia, ib, ob))) += 1.0;
                a(r, static_cast<Eigen::Index>(y_var(ia, ib, 0))) -= 1.0;
            }
            r++;
        }
    }

    auto lp = find_feasible_point(a, b);
    if (!lp.feasible) {
        throw VerificationFailure(
            "no causal decomposition found for a valid classical process (phase-1 residual " +
            std::to_string(lp.infeasibility) + ")");
    }

    double q = 0.0;
    for (std::size_t i = 0; i < n_in; i++) {
        q += lp.x[i];
    }
    q = std::clamp(q, 0.0, 1.0);
    if (q <= kZeroMass) {
        q = 0.0;
    } else if (q >= 1.0 - kZeroMass) {
        q = 1.0;
    }

    CondDist p_ab({n_ia, n_ib}, {n_oa});
    CondDist p_ba({n_ia, n_ib}, {n_ob});
    double uniform = 1.0 / static_cast<double>(n_in);
    for (std::size_t oa = 0; oa < n_oa; oa++) {
        for (std::size_t i = 0; i < n_in; i++) {
            p_ab(i, oa) = q > 0.0 ? lp.x[i + n_in * oa] / q : uniform;
        }
    }
    for (std::size_t ob = 0; ob < n_ob; ob++) {
        for (std::size_t i = 0; i < n_in; i++) {
            p_ba(i, ob) = q < 1.0 ? lp.x[n_x + i + n_in * ob] / (1.0 - q) : uniform;
        }
    }
    CausalDecomposition dec{q, std::move(p_ab), std::move(p_ba), 0.0};
    auto back = dec.recombine();
    for (std::size_t k = 0; k < back.table().size(); k++) {
        dec.recombination_error = std::max(dec.recombination_error, std::abs(back.table()[k] - w.table()[k]));
    }
    return dec;
}

CpMap OneWayMixture::joint_map() const {
    CpMap ab = compose_locc_protocol(a_to_b);
    CpMap ba = compose_locc_protocol(b_to_a);
    if (q >= 1.0) {
        return ab;
    }
    if (q <= 0.0) {
        return ba;
    }
    return add(scale(ab, q), scale(ba, 1.0 - q));
}

namespace {

// One-way branch: the sender's element m = (i_s, o_s) is p(i_s) S_{o_s|i_s}
// and the receiver applies sum_{i_r, o_r} p'(i_r | o_s, i_s) R_{o_r|i_r}.
LoccProtocol one_way_branch(
    const CondDist &p, Party sender_party, const Instrument &sender, const Instrument &receiver) {
    std::size_t n_is = sender.in_alphabet();
    std::size_t n_os = sender.out_alphabet();
    std::size_t n_ir = receiver.in_alphabet();
    bool sender_is_a = sender_party == Party::A;
    auto joint_index = [&](std::size_t is, std::size_t ir) { return sender_is_a ? is + n_is * ir : ir + n_ir * is; };

    std::vector<double> marginal(n_is, 0.0);
    for (std::size_t is = 0; is < n_is; is++) {
        for (std::size_t ir = 0; ir < n_ir; ir++) {
            marginal[is] += p(joint_index(is, ir), 0);
        }
    }
    Instrument first(1, n_is * n_os, sender.in_dim(), sender.out_dim());
    Instrument second(n_is * n_os, 1, receiver.in_dim(), receiver.out_dim());
    for (std::size_t os = 0; os < n_os; os++) {
        for (std::size_t is = 0; is < n_is; is++) {
            std::size_t m = is + n_is * os;
            if (marginal[is] > kZeroMass) {
                if (const CpMap *e = sender.find(is, os)) {
                    first.set(0, m, scale(*e, marginal[is]));
                }
            }
            std::vector<ComplexMatrix> kraus;
            for (std::size_t ir = 0; ir < n_ir; ir++) {
                double weight = marginal[is] > kZeroMass ? p(joint_index(is, ir), os) / marginal[is]
                                                         : 1.0 / static_cast<double>(n_ir);
                if (weight <= 0.0) {
                    continue;
                }
                double s = std::sqrt(weight);
                for (std::size_t orr = 0; orr < receiver.out_alphabet(); orr++) {
                    if (const CpMap *e = receiver.find(ir, orr)) {
                        for (const auto &k : e->kraus()) {
                            kraus.push_back(s * k);
                        }
                    }
                }
            }
            CpMap map(receiver.in_dim(), receiver.out_dim(), std::move(kraus));
            if (map.kraus().size() > map.in_dim() * map.out_dim()) {
                map = canonicalize(map);
            }
            second.set(m, 0, std::move(map));
        }
    }
    LoccProtocol protocol;
    protocol.rounds.push_back({sender_party, std::move(first)});
    protocol.rounds.push_back({sender_is_a ? Party::B : Party::A, std::move(second)});
    return protocol;
}

}  // namespace

OneWayMixture extract_one_way_mixture(
    const CausalDecomposition &dec, const Instrument &alice, const Instrument &bob) {
    std::vector<std::size_t> ins{alice.in_alphabet(), bob.in_alphabet()};
    if (dec.p_ab.input_alphabets() != ins || dec.p_ba.input_alphabets() != ins ||
        dec.p_ab.output_alphabets() != std::vector<std::size_t>{alice.out_alphabet()} ||
        dec.p_ba.output_alphabets() != std::vector<std::size_t>{bob.out_alphabet()}) {
        throw DimensionError("decomposition alphabets do not match the instruments");
    }
    return {dec.q, one_way_branch(dec.p_ab, Party::A, alice, bob), one_way_branch(dec.p_ba, Party::B, bob, alice)};
}

ComplexMatrix embed_diagonal(const ClassicalProcess &w) {
    std::size_t n = w.n_ia() * w.n_oa() * w.n_ib() * w.n_ob();
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (std::size_t ia = 0; ia < w.n_ia(); ia++) {
        for (std::size_t oa = 0; oa < w.n_oa(); oa++) {
            for (std::size_t ib = 0; ib < w.n_ib(); ib++) {
                for (std::size_t ob = 0; ob < w.n_ob(); ob++) {
                    std::size_t k = ((ia * w.n_oa() + oa) * w.n_ib() + ib) * w.n_ob() + ob;
                    m(k, k) = w(ia, ib, oa, ob);
                }
            }
        }
    }
    return m;
}

ClassicalProcess extract_diagonal(const ComplexMatrix &w, const ProcessDims &dims) {
    if (w.rows() != w.cols() || static_cast<std::size_t>(w.rows()) != dims.total()) {
        throw DimensionError("process matrix dimension does not match I_A O_A I_B O_B");
    }
    ClassicalProcess out(dims.ia, dims.ib, dims.oa, dims.ob);
    for (std::size_t ia = 0; ia < dims.ia; ia++) {
        for (std::size_t oa = 0; oa < dims.oa; oa++) {
            for (std::size_t ib = 0; ib < dims.ib; ib++) {
                for (std::size_t ob = 0; ob < dims.ob; ob++) {
                    std::size_t k = ((ia * dims.oa + oa) * dims.ib + ib) * dims.ob + ob;
                    out(ia, ib, oa, ob) = w(k, k).real();
                }
            }
        }
    }
    return out;
}

ProbeReport probe_quantum_process(
    const ComplexMatrix &w, const ProcessDims &dims, std::size_t random_probes, std::uint64_t seed, double tol) {
    if (w.rows() != w.cols() || static_cast<std::size_t>(w.rows()) != dims.total()) {
        throw DimensionError("process matrix dimension does not match I_A O_A I_B O_B");
    }
    if (!all_finite(w)) {
        throw DimensionError("process matrix has non-finite entries");
    }
    if (!is_positive_semidefinite(w, tol)) {
        throw PositivityError("process matrix is not positive semidefinite");
    }
    ProbeReport report;
    auto record = [&](const char *kind, std::size_t index, std::complex<double> value) {
        double dev = std::abs(value - 1.0);
        report.probes.push_back({kind, index, value.real(), dev});
        report.max_deviation = std::max(report.max_deviation, dev);
    };

    Rng rng(seed);
    for (std::size_t k = 0; k < random_probes; k++) {
        auto ma = choi_of(random_cptp(dims.ia, dims.oa, dims.ia, rng)).matrix;
        auto mb = choi_of(random_cptp(dims.ib, dims.ob, dims.ib, rng)).matrix;
        ComplexMatrix x = tensor_product(ma.transpose(), mb.transpose());
        record("random", k, w.cwiseProduct(x.transpose()).sum());
    }

    // Measure-and-prepare probes i -> f(i) have diagonal Choi operators.
    auto fs = deterministic_functions(dims.ia, dims.oa);
    auto gs = deterministic_functions(dims.ib, dims.ob);
    if (fs.size() * gs.size() > (std::size_t{1} << 20)) {
        throw PreconditionError("too many deterministic probe pairs");
    }
    std::size_t index = 0;
    for (const auto &f : fs) {
        for (const auto &g : gs) {
            std::complex<double> value = 0.0;
            for (std::size_t ia = 0; ia < dims.ia; ia++) {
                for (std::size_t ib = 0; ib < dims.ib; ib++) {
                    std::size_t k = ((ia * dims.oa + f[ia]) * dims.ib + ib) * dims.ob + g[ib];
                    value += w(k, k);
                }
            }
            record("structured", index++, value);
        }
    }
    return report;
}

}  // namespace causal_channels
