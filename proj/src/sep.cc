#include "causal_channels/sep.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "causal_channels/errors.h"

namespace causal_channels {

void SepMap::check() const {
    if (terms.empty()) {
        throw DimensionError("SEP map has no terms");
    }
    const auto &f = terms.front();
    for (std::size_t k = 0; k < terms.size(); k++) {
        const auto &t = terms[k];
        if (t.a.in_dim() != f.a.in_dim() || t.a.out_dim() != f.a.out_dim() || t.b.in_dim() != f.b.in_dim() ||
            t.b.out_dim() != f.b.out_dim()) {
            throw DimensionError("SEP term " + std::to_string(k) + " has local dims that differ from term 0");
        }
    }
}

CpMap SepMap::joint_map() const {
    check();
    return sum_of_terms(terms);
}

bool validate_sep(const SepMap &m, double tol) {
    m.check();
    // Kraus-form factors are CP by construction; the sum is checked for TP.
    return is_trace_preserving(m.joint_map(), tol);
}

LoopPair sep_to_locc_star(const SepMap &m, double tol) {
    m.check();
    if (!validate_sep(m, tol)) {
        throw PreconditionError("SEP map is not trace-preserving");
    }
    auto td_terms = normalize_terms(m.terms, tol);
    if (td_terms.empty()) {
        throw ScalingError("every SEP term vanishes");
    }
    return loop_instruments_from_td_terms(td_terms, tol);
}

SepMap locc_star_to_sep(const Instrument &alice, const Instrument &bob, double tol) {
    auto composed = compose_loop(alice, bob);
    if (!composed.trace_preserving(tol)) {
        throw MembershipError(
            "loop composition is not trace-preserving (defect " + std::to_string(composed.tp_defect) + ")");
    }
    SepMap out;
    for (const auto &[key, a_elem] : alice.entries()) {
        auto [b, a] = key;
        const CpMap *b_elem = bob.find(a, b);
        if (!b_elem || a_elem.is_zero() || b_elem->is_zero()) {
            continue;
        }
        out.terms.push_back({a_elem, *b_elem});
    }
    if (out.terms.empty()) {
        throw MembershipError("loop composition has no nonzero terms");
    }
    return out;
}

namespace {

// A bra <j|, <j+l| or <j-l| with (|j> +- |l>)/sqrt(2).
struct Bra {
    int j;
    int l;
    int sign;
};

struct TableEntry {
    int label;
    Bra bra;
};

constexpr Bra basis(int j) {
    return {j, -1, 0};
}
constexpr Bra plus(int j, int l) {
    return {j, l, 1};
}
constexpr Bra minus(int j, int l) {
    return {j, l, -1};
}

// Rows a = 1..3, columns b = 1..3.
const TableEntry kAliceTable[3][3] = {
    {{1, basis(0)}, {2, basis(0)}, {3, plus(0, 1)}},
    {{8, minus(1, 2)}, {9, basis(1)}, {4, minus(0, 1)}},
    {{7, plus(1, 2)}, {6, basis(2)}, {5, basis(2)}},
};
const TableEntry kBobTable[3][3] = {
    {{1, plus(0, 1)}, {2, minus(0, 1)}, {3, basis(2)}},
    {{8, basis(0)}, {9, basis(1)}, {4, basis(2)}},
    {{7, basis(0)}, {6, minus(1, 2)}, {5, plus(1, 2)}},
};

ComplexVector ket_of(const Bra &b) {
    ComplexVector v = basis_ket(3, static_cast<std::size_t>(b.j));
    if (b.sign != 0) {
        v += static_cast<double>(b.sign) * basis_ket(3, static_cast<std::size_t>(b.l));
        v /= std::sqrt(2.0);
    }
    return v;
}

ComplexVector kronecker_ket(const ComplexVector &a, const ComplexVector &b) {
    return tensor_product(a, b);
}

CpMap table_element(const TableEntry &e) {
    ComplexMatrix k = outer(basis_ket(9, static_cast<std::size_t>(e.label - 1)), ket_of(e.bra));
    return CpMap(3, 9, {k});
}

}  // namespace

NineStateFixture nine_state_fixture() {
    const Bra alice_parts[9] = {basis(0), basis(0), plus(0, 1), minus(0, 1), basis(2),
                                basis(2), plus(1, 2), minus(1, 2), basis(1)};
    const Bra bob_parts[9] = {plus(0, 1), minus(0, 1), basis(2),   basis(2), plus(1, 2),
                              minus(1, 2), basis(0),   basis(0),   basis(1)};
    NineStateFixture fx{{}, {}, Instrument(3, 3, 3, 9), Instrument(3, 3, 3, 9)};
    for (int k = 0; k < 9; k++) {
        ComplexVector ket = kronecker_ket(ket_of(alice_parts[k]), ket_of(bob_parts[k]));
        fx.states.push_back(outer(ket, ket));
        fx.kets.push_back(std::move(ket));
    }
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            fx.alice.set(static_cast<std::size_t>(b), static_cast<std::size_t>(a), table_element(kAliceTable[a][b]));
            fx.bob.set(static_cast<std::size_t>(a), static_cast<std::size_t>(b), table_element(kBobTable[a][b]));
        }
    }
    return fx;
}

NineStateReport verify_nine_state_discrimination(double tol) {
    constexpr double kInstrumentTol = 1e-12;
    auto fx = nine_state_fixture();
    NineStateReport report;
    for (const auto *inst : {&fx.alice, &fx.bob}) {
        for (double d : check_instrument(*inst, kInstrumentTol).defects) {
            report.instrument_defect = std::max(report.instrument_defect, d);
        }
    }
    auto joint = compose_loop(fx.alice, fx.bob);
    report.joint_tp_defect = joint.tp_defect;
    bool pass = report.instrument_defect <= kInstrumentTol && joint.trace_preserving(tol);
    for (std::size_t k = 0; k < 9; k++) {
        ComplexMatrix out = apply_cp_map(joint.map, fx.states[k]);
        ComplexVector kk = kronecker_ket(basis_ket(9, k), basis_ket(9, k));
        ComplexMatrix target = outer(kk, kk);
        NineStateRecord rec;
        rec.state = static_cast<int>(k) + 1;
        rec.output_fidelity = std::real(kk.dot(out * kk));
        rec.distance = distance(out, target);
        pass = pass && rec.distance <= tol;
        report.records.push_back(rec);
    }
    report.pass = pass;
    return report;
}

}  // namespace causal_channels
