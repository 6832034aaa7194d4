#include "causal_channels/composition.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "causal_channels/errors.h"

namespace causal_channels {

std::size_t encode_digits(std::span<const std::size_t> digits, std::span<const std::size_t> radices) {
    std::size_t index = 0;
    std::size_t stride = 1;
    for (std::size_t k = 0; k < radices.size(); k++) {
        index += digits[k] * stride;
        stride *= radices[k];
    }
    return index;
}

std::vector<std::size_t> decode_digits(std::size_t index, std::span<const std::size_t> radices) {
    std::vector<std::size_t> digits(radices.size());
    for (std::size_t k = 0; k < radices.size(); k++) {
        digits[k] = index % radices[k];
        index /= radices[k];
    }
    return digits;
}

std::size_t radix_product(std::span<const std::size_t> radices) {
    std::size_t n = 1;
    for (auto r : radices) {
        n *= r;
    }
    return n;
}

CondDist::CondDist(std::vector<std::size_t> input_alphabets, std::vector<std::size_t> output_alphabets)
    : input_alphabets_(std::move(input_alphabets)), output_alphabets_(std::move(output_alphabets)) {
    for (auto a : input_alphabets_) {
        if (a == 0) {
            throw DimensionError("conditional distribution has an empty input alphabet");
        }
    }
    for (auto a : output_alphabets_) {
        if (a == 0) {
            throw DimensionError("conditional distribution has an empty output alphabet");
        }
    }
    input_size_ = radix_product(input_alphabets_);
    output_size_ = radix_product(output_alphabets_);
    table_.assign(input_size_ * output_size_, 0.0);
}

CondDist::CondDist(
    std::vector<std::size_t> input_alphabets, std::vector<std::size_t> output_alphabets, std::vector<double> table)
    : CondDist(std::move(input_alphabets), std::move(output_alphabets)) {
    if (table.size() != table_.size()) {
        throw DimensionError(
            "conditional distribution table has " + std::to_string(table.size()) + " entries, expected " +
            std::to_string(table_.size()));
    }
    table_ = std::move(table);
}

namespace {

void check_digits(std::span<const std::size_t> digits, const std::vector<std::size_t> &radices, const char *what) {
    if (digits.size() != radices.size()) {
        throw DimensionError(std::string("wrong number of ") + what + " indices");
    }
    for (std::size_t k = 0; k < digits.size(); k++) {
        if (digits[k] >= radices[k]) {
            throw DimensionError(std::string(what) + " index out of range");
        }
    }
}

}  // namespace

double CondDist::at(std::span<const std::size_t> inputs, std::span<const std::size_t> outputs) const {
    check_digits(inputs, input_alphabets_, "input");
    check_digits(outputs, output_alphabets_, "output");
    return (*this)(encode_digits(inputs, input_alphabets_), encode_digits(outputs, output_alphabets_));
}

void CondDist::set(std::span<const std::size_t> inputs, std::span<const std::size_t> outputs, double value) {
    check_digits(inputs, input_alphabets_, "input");
    check_digits(outputs, output_alphabets_, "output");
    (*this)(encode_digits(inputs, input_alphabets_), encode_digits(outputs, output_alphabets_)) = value;
}

double CondDist::normalization_error() const {
    double worst = 0.0;
    for (std::size_t o = 0; o < output_size_; o++) {
        double total = 0.0;
        for (std::size_t i = 0; i < input_size_; i++) {
            double v = (*this)(i, o);
            if (!(v >= 0.0) || !std::isfinite(v)) {
                return std::numeric_limits<double>::infinity();
            }
            total += v;
        }
        worst = std::max(worst, std::abs(total - 1.0));
    }
    return worst;
}

bool CondDist::is_valid(double tol) const {
    return normalization_error() <= tol;
}

void CondDist::require_valid(double tol) const {
    double err = normalization_error();
    if (!(err <= tol)) {
        throw DistributionError(
            std::isinf(err) ? std::string("conditional distribution has a negative or non-finite entry")
                            : "conditional distribution is not normalized (error " + std::to_string(err) + ")");
    }
}

void JointMapSpec::check() const {
    std::vector<std::size_t> ins{alice.in_alphabet(), bob.in_alphabet()};
    std::vector<std::size_t> outs{alice.out_alphabet(), bob.out_alphabet()};
    if (wiring.input_alphabets() != ins || wiring.output_alphabets() != outs) {
        throw DimensionError("wiring alphabets do not match the instruments' classical alphabets");
    }
    wiring.require_valid();
}

char party_char(Party p) {
    return p == Party::A ? 'A' : 'B';
}

Party party_from_char(char c) {
    if (c == 'A') {
        return Party::A;
    }
    if (c == 'B') {
        return Party::B;
    }
    throw InputError(std::string("unknown party '") + c + "'");
}

void LoccProtocol::check() const {
    if (rounds.empty()) {
        throw DimensionError("protocol has no rounds");
    }
    if (rounds.front().instrument.in_alphabet() < 1) {
        throw DimensionError("first round needs a classical input symbol 0");
    }
    for (std::size_t r = 1; r < rounds.size(); r++) {
        if (rounds[r].instrument.in_alphabet() != rounds[r - 1].instrument.out_alphabet()) {
            throw DimensionError(
                "round " + std::to_string(r + 1) + " input alphabet " +
                std::to_string(rounds[r].instrument.in_alphabet()) + " does not match round " + std::to_string(r) +
                " output alphabet " + std::to_string(rounds[r - 1].instrument.out_alphabet()));
        }
    }
    for (auto p : {Party::A, Party::B}) {
        bool seen = false;
        std::size_t dim = 0;
        for (std::size_t r = 0; r < rounds.size(); r++) {
            if (rounds[r].party != p) {
                continue;
            }
            if (seen && rounds[r].instrument.in_dim() != dim) {
                throw DimensionError(
                    std::string("party ") + party_char(p) + " quantum dimension does not chain at round " +
                    std::to_string(r + 1));
            }
            seen = true;
            dim = rounds[r].instrument.out_dim();
        }
        if (!seen) {
            throw DimensionError(std::string("party ") + party_char(p) + " has no rounds");
        }
    }
}

bool LoccProtocol::is_alternating() const {
    for (std::size_t r = 1; r < rounds.size(); r++) {
        if (rounds[r].party == rounds[r - 1].party) {
            return false;
        }
    }
    return true;
}

std::size_t LoccProtocol::in_dim(Party p) const {
    for (const auto &r : rounds) {
        if (r.party == p) {
            return r.instrument.in_dim();
        }
    }
    throw DimensionError(std::string("party ") + party_char(p) + " has no rounds");
}

std::size_t LoccProtocol::out_dim(Party p) const {
    for (auto it = rounds.rbegin(); it != rounds.rend(); ++it) {
        if (it->party == p) {
            return it->instrument.out_dim();
        }
    }
    throw DimensionError(std::string("party ") + party_char(p) + " has no rounds");
}

FlaggedMap flag(CpMap map) {
    double defect = tp_defect(map);
    return {std::move(map), defect};
}

namespace {

// Collects Kraus operators of a sum of CP maps, compressing through the Choi
// operator whenever the list grows past a multiple of the Choi rank bound.
class KrausAccumulator {
   public:
    KrausAccumulator(std::size_t in_dim, std::size_t out_dim) : in_dim_(in_dim), out_dim_(out_dim) {
    }

    void add(ComplexMatrix k) {
        kraus_.push_back(std::move(k));
        if (kraus_.size() > 4 * in_dim_ * out_dim_) {
            compress();
        }
    }

    void add(const CpMap &map, double weight = 1.0) {
        double s = std::sqrt(weight);
        for (const auto &k : map.kraus()) {
            add(weight == 1.0 ? k : ComplexMatrix(s * k));
        }
    }

    bool empty() const {
        return kraus_.empty();
    }

    CpMap finish() {
        if (kraus_.size() > in_dim_ * out_dim_) {
            compress();
        }
        return CpMap(in_dim_, out_dim_, std::move(kraus_));
    }

   private:
    void compress() {
        auto compact = canonicalize(CpMap(in_dim_, out_dim_, std::move(kraus_)));
        kraus_ = compact.kraus();
    }

    std::size_t in_dim_;
    std::size_t out_dim_;
    std::vector<ComplexMatrix> kraus_;
};

void add_weighted_tensor(KrausAccumulator &acc, double weight, const CpMap &a, const CpMap &b) {
    double s = std::sqrt(weight);
    for (const auto &ka : a.kraus()) {
        for (const auto &kb : b.kraus()) {
            acc.add(s * tensor_product(ka, kb));
        }
    }
}

}  // namespace

CpMap compose_one_way(const Instrument &alice, const std::vector<CpMap> &bob) {
    if (alice.in_alphabet() != 1) {
        throw DimensionError("one-way LOCC needs Alice's instrument to have a trivial classical input");
    }
    if (alice.out_alphabet() != bob.size()) {
        throw DimensionError(
            "Alice has " + std::to_string(alice.out_alphabet()) + " outcomes but Bob has " +
            std::to_string(bob.size()) + " conditional maps");
    }
    if (bob.empty()) {
        throw DimensionError("Bob has no conditional maps");
    }
    for (const auto &b : bob) {
        if (b.in_dim() != bob.front().in_dim() || b.out_dim() != bob.front().out_dim()) {
            throw DimensionError("Bob's conditional maps have inconsistent dimensions");
        }
    }
    KrausAccumulator acc(alice.in_dim() * bob.front().in_dim(), alice.out_dim() * bob.front().out_dim());
    for (std::size_t o = 0; o < bob.size(); o++) {
        if (auto *a = alice.find(0, o)) {
            add_weighted_tensor(acc, 1.0, *a, bob[o]);
        }
    }
    return acc.finish();
}

CpMap compose_locc_protocol(const LoccProtocol &protocol) {
    protocol.check();
    std::size_t in_a = protocol.in_dim(Party::A);
    std::size_t in_b = protocol.in_dim(Party::B);
    std::size_t cur_a = in_a;
    std::size_t cur_b = in_b;
    std::size_t joint_in = in_a * in_b;

    // Joint operation accumulated so far, keyed by the last classical output.
    std::map<std::size_t, CpMap> states;
    states.emplace(0, CpMap::identity(joint_in));
    for (const auto &round : protocol.rounds) {
        const auto &inst = round.instrument;
        std::size_t next_a = round.party == Party::A ? inst.out_dim() : cur_a;
        std::size_t next_b = round.party == Party::B ? inst.out_dim() : cur_b;
        std::map<std::size_t, KrausAccumulator> next;
        for (const auto &[key, element] : inst.entries()) {
            auto [input, output] = key;
            auto it = states.find(input);
            if (it == states.end()) {
                continue;
            }
            CpMap lifted = round.party == Party::A ? tensor(element, CpMap::identity(cur_b))
                                                   : tensor(CpMap::identity(cur_a), element);
            auto [slot, inserted] = next.try_emplace(output, joint_in, next_a * next_b);
            slot->second.add(compose(lifted, it->second));
        }
        states.clear();
        for (auto &[output, acc] : next) {
            states.emplace(output, acc.finish());
        }
        cur_a = next_a;
        cur_b = next_b;
    }
    KrausAccumulator total(joint_in, cur_a * cur_b);
    for (const auto &[symbol, map] : states) {
        total.add(map);
    }
    return total.finish();
}

FlaggedMap compose_ccstar(const JointMapSpec &spec) {
    spec.check();
    const auto &alice = spec.alice;
    const auto &bob = spec.bob;
    KrausAccumulator acc(alice.in_dim() * bob.in_dim(), alice.out_dim() * bob.out_dim());
    for (const auto &[ka, a] : alice.entries()) {
        for (const auto &[kb, b] : bob.entries()) {
            std::size_t input = ka.first + alice.in_alphabet() * kb.first;
            std::size_t output = ka.second + alice.out_alphabet() * kb.second;
            double w = spec.wiring(input, output);
            if (w > 0) {
                add_weighted_tensor(acc, w, a, b);
            }
        }
    }
    return flag(acc.finish());
}

bool is_locc_star_member(const JointMapSpec &spec, double tol) {
    return compose_ccstar(spec).trace_preserving(tol);
}

namespace {

void check_chain(const std::vector<Instrument> &sequence, const char *who) {
    if (sequence.empty()) {
        throw DimensionError(std::string(who) + " has an empty instrument sequence");
    }
    for (std::size_t k = 1; k < sequence.size(); k++) {
        if (sequence[k].in_dim() != sequence[k - 1].out_dim()) {
            throw DimensionError(
                std::string(who) + " instrument " + std::to_string(k + 1) +
                " input dimension does not match the previous output dimension");
        }
    }
}

}  // namespace

Instrument collapse_sequence(const std::vector<Instrument> &sequence) {
    check_chain(sequence, "collapsed party");
    std::vector<std::size_t> in_radices;
    std::vector<std::size_t> out_radices;
    for (const auto &inst : sequence) {
        in_radices.push_back(inst.in_alphabet());
        out_radices.push_back(inst.out_alphabet());
    }

    struct Partial {
        std::vector<std::size_t> ins;
        std::vector<std::size_t> outs;
        CpMap map;
    };
    std::vector<Partial> partials;
    for (const auto &[key, map] : sequence.front().entries()) {
        partials.push_back({{key.first}, {key.second}, map});
    }
    for (std::size_t k = 1; k < sequence.size(); k++) {
        std::vector<Partial> next;
        for (const auto &p : partials) {
            for (const auto &[key, map] : sequence[k].entries()) {
                Partial q = {p.ins, p.outs, compose(map, p.map)};
                q.ins.push_back(key.first);
                q.outs.push_back(key.second);
                next.push_back(std::move(q));
            }
        }
        partials = std::move(next);
    }

    Instrument out(
        radix_product(in_radices), radix_product(out_radices), sequence.front().in_dim(), sequence.back().out_dim());
    for (auto &p : partials) {
        auto map = p.map.kraus().size() > p.map.in_dim() * p.map.out_dim() ? canonicalize(p.map) : p.map;
        out.set(encode_digits(p.ins, in_radices), encode_digits(p.outs, out_radices), std::move(map));
    }
    return out;
}

FlaggedMap compose_multiround(
    const std::vector<Instrument> &alice_rounds, const std::vector<Instrument> &bob_rounds, const CondDist &wiring) {
    check_chain(alice_rounds, "Alice");
    check_chain(bob_rounds, "Bob");
    std::vector<std::size_t> ins;
    std::vector<std::size_t> outs;
    for (const auto *seq : {&alice_rounds, &bob_rounds}) {
        for (const auto &inst : *seq) {
            ins.push_back(inst.in_alphabet());
            outs.push_back(inst.out_alphabet());
        }
    }
    if (wiring.input_alphabets() != ins || wiring.output_alphabets() != outs) {
        throw DimensionError("multi-round wiring alphabets do not match the instrument sequences");
    }
    wiring.require_valid();

    auto chain = [](const std::vector<Instrument> &seq, std::span<const std::size_t> in_digits,
                    std::span<const std::size_t> out_digits) -> std::optional<CpMap> {
        std::optional<CpMap> acc;
        for (std::size_t k = 0; k < seq.size(); k++) {
            const CpMap *e = seq[k].find(in_digits[k], out_digits[k]);
            if (!e) {
                return std::nullopt;
            }
            acc = acc ? compose(*e, *acc) : *e;
        }
        return acc;
    };

    std::size_t na = alice_rounds.size();
    KrausAccumulator acc(
        alice_rounds.front().in_dim() * bob_rounds.front().in_dim(),
        alice_rounds.back().out_dim() * bob_rounds.back().out_dim());
    for (std::size_t o = 0; o < wiring.output_size(); o++) {
        auto out_digits = decode_digits(o, outs);
        for (std::size_t i = 0; i < wiring.input_size(); i++) {
            double w = wiring(i, o);
            if (w <= 0) {
                continue;
            }
            auto in_digits = decode_digits(i, ins);
            std::span<const std::size_t> iv(in_digits);
            std::span<const std::size_t> ov(out_digits);
            auto a = chain(alice_rounds, iv.first(na), ov.first(na));
            if (!a) {
                continue;
            }
            auto b = chain(bob_rounds, iv.subspan(na), ov.subspan(na));
            if (!b) {
                continue;
            }
            add_weighted_tensor(acc, w, *a, *b);
        }
    }
    return flag(acc.finish());
}

LoopPair to_loop_form(const JointMapSpec &spec) {
    spec.check();
    const auto &alice = spec.alice;
    const auto &bob = spec.bob;
    std::size_t n_ia = alice.in_alphabet();
    std::size_t n_ib = bob.in_alphabet();
    std::size_t n_oa = alice.out_alphabet();
    std::size_t n_ob = bob.out_alphabet();
    std::size_t n_x = n_oa;

    // a = (i_B, x), b = (o_A, o_B)
    Instrument new_alice(n_oa * n_ob, n_ib * n_x, alice.in_dim(), alice.out_dim());
    Instrument new_bob(n_ib * n_x, n_oa * n_ob, bob.in_dim(), bob.out_dim());
    for (std::size_t oa = 0; oa < n_oa; oa++) {
        for (std::size_t ob = 0; ob < n_ob; ob++) {
            std::size_t b = oa + n_oa * ob;
            for (std::size_t ib = 0; ib < n_ib; ib++) {
                for (std::size_t x = 0; x < n_x; x++) {
                    std::size_t a = ib + n_ib * x;
                    KrausAccumulator acc(alice.in_dim(), alice.out_dim());
                    for (std::size_t ia = 0; ia < n_ia; ia++) {
                        double w = spec.wiring(ia + n_ia * ib, oa + n_oa * ob);
                        if (w > 0) {
                            if (auto *e = alice.find(ia, x)) {
                                acc.add(*e, w);
                            }
                        }
                    }
                    if (!acc.empty()) {
                        new_alice.set(b, a, acc.finish());
                    }
                    if (x == oa) {
                        if (auto *e = bob.find(ib, ob)) {
                            new_bob.set(a, b, *e);
                        }
                    }
                }
            }
        }
    }
    return {std::move(new_alice), std::move(new_bob)};
}

FlaggedMap compose_loop(const Instrument &alice, const Instrument &bob) {
    if (alice.in_alphabet() != bob.out_alphabet() || alice.out_alphabet() != bob.in_alphabet()) {
        throw DimensionError(
            "loop composition needs Alice's input alphabet to equal Bob's output alphabet and vice versa");
    }
    KrausAccumulator acc(alice.in_dim() * bob.in_dim(), alice.out_dim() * bob.out_dim());
    for (const auto &[key, a_elem] : alice.entries()) {
        auto [b, a] = key;
        if (auto *b_elem = bob.find(a, b)) {
            add_weighted_tensor(acc, 1.0, a_elem, *b_elem);
        }
    }
    return flag(acc.finish());
}

CondDist loop_wiring(std::size_t alice_in, std::size_t bob_in) {
    CondDist p({alice_in, bob_in}, {bob_in, alice_in});
    for (std::size_t ia = 0; ia < alice_in; ia++) {
        for (std::size_t ib = 0; ib < bob_in; ib++) {
            std::size_t oa = ib;
            std::size_t ob = ia;
            p(ia + alice_in * ib, oa + bob_in * ob) = 1.0;
        }
    }
    return p;
}

namespace {

void check_term_dims(const std::vector<ProductTerm> &terms) {
    for (const auto &t : terms) {
        const auto &f = terms.front();
        if (t.a.in_dim() != f.a.in_dim() || t.a.out_dim() != f.a.out_dim() || t.b.in_dim() != f.b.in_dim() ||
            t.b.out_dim() != f.b.out_dim()) {
            throw DimensionError("product terms have inconsistent local dimensions");
        }
    }
}

double gram_norm(const CpMap &m) {
    return m.kraus().empty() ? 0.0 : max_eigenvalue(m.kraus_gram());
}

std::size_t ceil_with_tol(double x, double tol) {
    return static_cast<std::size_t>(std::max(1.0, std::ceil(x - tol)));
}

}  // namespace

CpMap sum_of_terms(const std::vector<ProductTerm> &terms) {
    if (terms.empty()) {
        throw DimensionError("empty list of product terms");
    }
    check_term_dims(terms);
    const auto &f = terms.front();
    KrausAccumulator acc(f.a.in_dim() * f.b.in_dim(), f.a.out_dim() * f.b.out_dim());
    for (const auto &t : terms) {
        add_weighted_tensor(acc, 1.0, t.a, t.b);
    }
    return acc.finish();
}

std::vector<ProductTerm> normalize_terms(const std::vector<ProductTerm> &terms, double tol) {
    if (terms.empty()) {
        return {};
    }
    check_term_dims(terms);
    std::vector<ProductTerm> out;
    for (const auto &t : terms) {
        if (t.a.is_zero() || t.b.is_zero()) {
            continue;
        }
        double norm_a = gram_norm(t.a);
        double norm_b = gram_norm(t.b);
        double c = std::max(1.0, norm_a);
        if (!std::isfinite(c) || !std::isfinite(norm_b * c)) {
            throw ScalingError("product term has a non-finite factor norm");
        }
        CpMap a = c == 1.0 ? t.a : scale(t.a, 1.0 / c);
        CpMap b = c == 1.0 ? t.b : scale(t.b, c);
        double nb = norm_b * c;
        if (nb > 1.0 + tol) {
            std::size_t copies = ceil_with_tol(nb, tol);
            CpMap part = scale(b, 1.0 / static_cast<double>(copies));
            for (std::size_t j = 0; j < copies; j++) {
                out.push_back({a, part});
            }
        } else {
            out.push_back({std::move(a), std::move(b)});
        }
    }
    return out;
}

LoopPair loop_instruments_from_td_terms(const std::vector<ProductTerm> &terms, double tol) {
    if (terms.empty()) {
        throw DimensionError("loop construction needs at least one product term");
    }
    check_term_dims(terms);
    const auto &f = terms.front();
    std::size_t k_terms = terms.size();
    std::size_t n = k_terms + 2;
    std::size_t extra1 = k_terms;
    std::size_t extra2 = k_terms + 1;

    CpMap pad_a = trace_and_replace(f.a.in_dim(), identity(f.a.out_dim()) / static_cast<double>(f.a.out_dim()));
    CpMap pad_b = trace_and_replace(f.b.in_dim(), identity(f.b.out_dim()) / static_cast<double>(f.b.out_dim()));

    Instrument alice(n, n, f.a.in_dim(), f.a.out_dim());
    Instrument bob(n, n, f.b.in_dim(), f.b.out_dim());
    for (std::size_t k = 0; k < k_terms; k++) {
        const auto &t = terms[k];
        if (!is_trace_nonincreasing(t.a, tol) || !is_trace_nonincreasing(t.b, tol)) {
            throw PreconditionError("product term " + std::to_string(k) + " has a factor that is not trace-nonincreasing");
        }
        alice.set(k, k, t.a);
        alice.set(k, extra1, complementary_map(t.a, tol));
        bob.set(k, k, t.b);
        bob.set(k, extra1, complementary_map(t.b, tol));
    }
    alice.set(extra1, extra1, pad_a);
    alice.set(extra2, extra2, pad_a);
    bob.set(extra2, extra1, pad_b);
    bob.set(extra1, extra2, pad_b);
    return {std::move(alice), std::move(bob)};
}

std::size_t slocc_scale(const std::vector<ProductTerm> &terms, double tol) {
    double worst = 0.0;
    for (const auto &t : terms) {
        worst = std::max(worst, gram_norm(t.a));
    }
    return ceil_with_tol(worst, tol);
}

SloccStarDecomposition slocc_star_decompose(const std::vector<ProductTerm> &terms, double tol) {
    if (terms.empty()) {
        throw DimensionError("SLOCC* decomposition needs at least one product term");
    }
    check_term_dims(terms);
    std::size_t m = slocc_scale(terms, tol);
    std::vector<ProductTerm> expanded;
    expanded.reserve(m * terms.size());
    for (std::size_t copy = 0; copy < m; copy++) {
        for (const auto &t : terms) {
            expanded.push_back({m == 1 ? t.a : scale(t.a, 1.0 / static_cast<double>(m)), t.b});
        }
    }
    auto td_terms = normalize_terms(expanded, tol);
    if (td_terms.empty()) {
        const auto &f = terms.front();
        td_terms.push_back({CpMap::zero(f.a.in_dim(), f.a.out_dim()), CpMap::zero(f.b.in_dim(), f.b.out_dim())});
    }
    auto pair = loop_instruments_from_td_terms(td_terms, tol);
    auto wiring = loop_wiring(pair.alice.in_alphabet(), pair.bob.in_alphabet());
    return {m, JointMapSpec{std::move(pair.alice), std::move(pair.bob), std::move(wiring)}};
}

SloccStarDecomposition slocc_star_decompose(
    const std::vector<std::pair<ChoiOperator, ChoiOperator>> &terms, double tol) {
    std::vector<ProductTerm> converted;
    for (const auto &[a, b] : terms) {
        converted.push_back({kraus_from_choi(a, tol), kraus_from_choi(b, tol)});
    }
    return slocc_star_decompose(converted, tol);
}

}  // namespace causal_channels
