#include "causal_channels/causal.h"

#include <algorithm>
#include <cmath>

#include "causal_channels/errors.h"

namespace causal_channels {

namespace {

// Conditioning mass at or below this is treated as a zero-probability branch.
constexpr double kZeroBranch = 1e-14;

}  // namespace

std::string to_string(const OpLabel &label) {
    return std::string(1, party_char(label.party)) + std::to_string(label.round);
}

CausalOrder::CausalOrder(std::size_t rounds_a, std::size_t rounds_b, std::vector<Edge> edges)
    : rounds_a_(rounds_a), rounds_b_(rounds_b), edges_(std::move(edges)) {
    if (rounds_a_ == 0 || rounds_b_ == 0) {
        throw DimensionError("causal order needs at least one round per party");
    }
    std::size_t n = size();
    closure_.assign(n * n, false);
    for (std::size_t k = 1; k < rounds_a_; k++) {
        closure_[(k - 1) * n + k] = true;
    }
    for (std::size_t k = 1; k < rounds_b_; k++) {
        closure_[(rounds_a_ + k - 1) * n + rounds_a_ + k] = true;
    }
    for (const auto &[from, to] : edges_) {
        closure_[index(from) * n + index(to)] = true;
    }
    for (std::size_t m = 0; m < n; m++) {
        for (std::size_t a = 0; a < n; a++) {
            if (!closure_[a * n + m]) {
                continue;
            }
            for (std::size_t b = 0; b < n; b++) {
                if (closure_[m * n + b]) {
                    closure_[a * n + b] = true;
                }
            }
        }
    }
    for (std::size_t a = 0; a < n; a++) {
        if (closure_[a * n + a]) {
            throw NotAPartialOrderError("relation has a cycle through " + to_string(label(a)));
        }
    }
}

std::size_t CausalOrder::index(const OpLabel &label) const {
    std::size_t rounds = label.party == Party::A ? rounds_a_ : rounds_b_;
    if (label.round < 1 || label.round > rounds) {
        throw InputError("unknown operation label " + to_string(label));
    }
    return label.party == Party::A ? label.round - 1 : rounds_a_ + label.round - 1;
}

OpLabel CausalOrder::label(std::size_t index) const {
    if (index >= size()) {
        throw InputError("operation index " + std::to_string(index) + " out of range");
    }
    return index < rounds_a_ ? OpLabel{Party::A, index + 1} : OpLabel{Party::B, index - rounds_a_ + 1};
}

std::vector<std::pair<std::size_t, std::size_t>> CausalOrder::relation() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); a++) {
        for (std::size_t b = 0; b < size(); b++) {
            if (precedes(a, b)) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

std::set<std::size_t> past_set(const CausalOrder &order, const std::set<std::size_t> &input_slots) {
    for (auto s : input_slots) {
        if (s >= order.size()) {
            throw InputError("input slot " + std::to_string(s) + " out of range");
        }
    }
    std::set<std::size_t> past;
    for (std::size_t m = 0; m < order.size(); m++) {
        for (auto s : input_slots) {
            if (order.precedes(m, s)) {
                past.insert(m);
                break;
            }
        }
    }
    return past;
}

std::vector<CausalOrder> enumerate_partial_orders(std::size_t rounds_a, std::size_t rounds_b) {
    std::vector<std::pair<OpLabel, OpLabel>> pairs;
    for (std::size_t k = 1; k <= rounds_a; k++) {
        for (std::size_t l = 1; l <= rounds_b; l++) {
            pairs.emplace_back(OpLabel{Party::A, k}, OpLabel{Party::B, l});
        }
    }
    if (pairs.size() > 12) {
        throw PreconditionError("too many operation pairs for an exhaustive order sweep");
    }
    std::size_t combos = 1;
    for (std::size_t k = 0; k < pairs.size(); k++) {
        combos *= 3;
    }
    std::vector<CausalOrder> orders;
    for (std::size_t c = 0; c < combos; c++) {
        std::vector<CausalOrder::Edge> edges;
        std::size_t code = c;
        for (const auto &[a, b] : pairs) {
            std::size_t choice = code % 3;
            code /= 3;
            if (choice == 1) {
                edges.emplace_back(a, b);
            } else if (choice == 2) {
                edges.emplace_back(b, a);
            }
        }
        try {
            CausalOrder order(rounds_a, rounds_b, std::move(edges));
            if (std::find(orders.begin(), orders.end(), order) == orders.end()) {
                orders.push_back(std::move(order));
            }
        } catch (const NotAPartialOrderError &) {
        }
    }
    return orders;
}

std::size_t LinearExtension::position(const OpLabel &label) const {
    for (std::size_t l = 0; l < sequence.size(); l++) {
        if (sequence[l] == label) {
            return l + 1;
        }
    }
    throw InputError("operation " + to_string(label) + " is not in the linear extension");
}

LinearExtension linear_extension(const CausalOrder &order) {
    std::size_t n = order.size();
    std::vector<std::size_t> pending(n, 0);
    for (std::size_t a = 0; a < n; a++) {
        for (std::size_t b = 0; b < n; b++) {
            if (order.precedes(a, b)) {
                pending[b]++;
            }
        }
    }
    // Smallest ready index first: A before B, then by round.
    std::set<std::size_t> ready;
    for (std::size_t a = 0; a < n; a++) {
        if (pending[a] == 0) {
            ready.insert(a);
        }
    }
    LinearExtension ext;
    while (!ready.empty()) {
        std::size_t a = *ready.begin();
        ready.erase(ready.begin());
        ext.sequence.push_back(order.label(a));
        for (std::size_t b = 0; b < n; b++) {
            if (order.precedes(a, b) && --pending[b] == 0) {
                ready.insert(b);
            }
        }
    }
    if (ext.sequence.size() != n) {
        throw NotAPartialOrderError("relation has a cycle");
    }
    return ext;
}

void AggregateWiring::check() const {
    if (rounds_a == 0 || rounds_b == 0) {
        throw DimensionError("aggregate wiring needs at least one round per party");
    }
    if (dist.input_alphabets().size() != slots() || dist.output_alphabets().size() != slots()) {
        throw DimensionError(
            "aggregate wiring has " + std::to_string(dist.input_alphabets().size()) + " input and " +
            std::to_string(dist.output_alphabets().size()) + " output slots, expected " + std::to_string(slots()));
    }
}

CausalCheck respects_causal_order(const AggregateWiring &p, const CausalOrder &order, double tol) {
    p.check();
    if (order.rounds_a() != p.rounds_a || order.rounds_b() != p.rounds_b) {
        throw DimensionError("causal order rounds do not match the wiring");
    }
    p.dist.require_valid();
    const auto &in_radices = p.dist.input_alphabets();
    const auto &out_radices = p.dist.output_alphabets();
    std::size_t in_size = p.dist.input_size();
    std::size_t out_size = p.dist.output_size();
    std::vector<std::vector<std::size_t>> in_digits(in_size);
    for (std::size_t i = 0; i < in_size; i++) {
        in_digits[i] = decode_digits(i, in_radices);
    }
    std::vector<std::size_t> out_strides(out_radices.size(), 1);
    for (std::size_t s = 1; s < out_radices.size(); s++) {
        out_strides[s] = out_strides[s - 1] * out_radices[s - 1];
    }

    for (std::size_t k = 0; k <= p.rounds_a; k++) {
        for (std::size_t l = 0; l <= p.rounds_b; l++) {
            std::set<std::size_t> kept;
            for (std::size_t a = 0; a < k; a++) {
                kept.insert(a);
            }
            for (std::size_t b = 0; b < l; b++) {
                kept.insert(p.rounds_a + b);
            }
            if (kept.empty()) {
                continue;
            }
            auto past = past_set(order, kept);
            std::vector<std::size_t> free_slots;
            for (std::size_t s = 0; s < p.slots(); s++) {
                if (!past.count(s)) {
                    free_slots.push_back(s);
                }
            }
            if (free_slots.empty()) {
                continue;
            }
            std::vector<std::size_t> kept_radices;
            for (auto s : kept) {
                kept_radices.push_back(in_radices[s]);
            }
            std::size_t kept_size = radix_product(kept_radices);
            std::vector<std::size_t> kept_index(in_size);
            std::vector<std::size_t> digits(kept.size());
            for (std::size_t i = 0; i < in_size; i++) {
                std::size_t d = 0;
                for (auto s : kept) {
                    digits[d++] = in_digits[i][s];
                }
                kept_index[i] = encode_digits(digits, kept_radices);
            }
            std::vector<double> marginal(kept_size * out_size, 0.0);
            for (std::size_t o = 0; o < out_size; o++) {
                for (std::size_t i = 0; i < in_size; i++) {
                    marginal[kept_index[i] + kept_size * o] += p.dist(i, o);
                }
            }
            for (auto s : free_slots) {
                for (std::size_t o = 0; o < out_size; o++) {
                    std::size_t digit = (o / out_strides[s]) % out_radices[s];
                    if (digit == 0) {
                        continue;
                    }
                    std::size_t base = o - digit * out_strides[s];
                    for (std::size_t j = 0; j < kept_size; j++) {
                        double dev = std::abs(marginal[j + kept_size * o] - marginal[j + kept_size * base]);
                        if (dev > tol) {
                            return {false, CausalWitness{k, l, s, dev}};
                        }
                    }
                }
            }
        }
    }
    return {true, std::nullopt};
}

std::vector<std::size_t> QChannels::j_radices(std::size_t l) const {
    std::vector<std::size_t> r(in_alphabets.begin(), in_alphabets.begin() + static_cast<std::ptrdiff_t>(l));
    r.insert(r.end(), out_alphabets.begin(), out_alphabets.begin() + static_cast<std::ptrdiff_t>(l - 1));
    return r;
}

std::vector<std::size_t> QChannels::o_radices(std::size_t l) const {
    std::vector<std::size_t> r(in_alphabets.begin(), in_alphabets.begin() + static_cast<std::ptrdiff_t>(l));
    r.insert(r.end(), out_alphabets.begin(), out_alphabets.begin() + static_cast<std::ptrdiff_t>(l));
    return r;
}

std::size_t QChannels::j_size(std::size_t l) const {
    return radix_product(j_radices(l));
}

std::size_t QChannels::o_size(std::size_t l) const {
    return l == 0 ? 1 : radix_product(o_radices(l));
}

double QChannels::channel(std::size_t l, std::size_t j, std::size_t o_prev) const {
    if (l < 1 || l > steps()) {
        throw DimensionError("channel step out of range");
    }
    auto jd = decode_digits(j, j_radices(l));
    if (l > 1) {
        auto od = decode_digits(o_prev, o_radices(l - 1));
        for (std::size_t m = 0; m + 1 < l; m++) {
            if (jd[m] != od[m] || jd[l + m] != od[l - 1 + m]) {
                return 0.0;
            }
        }
    } else if (o_prev != 0) {
        return 0.0;
    }
    return factors[l - 1][j];
}

QChannels build_q_channels(const AggregateWiring &p, const LinearExtension &f) {
    p.check();
    std::size_t steps = p.slots();
    if (f.sequence.size() != steps) {
        throw DimensionError("linear extension length does not match the wiring");
    }
    CausalOrder slots_only(p.rounds_a, p.rounds_b);
    std::vector<std::size_t> slot_of_step(steps);
    std::vector<bool> seen(steps, false);
    for (std::size_t l = 0; l < steps; l++) {
        std::size_t s = slots_only.index(f.sequence[l]);
        if (seen[s]) {
            throw DimensionError("linear extension repeats " + to_string(f.sequence[l]));
        }
        seen[s] = true;
        slot_of_step[l] = s;
    }

    QChannels q;
    q.extension = f;
    for (auto s : slot_of_step) {
        q.in_alphabets.push_back(p.dist.input_alphabets()[s]);
        q.out_alphabets.push_back(p.dist.output_alphabets()[s]);
    }
    const auto &in_radices = p.dist.input_alphabets();
    const auto &out_radices = p.dist.output_alphabets();
    std::vector<std::vector<std::size_t>> in_digits(p.dist.input_size());
    for (std::size_t i = 0; i < in_digits.size(); i++) {
        in_digits[i] = decode_digits(i, in_radices);
    }

    // prev[j] = q(I_1..I_{l-1} | O_1..O_{l-2}) indexed by J_{l-1}.
    std::vector<double> prev{1.0};
    std::vector<std::size_t> out_digits(steps);
    for (std::size_t l = 1; l <= steps; l++) {
        auto radices = q.j_radices(l);
        std::size_t size = radix_product(radices);
        std::vector<double> marginal(size, 0.0);
        std::vector<double> factor(size, 0.0);
        std::vector<std::size_t> prev_radices = l > 1 ? q.j_radices(l - 1) : std::vector<std::size_t>{};
        std::vector<std::size_t> prev_digits(prev_radices.size());
        for (std::size_t j = 0; j < size; j++) {
            auto jd = decode_digits(j, radices);
            std::fill(out_digits.begin(), out_digits.end(), 0);
            for (std::size_t m = 0; m + 1 < l; m++) {
                out_digits[slot_of_step[m]] = jd[l + m];
            }
            std::size_t o = encode_digits(out_digits, out_radices);
            double total = 0.0;
            for (std::size_t i = 0; i < in_digits.size(); i++) {
                bool match = true;
                for (std::size_t m = 0; m < l && match; m++) {
                    match = in_digits[i][slot_of_step[m]] == jd[m];
                }
                if (match) {
                    total += p.dist(i, o);
                }
            }
            marginal[j] = total;

            for (std::size_t m = 0; m + 1 < l; m++) {
                prev_digits[m] = jd[m];
            }
            for (std::size_t m = 0; m + 2 < l; m++) {
                prev_digits[l - 1 + m] = jd[l + m];
            }
            double denom = l > 1 ? prev[encode_digits(prev_digits, prev_radices)] : 1.0;
            factor[j] = denom > kZeroBranch ? total / denom : 1.0 / static_cast<double>(q.in_alphabets[l - 1]);
        }
        q.factors.push_back(std::move(factor));
        prev = std::move(marginal);
    }
    return q;
}

namespace {

std::vector<std::pair<std::size_t, const CpMap *>> row(const Instrument &inst, std::size_t input) {
    std::vector<std::pair<std::size_t, const CpMap *>> out;
    const auto &entries = inst.entries();
    for (auto it = entries.lower_bound({input, 0}); it != entries.end() && it->first.first == input; ++it) {
        out.emplace_back(it->first.second, &it->second);
    }
    return out;
}

void check_rounds(const std::vector<Instrument> &rounds, const char *who) {
    if (rounds.empty()) {
        throw DimensionError(std::string(who) + " has no rounds");
    }
    for (std::size_t k = 1; k < rounds.size(); k++) {
        if (rounds[k].in_dim() != rounds[k - 1].out_dim()) {
            throw DimensionError(
                std::string(who) + " round " + std::to_string(k + 1) +
                " input dimension does not match the previous output dimension");
        }
    }
}

}  // namespace

LoccProtocol build_primed_operations(
    const std::vector<Instrument> &alice_rounds,
    const std::vector<Instrument> &bob_rounds,
    const QChannels &q,
    double tol) {
    check_rounds(alice_rounds, "Alice");
    check_rounds(bob_rounds, "Bob");
    if (q.steps() != alice_rounds.size() + bob_rounds.size()) {
        throw DimensionError("classical channels and instrument rounds disagree on the number of steps");
    }
    LoccProtocol out;
    for (std::size_t l = 1; l <= q.steps(); l++) {
        const OpLabel &label = q.extension.sequence[l - 1];
        const auto &rounds = label.party == Party::A ? alice_rounds : bob_rounds;
        if (label.round < 1 || label.round > rounds.size()) {
            throw DimensionError("linear extension names missing round " + to_string(label));
        }
        const Instrument &inst = rounds[label.round - 1];
        if (inst.in_alphabet() != q.in_alphabets[l - 1] || inst.out_alphabet() != q.out_alphabets[l - 1]) {
            throw DimensionError("instrument " + to_string(label) + " alphabets do not match the wiring slot");
        }
        auto prev_radices = l > 1 ? q.o_radices(l - 1) : std::vector<std::size_t>{};
        auto j_radices = q.j_radices(l);
        auto o_radices = q.o_radices(l);
        Instrument primed(q.o_size(l - 1), q.o_size(l), inst.in_dim(), inst.out_dim());
        std::vector<std::size_t> jd(j_radices.size());
        std::vector<std::size_t> od(o_radices.size());
        for (std::size_t prev = 0; prev < q.o_size(l - 1); prev++) {
            auto pd = decode_digits(prev, prev_radices);
            // pd = (I_1..I_{l-1}, O_1..O_{l-1})
            for (std::size_t m = 0; m + 1 < l; m++) {
                jd[m] = pd[m];
                od[m] = pd[m];
                od[l + m] = pd[l - 1 + m];
            }
            for (std::size_t m = 0; m + 1 < l; m++) {
                jd[l + m] = pd[l - 1 + m];
            }
            for (std::size_t input = 0; input < inst.in_alphabet(); input++) {
                jd[l - 1] = input;
                double c = q.factors[l - 1][encode_digits(jd, j_radices)];
                if (c <= 0.0) {
                    continue;
                }
                od[l - 1] = input;
                for (const auto &[output, element] : row(inst, input)) {
                    od[2 * l - 1] = output;
                    primed.set(prev, encode_digits(od, o_radices), scale(*element, c));
                }
            }
        }
        if (!validate_instrument(primed, tol)) {
            throw CausalOrderError(
                "primed operation at step " + std::to_string(l) + " (" + to_string(label) +
                ") is not an instrument; the wiring does not respect the order");
        }
        out.rounds.push_back({label.party, std::move(primed)});
    }
    return out;
}

LoccProtocol merge_successive(const LoccProtocol &protocol, MergeOutputs mode) {
    if (protocol.rounds.empty()) {
        throw DimensionError("protocol has no rounds");
    }
    for (std::size_t r = 1; r < protocol.rounds.size(); r++) {
        if (protocol.rounds[r].instrument.in_alphabet() != protocol.rounds[r - 1].instrument.out_alphabet()) {
            throw DimensionError("round " + std::to_string(r + 1) + " input alphabet does not chain");
        }
    }
    struct Pending {
        Party party;
        Instrument inst;
        // The output symbol is (prefix part) + prefix * (last round's output).
        std::size_t prefix;
    };
    LoccProtocol out;
    Pending pending{protocol.rounds.front().party, protocol.rounds.front().instrument, 1};
    for (std::size_t r = 1; r < protocol.rounds.size(); r++) {
        const auto &next = protocol.rounds[r];
        const auto &x = pending.inst;
        if (next.party == pending.party) {
            if (x.out_dim() != next.instrument.in_dim()) {
                throw DimensionError("round " + std::to_string(r + 1) + " quantum dimension does not chain");
            }
            std::size_t n_x = x.out_alphabet();
            if (mode == MergeOutputs::concatenate) {
                Instrument merged(x.in_alphabet(), n_x * next.instrument.out_alphabet(), x.in_dim(),
                                  next.instrument.out_dim());
                for (const auto &[key, ex] : x.entries()) {
                    for (const auto &[oy, ey] : row(next.instrument, key.second / pending.prefix)) {
                        merged.set(key.first, key.second + n_x * oy, compose(*ey, ex));
                    }
                }
                pending = {next.party, std::move(merged), n_x};
            } else {
                Instrument merged(x.in_alphabet(), next.instrument.out_alphabet(), x.in_dim(),
                                  next.instrument.out_dim());
                std::map<Instrument::Key, std::vector<ComplexMatrix>> sums;
                for (const auto &[key, ex] : x.entries()) {
                    for (const auto &[oy, ey] : row(next.instrument, key.second / pending.prefix)) {
                        auto c = compose(*ey, ex);
                        auto &acc = sums[{key.first, oy}];
                        acc.insert(acc.end(), c.kraus().begin(), c.kraus().end());
                    }
                }
                for (auto &[key, kraus] : sums) {
                    CpMap m(x.in_dim(), next.instrument.out_dim(), std::move(kraus));
                    if (m.kraus().size() > m.in_dim() * m.out_dim()) {
                        m = canonicalize(m);
                    }
                    merged.set(key.first, key.second, std::move(m));
                }
                pending = {next.party, std::move(merged), 1};
            }
        } else {
            std::size_t n_x = x.out_alphabet();
            Instrument expanded(n_x, next.instrument.out_alphabet(), next.instrument.in_dim(),
                                next.instrument.out_dim());
            if (pending.prefix == 1) {
                expanded = next.instrument;
            } else {
                for (std::size_t sym = 0; sym < n_x; sym++) {
                    for (const auto &[oy, ey] : row(next.instrument, sym / pending.prefix)) {
                        expanded.set(sym, oy, *ey);
                    }
                }
            }
            out.rounds.push_back({pending.party, std::move(pending.inst)});
            pending = {next.party, std::move(expanded), 1};
        }
    }
    out.rounds.push_back({pending.party, std::move(pending.inst)});
    return out;
}

LoccProtocol reconstruct_locc(
    const std::vector<Instrument> &alice_rounds,
    const std::vector<Instrument> &bob_rounds,
    const AggregateWiring &p,
    const CausalOrder &order,
    double tol) {
    p.check();
    if (alice_rounds.size() != p.rounds_a || bob_rounds.size() != p.rounds_b) {
        throw DimensionError("instrument round counts do not match the wiring");
    }
    for (std::size_t s = 0; s < p.slots(); s++) {
        const Instrument &inst = s < p.rounds_a ? alice_rounds[s] : bob_rounds[s - p.rounds_a];
        if (inst.in_alphabet() != p.dist.input_alphabets()[s] || inst.out_alphabet() != p.dist.output_alphabets()[s]) {
            throw DimensionError("instrument alphabets do not match wiring slot " + std::to_string(s));
        }
    }
    auto check = respects_causal_order(p, order);
    if (!check.respects) {
        const auto &w = *check.witness;
        throw CausalOrderError(
            "wiring does not respect the causal order: marginal over (k=" + std::to_string(w.k) +
            ", l=" + std::to_string(w.l) + ") depends on output of " + to_string(order.label(w.slot)));
    }
    auto q = build_q_channels(p, linear_extension(order));
    auto primed = build_primed_operations(alice_rounds, bob_rounds, q, tol);
    return merge_successive(primed, MergeOutputs::last);
}

UnrolledProtocol unroll_protocol(const LoccProtocol &protocol) {
    protocol.check();
    std::vector<Instrument> alice;
    std::vector<Instrument> bob;
    std::vector<OpLabel> labels;
    for (const auto &r : protocol.rounds) {
        auto &rounds = r.party == Party::A ? alice : bob;
        rounds.push_back(r.instrument);
        labels.push_back({r.party, rounds.size()});
    }
    std::vector<CausalOrder::Edge> edges;
    for (std::size_t r = 1; r < labels.size(); r++) {
        edges.emplace_back(labels[r - 1], labels[r]);
    }
    CausalOrder order(alice.size(), bob.size(), edges);

    std::vector<std::size_t> ins(order.size());
    std::vector<std::size_t> outs(order.size());
    std::vector<std::size_t> slot_of_round(labels.size());
    for (std::size_t r = 0; r < labels.size(); r++) {
        slot_of_round[r] = order.index(labels[r]);
        ins[slot_of_round[r]] = protocol.rounds[r].instrument.in_alphabet();
        outs[slot_of_round[r]] = protocol.rounds[r].instrument.out_alphabet();
    }
    CondDist dist(ins, outs);
    std::vector<std::size_t> in_digits(order.size());
    for (std::size_t o = 0; o < dist.output_size(); o++) {
        auto od = decode_digits(o, outs);
        for (std::size_t r = 0; r < labels.size(); r++) {
            in_digits[slot_of_round[r]] = r == 0 ? 0 : od[slot_of_round[r - 1]];
        }
        dist(encode_digits(in_digits, ins), o) = 1.0;
    }
    return {std::move(alice), std::move(bob), AggregateWiring{order.rounds_a(), order.rounds_b(), std::move(dist)},
            std::move(order)};
}

}  // namespace causal_channels
