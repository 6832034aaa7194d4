#include "causal_channels/json_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "causal_channels/errors.h"

namespace causal_channels {

namespace {

void write_value(const Json &v, int indent, int depth, std::string &out) {
    auto newline = [&](int d) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * d), ' ');
        }
    };
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) {
                    out += ',';
                }
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += indent >= 0 ? ": " : ":";
                write_value(it.value(), indent, depth + 1, out);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            bool scalars = std::all_of(v.begin(), v.end(), [](const Json &e) { return e.is_primitive(); });
            out += '[';
            bool first = true;
            for (const auto &e : v) {
                if (!first) {
                    out += scalars && indent >= 0 ? ", " : ",";
                }
                first = false;
                if (!scalars) {
                    newline(depth + 1);
                }
                write_value(e, indent, depth + 1, out);
            }
            if (!scalars) {
                newline(depth);
            }
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            double d = v.get<double>();
            if (!std::isfinite(d)) {
                out += "null";
                return;
            }
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", d);
            std::string s(buf);
            if (s.find_first_of(".eE") == std::string::npos) {
                s += ".0";
            }
            out += s;
            return;
        }
        default:
            out += v.dump();
    }
}

[[noreturn]] void fail(const std::string &at, const std::string &what) {
    throw InputError(at + ": " + what);
}

const Json &field(const Json &j, const char *name, const std::string &at) {
    if (!j.is_object()) {
        fail(at, "expected an object");
    }
    auto it = j.find(name);
    if (it == j.end()) {
        fail(at + "." + name, "missing field");
    }
    return *it;
}

std::size_t count_of(const Json &j, const std::string &at, bool allow_zero = false) {
    if (!j.is_number_integer() || j.get<long long>() < (allow_zero ? 0 : 1)) {
        fail(at, allow_zero ? "expected a nonnegative integer" : "expected a positive integer");
    }
    return j.get<std::size_t>();
}

double real_of(const Json &j, const std::string &at) {
    if (!j.is_number()) {
        fail(at, "expected a number");
    }
    double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(at, "expected a finite number");
    }
    return v;
}

std::vector<std::size_t> counts_of(const Json &j, const std::string &at) {
    if (!j.is_array()) {
        fail(at, "expected an array of positive integers");
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < j.size(); k++) {
        out.push_back(count_of(j[k], at + "[" + std::to_string(k) + "]"));
    }
    return out;
}

template <typename F>
auto wrap(const std::string &at, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError &) {
        throw;
    } catch (const Error &e) {
        fail(at, e.what());
    }
}

}  // namespace

std::string dump_deterministic(const Json &value, int indent) {
    std::string out;
    write_value(value, indent, 0, out);
    if (indent >= 0) {
        out += '\n';
    }
    return out;
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError(path + ": cannot open file");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw InputError(path + ": malformed JSON: " + e.what());
    }
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError(path + ": cannot open file for writing");
    }
    out << text;
}

Json to_json(const ComplexMatrix &m) {
    Json data = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            data.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

ComplexMatrix matrix_from_json(const Json &j, const std::string &at) {
    std::size_t rows = count_of(field(j, "rows", at), at + ".rows");
    std::size_t cols = count_of(field(j, "cols", at), at + ".cols");
    const Json &data = field(j, "data", at);
    if (!data.is_array() || data.size() != rows * cols) {
        fail(at + ".data", "expected " + std::to_string(rows * cols) + " [re, im] entries, got " +
                               (data.is_array() ? std::to_string(data.size()) : std::string("a non-array")));
    }
    ComplexMatrix m(rows, cols);
    for (std::size_t k = 0; k < data.size(); k++) {
        std::string here = at + ".data[" + std::to_string(k) + "]";
        const Json &e = data[k];
        if (!e.is_array() || e.size() != 2) {
            fail(here, "expected [re, im]");
        }
        m(static_cast<Eigen::Index>(k / cols), static_cast<Eigen::Index>(k % cols)) =
            Complex(real_of(e[0], here + "[0]"), real_of(e[1], here + "[1]"));
    }
    return m;
}

Json to_json(const CpMap &m) {
    Json kraus = Json::array();
    for (const auto &k : m.kraus()) {
        kraus.push_back(to_json(k));
    }
    return {{"in_dim", m.in_dim()}, {"out_dim", m.out_dim()}, {"kraus", kraus}};
}

CpMap cpmap_from_json(const Json &j, const std::string &at) {
    std::size_t in_dim = count_of(field(j, "in_dim", at), at + ".in_dim");
    std::size_t out_dim = count_of(field(j, "out_dim", at), at + ".out_dim");
    const Json &kraus = field(j, "kraus", at);
    if (!kraus.is_array()) {
        fail(at + ".kraus", "expected an array of matrices");
    }
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < kraus.size(); k++) {
        std::string here = at + ".kraus[" + std::to_string(k) + "]";
        auto m = matrix_from_json(kraus[k], here);
        if (static_cast<std::size_t>(m.rows()) != out_dim || static_cast<std::size_t>(m.cols()) != in_dim) {
            fail(here, "expected a " + std::to_string(out_dim) + "x" + std::to_string(in_dim) + " matrix");
        }
        ops.push_back(std::move(m));
    }
    return wrap(at, [&] { return CpMap(in_dim, out_dim, std::move(ops)); });
}

Json to_json(const Instrument &inst) {
    Json elements = Json::object();
    for (std::size_t i = 0; i < inst.in_alphabet(); i++) {
        Json row = Json::array();
        for (std::size_t o = 0; o < inst.out_alphabet(); o++) {
            row.push_back(to_json(inst.element(i, o)));
        }
        elements[std::to_string(i)] = row;
    }
    return {{"in_alphabet", inst.in_alphabet()}, {"out_alphabet", inst.out_alphabet()}, {"elements", elements}};
}

Instrument instrument_from_json(const Json &j, const std::string &at) {
    std::size_t n_in = count_of(field(j, "in_alphabet", at), at + ".in_alphabet");
    std::size_t n_out = count_of(field(j, "out_alphabet", at), at + ".out_alphabet");
    const Json &elements = field(j, "elements", at);
    if (!elements.is_object()) {
        fail(at + ".elements", "expected an object keyed by classical input");
    }
    std::vector<std::vector<CpMap>> rows;
    for (std::size_t i = 0; i < n_in; i++) {
        std::string key = std::to_string(i);
        std::string here = at + ".elements." + key;
        auto it = elements.find(key);
        if (it == elements.end()) {
            fail(here, "missing classical input");
        }
        if (!it->is_array() || it->size() != n_out) {
            fail(here, "expected " + std::to_string(n_out) + " maps");
        }
        std::vector<CpMap> row;
        for (std::size_t o = 0; o < n_out; o++) {
            row.push_back(cpmap_from_json((*it)[o], here + "[" + std::to_string(o) + "]"));
        }
        rows.push_back(std::move(row));
    }
    for (auto it = elements.begin(); it != elements.end(); ++it) {
        bool known = false;
        for (std::size_t i = 0; i < n_in && !known; i++) {
            known = it.key() == std::to_string(i);
        }
        if (!known) {
            fail(at + ".elements." + it.key(), "unexpected classical input");
        }
    }
    const CpMap &first = rows.front().front();
    Instrument inst(n_in, n_out, first.in_dim(), first.out_dim());
    for (std::size_t i = 0; i < n_in; i++) {
        for (std::size_t o = 0; o < n_out; o++) {
            std::string here = at + ".elements." + std::to_string(i) + "[" + std::to_string(o) + "]";
            wrap(here, [&] {
                inst.set(i, o, rows[i][o]);
                return 0;
            });
        }
    }
    return inst;
}

Json to_json(const CondDist &p) {
    return {{"input_alphabets", p.input_alphabets()}, {"output_alphabets", p.output_alphabets()},
            {"table", p.table()}};
}

CondDist conddist_from_json(const Json &j, const std::string &at) {
    auto ins = counts_of(field(j, "input_alphabets", at), at + ".input_alphabets");
    auto outs = counts_of(field(j, "output_alphabets", at), at + ".output_alphabets");
    const Json &table = field(j, "table", at);
    if (!table.is_array()) {
        fail(at + ".table", "expected an array of numbers");
    }
    std::vector<double> values;
    for (std::size_t k = 0; k < table.size(); k++) {
        values.push_back(real_of(table[k], at + ".table[" + std::to_string(k) + "]"));
    }
    return wrap(at + ".table", [&] {
        CondDist p(ins, outs, std::move(values));
        p.require_valid();
        return p;
    });
}

Json to_json(const JointMapSpec &spec) {
    return {{"alice", to_json(spec.alice)}, {"bob", to_json(spec.bob)}, {"wiring", to_json(spec.wiring)}};
}

JointMapSpec joint_spec_from_json(const Json &j, const std::string &at) {
    JointMapSpec spec{instrument_from_json(field(j, "alice", at), at + ".alice"),
                      instrument_from_json(field(j, "bob", at), at + ".bob"),
                      conddist_from_json(field(j, "wiring", at), at + ".wiring")};
    wrap(at, [&] {
        spec.check();
        return 0;
    });
    return spec;
}

Json to_json(const LoccProtocol &protocol) {
    Json rounds = Json::array();
    for (const auto &r : protocol.rounds) {
        rounds.push_back({{"party", std::string(1, party_char(r.party))}, {"instrument", to_json(r.instrument)}});
    }
    return {{"rounds", rounds}};
}

namespace {

Party party_of(const Json &j, const std::string &at) {
    if (!j.is_string() || (j != "A" && j != "B")) {
        fail(at, "expected \"A\" or \"B\"");
    }
    return party_from_char(j.get<std::string>()[0]);
}

}  // namespace

LoccProtocol protocol_from_json(const Json &j, const std::string &at) {
    const Json &rounds = field(j, "rounds", at);
    if (!rounds.is_array() || rounds.empty()) {
        fail(at + ".rounds", "expected a nonempty array");
    }
    LoccProtocol protocol;
    for (std::size_t r = 0; r < rounds.size(); r++) {
        std::string here = at + ".rounds[" + std::to_string(r) + "]";
        protocol.rounds.push_back({party_of(field(rounds[r], "party", here), here + ".party"),
                                   instrument_from_json(field(rounds[r], "instrument", here), here + ".instrument")});
    }
    wrap(at, [&] {
        protocol.check();
        return 0;
    });
    return protocol;
}

Json to_json(const SepMap &m) {
    Json terms = Json::array();
    for (const auto &t : m.terms) {
        terms.push_back({{"a", to_json(t.a)}, {"b", to_json(t.b)}});
    }
    return {{"terms", terms}};
}

SepMap sepmap_from_json(const Json &j, const std::string &at) {
    const Json &terms = field(j, "terms", at);
    if (!terms.is_array() || terms.empty()) {
        fail(at + ".terms", "expected a nonempty array");
    }
    SepMap m;
    for (std::size_t k = 0; k < terms.size(); k++) {
        std::string here = at + ".terms[" + std::to_string(k) + "]";
        m.terms.push_back({cpmap_from_json(field(terms[k], "a", here), here + ".a"),
                           cpmap_from_json(field(terms[k], "b", here), here + ".b")});
    }
    wrap(at + ".terms", [&] {
        m.check();
        return 0;
    });
    return m;
}

Json to_json(const CausalOrder &order) {
    Json nodes = Json::array();
    for (std::size_t n = 0; n < order.size(); n++) {
        auto label = order.label(n);
        nodes.push_back({{"party", std::string(1, party_char(label.party))}, {"round", label.round}});
    }
    Json edges = Json::array();
    for (const auto &[from, to] : order.declared_edges()) {
        edges.push_back(Json::array({order.index(from), order.index(to)}));
    }
    return {{"nodes", nodes}, {"edges", edges}};
}

CausalOrder order_from_json(const Json &j, const std::string &at) {
    const Json &nodes = field(j, "nodes", at);
    if (!nodes.is_array() || nodes.empty()) {
        fail(at + ".nodes", "expected a nonempty array");
    }
    std::vector<OpLabel> labels;
    std::size_t rounds_a = 0;
    std::size_t rounds_b = 0;
    for (std::size_t n = 0; n < nodes.size(); n++) {
        std::string here = at + ".nodes[" + std::to_string(n) + "]";
        OpLabel label{party_of(field(nodes[n], "party", here), here + ".party"),
                      count_of(field(nodes[n], "round", here), here + ".round")};
        if (std::find(labels.begin(), labels.end(), label) != labels.end()) {
            fail(here, "duplicate operation " + to_string(label));
        }
        labels.push_back(label);
        (label.party == Party::A ? rounds_a : rounds_b) = std::max(
            label.party == Party::A ? rounds_a : rounds_b, label.round);
    }
    if (labels.size() != rounds_a + rounds_b) {
        fail(at + ".nodes", "rounds of each party must be consecutive from 1");
    }
    const Json &edges = field(j, "edges", at);
    if (!edges.is_array()) {
        fail(at + ".edges", "expected an array of [from, to] node indices");
    }
    std::vector<CausalOrder::Edge> pairs;
    for (std::size_t e = 0; e < edges.size(); e++) {
        std::string here = at + ".edges[" + std::to_string(e) + "]";
        if (!edges[e].is_array() || edges[e].size() != 2) {
            fail(here, "expected [from, to]");
        }
        std::size_t from = count_of(edges[e][0], here + "[0]", true);
        std::size_t to = count_of(edges[e][1], here + "[1]", true);
        if (from >= labels.size() || to >= labels.size()) {
            fail(here, "node index out of range");
        }
        pairs.emplace_back(labels[from], labels[to]);
    }
    return wrap(at, [&] { return CausalOrder(rounds_a, rounds_b, pairs); });
}

Json to_json(const AggregateWiring &p) {
    Json j = to_json(p.dist);
    Json slots = Json::array();
    for (std::size_t k = 1; k <= p.rounds_a; k++) {
        slots.push_back("A" + std::to_string(k));
    }
    for (std::size_t k = 1; k <= p.rounds_b; k++) {
        slots.push_back("B" + std::to_string(k));
    }
    j["slots"] = slots;
    return j;
}

AggregateWiring aggregate_from_json(const Json &j, const std::string &at) {
    const Json &slots = field(j, "slots", at);
    if (!slots.is_array() || slots.empty()) {
        fail(at + ".slots", "expected a nonempty array of slot names");
    }
    std::size_t rounds_a = 0;
    std::size_t rounds_b = 0;
    for (std::size_t s = 0; s < slots.size(); s++) {
        std::string here = at + ".slots[" + std::to_string(s) + "]";
        if (!slots[s].is_string()) {
            fail(here, "expected a slot name");
        }
        std::string name = slots[s].get<std::string>();
        std::string expect_a = "A" + std::to_string(rounds_a + 1);
        std::string expect_b = "B" + std::to_string(rounds_b + 1);
        if (rounds_b == 0 && name == expect_a) {
            rounds_a++;
        } else if (name == expect_b) {
            rounds_b++;
        } else {
            fail(here, "slots must be A1..AN followed by B1..BM, got \"" + name + "\"");
        }
    }
    if (rounds_a == 0 || rounds_b == 0) {
        fail(at + ".slots", "each party needs at least one slot");
    }
    AggregateWiring p{rounds_a, rounds_b, conddist_from_json(j, at)};
    wrap(at, [&] {
        p.check();
        return 0;
    });
    return p;
}

Json to_json(const ClassicalProcess &w) {
    return {{"alphabets", {{"i_a", w.n_ia()}, {"i_b", w.n_ib()}, {"o_a", w.n_oa()}, {"o_b", w.n_ob()}}},
            {"table", w.table()}};
}

ClassicalProcess process_from_json(const Json &j, const std::string &at) {
    const Json &alph = field(j, "alphabets", at);
    std::string here = at + ".alphabets";
    std::size_t n_ia = count_of(field(alph, "i_a", here), here + ".i_a");
    std::size_t n_ib = count_of(field(alph, "i_b", here), here + ".i_b");
    std::size_t n_oa = count_of(field(alph, "o_a", here), here + ".o_a");
    std::size_t n_ob = count_of(field(alph, "o_b", here), here + ".o_b");
    const Json &table = field(j, "table", at);
    if (!table.is_array()) {
        fail(at + ".table", "expected an array of numbers");
    }
    std::vector<double> values;
    for (std::size_t k = 0; k < table.size(); k++) {
        values.push_back(real_of(table[k], at + ".table[" + std::to_string(k) + "]"));
    }
    return wrap(at + ".table", [&] { return ClassicalProcess(n_ia, n_ib, n_oa, n_ob, std::move(values)); });
}

Json to_json(const CausalDecomposition &dec) {
    return {{"q", dec.q}, {"p_ab", to_json(dec.p_ab)}, {"p_ba", to_json(dec.p_ba)},
            {"recombination_error", dec.recombination_error}};
}

Json to_json(const StrategyPair &s) {
    return {{"f", s.f}, {"g", s.g}, {"value", s.value}};
}

Json to_json(const NineStateReport &report) {
    Json states = Json::array();
    for (const auto &r : report.records) {
        states.push_back({{"state", r.state}, {"output_fidelity", r.output_fidelity}, {"distance", r.distance}});
    }
    return {{"states", states}, {"instrument_defect", report.instrument_defect},
            {"joint_tp_defect", report.joint_tp_defect}, {"pass", report.pass}};
}

Json to_json(const ProbeReport &report) {
    Json probes = Json::array();
    for (const auto &p : report.probes) {
        probes.push_back({{"kind", p.kind}, {"index", p.index}, {"value", p.value}, {"deviation", p.deviation}});
    }
    return {{"probes", probes}, {"max_deviation", report.max_deviation}};
}

}  // namespace causal_channels
