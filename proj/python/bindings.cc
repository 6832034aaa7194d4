#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "causal_channels/acceptance.h"
#include "causal_channels/cli.h"
#include "causal_channels/errors.h"
#include "causal_channels/json_io.h"
#include "causal_channels/procmat.h"
#include "causal_channels/sep.h"

namespace py = pybind11;
using namespace causal_channels;

namespace {

py::dict check_dict(const Check &c) {
    py::dict d;
    d["name"] = c.name;
    d["value"] = c.value;
    d["threshold"] = c.threshold;
    d["pass"] = c.pass;
    d["witness"] = c.witness;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bipartite joint quantum operations: instruments, wirings, separable maps and classical processes";

    auto &base = py::register_exception<Error>(m, "Error");
    py::register_exception<InputError>(m, "InputError", base);

    py::class_<CpMap>(m, "CpMap")
        .def(py::init<std::size_t, std::size_t, std::vector<ComplexMatrix>>(), py::arg("in_dim"), py::arg("out_dim"),
             py::arg("kraus") = std::vector<ComplexMatrix>{})
        .def_static("identity", &CpMap::identity)
        .def_property_readonly("in_dim", &CpMap::in_dim)
        .def_property_readonly("out_dim", &CpMap::out_dim)
        .def_property_readonly("kraus", &CpMap::kraus)
        .def("kraus_gram", &CpMap::kraus_gram);

    m.def("apply", &apply_cp_map, py::arg("map"), py::arg("rho"));
    m.def("choi", [](const CpMap &map) { return choi_of(map).matrix; });
    m.def(
        "kraus_from_choi",
        [](const ComplexMatrix &j, std::size_t in_dim, std::size_t out_dim, double tol) {
            return kraus_from_choi(ChoiOperator{in_dim, out_dim, j}, tol);
        },
        py::arg("choi"), py::arg("in_dim"), py::arg("out_dim"), py::arg("tol") = kDefaultTol);
    m.def("choi_distance", [](const CpMap &a, const CpMap &b) { return choi_distance(a, b); });
    m.def("tp_defect", [](const CpMap &map) { return tp_defect(map); });
    m.def("complementary_map", &complementary_map, py::arg("map"), py::arg("tol") = kDefaultTol);
    m.def("add", [](const CpMap &a, const CpMap &b) { return add(a, b); });
    m.def("scale", [](const CpMap &map, double c) { return scale(map, c); });
    m.def("tensor", [](const CpMap &a, const CpMap &b) { return tensor(a, b); });
    m.def(
        "random_cptp",
        [](std::size_t in_dim, std::size_t out_dim, std::size_t kraus, std::uint64_t seed) {
            return random_cptp(in_dim, out_dim, kraus, seed);
        },
        py::arg("in_dim"), py::arg("out_dim"), py::arg("kraus"), py::arg("seed"));

    py::class_<Instrument>(m, "Instrument")
        .def(py::init<std::size_t, std::size_t, std::size_t, std::size_t>(), py::arg("in_alphabet"),
             py::arg("out_alphabet"), py::arg("in_dim"), py::arg("out_dim"))
        .def_property_readonly("in_alphabet", &Instrument::in_alphabet)
        .def_property_readonly("out_alphabet", &Instrument::out_alphabet)
        .def_property_readonly("in_dim", &Instrument::in_dim)
        .def_property_readonly("out_dim", &Instrument::out_dim)
        .def("set", &Instrument::set, py::arg("input"), py::arg("output"), py::arg("map"))
        .def("element", &Instrument::element, py::arg("input"), py::arg("output"))
        .def("total", &Instrument::total)
        .def("to_json", [](const Instrument &i) { return dump_deterministic(to_json(i)); })
        .def_static("from_json", [](const std::string &text) { return instrument_from_json(Json::parse(text)); });

    m.def("validate_instrument", &validate_instrument, py::arg("instrument"), py::arg("tol") = kDefaultTol);
    m.def(
        "compose_loop",
        [](const Instrument &a, const Instrument &b) {
            auto f = compose_loop(a, b);
            return py::make_tuple(f.map, f.tp_defect);
        },
        py::arg("alice"), py::arg("bob"));

    m.def("nine_state_report", [](double tol) { return dump_deterministic(to_json(verify_nine_state_discrimination(tol))); },
          py::arg("tol") = kDefaultTol);
    m.def(
        "nine_state_instruments",
        [] {
            auto fx = nine_state_fixture();
            return py::make_tuple(fx.alice, fx.bob, fx.states);
        });

    m.def(
        "check_process",
        [](const std::string &text) {
            auto check = validate_classical_process(process_from_json(Json::parse(text)));
            py::dict d;
            d["valid"] = check.valid;
            d["max_deviation"] = check.max_deviation;
            if (check.witness) {
                d["f"] = check.witness->f;
                d["g"] = check.witness->g;
                d["value"] = check.witness->value;
            }
            return d;
        },
        py::arg("process_json"));
    m.def(
        "decompose_process",
        [](const std::string &text) {
            return dump_deterministic(to_json(causal_decompose(process_from_json(Json::parse(text)))));
        },
        py::arg("process_json"));

    m.def(
        "run_acceptance",
        [](std::uint64_t seed) {
            py::list out;
            for (const auto &c : run_acceptance(seed)) {
                py::dict d;
                d["id"] = c.id;
                d["title"] = c.title;
                d["pass"] = c.report.pass();
                py::list checks;
                for (const auto &k : c.report.checks) {
                    checks.append(check_dict(k));
                }
                d["checks"] = checks;
                out.append(d);
            }
            return out;
        },
        py::arg("seed") = kAcceptanceSeed);

    m.def(
        "cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "causal_channels");
            std::vector<const char *> argv;
            for (const auto &a : args) {
                argv.push_back(a.c_str());
            }
            std::ostringstream out;
            std::ostringstream err;
            int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
