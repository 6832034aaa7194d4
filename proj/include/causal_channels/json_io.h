#ifndef CAUSAL_CHANNELS_JSON_IO_H
#define CAUSAL_CHANNELS_JSON_IO_H

#include <string>

#include <nlohmann/json.hpp>

#include "causal_channels/causal.h"
#include "causal_channels/procmat.h"
#include "causal_channels/sep.h"

namespace causal_channels {

using Json = nlohmann::json;

/// Sorted keys and %.17g floats, so equal values always give equal bytes.
std::string dump_deterministic(const Json &value, int indent = 2);

Json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

// Loaders throw InputError naming the offending field; `at` prefixes the path.

Json to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &j, const std::string &at = "matrix");

Json to_json(const CpMap &m);
CpMap cpmap_from_json(const Json &j, const std::string &at = "map");

Json to_json(const Instrument &inst);
Instrument instrument_from_json(const Json &j, const std::string &at = "instrument");

Json to_json(const CondDist &p);
CondDist conddist_from_json(const Json &j, const std::string &at = "wiring");

Json to_json(const JointMapSpec &spec);
JointMapSpec joint_spec_from_json(const Json &j, const std::string &at = "spec");

Json to_json(const LoccProtocol &protocol);
LoccProtocol protocol_from_json(const Json &j, const std::string &at = "protocol");

Json to_json(const SepMap &m);
SepMap sepmap_from_json(const Json &j, const std::string &at = "sep");

Json to_json(const CausalOrder &order);
CausalOrder order_from_json(const Json &j, const std::string &at = "order");

Json to_json(const AggregateWiring &p);
AggregateWiring aggregate_from_json(const Json &j, const std::string &at = "wiring");

Json to_json(const ClassicalProcess &w);
ClassicalProcess process_from_json(const Json &j, const std::string &at = "process");

Json to_json(const CausalDecomposition &dec);
Json to_json(const StrategyPair &s);
Json to_json(const NineStateReport &report);
Json to_json(const ProbeReport &report);

}  // namespace causal_channels

#endif
