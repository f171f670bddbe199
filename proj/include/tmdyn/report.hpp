#pragma once

#include <string>

#include <json.hpp>

#include "tmdyn/approximator.hpp"
#include "tmdyn/crossing.hpp"
#include "tmdyn/exhaustive.hpp"
#include "tmdyn/graph_analysis.hpp"
#include "tmdyn/machine.hpp"
#include "tmdyn/simulate.hpp"

namespace tmdyn {

using Json = nlohmann::json;  // keys sorted, so dumps are canonical

std::string tool_version();

Json to_json(const Rational& r);  // "p/q"
Json to_json(const TuringMachine& machine, const CrossingWord& w);
Json to_json(const TuringMachine& machine, const UltimatelyPeriodicConfiguration& config);
Json to_json(const TuringMachine& machine, const CrossingGraph& graph);
Json to_json(const TuringMachine& machine, const CrossingGraph& graph, const WeightedCycle& cycle);
Json to_json(const TuringMachine& machine, const PeriodicCertificate& cert);
Json to_json(const ExactSpeed& exact);
Json to_json(const EntropyLowerBound& bound);
Json to_json(const BehaviorSummary& summary);
Json to_json(const TuringMachine& machine, const RunRecord& record);

/// Approximator output. Elapsed times are left out unless `timing` is set, so that reruns are
/// byte-identical.
Json to_json(const TuringMachine& machine, const IntervalResult& result, bool timing);

/// Top-level document: tool version, machine digest, command, parameters and payload.
Json result_document(const TuringMachine& machine, const std::string& command, Json parameters,
                     Json payload);

/// Canonical text of a document (2-space indent, trailing newline).
std::string dump(const Json& document);

}  // namespace tmdyn
