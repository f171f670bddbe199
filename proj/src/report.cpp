#include "tmdyn/report.hpp"

namespace tmdyn {

namespace {

Json symbol_list(const TuringMachine& machine, const std::vector<Symbol>& symbols) {
  Json out = Json::array();
  for (const auto a : symbols) out.push_back(machine.symbol_name(a));
  return out;
}

}  // namespace

std::string tool_version() { return TMDYN_VERSION; }

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const TuringMachine& machine, const CrossingWord& w) {
  return word_label(machine, w);
}

Json to_json(const TuringMachine& machine, const UltimatelyPeriodicConfiguration& config) {
  return {{"state", machine.state_name(config.state)},
          {"left_fill", machine.symbol_name(config.left_fill)},
          {"transient", symbol_list(machine, config.transient)},
          {"period", symbol_list(machine, config.period)}};
}

Json to_json(const TuringMachine& machine, const CrossingGraph& graph) {
  Json vertices = Json::array();
  for (const auto& w : graph.vertices) vertices.push_back(word_label(machine, w));
  Json edges = Json::array();
  for (const auto& e : graph.edges)
    edges.push_back({{"source", e.source},
                     {"target", e.target},
                     {"label", machine.symbol_name(e.label)},
                     {"weight", e.weight}});
  return {{"k", graph.k},
          {"vertices", vertices},
          {"edges", edges},
          {"initials", graph.initials},
          {"stay_extension_used", graph.stay_extension_used}};
}

Json to_json(const TuringMachine& machine, const CrossingGraph& graph, const WeightedCycle& cycle) {
  Json vertices = Json::array();
  for (const auto v : cycle.vertices) vertices.push_back(word_label(machine, graph.vertices[v]));
  Json labels = Json::array();
  for (const auto e : cycle.arcs) labels.push_back(machine.symbol_name(graph.edges[e].label));
  return {{"vertices", vertices},
          {"labels", labels},
          {"length", cycle.length()},
          {"total_weight", cycle.total_weight},
          {"mean", to_json(cycle.mean())}};
}

Json to_json(const TuringMachine& machine, const PeriodicCertificate& cert) {
  return {{"configuration", to_json(machine, cert.config)},
          {"claimed_speed", to_json(cert.claimed)},
          {"horizon", cert.horizon},
          {"visited", cert.visited},
          {"measured_speed", to_json(cert.measured)},
          {"verified", cert.verified}};
}

Json to_json(const ExactSpeed& exact) {
  Json out = {{"k", exact.k}, {"K", exact.K}, {"feasible", exact.value.has_value()}};
  if (exact.value) out["value"] = to_json(*exact.value);
  else out["reason"] = exact.reason;
  return out;
}

Json to_json(const EntropyLowerBound& bound) {
  return {{"lower", bound.value},
          {"enclosure_upper", bound.upper_enclosure},
          {"converged", bound.converged},
          {"from_mirror", bound.from_mirror},
          {"window", bound.window},
          {"sft_vertices", bound.sft_vertices},
          {"sft_edges", bound.sft_edges}};
}

Json to_json(const BehaviorSummary& summary) {
  Json by_visited = Json::array();
  for (const auto& [s, count] : summary.by_visited) by_visited.push_back({s, count});
  return {{"n", summary.horizon},
          {"traces", summary.count},
          {"max_visited", summary.max_visited},
          {"by_visited", by_visited}};
}

Json to_json(const TuringMachine& machine, const RunRecord& record) {
  Json symbols = Json::array(), states = Json::array();
  for (const auto& t : record.trace) {
    symbols.push_back(machine.symbol_name(t.symbol));
    states.push_back(machine.state_name(t.state));
  }
  return {{"steps", record.steps},
          {"symbol", symbols},
          {"state", states},
          {"head", record.head_positions},
          {"visited", record.visited_counts},
          {"exited", record.exited}};
}

Json to_json(const TuringMachine& machine, const IntervalResult& result, bool timing) {
  Json out;
  out["quantity"] = to_string(result.quantity);
  out["status"] = to_string(result.status);
  out["epsilon"] = result.epsilon;
  if (result.lower_exact) {
    out["lower"] = to_json(*result.lower_exact);
    out["upper"] = to_json(*result.upper_exact);
  }
  out["lower_value"] = result.lower;
  out["upper_value"] = result.upper;
  out["width"] = result.width();
  out["best_n"] = result.best_n;
  out["best_k"] = result.best_k;
  out["stay_extension_used"] = result.stay_extension_used;
  Json schedule = Json::array();
  for (const auto& e : result.schedule) {
    Json entry = {{"track", std::string(1, e.track)},
                  {"level", e.level},
                  {"completed", e.completed}};
    if (e.completed) entry["value"] = e.value;
    if (!e.note.empty()) entry["note"] = e.note;
    if (timing) entry["elapsed"] = e.elapsed;
    schedule.push_back(entry);
  }
  out["schedule"] = schedule;
  if (result.speed_witness) {
    const auto& w = *result.speed_witness;
    const auto& m = w.from_mirror ? mirror(machine) : machine;
    Json witness = {{"cycle", to_json(m, w.graph, w.cycle)}, {"from_mirror", w.from_mirror}};
    if (w.certificate) witness["certificate"] = to_json(m, *w.certificate);
    out["witness"] = witness;
  }
  if (result.entropy_witness) out["witness"] = to_json(*result.entropy_witness);
  if (result.exact) out["exact"] = to_json(*result.exact);
  if (timing) out["elapsed"] = result.elapsed;
  return out;
}

Json result_document(const TuringMachine& machine, const std::string& command, Json parameters,
                     Json payload) {
  return {{"tool", "tmdyn"},
          {"version", tool_version()},
          {"machine_digest", digest(machine)},
          {"command", command},
          {"parameters", std::move(parameters)},
          {"result", std::move(payload)}};
}

std::string dump(const Json& document) { return document.dump(2) + "\n"; }

}  // namespace tmdyn
