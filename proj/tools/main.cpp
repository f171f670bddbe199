#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tmdyn/approximator.hpp"
#include "tmdyn/exhaustive.hpp"
#include "tmdyn/graph_analysis.hpp"
#include "tmdyn/report.hpp"
#include "tmdyn/sft.hpp"

using namespace tmdyn;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNotConverged = 2;
constexpr int kBudgetError = 3;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string machine_file;
  double eps = 0.1;
  std::optional<std::size_t> k;
  std::optional<std::size_t> n;
  double x = 0;
  std::optional<std::uint64_t> budget_nodes;
  std::optional<double> budget_seconds;
  std::string dot;
  bool json = false;
  bool timing = false;
  std::string state;
  std::string tape = "neg-pow2";
  std::string output;
};

Limits limits_of(const Options& o) {
  Limits l;
  if (o.budget_nodes) l.nodes = *o.budget_nodes;
  if (o.budget_seconds) l.seconds = *o.budget_seconds;
  return l;
}

Json budget_parameters(const Options& o) {
  const Limits l = limits_of(o);
  return {{"budget_nodes", l.nodes}, {"budget_seconds", l.seconds}};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// Splits a run of symbol names: per character when every name is one character long, otherwise
// on commas and spaces.
std::vector<Symbol> parse_symbols(const TuringMachine& m, const std::string& text) {
  const bool single = std::all_of(m.symbol_names().begin(), m.symbol_names().end(),
                                  [](const std::string& s) { return s.size() == 1; });
  std::vector<std::string> names;
  if (single) {
    for (const char c : text)
      if (c != ',' && c != ' ') names.emplace_back(1, c);
  } else {
    std::string cur;
    for (const char c : text + ",") {
      if (c == ',' || c == ' ') {
        if (!cur.empty()) names.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
  std::vector<Symbol> out;
  for (const auto& name : names) {
    try {
      out.push_back(m.find_symbol(name));
    } catch (const std::exception&) {
      throw InputError("unknown symbol '" + name + "' in tape pattern");
    }
  }
  return out;
}

// Tape patterns: "neg-pow2"; a finite word (blank = first symbol elsewhere); or
// "LEFT|TRANSIENT|PERIOD" for an ultimately periodic tape.
WindowConfiguration tape_window(const TuringMachine& m, State q, const std::string& pattern,
                                std::int64_t reach) {
  if (pattern == "neg-pow2") {
    if (m.num_symbols() < 2) throw InputError("neg-pow2 needs at least two symbols");
    return neg_pow2_window(q, Symbol{0}, Symbol{1}, -reach, reach);
  }
  UltimatelyPeriodicConfiguration c;
  c.state = q;
  const auto bar = pattern.find('|');
  if (bar == std::string::npos) {
    c.transient = parse_symbols(m, pattern);
    c.period = {Symbol{0}};
  } else {
    const auto bar2 = pattern.find('|', bar + 1);
    if (bar2 == std::string::npos) throw InputError("periodic tape needs LEFT|TRANSIENT|PERIOD");
    const auto left = parse_symbols(m, pattern.substr(0, bar));
    if (left.size() != 1) throw InputError("left fill must be a single symbol");
    c.left_fill = left[0];
    c.transient = parse_symbols(m, pattern.substr(bar + 1, bar2 - bar - 1));
    c.period = parse_symbols(m, pattern.substr(bar2 + 1));
    if (c.period.empty()) throw InputError("period must not be empty");
  }
  return c.window(-reach, reach);
}

State initial_state(const TuringMachine& m, const std::string& name) {
  if (name.empty()) return State{0};
  try {
    return m.find_state(name);
  } catch (const std::exception&) {
    throw InputError("unknown state '" + name + "'");
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

int cmd_simulate(const TuringMachine& m, const Options& o) {
  const std::size_t n = o.n.value_or(100);
  const State q = initial_state(m, o.state);
  const auto record = run(m, tape_window(m, q, o.tape, static_cast<std::int64_t>(n) + 1), n);
  if (o.json) {
    write_text(o.output, dump(result_document(m, "simulate",
                                              {{"n", n}, {"state", m.state_name(q)}, {"tape", o.tape}},
                                              to_json(m, record))));
    return kOk;
  }
  std::ostringstream out;
  out << "# t symbol state head visited\n";
  for (std::size_t t = 0; t < record.steps; ++t)
    out << t << ' ' << m.symbol_name(record.trace[t].symbol) << ' '
        << m.state_name(record.trace[t].state) << ' ' << record.head_positions[t] << ' '
        << record.visited_counts[t] << '\n';
  write_text(o.output, out.str());
  return kOk;
}

int cmd_bounds(const TuringMachine& m, const Options& o) {
  if (!o.n && !o.k) throw InputError("bounds needs --n and/or --k");
  Budget budget(limits_of(o));
  Json params = budget_parameters(o);
  Json payload;
  if (o.n) {
    params["n"] = *o.n;
    const auto summary = summarize_behaviors(m, *o.n, budget);
    Json up = to_json(summary);
    up["speed_upper"] = to_json(speed_upper(m, *o.n, budget));
    up["entropy_upper"] = entropy_upper(summary);
    payload["upper"] = up;
  }
  if (o.k) {
    params["k"] = *o.k;
    params["eps"] = o.eps;
    const auto s = speed_lower(m, *o.k, budget);
    const auto h = entropy_lower(m, *o.k, o.eps / 4, budget);
    payload["lower"] = {{"k", *o.k}, {"speed_lower", to_json(s.value)}, {"entropy_lower", to_json(h)}};
  }
  if (o.json) {
    std::cout << dump(result_document(m, "bounds", params, payload));
  } else {
    if (o.n)
      std::cout << "n=" << *o.n << "  |T_n|=" << payload["upper"]["traces"].get<std::uint64_t>()
                << "  speed <= " << payload["upper"]["speed_upper"].get<std::string>()
                << "  entropy <= " << fmt(payload["upper"]["entropy_upper"].get<double>()) << '\n';
    if (o.k)
      std::cout << "k=" << *o.k << "  speed >= " << payload["lower"]["speed_lower"].get<std::string>()
                << "  entropy >= "
                << fmt(payload["lower"]["entropy_lower"]["lower"].get<double>()) << '\n';
  }
  return kOk;
}

int cmd_interval(const TuringMachine& m, const Options& o, Quantity q) {
  ApproximatorOptions opts;
  opts.limits = limits_of(o);
  const auto result = q == Quantity::Speed ? approximate_speed(m, o.eps, opts)
                                           : approximate_entropy(m, o.eps, opts);
  Json params = budget_parameters(o);
  params["eps"] = o.eps;
  const auto name = to_string(q);
  if (o.json) {
    std::cout << dump(result_document(m, name, params, to_json(m, result, o.timing)));
  } else {
    std::cout << name << " in [";
    if (result.lower_exact)
      std::cout << result.lower_exact->str() << ", " << result.upper_exact->str() << "]  ~ ["
                << fmt(result.lower) << ", " << fmt(result.upper) << "]";
    else
      std::cout << fmt(result.lower) << ", " << fmt(result.upper) << "]";
    std::cout << "  " << to_string(result.status) << " (n=" << result.best_n
              << ", k=" << result.best_k << ")\n";
  }
  return result.status == Status::Converged ? kOk : kNotConverged;
}

int cmd_graph(const TuringMachine& m, const Options& o) {
  const std::size_t k = o.k.value_or(1);
  Budget budget(limits_of(o));
  const auto graph = build_graph(m, k, budget);
  const auto dot = to_dot(m, graph);
  if (!o.dot.empty()) write_text(o.dot, dot);
  if (o.json) {
    Json params = budget_parameters(o);
    params["k"] = k;
    std::cout << dump(result_document(m, "graph", params, to_json(m, graph)));
  } else if (o.dot.empty()) {
    std::cout << dot;
  }
  return kOk;
}

int cmd_certificate(const TuringMachine& m, const Options& o) {
  const std::size_t k = o.k.value_or(1);
  Budget budget(limits_of(o));
  const auto s = speed_lower(m, k, budget);
  Json payload = {{"k", k}, {"speed_lower", to_json(s.value)}};
  if (s.cycle) {
    const auto machine = s.from_mirror ? mirror(m) : m;
    const auto cert = periodic_certificate(machine, s.graph, *s.cycle);
    payload["from_mirror"] = s.from_mirror;
    payload["cycle"] = to_json(machine, s.graph, *s.cycle);
    payload["certificate"] = to_json(machine, cert);
  }
  if (o.json) {
    Json params = budget_parameters(o);
    params["k"] = k;
    std::cout << dump(result_document(m, "certificate", params, payload));
  } else if (!s.cycle) {
    std::cout << "no cycle in G_" << k << "; speed >= 0\n";
  } else {
    const auto& c = payload["certificate"];
    const auto& cfg = c["configuration"];
    auto join = [](const Json& a) {
      std::string s;
      for (const auto& x : a) s += x.get<std::string>();
      return s;
    };
    std::cout << "state " << cfg["state"].get<std::string>() << "  transient \""
              << join(cfg["transient"]) << "\"  period \"" << join(cfg["period"]) << "\"\n"
              << "speed " << c["claimed_speed"].get<std::string>() << "  measured "
              << c["measured_speed"].get<std::string>() << " over " << c["horizon"].get<std::size_t>()
              << " steps  " << (c["verified"].get<bool>() ? "verified" : "NOT verified")
              << (s.from_mirror ? "  (mirror machine)" : "") << '\n';
  }
  return kOk;
}

int cmd_pressure(const TuringMachine& m, const Options& o) {
  if (!o.n) throw InputError("pressure needs --n");
  if (o.x < 0) throw InputError("pressure needs --x >= 0");
  Budget budget(limits_of(o));
  const auto summary = summarize_behaviors(m, *o.n, budget);
  const double p = pressure_estimate(summary, o.x);
  if (o.json) {
    Json params = budget_parameters(o);
    params["n"] = *o.n;
    params["x"] = o.x;
    std::cout << dump(result_document(m, "pressure", params,
                                      {{"n", *o.n}, {"x", o.x}, {"pressure", p},
                                       {"entropy_upper", entropy_upper(summary)}}));
  } else {
    std::cout << "P(" << fmt(o.x) << ") <= " << fmt(p) << "  (n=" << *o.n << ")\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified bounds on the speed and entropy of one-tape Turing machines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("machine", o.machine_file, "Machine file")->required();
    sub->add_option("--budget-nodes", o.budget_nodes, "Work cap per bound track");
    sub->add_option("--budget-seconds", o.budget_seconds, "Wall-clock cap in seconds");
    sub->add_flag("--json", o.json, "Emit a structured JSON document");
  };
  auto* simulate = app.add_subcommand("simulate", "Run the machine and dump trace data");
  common(simulate);
  simulate->add_option("--n", o.n, "Steps (default 100)");
  simulate->add_option("--state", o.state, "Initial state (default: first declared)");
  simulate->add_option("--tape", o.tape,
                       "neg-pow2 | finite word | LEFT|TRANSIENT|PERIOD (default neg-pow2)");
  simulate->add_option("--output", o.output, "Output file (default stdout)");

  auto* bounds = app.add_subcommand("bounds", "Single upper (--n) and/or lower (--k) bounds");
  common(bounds);
  bounds->add_option("--n", o.n, "Horizon for the exhaustive upper bounds");
  bounds->add_option("--k", o.k, "Crossing word bound for the graph lower bounds");
  bounds->add_option("--eps", o.eps, "Spectral precision is eps/4");

  auto* speed = app.add_subcommand("speed", "Certified interval for the maximum speed");
  auto* entropy = app.add_subcommand("entropy", "Certified interval for the entropy");
  for (auto* sub : {speed, entropy}) {
    common(sub);
    sub->add_option("--eps", o.eps, "Target interval width (default 0.1)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--timing", o.timing, "Include elapsed times in the JSON");
  }

  auto* graph = app.add_subcommand("graph", "Crossing graph G_k");
  common(graph);
  graph->add_option("--k", o.k, "Crossing word bound (default 1)");
  graph->add_option("--dot", o.dot, "Write Graphviz DOT to this path");

  auto* certificate = app.add_subcommand("certificate", "Ultimately periodic speed witness");
  common(certificate);
  certificate->add_option("--k", o.k, "Crossing word bound (default 1)");

  auto* pressure = app.add_subcommand("pressure", "Pressure upper estimate");
  common(pressure);
  pressure->add_option("--n", o.n, "Horizon")->required();
  pressure->add_option("--x", o.x, "Weight x >= 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const auto machine = load_machine(o.machine_file);
    if (*simulate) return cmd_simulate(machine, o);
    if (*bounds) return cmd_bounds(machine, o);
    if (*speed) return cmd_interval(machine, o, Quantity::Speed);
    if (*entropy) return cmd_interval(machine, o, Quantity::Entropy);
    if (*graph) return cmd_graph(machine, o);
    if (*certificate) return cmd_certificate(machine, o);
    if (*pressure) return cmd_pressure(machine, o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudgetError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
