#include "tmdyn/machine.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace tmdyn {

char move_letter(Move m) {
  switch (m) {
    case Move::Left: return 'L';
    case Move::Stay: return 'S';
    case Move::Right: return 'R';
  }
  return '?';
}

TuringMachine::TuringMachine(std::vector<std::string> state_names,
                             std::vector<std::string> symbol_names, std::vector<Transition> table)
    : state_names_(std::move(state_names)),
      symbol_names_(std::move(symbol_names)),
      table_(std::move(table)) {
  if (state_names_.empty()) throw std::invalid_argument("machine needs at least one state");
  if (symbol_names_.empty()) throw std::invalid_argument("machine needs at least one symbol");
  if (state_names_.size() > 0xFFFF || symbol_names_.size() > 0xFFFF)
    throw std::invalid_argument("too many states or symbols");
  if (table_.size() != state_names_.size() * symbol_names_.size())
    throw std::invalid_argument("transition table is not total");
  for (const auto& t : table_) {
    if (index(t.next) >= state_names_.size() || index(t.write) >= symbol_names_.size())
      throw std::invalid_argument("transition references an undeclared state or symbol");
  }
}

State TuringMachine::find_state(std::string_view name) const {
  const auto it = std::find(state_names_.begin(), state_names_.end(), name);
  if (it == state_names_.end()) throw std::invalid_argument("unknown state '" + std::string(name) + "'");
  return static_cast<State>(it - state_names_.begin());
}

Symbol TuringMachine::find_symbol(std::string_view name) const {
  const auto it = std::find(symbol_names_.begin(), symbol_names_.end(), name);
  if (it == symbol_names_.end())
    throw std::invalid_argument("unknown symbol '" + std::string(name) + "'");
  return static_cast<Symbol>(it - symbol_names_.begin());
}

bool TuringMachine::has_stay_moves() const {
  return std::any_of(table_.begin(), table_.end(),
                     [](const Transition& t) { return t.move == Move::Stay; });
}

namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

std::vector<std::string> declare(const std::vector<std::string>& words, std::size_t line,
                                 const char* what) {
  std::vector<std::string> names(words.begin() + 1, words.end());
  if (names.empty()) throw ParseError(line, std::string("empty ") + what + " declaration");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == "->") throw ParseError(line, std::string("'->' is not a valid ") + what + " name");
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j])
        throw ParseError(line, std::string("duplicate ") + what + " '" + names[i] + "'");
  }
  return names;
}

struct RawRule {
  std::size_t line;
  std::string state, symbol, next, write, move;
};

}  // namespace

TuringMachine parse_machine(std::string_view text) {
  std::optional<std::vector<std::string>> states;
  std::optional<std::vector<std::string>> alphabet;
  std::vector<RawRule> rules;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split_words(line);
    if (words.empty()) continue;
    const std::string& key = words.front();
    if (key == "states:") {
      if (states) throw ParseError(line_no, "states declared twice");
      states = declare(words, line_no, "state");
    } else if (key == "alphabet:") {
      if (alphabet) throw ParseError(line_no, "alphabet declared twice");
      alphabet = declare(words, line_no, "symbol");
    } else if (key == "rule:") {
      if (words.size() != 7 || words[3] != "->")
        throw ParseError(line_no, "expected 'rule: <state> <symbol> -> <state> <symbol> <L|S|R>'");
      rules.push_back({line_no, words[1], words[2], words[4], words[5], words[6]});
    } else {
      throw ParseError(line_no, "unexpected '" + key + "'");
    }
  }
  if (!states) throw ParseError(0, "missing 'states:' declaration");
  if (!alphabet) throw ParseError(0, "missing 'alphabet:' declaration");

  auto lookup = [](const std::vector<std::string>& names, const std::string& name,
                   std::size_t line, const char* what) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
      throw ParseError(line, std::string("undeclared ") + what + " '" + name + "'");
    return static_cast<std::uint16_t>(it - names.begin());
  };

  const std::size_t ns = states->size();
  const std::size_t na = alphabet->size();
  std::vector<std::optional<Transition>> table(ns * na);
  for (const auto& r : rules) {
    const auto q = lookup(*states, r.state, r.line, "state");
    const auto a = lookup(*alphabet, r.symbol, r.line, "symbol");
    const auto q2 = lookup(*states, r.next, r.line, "state");
    const auto b = lookup(*alphabet, r.write, r.line, "symbol");
    Move m;
    if (r.move == "L") m = Move::Left;
    else if (r.move == "S") m = Move::Stay;
    else if (r.move == "R") m = Move::Right;
    else throw ParseError(r.line, "move must be L, S or R, got '" + r.move + "'");
    auto& slot = table[std::size_t{q} * na + a];
    if (slot)
      throw ParseError(r.line, "duplicate rule for (" + r.state + "," + r.symbol + ")");
    slot = Transition{static_cast<State>(q2), static_cast<Symbol>(b), m};
  }

  std::vector<Transition> total;
  total.reserve(table.size());
  for (std::size_t q = 0; q < ns; ++q) {
    for (std::size_t a = 0; a < na; ++a) {
      const auto& slot = table[q * na + a];
      if (!slot)
        throw ParseError(0, "missing rule for (" + (*states)[q] + "," + (*alphabet)[a] + ")");
      total.push_back(*slot);
    }
  }
  return {std::move(*states), std::move(*alphabet), std::move(total)};
}

TuringMachine load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open machine file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_machine(buf.str());
}

std::string serialize(const TuringMachine& machine) {
  std::string out = "states:";
  for (const auto& s : machine.state_names()) out += " " + s;
  out += "\nalphabet:";
  for (const auto& s : machine.symbol_names()) out += " " + s;
  out += "\n";
  for (std::size_t q = 0; q < machine.num_states(); ++q) {
    for (std::size_t a = 0; a < machine.num_symbols(); ++a) {
      const auto& t = machine.delta(static_cast<State>(q), static_cast<Symbol>(a));
      out += "rule: " + machine.state_names()[q] + " " + machine.symbol_names()[a] + " -> " +
             machine.state_name(t.next) + " " + machine.symbol_name(t.write) + " " +
             move_letter(t.move) + "\n";
    }
  }
  return out;
}

std::string digest(const TuringMachine& machine) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : serialize(machine)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TuringMachine mirror(const TuringMachine& machine) {
  auto table = machine.table();
  for (auto& t : table) t.move = negate(t.move);
  return {machine.state_names(), machine.symbol_names(), std::move(table)};
}

TuringMachine disjoint_union(const TuringMachine& m1, const TuringMachine& m2) {
  if (m1.symbol_names() != m2.symbol_names())
    throw std::invalid_argument("disjoint union needs identical alphabets");
  std::vector<std::string> names;
  for (const auto& s : m1.state_names()) names.push_back(s + "#1");
  for (const auto& s : m2.state_names()) names.push_back(s + "#2");
  std::vector<Transition> table = m1.table();
  const auto shift = static_cast<std::uint16_t>(m1.num_states());
  for (auto t : m2.table()) {
    t.next = static_cast<State>(index(t.next) + shift);
    table.push_back(t);
  }
  return {std::move(names), m1.symbol_names(), std::move(table)};
}

TuringMachine annotate_product(const TuringMachine& machine, std::size_t annotation_size) {
  if (annotation_size < 2) throw std::invalid_argument("annotation alphabet needs at least 2 letters");
  const std::size_t na = machine.num_symbols();
  std::vector<std::string> symbols;
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t i = 0; i < annotation_size; ++i)
      symbols.push_back(machine.symbol_names()[x] + "." + std::to_string(i));
  std::vector<Transition> table;
  table.reserve(machine.num_states() * symbols.size());
  for (std::size_t q = 0; q < machine.num_states(); ++q) {
    for (std::size_t x = 0; x < na; ++x) {
      const auto& t = machine.delta(static_cast<State>(q), static_cast<Symbol>(x));
      for (std::size_t i = 0; i < annotation_size; ++i) {
        table.push_back({t.next, static_cast<Symbol>(index(t.write) * annotation_size + i), t.move});
      }
    }
  }
  return {machine.state_names(), std::move(symbols), std::move(table)};
}

}  // namespace tmdyn
