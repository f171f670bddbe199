#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tmdyn {

enum class State : std::uint16_t {};
enum class Symbol : std::uint16_t {};

constexpr std::size_t index(State q) { return static_cast<std::size_t>(q); }
constexpr std::size_t index(Symbol a) { return static_cast<std::size_t>(a); }

enum class Move : std::int8_t { Left = -1, Stay = 0, Right = 1 };

constexpr int offset(Move m) { return static_cast<int>(m); }
constexpr Move negate(Move m) { return static_cast<Move>(-static_cast<int>(m)); }
char move_letter(Move m);

struct Transition {
  State next;
  Symbol write;
  Move move;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Thrown by parse_machine; carries the 1-based line of the offending input (0 when the
/// problem is not tied to a line, e.g. a missing rule).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One-tape Turing machine with a total transition table.
///
/// States and symbols are dense indices in declaration order; the names are kept for
/// serialization and reporting only.
class TuringMachine {
 public:
  TuringMachine(std::vector<std::string> state_names, std::vector<std::string> symbol_names,
                std::vector<Transition> table);

  [[nodiscard]] std::size_t num_states() const { return state_names_.size(); }
  [[nodiscard]] std::size_t num_symbols() const { return symbol_names_.size(); }

  [[nodiscard]] const Transition& delta(State q, Symbol a) const {
    return table_[index(q) * num_symbols() + index(a)];
  }

  [[nodiscard]] const std::string& state_name(State q) const { return state_names_[index(q)]; }
  [[nodiscard]] const std::string& symbol_name(Symbol a) const { return symbol_names_[index(a)]; }
  [[nodiscard]] const std::vector<std::string>& state_names() const { return state_names_; }
  [[nodiscard]] const std::vector<std::string>& symbol_names() const { return symbol_names_; }
  [[nodiscard]] const std::vector<Transition>& table() const { return table_; }

  [[nodiscard]] State find_state(std::string_view name) const;
  [[nodiscard]] Symbol find_symbol(std::string_view name) const;

  [[nodiscard]] bool has_stay_moves() const;

  friend bool operator==(const TuringMachine&, const TuringMachine&) = default;

 private:
  std::vector<std::string> state_names_;
  std::vector<std::string> symbol_names_;
  std::vector<Transition> table_;  // row-major over (state, symbol)
};

/// Parses the line-oriented machine format:
///
///   states: q1 q2
///   alphabet: a b
///   rule: q1 a -> q2 a S
///
/// '#' starts a comment. Every (state, symbol) pair needs exactly one rule.
TuringMachine parse_machine(std::string_view text);
TuringMachine load_machine(const std::string& path);

/// Canonical text form; parse_machine(serialize(m)) == m.
std::string serialize(const TuringMachine& machine);

/// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
std::string digest(const TuringMachine& machine);

/// Same machine with every move negated.
TuringMachine mirror(const TuringMachine& machine);

/// States of m1 then states of m2 (suffixed "#1" / "#2"); requires identical alphabets.
TuringMachine disjoint_union(const TuringMachine& m1, const TuringMachine& m2);

/// Machine over Σ×A, A = {0..annotation_size-1}, acting on the Σ part and never touching A.
/// Symbol (x, i) is named "x.i" and has index x*|A| + i.
TuringMachine annotate_product(const TuringMachine& machine, std::size_t annotation_size);

}  // namespace tmdyn
