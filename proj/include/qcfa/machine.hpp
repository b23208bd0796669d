#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcfa/linalg.hpp"

// Data model for two-way finite automata with quantum and classical
// states. The classical controller owns the tape head; each transition
// applies a unitary or a projective measurement to the quantum register
// and simultaneously updates (classical state, head direction).

namespace qcfa {

// Reserved tape symbol ids. Input alphabet symbols get ids 2, 3, ...
inline constexpr int kLeftEnd = 0;
inline constexpr int kRightEnd = 1;
inline constexpr const char* kLeftEndName = "^";
inline constexpr const char* kRightEndName = "$";

/// Classical response: next state and head direction in {-1, 0, +1}.
struct Response {
    int next = 0;
    int move = 0;

    bool operator==(const Response&) const = default;
};

struct UnitaryAction {
    UnitaryOp op;
    Response response;
};

struct MeasureAction {
    Measurement measurement;
    std::vector<Response> responses;  // one per measurement block
};

/// The value of the transition table at one (state, symbol) pair,
/// bundling the quantum operation with its classical response(s).
using QuantumAction = std::variant<UnitaryAction, MeasureAction>;

enum class StateKind : std::uint8_t { Normal, Accept, Reject };

struct Machine {
    std::string name;
    std::vector<std::string> quantum_states;   // basis order of the register
    std::vector<std::string> classical_states;
    std::vector<std::string> alphabet;         // input symbols, id = index + 2
    int initial_quantum = 0;
    int initial_classical = 0;
    std::vector<StateKind> kind;               // per classical state

    // actions[s * gamma_size() + g]; rows of halting states stay empty.
    std::vector<std::optional<QuantumAction>> actions;

    std::size_t quantum_dim() const { return quantum_states.size(); }
    std::size_t classical_count() const { return classical_states.size(); }
    std::size_t gamma_size() const { return alphabet.size() + 2; }

    bool is_halting(int s) const { return kind[s] != StateKind::Normal; }

    const std::optional<QuantumAction>& action(int s, int symbol) const {
        return actions[static_cast<std::size_t>(s) * gamma_size() + symbol];
    }
    void set_action(int s, int symbol, QuantumAction a) {
        actions[static_cast<std::size_t>(s) * gamma_size() + symbol] = std::move(a);
    }

    /// Name of tape symbol id (endmarkers included).
    const std::string& symbol_name(int symbol) const;
    /// Tape symbol id for a name; -1 if unknown.
    int symbol_id(const std::string& name) const;
    /// Classical state id for a name; -1 if unknown.
    int classical_id(const std::string& name) const;
    /// Quantum basis id for a name; -1 if unknown.
    int quantum_id(const std::string& name) const;

    std::vector<int> accepting_ids() const;
    std::vector<int> rejecting_ids() const;

    bool operator==(const Machine&) const;
};

/// Input tape: cells ^ x $ with positions 0..|x|+1. Holds symbol ids.
struct Tape {
    std::vector<int> cells;

    static Tape from_symbols(const std::vector<int>& input_symbols);
    int at(std::size_t p) const;
    std::size_t length() const { return cells.size() - 2; }  // |x|
    std::size_t last_pos() const { return cells.size() - 1; }
};

/// Tape symbol of input string x at position p (single-char symbols),
/// 0 <= p <= |x|+1: "^" at 0, "$" at |x|+1, x[p-1] between.
std::string tape_symbol(const std::string& x, std::size_t p);

struct StateCounts {
    std::size_t qs = 0;
    std::size_t cs = 0;

    bool operator==(const StateCounts&) const = default;
};

StateCounts state_counts(const Machine& m);

struct Violation {
    std::string code;     // stable identifier, e.g. "unitarity"
    std::string where;    // "(state, symbol)" or entity name
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// Checks every well-formedness rule: disjoint accept/reject sets,
/// totality of the transition table over non-halting states x Gamma,
/// unitarity of every unitary entry, measurement partitions and
/// response totality, and the endmarker head constraints (no move left
/// at "^", no move right at "$").
ValidationReport validate(const Machine& m);

/// Splits an input string into machine symbols and checks membership in
/// the machine's alphabet. Strings containing whitespace are split on
/// it (for multi-character symbol names); otherwise each character is
/// one symbol. Throws std::invalid_argument on out-of-alphabet symbols.
std::vector<int> parse_input(const Machine& m, const std::string& input);

/// Inverse of parse_input for display: joins symbol names, using spaces
/// iff any alphabet symbol has more than one character.
std::string format_input(const Machine& m, const std::vector<int>& symbols);

/// Copy of `m` with its alphabet symbols renamed positionally, e.g. to
/// prepare disjoint alphabets for catenation. Transition structure is
/// untouched. Throws std::invalid_argument on size mismatch, duplicate
/// names, or reserved endmarker names.
Machine rename_alphabet(const Machine& m, std::vector<std::string> symbols);

}  // namespace qcfa
