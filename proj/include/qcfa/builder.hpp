#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcfa/machine.hpp"

namespace qcfa {

/// Response rule of one measurement outcome, by name.
struct OutcomeRule {
    std::string label;
    std::string next;
    int move = 0;
};

/// Name-based assembly of machines. Entries are collected by name and
/// resolved at build time, so transition wiring reads like the machine
/// description.
class MachineBuilder {
public:
    explicit MachineBuilder(std::string name);

    void set_alphabet(std::vector<std::string> symbols);
    void add_quantum(const std::string& name);
    void add_classical(const std::string& name, StateKind kind = StateKind::Normal);
    void set_initial(const std::string& quantum, const std::string& classical);

    void unitary(const std::string& state, const std::string& symbol, UnitaryOp op,
                 const std::string& next, int move);
    /// blocks: label -> quantum state names; rules: one per label.
    void measure(const std::string& state, const std::string& symbol,
                 std::vector<std::pair<std::string, std::vector<std::string>>> blocks,
                 std::vector<OutcomeRule> rules);
    /// Full computational-basis measurement, blocks labeled by the
    /// quantum state names.
    void measure_basis(const std::string& state, const std::string& symbol,
                       std::vector<OutcomeRule> rules);

    /// Gives every still-missing (non-halting state, symbol) entry an
    /// identity action routed to `next` with move 0. Used for entries
    /// that are unreachable by construction.
    void fill_missing(const std::string& next);

    std::size_t quantum_dim() const { return m_.quantum_states.size(); }

    /// Finalizes the machine. Throws std::logic_error if any referenced
    /// name is unknown or a measurement rule set is incomplete.
    Machine build();

private:
    struct PendingUnitary {
        std::string state, symbol, next;
        UnitaryOp op;
        int move;
    };
    struct PendingMeasure {
        std::string state, symbol;
        std::vector<std::pair<std::string, std::vector<std::string>>> blocks;
        std::vector<OutcomeRule> rules;
    };

    int q_id(const std::string& name) const;
    int s_id(const std::string& name) const;
    int sym_id(const std::string& name) const;

    Machine m_;
    std::vector<PendingUnitary> unitaries_;
    std::vector<PendingMeasure> measures_;
    bool fill_ = false;
    std::string fill_next_;
    bool built_ = false;
};

}  // namespace qcfa
