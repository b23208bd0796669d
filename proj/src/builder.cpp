#include "qcfa/builder.hpp"

#include <stdexcept>
#include <variant>

namespace qcfa {

MachineBuilder::MachineBuilder(std::string name) { m_.name = std::move(name); }

void MachineBuilder::set_alphabet(std::vector<std::string> symbols) { m_.alphabet = std::move(symbols); }

void MachineBuilder::add_quantum(const std::string& name) { m_.quantum_states.push_back(name); }

void MachineBuilder::add_classical(const std::string& name, StateKind kind) {
    m_.classical_states.push_back(name);
    m_.kind.push_back(kind);
}

void MachineBuilder::set_initial(const std::string& quantum, const std::string& classical) {
    m_.initial_quantum = q_id(quantum);
    m_.initial_classical = s_id(classical);
}

int MachineBuilder::q_id(const std::string& name) const {
    int id = m_.quantum_id(name);
    if (id < 0) throw std::logic_error("unknown quantum state: " + name);
    return id;
}

int MachineBuilder::s_id(const std::string& name) const {
    int id = m_.classical_id(name);
    if (id < 0) throw std::logic_error("unknown classical state: " + name);
    return id;
}

int MachineBuilder::sym_id(const std::string& name) const {
    int id = m_.symbol_id(name);
    if (id < 0) throw std::logic_error("unknown symbol: " + name);
    return id;
}

void MachineBuilder::unitary(const std::string& state, const std::string& symbol, UnitaryOp op,
                             const std::string& next, int move) {
    unitaries_.push_back({state, symbol, next, std::move(op), move});
}

void MachineBuilder::measure(const std::string& state, const std::string& symbol,
                             std::vector<std::pair<std::string, std::vector<std::string>>> blocks,
                             std::vector<OutcomeRule> rules) {
    measures_.push_back({state, symbol, std::move(blocks), std::move(rules)});
}

void MachineBuilder::measure_basis(const std::string& state, const std::string& symbol,
                                   std::vector<OutcomeRule> rules) {
    std::vector<std::pair<std::string, std::vector<std::string>>> blocks;
    for (const std::string& q : m_.quantum_states) blocks.push_back({q, {q}});
    measure(state, symbol, std::move(blocks), std::move(rules));
}

void MachineBuilder::fill_missing(const std::string& next) {
    fill_ = true;
    fill_next_ = next;
}

Machine MachineBuilder::build() {
    if (built_) throw std::logic_error("build() called twice");
    built_ = true;

    m_.actions.assign(m_.classical_count() * m_.gamma_size(), std::nullopt);

    for (PendingUnitary& pu : unitaries_) {
        UnitaryAction ua{std::move(pu.op), Response{s_id(pu.next), pu.move}};
        m_.set_action(s_id(pu.state), sym_id(pu.symbol), QuantumAction{std::move(ua)});
    }
    for (const PendingMeasure& pm : measures_) {
        MeasureAction ma;
        ma.measurement.dim = m_.quantum_dim();
        for (const auto& [label, members] : pm.blocks) {
            ma.measurement.labels.push_back(label);
            std::vector<int> idx;
            for (const std::string& q : members) idx.push_back(q_id(q));
            ma.measurement.blocks.push_back(std::move(idx));
        }
        ma.responses.resize(ma.measurement.blocks.size());
        std::vector<bool> covered(ma.responses.size(), false);
        for (const OutcomeRule& r : pm.rules) {
            bool found = false;
            for (std::size_t j = 0; j < ma.measurement.labels.size(); ++j) {
                if (ma.measurement.labels[j] == r.label) {
                    ma.responses[j] = Response{s_id(r.next), r.move};
                    covered[j] = true;
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("rule for unknown outcome label: " + r.label);
        }
        for (std::size_t j = 0; j < covered.size(); ++j)
            if (!covered[j]) throw std::logic_error("no rule for outcome label: " + ma.measurement.labels[j]);
        m_.set_action(s_id(pm.state), sym_id(pm.symbol), QuantumAction{std::move(ma)});
    }
    if (fill_) {
        const int target = s_id(fill_next_);
        for (std::size_t s = 0; s < m_.classical_count(); ++s) {
            if (m_.is_halting(static_cast<int>(s))) continue;
            for (std::size_t g = 0; g < m_.gamma_size(); ++g) {
                if (!m_.action(static_cast<int>(s), static_cast<int>(g)))
                    m_.set_action(static_cast<int>(s), static_cast<int>(g),
                                  QuantumAction{UnitaryAction{identity_op(m_.quantum_dim()), Response{target, 0}}});
            }
        }
    }
    return std::move(m_);
}

}  // namespace qcfa
