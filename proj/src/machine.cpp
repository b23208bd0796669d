#include "qcfa/machine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace qcfa {

namespace {

bool unitary_equal(const UnitaryOp& a, const UnitaryOp& b) {
    return a.dim == b.dim && a.entries == b.entries && a.rotation == b.rotation && a.swap_pair == b.swap_pair;
}

bool action_equal(const QuantumAction& a, const QuantumAction& b) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<UnitaryAction>(a)) {
        const auto& ua = std::get<UnitaryAction>(a);
        const auto& ub = std::get<UnitaryAction>(b);
        return unitary_equal(ua.op, ub.op) && ua.response == ub.response;
    }
    const auto& ma = std::get<MeasureAction>(a);
    const auto& mb = std::get<MeasureAction>(b);
    return ma.measurement.dim == mb.measurement.dim && ma.measurement.labels == mb.measurement.labels &&
           ma.measurement.blocks == mb.measurement.blocks && ma.responses == mb.responses;
}

}  // namespace

const std::string& Machine::symbol_name(int symbol) const {
    static const std::string left = kLeftEndName;
    static const std::string right = kRightEndName;
    if (symbol == kLeftEnd) return left;
    if (symbol == kRightEnd) return right;
    return alphabet[symbol - 2];
}

int Machine::symbol_id(const std::string& name) const {
    if (name == kLeftEndName) return kLeftEnd;
    if (name == kRightEndName) return kRightEnd;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == name) return static_cast<int>(i) + 2;
    return -1;
}

int Machine::classical_id(const std::string& name) const {
    for (std::size_t i = 0; i < classical_states.size(); ++i)
        if (classical_states[i] == name) return static_cast<int>(i);
    return -1;
}

int Machine::quantum_id(const std::string& name) const {
    for (std::size_t i = 0; i < quantum_states.size(); ++i)
        if (quantum_states[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<int> Machine::accepting_ids() const {
    std::vector<int> out;
    for (std::size_t s = 0; s < kind.size(); ++s)
        if (kind[s] == StateKind::Accept) out.push_back(static_cast<int>(s));
    return out;
}

std::vector<int> Machine::rejecting_ids() const {
    std::vector<int> out;
    for (std::size_t s = 0; s < kind.size(); ++s)
        if (kind[s] == StateKind::Reject) out.push_back(static_cast<int>(s));
    return out;
}

// Structural equality; `name` is metadata and deliberately excluded so
// a machine compares equal to its round-tripped or relabeled self.
bool Machine::operator==(const Machine& o) const {
    if (quantum_states != o.quantum_states || classical_states != o.classical_states ||
        alphabet != o.alphabet || initial_quantum != o.initial_quantum ||
        initial_classical != o.initial_classical || kind != o.kind)
        return false;
    if (actions.size() != o.actions.size()) return false;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (actions[i].has_value() != o.actions[i].has_value()) return false;
        if (actions[i] && !action_equal(*actions[i], *o.actions[i])) return false;
    }
    return true;
}

Tape Tape::from_symbols(const std::vector<int>& input_symbols) {
    Tape t;
    t.cells.reserve(input_symbols.size() + 2);
    t.cells.push_back(kLeftEnd);
    t.cells.insert(t.cells.end(), input_symbols.begin(), input_symbols.end());
    t.cells.push_back(kRightEnd);
    return t;
}

int Tape::at(std::size_t p) const {
    if (p >= cells.size()) throw std::out_of_range("tape position out of range");
    return cells[p];
}

std::string tape_symbol(const std::string& x, std::size_t p) {
    if (p > x.size() + 1) throw std::out_of_range("tape position out of range");
    if (p == 0) return kLeftEndName;
    if (p == x.size() + 1) return kRightEndName;
    return std::string(1, x[p - 1]);
}

StateCounts state_counts(const Machine& m) { return {m.quantum_dim(), m.classical_count()}; }

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.code << " at " << v.where << ": " << v.detail << "\n";
    return os.str();
}

namespace {

void check_response(const Machine& m, int symbol, const Response& r, const std::string& where,
                    ValidationReport& rep) {
    if (r.next < 0 || static_cast<std::size_t>(r.next) >= m.classical_count())
        rep.violations.push_back({"target_state", where, "response targets unknown classical state"});
    if (r.move < -1 || r.move > 1)
        rep.violations.push_back({"direction_range", where, "direction must be -1, 0 or +1"});
    if (symbol == kLeftEnd && r.move == -1)
        rep.violations.push_back({"endmarker_direction", where, "head may not move left at " + std::string(kLeftEndName)});
    if (symbol == kRightEnd && r.move == 1)
        rep.violations.push_back({"endmarker_direction", where, "head may not move right at " + std::string(kRightEndName)});
}

}  // namespace

ValidationReport validate(const Machine& m) {
    ValidationReport rep;
    auto add = [&rep](std::string code, std::string where, std::string detail) {
        rep.violations.push_back({std::move(code), std::move(where), std::move(detail)});
    };

    if (m.quantum_states.empty()) add("empty_set", "quantum_states", "at least one quantum state required");
    if (m.classical_states.empty()) add("empty_set", "classical_states", "at least one classical state required");
    {
        std::unordered_set<std::string> seen;
        for (const auto& q : m.quantum_states)
            if (!seen.insert(q).second) add("duplicate_name", q, "duplicate quantum state name");
        seen.clear();
        for (const auto& s : m.classical_states)
            if (!seen.insert(s).second) add("duplicate_name", s, "duplicate classical state name");
        seen.clear();
        for (const auto& a : m.alphabet) {
            if (a == kLeftEndName || a == kRightEndName)
                add("reserved_symbol", a, "endmarker names are reserved");
            if (!seen.insert(a).second) add("duplicate_name", a, "duplicate alphabet symbol");
        }
    }
    if (m.initial_quantum < 0 || static_cast<std::size_t>(m.initial_quantum) >= m.quantum_dim())
        add("initial_state", "initial_quantum", "initial quantum state not in Q");
    if (m.initial_classical < 0 || static_cast<std::size_t>(m.initial_classical) >= m.classical_count())
        add("initial_state", "initial_classical", "initial classical state not in S");
    if (m.kind.size() != m.classical_count())
        add("structure", "kind", "state kind table size mismatch");
    if (m.actions.size() != m.classical_count() * m.gamma_size()) {
        add("structure", "actions", "transition table size mismatch");
        return rep;  // indexing below would be unsafe
    }

    const std::size_t dim = m.quantum_dim();
    for (std::size_t s = 0; s < m.classical_count(); ++s) {
        for (std::size_t g = 0; g < m.gamma_size(); ++g) {
            const auto& entry = m.action(static_cast<int>(s), static_cast<int>(g));
            const std::string where = "(" + m.classical_states[s] + ", " + m.symbol_name(static_cast<int>(g)) + ")";
            if (m.is_halting(static_cast<int>(s))) {
                if (entry) add("halting_state_row", where, "halting states have no transitions");
                continue;
            }
            if (!entry) {
                add("missing_entry", where, "transition table must be total over non-halting states");
                continue;
            }
            if (std::holds_alternative<UnitaryAction>(*entry)) {
                const auto& ua = std::get<UnitaryAction>(*entry);
                if (ua.op.dim != dim)
                    add("dimension", where, "unitary dimension does not match |Q|");
                else if (double defect = unitarity_defect(ua.op); defect > kUnitaryTol)
                    add("unitarity", where, "||U^dag U - I||_max = " + std::to_string(defect));
                check_response(m, static_cast<int>(g), ua.response, where, rep);
            } else {
                const auto& ma = std::get<MeasureAction>(*entry);
                if (ma.measurement.dim != dim)
                    add("dimension", where, "measurement dimension does not match |Q|");
                else if (!ma.measurement.is_partition())
                    add("measurement_partition", where, "blocks must partition the basis index set");
                if (ma.measurement.labels.size() != ma.measurement.blocks.size())
                    add("measurement_labels", where, "one label per block required");
                if (ma.responses.size() != ma.measurement.blocks.size())
                    add("response_totality", where, "each measurement outcome needs a classical response");
                for (const auto& r : ma.responses) check_response(m, static_cast<int>(g), r, where, rep);
            }
        }
    }
    return rep;
}

std::vector<int> parse_input(const Machine& m, const std::string& input) {
    std::vector<int> out;
    // Machines with multi-character symbol names take whitespace-split
    // inputs; single-character alphabets accept both styles.
    const bool multi = std::any_of(m.alphabet.begin(), m.alphabet.end(),
                                   [](const std::string& s) { return s.size() > 1; });
    const bool spaced = multi || input.find_first_of(" \t") != std::string::npos;
    auto push = [&](const std::string& tok) {
        int id = m.symbol_id(tok);
        if (id < 2) throw std::invalid_argument("input symbol '" + tok + "' is not in the machine alphabet");
        out.push_back(id);
    };
    if (spaced) {
        std::istringstream is(input);
        std::string tok;
        while (is >> tok) push(tok);
    } else {
        for (char c : input) push(std::string(1, c));
    }
    return out;
}

Machine rename_alphabet(const Machine& m, std::vector<std::string> symbols) {
    if (symbols.size() != m.alphabet.size())
        throw std::invalid_argument("alphabet rename must keep the symbol count");
    std::unordered_set<std::string> seen;
    for (const auto& s : symbols) {
        if (s == kLeftEndName || s == kRightEndName)
            throw std::invalid_argument("endmarker names are reserved");
        if (!seen.insert(s).second) throw std::invalid_argument("duplicate symbol name: " + s);
    }
    Machine out = m;
    out.alphabet = std::move(symbols);
    return out;
}

std::string format_input(const Machine& m, const std::vector<int>& symbols) {
    bool spaced = std::any_of(m.alphabet.begin(), m.alphabet.end(),
                              [](const std::string& s) { return s.size() > 1; });
    std::string out;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (spaced && i) out += ' ';
        out += m.symbol_name(symbols[i]);
    }
    return out;
}

}  // namespace qcfa
