#pragma once

#include <string>
#include <vector>

#include "qcfa/builder.hpp"
#include "qcfa/compose.hpp"
#include "qcfa/exec.hpp"
#include "qcfa/machine.hpp"
#include "qcfa/rng.hpp"

// Test-side fixtures: membership oracles (independent of the machines
// they check), string enumeration, tiny hand-built machines, and a
// generator of random valid machines.

namespace testsupport {

// ---- membership oracles, straight off the language definitions ----

inline long long count_of(const std::vector<std::string>& w, const std::string& sym) {
    long long n = 0;
    for (const auto& s : w)
        if (s == sym) ++n;
    return n;
}

inline std::vector<std::string> tokens(const std::string& w) {
    std::vector<std::string> out;
    for (char c : w) out.push_back(std::string(1, c));
    return out;
}

/// heavy^(ratio*n) light^n for n >= 1.
inline bool in_ratio_lang(const std::vector<std::string>& w, const std::string& heavy,
                          const std::string& light, long long ratio) {
    std::size_t i = 0;
    while (i < w.size() && w[i] == heavy) ++i;
    std::size_t j = i;
    while (j < w.size() && w[j] == light) ++j;
    if (j != w.size()) return false;
    const long long p = static_cast<long long>(i);
    const long long q = static_cast<long long>(w.size() - i);
    return q >= 1 && p == ratio * q;
}

inline bool in_eq_lang(const std::string& w) { return in_ratio_lang(tokens(w), "a", "b", 1); }

inline bool in_count_eq_lang(const std::string& w) {
    return count_of(tokens(w), "a") == count_of(tokens(w), "b");
}

inline bool in_astar_bstar(const std::string& w) {
    std::size_t i = 0;
    while (i < w.size() && w[i] == 'a') ++i;
    while (i < w.size() && w[i] == 'b') ++i;
    return i == w.size();
}

/// a^n b1^n a^m b2^m for n, m >= 1, over tokens {a, b1, b2}.
inline bool in_double_eq_lang(const std::vector<std::string>& w) {
    std::size_t i = 0;
    auto block = [&](const std::string& sym) {
        std::size_t n = 0;
        while (i < w.size() && w[i] == sym) ++i, ++n;
        return n;
    };
    const std::size_t n1 = block("a");
    const std::size_t n2 = block("b1");
    const std::size_t m1 = block("a");
    const std::size_t m2 = block("b2");
    return i == w.size() && n1 >= 1 && n1 == n2 && m1 >= 1 && m1 == m2;
}

/// Catenation membership for disjoint alphabets: the split is forced.
template <typename Pred1, typename Pred2>
bool in_catenation(const std::string& w, const std::string& sigma1, Pred1 in_l1, Pred2 in_l2) {
    std::size_t i = 0;
    while (i < w.size() && sigma1.find(w[i]) != std::string::npos) ++i;
    if (i == 0 || i == w.size()) return false;
    for (std::size_t j = i; j < w.size(); ++j)
        if (sigma1.find(w[j]) != std::string::npos) return false;
    return in_l1(w.substr(0, i)) && in_l2(w.substr(i));
}

/// All strings over `alphabet` up to the given length, shortest first.
inline std::vector<std::string> all_strings(const std::string& alphabet, std::size_t max_len) {
    std::vector<std::string> out{""};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (char c : alphabet) out.push_back(out[i] + c);
        begin = end;
    }
    return out;
}

/// All token strings over multi-character symbols up to max_len tokens.
inline std::vector<std::vector<std::string>> all_token_strings(const std::vector<std::string>& symbols,
                                                               std::size_t max_len) {
    std::vector<std::vector<std::string>> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (const auto& s : symbols) {
                auto w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

inline std::string join_tokens(const std::vector<std::string>& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += w[i];
    }
    return out;
}

// ---- fixture machines ----

inline qcfa::Dfa astar_bstar_dfa() {
    qcfa::Dfa d;
    d.name = "astar_bstar";
    d.states = {"in_a", "in_b", "dead"};
    d.alphabet = {"a", "b"};
    d.start = 0;
    d.accepting = {true, true, false};
    d.next = {{0, 1}, {2, 1}, {2, 2}};
    return d;
}

inline qcfa::Dfa accept_all_dfa() {
    qcfa::Dfa d;
    d.name = "all";
    d.states = {"s"};
    d.alphabet = {"a", "b"};
    d.start = 0;
    d.accepting = {true};
    d.next = {{0, 0}};
    return d;
}

/// Rotate by theta at the left endmarker, measure; q0 accepts, q1
/// rejects. P_acc = cos^2(theta).
inline qcfa::Machine biased_coin_machine(double theta) {
    qcfa::MachineBuilder b("biased_coin");
    b.set_alphabet({"a"});
    b.add_quantum("q0");
    b.add_quantum("q1");
    b.add_classical("spin");
    b.add_classical("look");
    b.add_classical("yes", qcfa::StateKind::Accept);
    b.add_classical("no", qcfa::StateKind::Reject);
    b.set_initial("q0", "spin");
    b.unitary("spin", "^", qcfa::rotation_op(theta, 0, 1, 2), "look", 0);
    b.measure_basis("look", "^", {{"q0", "yes", 0}, {"q1", "no", 0}});
    b.fill_missing("no");
    return b.build();
}

/// Accepts any input on the very first transition.
inline qcfa::Machine instant_accept_machine() {
    qcfa::MachineBuilder b("instant_accept");
    b.set_alphabet({"a", "b"});
    b.add_quantum("q0");
    b.add_classical("go");
    b.add_classical("yes", qcfa::StateKind::Accept);
    b.set_initial("q0", "go");
    b.fill_missing("yes");
    return b.build();
}

// ---- random valid machines ----

struct RandomMachineParams {
    std::size_t quantum = 2;
    std::size_t classical = 4;  // non-halting states; accept/reject are added
    std::vector<std::string> alphabet = {"a", "b"};
    double measure_prob = 0.35;
    double halt_response_prob = 0.12;
};

/// Builds a random machine that always passes validation: rotations
/// with angles from a small pool (so exact evaluation merges branches),
/// random basis-block measurements, and directions respecting the
/// endmarker rules.
inline qcfa::Machine random_machine(qcfa::RandomStream& rng, const RandomMachineParams& p = {}) {
    using namespace qcfa;
    Machine m;
    m.name = "random";
    m.alphabet = p.alphabet;
    for (std::size_t i = 0; i < p.quantum; ++i) m.quantum_states.push_back("q" + std::to_string(i));
    for (std::size_t i = 0; i < p.classical; ++i) m.classical_states.push_back("s" + std::to_string(i));
    m.classical_states.push_back("yes");
    m.classical_states.push_back("no");
    m.kind.assign(p.classical, StateKind::Normal);
    m.kind.push_back(StateKind::Accept);
    m.kind.push_back(StateKind::Reject);
    m.initial_quantum = 0;
    m.initial_classical = 0;
    m.actions.assign(m.classical_count() * m.gamma_size(), std::nullopt);

    const int accept_id = static_cast<int>(p.classical);
    const int reject_id = accept_id + 1;
    auto pick_state = [&](double halt_prob) -> int {
        if (rng.next_double() < halt_prob)
            return rng.next_double() < 0.5 ? accept_id : reject_id;
        return static_cast<int>(rng.next_u64() % p.classical);
    };
    auto pick_move = [&](int symbol) -> int {
        int d = static_cast<int>(rng.next_u64() % 3) - 1;
        if (symbol == kLeftEnd && d < 0) d = static_cast<int>(rng.next_u64() % 2);
        if (symbol == kRightEnd && d > 0) d = static_cast<int>(rng.next_u64() % 2) - 1;
        return d;
    };
    const double angle_pool[] = {0.5235987755982988, 0.7853981633974483, 1.0471975511965976,
                                 2.199114857512855, 4.442882938158366};

    for (std::size_t s = 0; s < p.classical; ++s) {
        for (std::size_t g = 0; g < m.gamma_size(); ++g) {
            const int sym = static_cast<int>(g);
            if (p.quantum >= 2 && rng.next_double() < p.measure_prob) {
                MeasureAction ma;
                ma.measurement.dim = p.quantum;
                // Random two-block partition.
                std::vector<int> first, second;
                for (std::size_t q = 0; q < p.quantum; ++q)
                    (rng.next_double() < 0.5 ? first : second).push_back(static_cast<int>(q));
                if (first.empty()) {
                    first.push_back(second.back());
                    second.pop_back();
                }
                if (second.empty()) {
                    second.push_back(first.back());
                    first.pop_back();
                }
                ma.measurement.labels = {"lo", "hi"};
                ma.measurement.blocks = {first, second};
                ma.responses.push_back(Response{pick_state(p.halt_response_prob), pick_move(sym)});
                ma.responses.push_back(Response{pick_state(p.halt_response_prob), pick_move(sym)});
                m.set_action(static_cast<int>(s), sym, QuantumAction{std::move(ma)});
            } else {
                UnitaryOp op;
                if (p.quantum >= 2 && rng.next_double() < 0.7) {
                    const double theta = angle_pool[rng.next_u64() % 5];
                    const int i = static_cast<int>(rng.next_u64() % p.quantum);
                    int j = static_cast<int>(rng.next_u64() % (p.quantum - 1));
                    if (j >= i) ++j;
                    op = rotation_op(theta, std::min(i, j), std::max(i, j), p.quantum);
                } else {
                    op = identity_op(p.quantum);
                }
                UnitaryAction ua{std::move(op), Response{pick_state(p.halt_response_prob), pick_move(sym)}};
                m.set_action(static_cast<int>(s), sym, QuantumAction{std::move(ua)});
            }
        }
    }
    return m;
}

// ---- exact-eval convenience ----

inline qcfa::ExactResult eval_input(const qcfa::Machine& m, const std::string& input, long long budget,
                                    double stop_residual = 0.0) {
    qcfa::Tape t = qcfa::Tape::from_symbols(qcfa::parse_input(m, input));
    qcfa::ExactEvalOptions opts;
    opts.step_budget = budget;
    opts.stop_residual = stop_residual;
    return qcfa::exact_eval(m, t, opts);
}

}  // namespace testsupport
