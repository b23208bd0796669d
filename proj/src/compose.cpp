#include "qcfa/compose.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qcfa {

namespace {

std::string unique_name(const std::vector<std::string>& taken, std::string base) {
    while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "_";
    return base;
}

std::string unique_label(const std::vector<std::string>& taken, std::string base) {
    while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "_";
    return base;
}

/// Extends a measurement over a sub-block into the full space: block
/// indices are shifted by `offset`, and one catch-all block covering
/// the rest of the basis is appended with the given response. The
/// catch-all outcome carries zero amplitude whenever the register lives
/// in the sub-block, so its response is never exercised.
MeasureAction extend_measure(const MeasureAction& src, std::size_t full_dim, int offset,
                             const Response& rest_response, int state_offset, bool flip_moves = false) {
    MeasureAction out;
    out.measurement.dim = full_dim;
    std::vector<bool> covered(full_dim, false);
    for (std::size_t j = 0; j < src.measurement.blocks.size(); ++j) {
        out.measurement.labels.push_back(src.measurement.labels[j]);
        std::vector<int> idx;
        for (int i : src.measurement.blocks[j]) {
            idx.push_back(i + offset);
            covered[i + offset] = true;
        }
        out.measurement.blocks.push_back(std::move(idx));
        Response r = src.responses[j];
        r.next += state_offset;
        if (flip_moves) r.move = -r.move;
        out.responses.push_back(r);
    }
    std::vector<int> rest;
    for (std::size_t i = 0; i < full_dim; ++i)
        if (!covered[i]) rest.push_back(static_cast<int>(i));
    if (!rest.empty()) {
        out.measurement.labels.push_back(unique_label(out.measurement.labels, "rest"));
        out.measurement.blocks.push_back(std::move(rest));
        out.responses.push_back(rest_response);
    }
    return out;
}

UnitaryAction extend_unitary(const UnitaryAction& src, std::size_t full_dim, int offset, int state_offset,
                             bool flip_moves = false) {
    std::vector<int> placement(src.op.dim);
    for (std::size_t i = 0; i < src.op.dim; ++i) placement[i] = static_cast<int>(i) + offset;
    UnitaryAction out{embed_op(src.op, full_dim, placement), src.response};
    out.response.next += state_offset;
    if (flip_moves) out.response.move = -out.response.move;
    return out;
}

QuantumAction extend_action(const QuantumAction& src, std::size_t full_dim, int offset, int self_state,
                            int state_offset, bool flip_moves = false) {
    if (std::holds_alternative<UnitaryAction>(src))
        return extend_unitary(std::get<UnitaryAction>(src), full_dim, offset, state_offset, flip_moves);
    return extend_measure(std::get<MeasureAction>(src), full_dim, offset, Response{self_state, 0},
                          state_offset, flip_moves);
}

double combined_eps(double e1, double e2) { return e1 + e2 - e1 * e2; }

void require_same_alphabet(const Machine& m1, const Machine& m2) {
    std::set<std::string> a1(m1.alphabet.begin(), m1.alphabet.end());
    std::set<std::string> a2(m2.alphabet.begin(), m2.alphabet.end());
    if (a1 != a2)
        throw std::invalid_argument(
            "alphabet policy: intersection/union require identical input alphabets; "
            "pre-extend one machine if needed");
}

/// Shared body of intersect and union_. The two differ only in which of
/// M1's halting sets becomes the hand-off bridge into M2.
ComposeReport sequential_compose(const Machine& m1, const Machine& m2, bool bridge_on_accept,
                                 double eps1, double eps2) {
    require_same_alphabet(m1, m2);

    Machine out;
    out.name = std::string(bridge_on_accept ? "intersect" : "union") + "(" + m1.name + "," + m2.name + ")";
    out.alphabet = m1.alphabet;

    const std::size_t d1 = m1.quantum_dim();
    const std::size_t d2 = m2.quantum_dim();
    const std::size_t D = d1 + d2;
    const int o2 = static_cast<int>(d1);
    const int cs1 = static_cast<int>(m1.classical_count());
    const int bridge_base = cs1 + static_cast<int>(m2.classical_count());

    for (const auto& q : m1.quantum_states) out.quantum_states.push_back("m1." + q);
    for (const auto& q : m2.quantum_states) out.quantum_states.push_back("m2." + q);

    ComposeReport rep;
    for (const auto& s : m1.classical_states) out.classical_states.push_back("m1." + s);
    for (const auto& s : m2.classical_states) out.classical_states.push_back("m2." + s);
    for (std::size_t j = 0; j < d1; ++j) {
        std::string b = unique_name(out.classical_states, "bridge_" + m1.quantum_states[j]);
        out.classical_states.push_back(b);
        rep.added_classical.push_back(b);
    }

    const StateKind bridged = bridge_on_accept ? StateKind::Accept : StateKind::Reject;
    for (StateKind k : m1.kind) out.kind.push_back(k == bridged ? StateKind::Normal : k);
    for (StateKind k : m2.kind) out.kind.push_back(k);
    for (std::size_t j = 0; j < d1; ++j) out.kind.push_back(StateKind::Normal);

    out.initial_quantum = m1.initial_quantum;
    out.initial_classical = m1.initial_classical;
    out.actions.assign(out.classical_count() * out.gamma_size(), std::nullopt);

    const int s2_init = cs1 + m2.initial_classical;

    // M1's states: simulate M1; its bridged halting set becomes the
    // rewind-measure-reset hand-off into M2.
    for (int s = 0; s < cs1; ++s) {
        if (m1.kind[s] == bridged) {
            for (std::size_t g = 0; g < out.gamma_size(); ++g) {
                if (g == static_cast<std::size_t>(kLeftEnd)) {
                    MeasureAction ma;
                    ma.measurement.dim = D;
                    for (std::size_t j = 0; j < d1; ++j) {
                        ma.measurement.labels.push_back(out.quantum_states[j]);
                        ma.measurement.blocks.push_back({static_cast<int>(j)});
                        ma.responses.push_back(Response{bridge_base + static_cast<int>(j), 0});
                    }
                    std::vector<int> rest;
                    for (std::size_t j = 0; j < d2; ++j) rest.push_back(o2 + static_cast<int>(j));
                    ma.measurement.labels.push_back(unique_label(ma.measurement.labels, "rest"));
                    ma.measurement.blocks.push_back(std::move(rest));
                    ma.responses.push_back(Response{s, 0});
                    out.set_action(s, static_cast<int>(g), QuantumAction{std::move(ma)});
                } else {
                    out.set_action(s, static_cast<int>(g),
                                   QuantumAction{UnitaryAction{identity_op(D), Response{s, -1}}});
                }
            }
            continue;
        }
        if (m1.is_halting(s)) continue;
        for (std::size_t g = 0; g < out.gamma_size(); ++g) {
            const auto& src = m1.action(s, static_cast<int>(g));
            out.set_action(s, static_cast<int>(g), extend_action(*src, D, 0, s, 0));
        }
    }

    // M2's states, shifted.
    for (std::size_t s = 0; s < m2.classical_count(); ++s) {
        if (m2.is_halting(static_cast<int>(s))) continue;
        const int sc = cs1 + static_cast<int>(s);
        for (std::size_t g = 0; g < out.gamma_size(); ++g) {
            const int m2_sym = m2.symbol_id(out.symbol_name(static_cast<int>(g)));
            const auto& src = m2.action(static_cast<int>(s), m2_sym);
            out.set_action(sc, static_cast<int>(g), extend_action(*src, D, o2, sc, cs1));
        }
    }

    // Bridge states: map the observed M1 basis state onto M2's initial
    // quantum state, then start M2 at the left endmarker.
    for (std::size_t j = 0; j < d1; ++j) {
        const int b = bridge_base + static_cast<int>(j);
        for (std::size_t g = 0; g < out.gamma_size(); ++g) {
            if (g == static_cast<std::size_t>(kLeftEnd)) {
                out.set_action(b, static_cast<int>(g),
                               QuantumAction{UnitaryAction{
                                   basis_swap_op(static_cast<int>(j), o2 + m2.initial_quantum, D),
                                   Response{s2_init, 0}}});
            } else {
                out.set_action(b, static_cast<int>(g),
                               QuantumAction{UnitaryAction{identity_op(D), Response{b, 0}}});
            }
        }
    }

    rep.op = bridge_on_accept ? OpKind::Intersect : OpKind::Union;
    rep.before1 = state_counts(m1);
    rep.before2 = state_counts(m2);
    rep.after = state_counts(out);
    rep.eps1 = eps1;
    rep.eps2 = eps2;
    rep.eps_bound = combined_eps(eps1, eps2);
    rep.eps_formula = "eps1+eps2-eps1*eps2";
    rep.machine = std::move(out);
    return rep;
}

}  // namespace

std::string op_name(OpKind k) {
    switch (k) {
        case OpKind::Intersect: return "intersect";
        case OpKind::Union: return "union";
        case OpKind::Complement: return "complement";
        case OpKind::Reverse: return "reverse";
        case OpKind::Catenate: return "catenate";
    }
    return "?";
}

ComposeReport complement(const Machine& m, double eps) {
    ComposeReport rep;
    rep.op = OpKind::Complement;
    rep.machine = m;
    for (StateKind& k : rep.machine.kind) {
        if (k == StateKind::Accept)
            k = StateKind::Reject;
        else if (k == StateKind::Reject)
            k = StateKind::Accept;
    }
    rep.before1 = state_counts(m);
    rep.after = state_counts(rep.machine);
    rep.eps1 = rep.eps_bound = eps;
    rep.eps_formula = "eps";
    return rep;
}

ComposeReport intersect(const Machine& m1, const Machine& m2, double eps1, double eps2) {
    return sequential_compose(m1, m2, /*bridge_on_accept=*/true, eps1, eps2);
}

ComposeReport union_(const Machine& m1, const Machine& m2, double eps1, double eps2) {
    return sequential_compose(m1, m2, /*bridge_on_accept=*/false, eps1, eps2);
}

ComposeReport reverse(const Machine& m, double eps) {
    Machine out;
    out.name = "reverse(" + m.name + ")";
    out.alphabet = m.alphabet;
    out.quantum_states = m.quantum_states;
    out.classical_states = m.classical_states;
    out.kind = m.kind;

    const std::string boot_q = unique_name(out.quantum_states, "boot");
    const std::string boot_s = unique_name(out.classical_states, "boot_scan");
    out.quantum_states.push_back(boot_q);
    out.classical_states.push_back(boot_s);
    out.kind.push_back(StateKind::Normal);

    const std::size_t D = out.quantum_dim();
    const int boot_qi = static_cast<int>(D) - 1;
    const int boot_si = static_cast<int>(out.classical_count()) - 1;
    out.initial_quantum = boot_qi;
    out.initial_classical = boot_si;
    out.actions.assign(out.classical_count() * out.gamma_size(), std::nullopt);

    // Boot pass: walk to the right endmarker, then seed the register
    // with M's initial quantum state and start M's simulation there.
    for (std::size_t g = 0; g < out.gamma_size(); ++g) {
        if (g == static_cast<std::size_t>(kRightEnd)) {
            out.set_action(boot_si, static_cast<int>(g),
                           QuantumAction{UnitaryAction{basis_swap_op(boot_qi, m.initial_quantum, D),
                                                       Response{m.initial_classical, 0}}});
        } else {
            out.set_action(boot_si, static_cast<int>(g),
                           QuantumAction{UnitaryAction{identity_op(D), Response{boot_si, +1}}});
        }
    }

    // M's rows with directions flipped; the endmarker rows swap places
    // because position p on x corresponds to position |x|+1-p on x^R.
    for (std::size_t s = 0; s < m.classical_count(); ++s) {
        if (m.is_halting(static_cast<int>(s))) continue;
        for (std::size_t g = 0; g < out.gamma_size(); ++g) {
            int src_sym = static_cast<int>(g);
            if (src_sym == kLeftEnd)
                src_sym = kRightEnd;
            else if (src_sym == kRightEnd)
                src_sym = kLeftEnd;
            const auto& src = m.action(static_cast<int>(s), src_sym);
            out.set_action(static_cast<int>(s), static_cast<int>(g),
                           extend_action(*src, D, 0, static_cast<int>(s), 0, /*flip_moves=*/true));
        }
    }

    ComposeReport rep;
    rep.op = OpKind::Reverse;
    rep.before1 = state_counts(m);
    rep.after = state_counts(out);
    rep.eps1 = rep.eps_bound = eps;
    rep.eps_formula = "eps";
    rep.added_classical.push_back(boot_s);
    rep.added_quantum.push_back(boot_q);
    rep.machine = std::move(out);
    return rep;
}

ComposeReport catenate(const Machine& m1, const Machine& m2, std::pair<bool, bool> eps_membership,
                       double eps1, double eps2) {
    if (eps_membership != std::make_pair(false, false))
        throw UnimplementedCaseError(
            "catenation is only implemented for languages without the empty string");
    for (const auto& a : m1.alphabet)
        for (const auto& b : m2.alphabet)
            if (a == b) throw std::invalid_argument("catenation requires disjoint alphabets");

    Machine out;
    out.name = "catenate(" + m1.name + "," + m2.name + ")";
    out.alphabet = m1.alphabet;
    out.alphabet.insert(out.alphabet.end(), m2.alphabet.begin(), m2.alphabet.end());

    const std::size_t d1 = m1.quantum_dim();
    const std::size_t D = d1 + m2.quantum_dim();
    const int o2 = static_cast<int>(d1);
    const int cs1 = static_cast<int>(m1.classical_count());

    for (const auto& q : m1.quantum_states) out.quantum_states.push_back("m1." + q);
    for (const auto& q : m2.quantum_states) out.quantum_states.push_back("m2." + q);
    for (const auto& s : m1.classical_states) out.classical_states.push_back("m1." + s);
    for (const auto& s : m2.classical_states) out.classical_states.push_back("m2." + s);

    ComposeReport rep;
    const int guard_scan1 = cs1 + static_cast<int>(m2.classical_count());
    const int guard_scan2 = guard_scan1 + 1;
    const int guard_reject = guard_scan1 + 2;
    const int guard_rewind = guard_scan1 + 3;
    for (const char* g : {"guard_scan1", "guard_scan2", "guard_reject", "guard_rewind"}) {
        std::string n = unique_name(out.classical_states, g);
        out.classical_states.push_back(n);
        rep.added_classical.push_back(n);
    }

    for (StateKind k : m1.kind) out.kind.push_back(k == StateKind::Accept ? StateKind::Normal : k);
    for (StateKind k : m2.kind) out.kind.push_back(k);
    out.kind.push_back(StateKind::Normal);  // guard_scan1
    out.kind.push_back(StateKind::Normal);  // guard_scan2
    out.kind.push_back(StateKind::Reject);  // guard_reject
    out.kind.push_back(StateKind::Normal);  // guard_rewind

    out.initial_quantum = m1.initial_quantum;
    out.initial_classical = guard_scan1;
    out.actions.assign(out.classical_count() * out.gamma_size(), std::nullopt);

    auto in_sigma1 = [&](int g) {
        return g >= 2 && g < 2 + static_cast<int>(m1.alphabet.size());
    };
    auto identity_to = [&](int next, int move) {
        return QuantumAction{UnitaryAction{identity_op(D), Response{next, move}}};
    };

    const int s1_init = m1.initial_classical;
    const int s2_init = cs1 + m2.initial_classical;

    // Shape guard: one pass verifying Sigma1* Sigma2+ with at least one
    // symbol overall, then rewind and start M1. A missing Sigma1 block
    // is left to M1, which then runs on the empty word and rejects
    // (the construction assumes epsilon is in neither language).
    for (std::size_t g = 0; g < out.gamma_size(); ++g) {
        const int gi = static_cast<int>(g);
        if (gi == kLeftEnd) {
            out.set_action(guard_scan1, gi, identity_to(guard_scan1, +1));
            out.set_action(guard_rewind, gi, identity_to(s1_init, 0));
        } else if (gi == kRightEnd) {
            out.set_action(guard_scan1, gi, identity_to(guard_reject, 0));
            out.set_action(guard_scan2, gi, identity_to(guard_rewind, -1));
        } else if (in_sigma1(gi)) {
            out.set_action(guard_scan1, gi, identity_to(guard_scan1, +1));
            out.set_action(guard_scan2, gi, identity_to(guard_reject, 0));
            out.set_action(guard_rewind, gi, identity_to(guard_rewind, -1));
        } else {
            out.set_action(guard_scan1, gi, identity_to(guard_scan2, +1));
            out.set_action(guard_scan2, gi, identity_to(guard_scan2, +1));
            out.set_action(guard_rewind, gi, identity_to(guard_rewind, -1));
        }
    }
    out.set_action(guard_scan2, kLeftEnd, identity_to(guard_reject, 0));   // unreachable
    out.set_action(guard_rewind, kRightEnd, identity_to(guard_reject, 0));  // unreachable

    // M1 simulation on the Sigma1 prefix; every Sigma2 symbol acts as
    // M1's right endmarker.
    for (int s = 0; s < cs1; ++s) {
        if (m1.kind[s] == StateKind::Accept) {
            // Hand-off: scan right to the first Sigma2 symbol, move the
            // register onto M2's initial state, enter M2 one cell left
            // of it (M2's virtual left endmarker).
            for (std::size_t g = 0; g < out.gamma_size(); ++g) {
                const int gi = static_cast<int>(g);
                if (gi == kLeftEnd || in_sigma1(gi)) {
                    out.set_action(s, gi, identity_to(s, +1));
                } else if (gi == kRightEnd) {
                    out.set_action(s, gi, identity_to(s, 0));  // unreachable
                } else {
                    out.set_action(s, gi,
                                   QuantumAction{UnitaryAction{
                                       basis_swap_op(m1.initial_quantum, o2 + m2.initial_quantum, D),
                                       Response{s2_init, -1}}});
                }
            }
            continue;
        }
        if (m1.is_halting(s)) continue;
        for (std::size_t g = 0; g < out.gamma_size(); ++g) {
            const int gi = static_cast<int>(g);
            if (gi == kRightEnd) {
                out.set_action(s, gi, identity_to(s, 0));  // unreachable: M1 never passes Sigma2
                continue;
            }
            const int src_sym = (gi == kLeftEnd || in_sigma1(gi))
                                    ? m1.symbol_id(out.symbol_name(gi))
                                    : kRightEnd;
            out.set_action(s, gi, extend_action(*m1.action(s, src_sym), D, 0, s, 0));
        }
    }

    // M2 simulation on the Sigma2 suffix; every Sigma1 symbol (and the
    // real left endmarker) acts as M2's left endmarker.
    for (std::size_t s = 0; s < m2.classical_count(); ++s) {
        if (m2.is_halting(static_cast<int>(s))) continue;
        const int sc = cs1 + static_cast<int>(s);
        for (std::size_t g = 0; g < out.gamma_size(); ++g) {
            const int gi = static_cast<int>(g);
            const int src_sym = (gi == kLeftEnd || in_sigma1(gi))
                                    ? kLeftEnd
                                    : m2.symbol_id(out.symbol_name(gi));
            out.set_action(sc, gi, extend_action(*m2.action(static_cast<int>(s), src_sym), D, o2, sc, cs1));
        }
    }

    rep.op = OpKind::Catenate;
    rep.before1 = state_counts(m1);
    rep.before2 = state_counts(m2);
    rep.after = state_counts(out);
    rep.eps1 = eps1;
    rep.eps2 = eps2;
    rep.eps_bound = combined_eps(eps1, eps2);
    rep.eps_formula = "eps1+eps2-eps1*eps2";
    rep.machine = std::move(out);
    return rep;
}

Machine lift_dfa(const Dfa& d) {
    if (d.states.empty()) throw std::invalid_argument("DFA needs at least one state");
    if (d.accepting.size() != d.states.size() || d.next.size() != d.states.size())
        throw std::invalid_argument("DFA tables must cover every state");
    for (const auto& row : d.next)
        if (row.size() != d.alphabet.size())
            throw std::invalid_argument("DFA transition table must be total over its alphabet");

    Machine out;
    out.name = "lift(" + d.name + ")";
    out.alphabet = d.alphabet;
    out.quantum_states = {"q"};
    out.classical_states = d.states;
    out.kind.assign(d.states.size(), StateKind::Normal);
    out.classical_states.push_back(unique_name(out.classical_states, "accept"));
    out.kind.push_back(StateKind::Accept);
    out.classical_states.push_back(unique_name(out.classical_states, "reject"));
    out.kind.push_back(StateKind::Reject);
    out.initial_quantum = 0;
    out.initial_classical = d.start;
    out.actions.assign(out.classical_count() * out.gamma_size(), std::nullopt);

    const int accept_id = static_cast<int>(d.states.size());
    const int reject_id = accept_id + 1;
    for (std::size_t s = 0; s < d.states.size(); ++s) {
        for (std::size_t g = 0; g < out.gamma_size(); ++g) {
            const int gi = static_cast<int>(g);
            Response r;
            if (gi == kLeftEnd)
                r = Response{static_cast<int>(s), +1};
            else if (gi == kRightEnd)
                r = Response{d.accepting[s] ? accept_id : reject_id, 0};
            else
                r = Response{d.next[s][g - 2], +1};
            out.set_action(static_cast<int>(s), gi, QuantumAction{UnitaryAction{identity_op(1), r}});
        }
    }
    return out;
}

StateCounts predicted_state_bounds(OpKind kind, const StateCounts& c1, const std::optional<StateCounts>& c2) {
    switch (kind) {
        case OpKind::Intersect:
        case OpKind::Union:
            if (!c2) throw std::invalid_argument("binary operation needs two state counts");
            return {c1.qs + c2->qs, c1.cs + c2->cs + c1.qs};
        case OpKind::Complement:
            return c1;
        case OpKind::Reverse:
            return {c1.qs + 1, c1.cs + 1};
        case OpKind::Catenate:
            if (!c2) throw std::invalid_argument("binary operation needs two state counts");
            return {c1.qs + c2->qs, c1.cs + c2->cs + 4};
    }
    throw std::invalid_argument("unknown operation kind");
}

}  // namespace qcfa
