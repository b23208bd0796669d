#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcfa/machine.hpp"

// Machine-to-machine closure combinators: intersection, union,
// complement, reversal and catenation, with state-count accounting.

namespace qcfa {

/// Catenation of machines whose languages contain the empty string is
/// a distinct construction that this toolkit does not implement.
struct UnimplementedCaseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OpKind { Intersect, Union, Complement, Reverse, Catenate };

std::string op_name(OpKind k);

struct ComposeReport {
    OpKind op;
    Machine machine;
    StateCounts before1;
    std::optional<StateCounts> before2;
    StateCounts after;
    // Error bound of the combined recognizer, evaluated from the input
    // machines' error bounds.
    double eps1 = 0.0;
    double eps2 = 0.0;
    double eps_bound = 0.0;
    std::string eps_formula;
    std::vector<std::string> added_classical;
    std::vector<std::string> added_quantum;
};

/// Swaps the accepting and rejecting state sets; everything else is
/// untouched, so the evaluation tree of the result is identical to the
/// input's with the absorbed masses relabeled.
ComposeReport complement(const Machine& m, double eps = 0.0);

/// Sequential simulation: run M1; reject if M1 rejects; if M1 accepts,
/// rewind, collapse the register with a full-basis measurement, map the
/// observed basis state onto M2's initial state with a transposition,
/// and run M2. Requires identical input alphabets.
ComposeReport intersect(const Machine& m1, const Machine& m2, double eps1 = 0.0, double eps2 = 0.0);

/// Dual of intersect: the bridge sits on M1's rejecting states.
ComposeReport union_(const Machine& m1, const Machine& m2, double eps1 = 0.0, double eps2 = 0.0);

/// Mirror simulation: a fresh initial state walks to the right
/// endmarker, seeds the register, and then runs M with all head
/// directions flipped and the endmarker rows exchanged, so the result
/// accepts x^R exactly as M accepts x.
ComposeReport reverse(const Machine& m, double eps = 0.0);

/// Theorem-style catenation for disjoint alphabets and eps-free
/// languages: a four-state guard checks the input shape Sigma1+ Sigma2+,
/// M1 runs with the first Sigma2 symbol as its right endmarker, and on
/// acceptance hands off to M2, which treats the last Sigma1 symbol as
/// its left endmarker. `eps_membership` flags whether the empty string
/// belongs to (L1, L2); only (false, false) is implemented.
///
/// The quantum handoff applies the transposition |q1_0> <-> |q2_0>, so
/// the construction is exact for machines whose register is back in the
/// initial basis state whenever they accept (all machines built by this
/// toolkit's zoo and lift_dfa have that property).
ComposeReport catenate(const Machine& m1, const Machine& m2,
                       std::pair<bool, bool> eps_membership = {false, false}, double eps1 = 0.0,
                       double eps2 = 0.0);

/// Total deterministic finite automaton over an explicit alphabet.
struct Dfa {
    std::string name;
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    int start = 0;
    std::vector<bool> accepting;
    std::vector<std::vector<int>> next;  // [state][alphabet index]
};

/// One-pass 2qcfa wrapper around a DFA: a single quantum state,
/// identity actions everywhere, and the DFA as the classical part.
Machine lift_dfa(const Dfa& d);

/// Paper-style state-count bounds for a combinator applied to machines
/// with the given counts. The combinators in this module meet these
/// with equality.
StateCounts predicted_state_bounds(OpKind kind, const StateCounts& c1,
                                   const std::optional<StateCounts>& c2 = std::nullopt);

}  // namespace qcfa
