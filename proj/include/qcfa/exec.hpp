#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qcfa/machine.hpp"
#include "qcfa/stats.hpp"

// Two execution engines over a validated machine:
//  - a seeded Monte Carlo trajectory sampler, and
//  - an exact breadth-first branching evaluator that returns rigorous
//    lower bounds on the acceptance/rejection probabilities together
//    with the unabsorbed residual mass.
// Plus a classical absorption oracle for the random-walk gadget.

namespace qcfa {

/// One node of the evaluation tree.
struct Configuration {
    int s = 0;           // classical state
    int pos = 0;         // head position on the tape
    StateVector psi;     // normalized quantum state
    double mass = 1.0;   // probability of this branch
    int depth = 0;       // steps since the initial configuration
};

enum class Verdict : std::uint8_t { Accept, Reject, BudgetExceeded };

struct Absorbed {
    bool accept = false;
    double mass = 0.0;
};

/// Children and absorbed mass produced by expanding one configuration.
struct StepOutcome {
    std::vector<Configuration> children;
    std::vector<Absorbed> absorbed;
    double dropped = 0.0;  // measurement mass below the outcome cutoff
};

/// Expands configuration `c` of machine `m` on tape `t` by one
/// transition. Unitary entries yield one child; measurement entries one
/// child or absorption per outcome with probability >= cutoff.
/// Precondition: c.s non-halting, m validated.
StepOutcome step(const Machine& m, const Tape& t, const Configuration& c);

struct TrajectoryOutcome {
    Verdict verdict = Verdict::BudgetExceeded;
    long long steps = 0;
};

class RandomStream;

/// Follows one root-to-absorption path, sampling measurement outcomes
/// from `rng`. Returns BudgetExceeded after max_steps transitions.
TrajectoryOutcome run_trajectory(const Machine& m, const Tape& t, RandomStream& rng, long long max_steps);

struct AcceptanceEstimate {
    long long trials = 0;
    long long accepts = 0;
    long long rejects = 0;
    long long budget_exceeded = 0;
    double p_acc_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    double confidence = 0.99;
    double mean_steps = 0.0;
    double median_steps = 0.0;
};

/// Aggregates independent trajectories; trajectory i draws from
/// substream (seed, i), so the result does not depend on execution
/// order. Wilson interval on accepts/trials at the given confidence.
AcceptanceEstimate estimate_acceptance(const Machine& m, const Tape& t, long long trials,
                                       std::uint64_t seed, long long max_steps, double confidence = 0.99);

/// Rigorous enclosure: true P_acc lies in [p_acc_low, p_acc_low +
/// residual] and true P_rej in [p_rej_low, p_rej_low + residual].
struct ExactResult {
    double p_acc_low = 0.0;
    double p_rej_low = 0.0;
    double residual = 1.0;
    long long steps_expanded = 0;
};

struct ExactEvalOptions {
    long long step_budget = 100000;
    double merge_tol = 1e-9;     // global-phase-invariant state merge
    double mass_floor = 1e-12;   // branches below this go to residual
    double stop_residual = 0.0;  // stop early once residual <= this
    // Observer called after every expanded depth with the running
    // (depth, p_acc_low, p_rej_low, residual).
    std::function<void(long long, double, double, double)> observer;
};

/// Breadth-first exact evaluation. At each depth, configurations with
/// identical (state, position) and quantum states equal up to global
/// phase are merged by summing mass; branches below mass_floor are
/// moved into the residual, never silently dropped.
ExactResult exact_eval(const Machine& m, const Tape& t, const ExactEvalOptions& opts = {});

/// Absorption probability of the symmetric random walk on positions
/// 0..len starting at 1: chance of hitting `len` before 0, from the
/// tridiagonal linear system (closed form: 1/len).
double line_walk_oracle(long long len);

struct ProfileRow {
    std::string input;
    std::size_t length = 0;
    AcceptanceEstimate estimate;
};

/// Per-input estimate_acceptance, tabulated.
std::vector<ProfileRow> expected_steps_profile(const Machine& m, const std::vector<std::string>& inputs,
                                               long long trials, std::uint64_t seed, long long max_steps,
                                               double confidence = 0.99);

}  // namespace qcfa
