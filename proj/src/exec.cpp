#include "qcfa/exec.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "qcfa/rng.hpp"

namespace qcfa {

namespace {

const QuantumAction& action_at(const Machine& m, const Configuration& c, const Tape& t) {
    const auto& entry = m.action(c.s, t.at(c.pos));
    assert(entry.has_value() && "validated machine has a total transition table");
    return *entry;
}

}  // namespace

StepOutcome step(const Machine& m, const Tape& t, const Configuration& c) {
    if (m.is_halting(c.s)) throw std::logic_error("step on a halting configuration");
    StepOutcome out;
    const QuantumAction& act = action_at(m, c, t);
    if (std::holds_alternative<UnitaryAction>(act)) {
        const auto& ua = std::get<UnitaryAction>(act);
        StateVector next = ua.op.identity ? c.psi : apply(ua.op, c.psi);
        if (m.is_halting(ua.response.next)) {
            out.absorbed.push_back({m.kind[ua.response.next] == StateKind::Accept, c.mass});
        } else {
            out.children.push_back(Configuration{ua.response.next, c.pos + ua.response.move,
                                                 std::move(next), c.mass, c.depth + 1});
        }
        return out;
    }
    const auto& ma = std::get<MeasureAction>(act);
    double spawned = 0.0;
    for (std::size_t j = 0; j < ma.measurement.blocks.size(); ++j) {
        const double p = block_probability(ma.measurement, j, c.psi);
        if (p < kOutcomeCutoff) continue;
        spawned += p;
        const Response& r = ma.responses[j];
        if (m.is_halting(r.next)) {
            out.absorbed.push_back({m.kind[r.next] == StateKind::Accept, c.mass * p});
            continue;
        }
        StateVector post(c.psi.dim());
        const double inv = 1.0 / std::sqrt(p);
        for (int i : ma.measurement.blocks[j]) post.amp[i] = c.psi.amp[i] * inv;
        out.children.push_back(Configuration{r.next, c.pos + r.move, std::move(post), c.mass * p, c.depth + 1});
    }
    out.dropped = c.mass * std::max(0.0, 1.0 - spawned);
    return out;
}

TrajectoryOutcome run_trajectory(const Machine& m, const Tape& t, RandomStream& rng, long long max_steps) {
    int s = m.initial_classical;
    int pos = 0;
    if (m.kind[s] == StateKind::Accept) return {Verdict::Accept, 0};
    if (m.kind[s] == StateKind::Reject) return {Verdict::Reject, 0};
    StateVector psi = StateVector::basis(static_cast<std::size_t>(m.initial_quantum), m.quantum_dim());
    StateVector scratch(psi.dim());

    for (long long steps = 1; steps <= max_steps; ++steps) {
        assert(pos >= 0 && static_cast<std::size_t>(pos) <= t.last_pos());
        const auto& entry = m.action(s, t.at(pos));
        assert(entry.has_value());
        if (std::holds_alternative<UnitaryAction>(*entry)) {
            const auto& ua = std::get<UnitaryAction>(*entry);
            if (!ua.op.identity) {
                apply_into(ua.op, psi, scratch);
                psi.amp.swap(scratch.amp);
            }
            s = ua.response.next;
            pos += ua.response.move;
        } else {
            const auto& ma = std::get<MeasureAction>(*entry);
            const std::size_t n = ma.measurement.blocks.size();
            // Sample an outcome by cumulative probability; outcomes
            // below the cutoff are treated as impossible.
            const double u = rng.next_double();
            double cum = 0.0;
            std::size_t pick = n;
            double pick_p = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p = block_probability(ma.measurement, j, psi);
                if (p < kOutcomeCutoff) continue;
                cum += p;
                pick = j;
                pick_p = p;
                if (u < cum) break;
            }
            assert(pick < n && "normalized state has at least one outcome");
            const double inv = 1.0 / std::sqrt(pick_p);
            for (std::size_t i = 0; i < psi.dim(); ++i) scratch.amp[i] = Complex{0.0, 0.0};
            for (int i : ma.measurement.blocks[pick]) scratch.amp[i] = psi.amp[i] * inv;
            psi.amp.swap(scratch.amp);
            const Response& r = ma.responses[pick];
            s = r.next;
            pos += r.move;
        }
        if (m.kind[s] == StateKind::Accept) return {Verdict::Accept, steps};
        if (m.kind[s] == StateKind::Reject) return {Verdict::Reject, steps};
    }
    return {Verdict::BudgetExceeded, max_steps};
}

AcceptanceEstimate estimate_acceptance(const Machine& m, const Tape& t, long long trials,
                                       std::uint64_t seed, long long max_steps, double confidence) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    AcceptanceEstimate est;
    est.trials = trials;
    est.confidence = confidence;
    std::vector<double> steps;
    steps.reserve(static_cast<std::size_t>(trials));
    double step_sum = 0.0;
    for (long long i = 0; i < trials; ++i) {
        RandomStream rng(seed, static_cast<std::uint64_t>(i));
        TrajectoryOutcome o = run_trajectory(m, t, rng, max_steps);
        switch (o.verdict) {
            case Verdict::Accept: ++est.accepts; break;
            case Verdict::Reject: ++est.rejects; break;
            case Verdict::BudgetExceeded: ++est.budget_exceeded; break;
        }
        steps.push_back(static_cast<double>(o.steps));
        step_sum += static_cast<double>(o.steps);
    }
    est.p_acc_hat = static_cast<double>(est.accepts) / static_cast<double>(trials);
    Interval ci = wilson_interval(est.accepts, trials, confidence);
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    est.mean_steps = step_sum / static_cast<double>(trials);
    est.median_steps = median_of(steps);
    return est;
}

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<int, int>& p) const {
        return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^ static_cast<unsigned>(p.second));
    }
};

}  // namespace

ExactResult exact_eval(const Machine& m, const Tape& t, const ExactEvalOptions& opts) {
    ExactResult res;
    res.residual = 0.0;

    std::vector<Configuration> frontier;
    {
        Configuration root;
        root.s = m.initial_classical;
        root.pos = 0;
        root.psi = StateVector::basis(static_cast<std::size_t>(m.initial_quantum), m.quantum_dim());
        root.mass = 1.0;
        root.depth = 0;
        if (m.is_halting(root.s)) {
            // Degenerate machine that halts immediately.
            (m.kind[root.s] == StateKind::Accept ? res.p_acc_low : res.p_rej_low) = 1.0;
            return res;
        }
        frontier.push_back(std::move(root));
    }

    double floored = 0.0;  // mass retired below mass_floor or the outcome cutoff
    std::vector<Configuration> next;
    // Dedup index per (state, position): values index into `next`.
    std::unordered_map<std::pair<int, int>, std::vector<std::size_t>, PairHash> index;

    for (long long d = 0; d < opts.step_budget && !frontier.empty(); ++d) {
        next.clear();
        index.clear();
        for (const Configuration& c : frontier) {
            StepOutcome out = step(m, t, c);
            floored += out.dropped;
            for (const Absorbed& a : out.absorbed) (a.accept ? res.p_acc_low : res.p_rej_low) += a.mass;
            for (Configuration& child : out.children) {
                if (child.mass < opts.mass_floor) {
                    floored += child.mass;
                    continue;
                }
                auto& bucket = index[{child.s, child.pos}];
                bool merged = false;
                for (std::size_t slot : bucket) {
                    if (equal_up_to_phase(next[slot].psi, child.psi, opts.merge_tol)) {
                        next[slot].mass += child.mass;
                        merged = true;
                        break;
                    }
                }
                if (!merged) {
                    bucket.push_back(next.size());
                    next.push_back(std::move(child));
                }
            }
        }
        frontier.swap(next);
        res.steps_expanded = d + 1;
        double frontier_mass = floored;
        for (const Configuration& c : frontier) frontier_mass += c.mass;
        if (opts.observer) opts.observer(d + 1, res.p_acc_low, res.p_rej_low, frontier_mass);
        if (opts.stop_residual > 0.0 && frontier_mass <= opts.stop_residual) break;
    }

    res.residual = floored;
    for (const Configuration& c : frontier) res.residual += c.mass;
    return res;
}

double line_walk_oracle(long long len) {
    if (len < 1) throw std::invalid_argument("walk length must be >= 1");
    if (len == 1) return 1.0;  // start position coincides with the right boundary
    // h(p) = (h(p-1) + h(p+1))/2 for 0 < p < len, h(0) = 0, h(len) = 1.
    // Thomas solve of the tridiagonal system for the interior points.
    const std::size_t n = static_cast<std::size_t>(len - 1);
    std::vector<double> diag(n, -2.0), rhs(n, 0.0);
    rhs[n - 1] = -1.0;  // from the h(len) = 1 boundary
    for (std::size_t i = 1; i < n; ++i) {
        const double w = 1.0 / diag[i - 1];
        diag[i] -= w;             // subtract w * upper (upper = lower = 1)
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> h(n);
    h[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) h[i] = (rhs[i] - h[i + 1]) / diag[i];
    return h[0];
}

std::vector<ProfileRow> expected_steps_profile(const Machine& m, const std::vector<std::string>& inputs,
                                               long long trials, std::uint64_t seed, long long max_steps,
                                               double confidence) {
    std::vector<ProfileRow> rows;
    rows.reserve(inputs.size());
    for (const std::string& in : inputs) {
        std::vector<int> syms = parse_input(m, in);
        Tape t = Tape::from_symbols(syms);
        ProfileRow row;
        row.input = in;
        row.length = syms.size();
        row.estimate = estimate_acceptance(m, t, trials, seed, max_steps, confidence);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qcfa
