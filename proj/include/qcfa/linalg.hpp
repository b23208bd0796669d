#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

// Small dense complex linear algebra for quantum state evolution.
// Machine quantum dimensions in this toolkit stay in the single digits,
// so everything is a plain dense vector/matrix with value semantics.

namespace qcfa {

using Complex = std::complex<double>;

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kOutcomeCutoff = 1e-14;

/// Normalized complex amplitude vector over an ordered quantum basis.
struct StateVector {
    std::vector<Complex> amp;

    StateVector() = default;
    explicit StateVector(std::size_t dim) : amp(dim, Complex{0.0, 0.0}) {}

    std::size_t dim() const { return amp.size(); }

    /// Basis state |i> of the given dimension.
    static StateVector basis(std::size_t i, std::size_t dim);

    double norm() const;
    double norm_sq() const;
    void normalize();
};

/// Exact symbolic description of a plane rotation whose angle is
/// (sqrt2_num/sqrt2_den)*sqrt(2)*pi + (pi_num/pi_den)*pi.
/// Kept alongside the numeric matrix so machine files can reconstruct
/// irrational angles at full double precision.
struct RotationSpec {
    long long sqrt2_num = 0;
    long long sqrt2_den = 1;
    long long pi_num = 0;
    long long pi_den = 1;
    int plane_i = 0;
    int plane_j = 1;

    double angle() const;
    bool operator==(const RotationSpec&) const = default;
};

/// Dense unitary operator. `rotation` and `swap_pair` record how the
/// matrix was built when it came from one of the exact constructors;
/// `identity` marks operators known to be the identity so application
/// can be skipped in sampling loops.
struct UnitaryOp {
    std::size_t dim = 0;
    std::vector<Complex> entries;  // row-major dim*dim
    std::optional<RotationSpec> rotation;
    std::optional<std::pair<int, int>> swap_pair;
    bool identity = false;

    Complex& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }

    bool is_identity_exact() const;
};

/// Projective measurement given by a labeled partition of the basis
/// indices. Block j induces the projector onto span of its members, so
/// completeness and orthogonality hold by construction.
struct Measurement {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> blocks;

    std::size_t outcome_count() const { return blocks.size(); }
    /// true iff blocks are disjoint and cover {0..dim-1}.
    bool is_partition() const;
};

/// Result of measuring a state: nonzero outcomes with their
/// probabilities and collapsed post-measurement states.
struct OutcomeDistribution {
    std::vector<std::size_t> outcome_index;  // index into Measurement::blocks
    std::vector<double> probability;
    std::vector<StateVector> post_state;
};

UnitaryOp identity_op(std::size_t dim);

/// Givens rotation by `theta` in the (i, j) coordinate plane, identity
/// elsewhere: acts as [[cos,-sin],[sin,cos]] on coordinates (i, j).
UnitaryOp rotation_op(double theta, int i, int j, std::size_t dim);

/// rotation_op with the angle kept in exact symbolic form.
UnitaryOp rotation_op(const RotationSpec& spec, std::size_t dim);

/// Permutation unitary exchanging basis states i and j.
UnitaryOp basis_swap_op(int i, int j, std::size_t dim);

/// Block operator acting as `u` on the placed basis subset and as the
/// identity on its complement. `placement[k]` is the full-space index of
/// the small space's k-th basis state; must be injective.
UnitaryOp embed_op(const UnitaryOp& u, std::size_t full_dim, const std::vector<int>& placement);

StateVector apply(const UnitaryOp& u, const StateVector& psi);

/// In-place matrix-vector product using a caller-provided scratch
/// buffer; avoids allocation in sampling loops.
void apply_into(const UnitaryOp& u, const StateVector& psi, StateVector& out);

/// Outcome probabilities and collapsed states; outcomes with probability
/// below kOutcomeCutoff are omitted.
OutcomeDistribution measure(const Measurement& m, const StateVector& psi);

/// Probability of each outcome block (no cutoff, no collapse).
double block_probability(const Measurement& m, std::size_t block, const StateVector& psi);

/// max |(U^dagger U - I)_{rc}|; a valid unitary keeps this <= kUnitaryTol.
double unitarity_defect(const UnitaryOp& u);

/// true iff min over unit phase phi of ||psi1 - phi*psi2|| <= tol,
/// computed via |<psi1|psi2>| >= 1 - tol^2/2. Assumes both normalized.
bool equal_up_to_phase(const StateVector& psi1, const StateVector& psi2, double tol);

}  // namespace qcfa
