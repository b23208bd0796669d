#include "qcfa/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcfa {

StateVector StateVector::basis(std::size_t i, std::size_t dim) {
    if (i >= dim) throw std::out_of_range("basis index out of range");
    StateVector v(dim);
    v.amp[i] = Complex{1.0, 0.0};
    return v;
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const Complex& a : amp) s += std::norm(a);
    return s;
}

double StateVector::norm() const { return std::sqrt(norm_sq()); }

void StateVector::normalize() {
    double n = norm();
    if (n == 0.0) throw std::domain_error("cannot normalize zero vector");
    for (Complex& a : amp) a /= n;
}

double RotationSpec::angle() const {
    const double s2 = static_cast<double>(sqrt2_num) / static_cast<double>(sqrt2_den);
    const double p = static_cast<double>(pi_num) / static_cast<double>(pi_den);
    return s2 * std::numbers::sqrt2 * std::numbers::pi + p * std::numbers::pi;
}

bool UnitaryOp::is_identity_exact() const {
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if (at(r, c) != (r == c ? Complex{1.0, 0.0} : Complex{0.0, 0.0})) return false;
    return true;
}

bool Measurement::is_partition() const {
    std::vector<int> seen(dim, 0);
    for (const auto& b : blocks)
        for (int i : b) {
            if (i < 0 || static_cast<std::size_t>(i) >= dim) return false;
            if (seen[i]++) return false;
        }
    for (int s : seen)
        if (!s) return false;
    return true;
}

UnitaryOp identity_op(std::size_t dim) {
    UnitaryOp u;
    u.dim = dim;
    u.entries.assign(dim * dim, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) u.at(i, i) = Complex{1.0, 0.0};
    u.identity = true;
    return u;
}

UnitaryOp rotation_op(double theta, int i, int j, std::size_t dim) {
    if (i == j) throw std::invalid_argument("rotation plane indices must differ");
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= dim || static_cast<std::size_t>(j) >= dim)
        throw std::out_of_range("rotation plane index out of range");
    UnitaryOp u = identity_op(dim);
    u.identity = false;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    u.at(i, i) = Complex{c, 0.0};
    u.at(i, j) = Complex{-s, 0.0};
    u.at(j, i) = Complex{s, 0.0};
    u.at(j, j) = Complex{c, 0.0};
    return u;
}

UnitaryOp rotation_op(const RotationSpec& spec, std::size_t dim) {
    if (spec.sqrt2_den == 0 || spec.pi_den == 0)
        throw std::invalid_argument("rotation coefficient denominator is zero");
    UnitaryOp u = rotation_op(spec.angle(), spec.plane_i, spec.plane_j, dim);
    u.rotation = spec;
    return u;
}

UnitaryOp basis_swap_op(int i, int j, std::size_t dim) {
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= dim || static_cast<std::size_t>(j) >= dim)
        throw std::out_of_range("swap index out of range");
    UnitaryOp u = identity_op(dim);
    if (i != j) {
        u.identity = false;
        u.at(i, i) = u.at(j, j) = Complex{0.0, 0.0};
        u.at(i, j) = u.at(j, i) = Complex{1.0, 0.0};
        u.swap_pair = std::make_pair(std::min(i, j), std::max(i, j));
    }
    return u;
}

UnitaryOp embed_op(const UnitaryOp& u, std::size_t full_dim, const std::vector<int>& placement) {
    if (placement.size() != u.dim) throw std::invalid_argument("placement size mismatch");
    std::vector<int> used(full_dim, 0);
    for (int p : placement) {
        if (p < 0 || static_cast<std::size_t>(p) >= full_dim)
            throw std::out_of_range("placement index out of range");
        if (used[p]++) throw std::invalid_argument("placement collision");
    }
    UnitaryOp out = identity_op(full_dim);
    out.identity = u.identity;
    for (std::size_t r = 0; r < u.dim; ++r) {
        out.at(placement[r], placement[r]) = Complex{0.0, 0.0};
        for (std::size_t c = 0; c < u.dim; ++c) out.at(placement[r], placement[c]) = u.at(r, c);
    }
    if (u.rotation) {
        RotationSpec spec = *u.rotation;
        spec.plane_i = placement[spec.plane_i];
        spec.plane_j = placement[spec.plane_j];
        out.rotation = spec;
    }
    if (u.swap_pair) {
        int a = placement[u.swap_pair->first];
        int b = placement[u.swap_pair->second];
        out.swap_pair = std::make_pair(std::min(a, b), std::max(a, b));
    }
    return out;
}

void apply_into(const UnitaryOp& u, const StateVector& psi, StateVector& out) {
    if (u.dim != psi.dim()) throw std::invalid_argument("operator/state dimension mismatch");
    out.amp.assign(u.dim, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < u.dim; ++r) {
        Complex acc{0.0, 0.0};
        const Complex* row = &u.entries[r * u.dim];
        for (std::size_t c = 0; c < u.dim; ++c) acc += row[c] * psi.amp[c];
        out.amp[r] = acc;
    }
}

StateVector apply(const UnitaryOp& u, const StateVector& psi) {
    StateVector out;
    apply_into(u, psi, out);
    return out;
}

double block_probability(const Measurement& m, std::size_t block, const StateVector& psi) {
    double p = 0.0;
    for (int i : m.blocks[block]) p += std::norm(psi.amp[i]);
    return p;
}

OutcomeDistribution measure(const Measurement& m, const StateVector& psi) {
    if (m.dim != psi.dim()) throw std::invalid_argument("measurement/state dimension mismatch");
    OutcomeDistribution dist;
    for (std::size_t j = 0; j < m.blocks.size(); ++j) {
        const double p = block_probability(m, j, psi);
        if (p < kOutcomeCutoff) continue;
        StateVector post(psi.dim());
        const double inv = 1.0 / std::sqrt(p);
        for (int i : m.blocks[j]) post.amp[i] = psi.amp[i] * inv;
        dist.outcome_index.push_back(j);
        dist.probability.push_back(p);
        dist.post_state.push_back(std::move(post));
    }
    return dist;
}

double unitarity_defect(const UnitaryOp& u) {
    double worst = 0.0;
    for (std::size_t r = 0; r < u.dim; ++r) {
        for (std::size_t c = 0; c < u.dim; ++c) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < u.dim; ++k) acc += std::conj(u.at(k, r)) * u.at(k, c);
            if (r == c) acc -= Complex{1.0, 0.0};
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

bool equal_up_to_phase(const StateVector& psi1, const StateVector& psi2, double tol) {
    if (psi1.dim() != psi2.dim()) throw std::invalid_argument("state dimension mismatch");
    Complex inner{0.0, 0.0};
    for (std::size_t i = 0; i < psi1.dim(); ++i) inner += std::conj(psi1.amp[i]) * psi2.amp[i];
    return std::abs(inner) >= 1.0 - tol * tol / 2.0;
}

}  // namespace qcfa
