// state_vector.hpp
// Dense complex state vectors over labeled qubits, with tensor products,
// single-qubit operator application, basis projection and projective
// measurement. Exact arithmetic scale: at most 8 qubits, 256 amplitudes.
//
// Conventions:
//   - A state carries an ordered list of distinct integer qubit labels.
//   - Amplitude indices are big-endian in label order: the first label is the
//     most significant bit of the basis index.
//   - Values are immutable after construction; every operation returns a new
//     state. Label permutations are explicit through reorder(), never implied.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsdc/rng.hpp"

namespace qsdc {

using cx = std::complex<double>;

// Tolerances: physical checks (norms, probabilities) vs algebraic identities
// on exact inputs. Everything here is short products of 1/sqrt(2) factors.
inline constexpr double norm_tol = 1e-9;
inline constexpr double algebra_tol = 1e-12;

inline constexpr double inv_sqrt2 = 0.70710678118654752440;

struct label_collision : std::invalid_argument {
    explicit label_collision(const std::string& what) : std::invalid_argument(what) {}
};

struct unknown_label : std::invalid_argument {
    explicit unknown_label(const std::string& what) : std::invalid_argument(what) {}
};

// A named 2x2 operator, row-major: m[0] m[1] / m[2] m[3].
struct single_qubit_op {
    std::string name;
    std::array<cx, 4> m;
};

inline bool is_unitary(const single_qubit_op& op, double tol = algebra_tol) {
    // M^dagger M == I entrywise.
    const auto& m = op.m;
    const cx d00 = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
    const cx d01 = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
    const cx d10 = std::conj(m[1]) * m[0] + std::conj(m[3]) * m[2];
    const cx d11 = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
    return std::abs(d00 - cx{1, 0}) <= tol && std::abs(d01) <= tol &&
           std::abs(d10) <= tol && std::abs(d11 - cx{1, 0}) <= tol;
}

// The operator alphabet used by the encoding schemes. i_y is the real matrix
// |0><1| - |1><0|, i.e. i times the Pauli y matrix.
namespace pauli {
inline const single_qubit_op identity{"I", {cx{1, 0}, cx{0, 0}, cx{0, 0}, cx{1, 0}}};
inline const single_qubit_op x{"X", {cx{0, 0}, cx{1, 0}, cx{1, 0}, cx{0, 0}}};
inline const single_qubit_op i_y{"iY", {cx{0, 0}, cx{1, 0}, cx{-1, 0}, cx{0, 0}}};
inline const single_qubit_op z{"Z", {cx{1, 0}, cx{0, 0}, cx{0, 0}, cx{-1, 0}}};
} // namespace pauli

class state_vector {
public:
    state_vector(std::vector<int> labels, std::vector<cx> amplitudes)
        : labels_(std::move(labels)), amps_(std::move(amplitudes)) {
        if (labels_.size() > 8)
            throw std::invalid_argument("state_vector supports at most 8 qubits");
        if (amps_.size() != (std::size_t{1} << labels_.size()))
            throw std::invalid_argument("amplitude count must equal 2^(label count)");
        for (std::size_t i = 0; i < labels_.size(); ++i)
            for (std::size_t j = i + 1; j < labels_.size(); ++j)
                if (labels_[i] == labels_[j])
                    throw label_collision("duplicate qubit label " + std::to_string(labels_[i]));
        for (const cx& a : amps_)
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw std::invalid_argument("amplitudes must be finite");
    }

    // Computational basis state |bits>, big-endian in label order.
    static state_vector basis(std::vector<int> labels, std::uint64_t bits) {
        std::vector<cx> amps(std::size_t{1} << labels.size(), cx{0, 0});
        if (bits >= amps.size())
            throw std::invalid_argument("basis index out of range");
        amps[bits] = cx{1, 0};
        return state_vector(std::move(labels), std::move(amps));
    }

    const std::vector<int>& labels() const { return labels_; }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cx>& amplitudes() const { return amps_; }
    const cx& amplitude(std::size_t index) const { return amps_.at(index); }

    bool has_label(int q) const {
        for (int l : labels_)
            if (l == q) return true;
        return false;
    }

    // Position of a label in the ordered label list.
    std::size_t label_position(int q) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == q) return i;
        throw unknown_label("no qubit labeled " + std::to_string(q));
    }

    double squared_norm() const {
        double s = 0;
        for (const cx& a : amps_) s += std::norm(a);
        return s;
    }

    double norm() const { return std::sqrt(squared_norm()); }

    state_vector normalized() const {
        const double n = norm();
        if (n < 1e-12)
            throw std::invalid_argument("cannot normalize a zero vector");
        std::vector<cx> amps(amps_);
        for (cx& a : amps) a /= n;
        return state_vector(labels_, std::move(amps));
    }

    // <this|other>. Requires identical label order; use reorder() first if needed.
    cx inner(const state_vector& other) const {
        if (labels_ != other.labels_)
            throw std::invalid_argument("inner product requires identical label order");
        cx s{0, 0};
        for (std::size_t i = 0; i < amps_.size(); ++i)
            s += std::conj(amps_[i]) * other.amps_[i];
        return s;
    }

private:
    std::vector<int> labels_;
    std::vector<cx> amps_;
};

// Joint state with a's labels followed by b's. The combined amplitude of a
// concatenated bitstring is the product of the component amplitudes.
inline state_vector tensor(const state_vector& a, const state_vector& b) {
    for (int l : b.labels())
        if (a.has_label(l))
            throw label_collision("tensor operands share label " + std::to_string(l));
    std::vector<int> labels(a.labels());
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    std::vector<cx> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            amps[i * b.dim() + j] = a.amplitude(i) * b.amplitude(j);
    return state_vector(std::move(labels), std::move(amps));
}

// Apply a 2x2 operator to one tensor factor.
inline state_vector apply_single(const state_vector& s, const single_qubit_op& op, int qubit) {
    const std::size_t n = s.num_qubits();
    const std::size_t pos = s.label_position(qubit);
    const std::size_t mask = std::size_t{1} << (n - 1 - pos);
    std::vector<cx> amps(s.amplitudes());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) continue;
        const cx a0 = amps[i];
        const cx a1 = amps[i | mask];
        amps[i] = op.m[0] * a0 + op.m[1] * a1;
        amps[i | mask] = op.m[2] * a0 + op.m[3] * a1;
    }
    return state_vector(s.labels(), std::move(amps));
}

// Permute the label order. new_order must contain exactly the same labels.
inline state_vector reorder(const state_vector& s, const std::vector<int>& new_order) {
    if (new_order.size() != s.num_qubits())
        throw std::invalid_argument("reorder requires a permutation of the labels");
    const std::size_t n = s.num_qubits();
    std::vector<std::size_t> old_pos(n);
    for (std::size_t j = 0; j < n; ++j)
        old_pos[j] = s.label_position(new_order[j]); // throws unknown_label on mismatch
    std::vector<cx> amps(s.dim(), cx{0, 0});
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::size_t k = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t bit = (i >> (n - 1 - old_pos[j])) & 1u;
            k |= bit << (n - 1 - j);
        }
        amps[k] = s.amplitude(i);
    }
    return state_vector(new_order, std::move(amps));
}

// Result of projecting a subsystem onto a basis state. residual is the
// unnormalized partial inner product on the remaining qubits (kept in the
// state's label order); its norm equals |coeff|, and any relative phase stays
// in the residual.
struct projection_result {
    cx coeff;
    state_vector residual;
};

inline projection_result project_amplitude(const state_vector& s,
                                           const state_vector& basis_state,
                                           const std::vector<int>& on_qubits) {
    if (basis_state.labels() != on_qubits)
        throw std::invalid_argument("basis state must be defined exactly on the projected qubits");
    const std::size_t n = s.num_qubits();
    const std::size_t k = on_qubits.size();
    std::vector<std::size_t> pos(k);
    for (std::size_t j = 0; j < k; ++j)
        pos[j] = s.label_position(on_qubits[j]);

    std::vector<int> rest;
    std::vector<std::size_t> rest_pos;
    for (std::size_t p = 0; p < n; ++p) {
        bool projected = false;
        for (std::size_t j = 0; j < k; ++j)
            if (pos[j] == p) projected = true;
        if (!projected) {
            rest.push_back(s.labels()[p]);
            rest_pos.push_back(p);
        }
    }

    const std::size_t m = rest.size();
    std::vector<cx> v(std::size_t{1} << m, cx{0, 0});
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::size_t sub = 0;
        for (std::size_t j = 0; j < k; ++j)
            sub |= ((i >> (n - 1 - pos[j])) & 1u) << (k - 1 - j);
        std::size_t ri = 0;
        for (std::size_t j = 0; j < m; ++j)
            ri |= ((i >> (n - 1 - rest_pos[j])) & 1u) << (m - 1 - j);
        v[ri] += std::conj(basis_state.amplitude(sub)) * s.amplitude(i);
    }
    state_vector residual(std::move(rest), std::move(v));
    return projection_result{cx{residual.norm(), 0}, std::move(residual)};
}

struct measurement_branch {
    std::size_t outcome;     // index into the basis list
    double probability;      // Born probability
    state_vector post_state; // normalized collapse; zero vector if probability is 0
};

// Enumerate every outcome of a projective measurement. The basis must be a
// complete orthonormal set on on_qubits (checked within norm_tol).
inline std::vector<measurement_branch> measurement_branches(const state_vector& s,
                                                            const std::vector<state_vector>& basis,
                                                            const std::vector<int>& on_qubits) {
    const std::size_t k = on_qubits.size();
    if (basis.size() != (std::size_t{1} << k))
        throw std::invalid_argument("measurement basis is incomplete");
    for (const state_vector& b : basis)
        if (b.labels() != on_qubits)
            throw std::invalid_argument("basis states must be defined exactly on the measured qubits");
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const cx g = basis[i].inner(basis[j]);
            const cx want = (i == j) ? cx{1, 0} : cx{0, 0};
            if (std::abs(g - want) > norm_tol)
                throw std::invalid_argument("measurement basis is not orthonormal");
        }

    std::vector<measurement_branch> branches;
    branches.reserve(basis.size());
    double total = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        projection_result proj = project_amplitude(s, basis[i], on_qubits);
        const double p = proj.residual.squared_norm();
        total += p;
        if (p > 1e-300) {
            state_vector post = reorder(tensor(basis[i], proj.residual.normalized()), s.labels());
            branches.push_back({i, p, std::move(post)});
        } else {
            std::vector<cx> zeros(s.dim(), cx{0, 0});
            branches.push_back({i, 0.0, state_vector(s.labels(), std::move(zeros))});
        }
    }
    if (std::abs(total - 1.0) > norm_tol)
        throw std::invalid_argument("outcome probabilities do not sum to 1; state not normalized?");
    return branches;
}

struct measurement_result {
    std::size_t outcome;
    state_vector post_state;
};

// Projective measurement with the outcome drawn from the Born distribution.
// Consumes exactly one rng draw.
inline measurement_result measure_in_basis(const state_vector& s,
                                           const std::vector<state_vector>& basis,
                                           const std::vector<int>& on_qubits,
                                           counting_rng& rng) {
    std::vector<measurement_branch> branches = measurement_branches(s, basis, on_qubits);
    const double u = rng.uniform01();
    double cum = 0;
    std::size_t pick = branches.size();
    for (std::size_t i = 0; i < branches.size(); ++i) {
        cum += branches[i].probability;
        if (u < cum) {
            pick = i;
            break;
        }
    }
    if (pick == branches.size()) {
        // u landed past the accumulated total by rounding; take the last
        // branch that can actually occur.
        for (std::size_t i = branches.size(); i-- > 0;)
            if (branches[i].probability > 0) {
                pick = i;
                break;
            }
    }
    return measurement_result{branches[pick].outcome, std::move(branches[pick].post_state)};
}

} // namespace qsdc
