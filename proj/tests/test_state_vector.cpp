#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "qsdc/bases.hpp"
#include "qsdc/rng.hpp"
#include "qsdc/state_vector.hpp"

#include "oracle.hpp"

using namespace qsdc;

namespace {

void check_amplitudes(const state_vector& s, const std::vector<cx>& want, double tol = 1e-12) {
    REQUIRE(s.dim() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        INFO("index " << i);
        CHECK(std::abs(s.amplitude(i) - want[i]) <= tol);
    }
}

// Deterministic random normalized state on the given labels.
state_vector random_state(std::vector<int> labels, counting_rng& rng) {
    std::vector<cx> amps(std::size_t{1} << labels.size());
    for (cx& a : amps) a = cx{rng.uniform01() - 0.5, rng.uniform01() - 0.5};
    return state_vector(std::move(labels), std::move(amps)).normalized();
}

const double half = 0.5;
const double c8 = inv_sqrt2 / 2.0; // 1/(2 sqrt 2)

} // namespace

TEST_CASE("basis state construction and indexing is big-endian in label order") {
    const state_vector s = state_vector::basis({1, 2, 3}, 0b011);
    CHECK(s.amplitude(0b011) == cx{1, 0});
    CHECK(s.label_position(1) == 0);
    CHECK(s.label_position(3) == 2);
    CHECK_THROWS_AS(s.label_position(9), unknown_label);
}

TEST_CASE("state_vector rejects malformed input") {
    CHECK_THROWS_AS(state_vector({1, 1}, std::vector<cx>(4)), label_collision);
    CHECK_THROWS(state_vector({1, 2}, std::vector<cx>(3)));
    CHECK_THROWS(state_vector({1}, {cx{std::nan(""), 0}, cx{0, 0}}));
    CHECK_THROWS(state_vector({1, 2, 3, 4, 5, 6, 7, 8, 9},
                              std::vector<cx>(512)));
}

TEST_CASE("tensor of basis states concatenates bitstrings") {
    const state_vector s = tensor(state_vector::basis({1}, 0), state_vector::basis({2}, 1));
    check_amplitudes(s, {cx{0, 0}, cx{1, 0}, cx{0, 0}, cx{0, 0}});
    CHECK(s.labels() == std::vector<int>{1, 2});
}

TEST_CASE("tensor of two Bell pairs gives four amplitudes of one half") {
    const state_vector s =
        tensor(bell_vector(bell_state::phi_plus, 1, 2), bell_vector(bell_state::phi_plus, 3, 4));
    std::vector<cx> want(16, cx{0, 0});
    want[0b0000] = want[0b0011] = want[0b1100] = want[0b1111] = cx{half, 0};
    check_amplitudes(s, want);
}

TEST_CASE("tensor of three Bell pairs gives eight amplitudes of 1/(2 sqrt 2)") {
    const state_vector s = tensor(
        tensor(bell_vector(bell_state::phi_plus, 1, 2), bell_vector(bell_state::phi_plus, 3, 4)),
        bell_vector(bell_state::phi_plus, 5, 6));
    std::vector<cx> want(64, cx{0, 0});
    for (std::size_t i : {0b000000, 0b000011, 0b001100, 0b001111, 0b110000, 0b110011, 0b111100,
                          0b111111})
        want[i] = cx{c8, 0};
    check_amplitudes(s, want);
}

TEST_CASE("tensor rejects overlapping labels") {
    CHECK_THROWS_AS(tensor(state_vector::basis({1, 2}, 0), state_vector::basis({2}, 0)),
                    label_collision);
}

TEST_CASE("applying X flips the addressed qubit") {
    const state_vector s = apply_single(state_vector::basis({1, 2}, 0b00), pauli::x, 2);
    check_amplitudes(s, {cx{0, 0}, cx{1, 0}, cx{0, 0}, cx{0, 0}});
}

TEST_CASE("applying Z to the first qubit of Phi+ matches the dense-matrix oracle") {
    const state_vector in = bell_vector(bell_state::phi_plus, 1, 2);
    const auto want = oracle::matvec(oracle::embed(pauli::z.m, 0, 2), in.amplitudes());
    const state_vector out = apply_single(in, pauli::z, 1);
    check_amplitudes(out, want);
    check_amplitudes(out, bell_vector(bell_state::phi_minus, 1, 2).amplitudes());
}

TEST_CASE("Z on qubit 1 and X on qubit 3 turn Phi+ x Phi+ into Phi- x Psi+") {
    state_vector s =
        tensor(bell_vector(bell_state::phi_plus, 1, 2), bell_vector(bell_state::phi_plus, 3, 4));
    s = apply_single(s, pauli::z, 1);
    s = apply_single(s, pauli::x, 3);
    const state_vector want =
        tensor(bell_vector(bell_state::phi_minus, 1, 2), bell_vector(bell_state::psi_plus, 3, 4));
    check_amplitudes(s, want.amplitudes());
}

TEST_CASE("apply_single rejects unknown labels") {
    CHECK_THROWS_AS(apply_single(state_vector::basis({1}, 0), pauli::x, 7), unknown_label);
}

TEST_CASE("reorder permutes amplitudes to the new label order") {
    // |01> on labels (1,2) becomes |10> on labels (2,1).
    const state_vector s = reorder(state_vector::basis({1, 2}, 0b01), {2, 1});
    CHECK(s.amplitude(0b10) == cx{1, 0});
    CHECK_THROWS_AS(reorder(state_vector::basis({1, 2}, 0), {1, 3}), unknown_label);
    CHECK_THROWS(reorder(state_vector::basis({1, 2}, 0), {1}));
}

TEST_CASE("projecting |0> from |01> leaves |1> with coefficient 1") {
    const projection_result p =
        project_amplitude(state_vector::basis({1, 2}, 0b01), state_vector::basis({1}, 0), {1});
    CHECK(std::abs(p.coeff - cx{1, 0}) <= 1e-12);
    CHECK(p.residual.labels() == std::vector<int>{2});
    check_amplitudes(p.residual, {cx{0, 0}, cx{1, 0}});
}

TEST_CASE("projecting P+ on (1,3,5) of the plain triple leaves P+ on (2,4,6)") {
    const state_vector s = tensor(
        tensor(bell_vector(bell_state::phi_plus, 1, 2), bell_vector(bell_state::phi_plus, 3, 4)),
        bell_vector(bell_state::phi_plus, 5, 6));
    const projection_result p =
        project_amplitude(s, ghz_vector(ghz_state::p_plus, 1, 3, 5), {1, 3, 5});
    CHECK(std::abs(p.coeff - cx{c8, 0}) <= 1e-12);
    const state_vector residual = p.residual.normalized();
    CHECK(std::abs(residual.inner(ghz_vector(ghz_state::p_plus, 2, 4, 6)).real() - 1.0) <= 1e-12);
}

TEST_CASE("projecting P+ on (1,3,5) of the encoded triple leaves R- on (2,4,6)") {
    const state_vector s = tensor(
        tensor(bell_vector(bell_state::phi_minus, 1, 2), bell_vector(bell_state::psi_plus, 3, 4)),
        bell_vector(bell_state::phi_plus, 5, 6));
    const projection_result p =
        project_amplitude(s, ghz_vector(ghz_state::p_plus, 1, 3, 5), {1, 3, 5});
    CHECK(std::abs(p.coeff - cx{c8, 0}) <= 1e-12);
    const state_vector residual = p.residual.normalized();
    CHECK(std::abs(residual.inner(ghz_vector(ghz_state::r_minus, 2, 4, 6)).real() - 1.0) <= 1e-12);
}

TEST_CASE("project_amplitude rejects mismatched labels") {
    const state_vector s = state_vector::basis({1, 2}, 0);
    CHECK_THROWS(project_amplitude(s, state_vector::basis({3}, 0), {3}));
    CHECK_THROWS(project_amplitude(s, state_vector::basis({1}, 0), {2}));
}

TEST_CASE("GHZ measurement of the plain triple is uniform over all 8 outcomes") {
    const state_vector s = tensor(
        tensor(bell_vector(bell_state::phi_plus, 1, 2), bell_vector(bell_state::phi_plus, 3, 4)),
        bell_vector(bell_state::phi_plus, 5, 6));
    const auto branches = measurement_branches(s, ghz_basis(1, 3, 5), {1, 3, 5});
    REQUIRE(branches.size() == 8);
    for (const measurement_branch& b : branches)
        CHECK(std::abs(b.probability - 0.125) <= 1e-12);
}

TEST_CASE("GHZ measurement of |000> yields P+ or P- with probability one half") {
    const auto branches =
        measurement_branches(state_vector::basis({1, 2, 3}, 0), ghz_basis(1, 2, 3), {1, 2, 3});
    CHECK(std::abs(branches[0].probability - 0.5) <= 1e-12); // P+
    CHECK(std::abs(branches[1].probability - 0.5) <= 1e-12); // P-
    for (std::size_t i = 2; i < 8; ++i) CHECK(branches[i].probability <= 1e-12);
}

TEST_CASE("measuring an eigenstate returns it with certainty") {
    counting_rng rng(11);
    const state_vector s = ghz_vector(ghz_state::p_plus, 1, 2, 3);
    const measurement_result r = measure_in_basis(s, ghz_basis(1, 2, 3), {1, 2, 3}, rng);
    CHECK(r.outcome == 0);
    check_amplitudes(r.post_state, s.amplitudes());
}

TEST_CASE("measurement rejects bad bases") {
    const state_vector s = state_vector::basis({1}, 0);
    // incomplete
    CHECK_THROWS(measurement_branches(s, {state_vector::basis({1}, 0)}, {1}));
    // not orthonormal
    CHECK_THROWS(measurement_branches(
        s, {state_vector::basis({1}, 0), state_vector::basis({1}, 0)}, {1}));
}

TEST_CASE("alphabet operators are unitary") {
    for (const single_qubit_op& op : {pauli::identity, pauli::x, pauli::i_y, pauli::z}) {
        INFO(op.name);
        CHECK(is_unitary(op));
    }
}

TEST_CASE("norm is preserved by unitaries and measurement collapse") {
    counting_rng rng(101);
    const std::array all{pauli::identity, pauli::x, pauli::i_y, pauli::z};
    for (int trial = 0; trial < 50; ++trial) {
        state_vector s = random_state({1, 2, 3}, rng);
        const single_qubit_op& op = all[rng.uniform_int(4)];
        const int label = static_cast<int>(1 + rng.uniform_int(3));
        s = apply_single(s, op, label);
        CHECK(std::abs(s.norm() - 1.0) <= 1e-12);
        const measurement_result r = measure_in_basis(s, ghz_basis(1, 2, 3), {1, 2, 3}, rng);
        CHECK(std::abs(r.post_state.norm() - 1.0) <= 1e-9);
    }
}

TEST_CASE("Born probabilities sum to one for random states") {
    counting_rng rng(202);
    for (int trial = 0; trial < 50; ++trial) {
        const state_vector s = random_state({4, 5, 6}, rng);
        const auto branches = measurement_branches(s, ghz_basis(4, 5, 6), {4, 5, 6});
        double total = 0;
        for (const measurement_branch& b : branches) total += b.probability;
        CHECK(std::abs(total - 1.0) <= 1e-9);
    }
}

TEST_CASE("tensor is associative up to amplitude equality") {
    counting_rng rng(303);
    for (int trial = 0; trial < 20; ++trial) {
        const state_vector a = random_state({1}, rng);
        const state_vector b = random_state({2, 3}, rng);
        const state_vector c = random_state({4}, rng);
        check_amplitudes(tensor(tensor(a, b), c), tensor(a, tensor(b, c)).amplitudes());
    }
}

TEST_CASE("operators on distinct qubits commute") {
    counting_rng rng(404);
    const std::array all{pauli::identity, pauli::x, pauli::i_y, pauli::z};
    for (int trial = 0; trial < 50; ++trial) {
        const state_vector s = random_state({1, 2, 3, 4}, rng);
        const single_qubit_op& op_a = all[rng.uniform_int(4)];
        const single_qubit_op& op_b = all[rng.uniform_int(4)];
        const state_vector ab = apply_single(apply_single(s, op_a, 2), op_b, 4);
        const state_vector ba = apply_single(apply_single(s, op_b, 4), op_a, 2);
        check_amplitudes(ab, ba.amplitudes());
    }
}

TEST_CASE("apply_single agrees with the dense-matrix oracle on random states") {
    counting_rng rng(505);
    const std::array all{pauli::identity, pauli::x, pauli::i_y, pauli::z};
    for (int trial = 0; trial < 40; ++trial) {
        const state_vector s = random_state({1, 2, 3}, rng);
        const std::size_t which = rng.uniform_int(4);
        const std::size_t pos = rng.uniform_int(3);
        const auto want = oracle::matvec(oracle::embed(all[which].m, pos, 3), s.amplitudes());
        check_amplitudes(apply_single(s, all[which], static_cast<int>(pos + 1)), want);
    }
}
