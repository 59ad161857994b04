// bases.hpp
// The four Bell states, the eight-element GHZ basis, and identification of
// arbitrary three-qubit vectors with GHZ basis elements up to global phase.
#pragma once

#include <array>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsdc/state_vector.hpp"

namespace qsdc {

enum class bell_state { phi_plus, phi_minus, psi_plus, psi_minus };
enum class ghz_state { p_plus, p_minus, q_plus, q_minus, r_plus, r_minus, s_plus, s_minus };

inline constexpr std::array<bell_state, 4> all_bell_states{
    bell_state::phi_plus, bell_state::phi_minus, bell_state::psi_plus, bell_state::psi_minus};

inline constexpr std::array<ghz_state, 8> all_ghz_states{
    ghz_state::p_plus, ghz_state::p_minus, ghz_state::q_plus, ghz_state::q_minus,
    ghz_state::r_plus, ghz_state::r_minus, ghz_state::s_plus, ghz_state::s_minus};

inline std::string_view to_string(bell_state b) {
    switch (b) {
    case bell_state::phi_plus: return "Phi+";
    case bell_state::phi_minus: return "Phi-";
    case bell_state::psi_plus: return "Psi+";
    case bell_state::psi_minus: return "Psi-";
    }
    throw std::logic_error("bad bell_state");
}

inline std::string_view to_string(ghz_state g) {
    switch (g) {
    case ghz_state::p_plus: return "P+";
    case ghz_state::p_minus: return "P-";
    case ghz_state::q_plus: return "Q+";
    case ghz_state::q_minus: return "Q-";
    case ghz_state::r_plus: return "R+";
    case ghz_state::r_minus: return "R-";
    case ghz_state::s_plus: return "S+";
    case ghz_state::s_minus: return "S-";
    }
    throw std::logic_error("bad ghz_state");
}

inline std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

inline bell_state parse_bell(std::string_view name) {
    const std::string n = lowercase(name);
    if (n == "phi+") return bell_state::phi_plus;
    if (n == "phi-") return bell_state::phi_minus;
    if (n == "psi+") return bell_state::psi_plus;
    if (n == "psi-") return bell_state::psi_minus;
    throw std::invalid_argument("unknown Bell state name: " + std::string(name));
}

inline ghz_state parse_ghz(std::string_view name) {
    const std::string n = lowercase(name);
    for (ghz_state g : all_ghz_states)
        if (n == lowercase(to_string(g))) return g;
    throw std::invalid_argument("unknown GHZ state name: " + std::string(name));
}

// (|00> +- |11>)/sqrt(2) and (|01> +- |10>)/sqrt(2) on two labeled qubits.
inline state_vector bell_vector(bell_state b, int q0, int q1) {
    std::vector<cx> amps(4, cx{0, 0});
    switch (b) {
    case bell_state::phi_plus:
        amps[0b00] = cx{inv_sqrt2, 0};
        amps[0b11] = cx{inv_sqrt2, 0};
        break;
    case bell_state::phi_minus:
        amps[0b00] = cx{inv_sqrt2, 0};
        amps[0b11] = cx{-inv_sqrt2, 0};
        break;
    case bell_state::psi_plus:
        amps[0b01] = cx{inv_sqrt2, 0};
        amps[0b10] = cx{inv_sqrt2, 0};
        break;
    case bell_state::psi_minus:
        amps[0b01] = cx{inv_sqrt2, 0};
        amps[0b10] = cx{-inv_sqrt2, 0};
        break;
    }
    return state_vector({q0, q1}, std::move(amps));
}

// The eight three-qubit GHZ basis states:
//   P+-: (|000> +- |111>)/sqrt(2)    Q+-: (|001> +- |110>)/sqrt(2)
//   R+-: (|010> +- |101>)/sqrt(2)    S+-: (|011> +- |100>)/sqrt(2)
inline state_vector ghz_vector(ghz_state g, int q0, int q1, int q2) {
    std::vector<cx> amps(8, cx{0, 0});
    const int v = static_cast<int>(g);
    const std::size_t lead = static_cast<std::size_t>(v) >> 1; // 0..3 -> |0 lead>, |1 lead>... pattern below
    const double sign = (v & 1) ? -inv_sqrt2 : inv_sqrt2;
    amps[lead] = cx{inv_sqrt2, 0};
    amps[7 - lead] = cx{sign, 0};
    return state_vector({q0, q1, q2}, std::move(amps));
}

// The full GHZ basis in enum order, so a measurement outcome index converts
// straight to a ghz_state.
inline std::vector<state_vector> ghz_basis(int q0, int q1, int q2) {
    std::vector<state_vector> basis;
    basis.reserve(8);
    for (ghz_state g : all_ghz_states) basis.push_back(ghz_vector(g, q0, q1, q2));
    return basis;
}

struct not_a_ghz_state : std::runtime_error {
    explicit not_a_ghz_state(const std::string& what) : std::runtime_error(what) {}
};

// A GHZ basis element together with the unit global phase that relates it to
// the identified vector. The phase is recorded, never discarded; decoding
// downstream compares only the state tag.
struct phased_ghz {
    ghz_state state;
    cx phase;
};

// Find the unique basis element g and unit phase c with v = c * g.
// v must be a normalized three-qubit vector.
inline phased_ghz identify_ghz(const state_vector& v) {
    if (v.num_qubits() != 3)
        throw std::invalid_argument("identify_ghz expects a three-qubit state");
    if (std::abs(v.norm() - 1.0) > norm_tol)
        throw std::invalid_argument("identify_ghz expects a normalized state");
    const std::vector<int>& l = v.labels();
    for (ghz_state g : all_ghz_states) {
        const cx c = ghz_vector(g, l[0], l[1], l[2]).inner(v);
        if (std::abs(std::abs(c) - 1.0) <= norm_tol)
            return phased_ghz{g, c};
    }
    throw not_a_ghz_state("state is not a GHZ basis element up to phase");
}

} // namespace qsdc
