// encoding.hpp
// Message <-> operation encoding schemes. A scheme assigns an operator
// alphabet to some of the sender's particle positions {1, 3, 5} and maps bit
// groups to operator tuples. The catalog covers the main two-particle scheme,
// its b1/b2/b3 alphabet swaps, the position-symmetric c:<m>,<n>:<alphabet>
// family, and the three-particle one-bit-per-particle scheme d.
#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsdc/bases.hpp"
#include "qsdc/state_vector.hpp"

namespace qsdc {

struct invalid_scheme : std::runtime_error {
    explicit invalid_scheme(const std::string& what) : std::runtime_error(what) {}
};

// An ordered operator list indexed by a fixed-width bit value.
struct operator_alphabet {
    std::string name;
    std::vector<single_qubit_op> ops;

    int bits() const {
        const std::size_t n = ops.size();
        if (n < 2 || (n & (n - 1)) != 0)
            throw invalid_scheme("alphabet size must be a power of two");
        int b = 0;
        for (std::size_t v = n; v > 1; v >>= 1) ++b;
        return b;
    }
};

namespace alphabets {

// Two-bit alphabet: 00 -> I, 01 -> X, 10 -> iY, 11 -> Z.
inline operator_alphabet full_pauli() {
    return {"pauli4", {pauli::identity, pauli::x, pauli::i_y, pauli::z}};
}

// One-bit alphabets.
inline operator_alphabet identity_x() { return {"ix", {pauli::identity, pauli::x}}; }
inline operator_alphabet identity_iy() { return {"iiy", {pauli::identity, pauli::i_y}}; }

} // namespace alphabets

// One alphabet acting on one particle position. Slots are listed in code bit
// order: the first slot consumes the most significant bits of a group.
struct scheme_slot {
    int particle;
    operator_alphabet alphabet;
};

struct particle_op {
    int particle;
    single_qubit_op op;
};

inline std::vector<int> code_bits(std::size_t value, int width) {
    std::vector<int> bits(width);
    for (int i = 0; i < width; ++i)
        bits[i] = static_cast<int>((value >> (width - 1 - i)) & 1u);
    return bits;
}

inline std::size_t code_value(const std::vector<int>& bits) {
    std::size_t v = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("code bits must be 0 or 1");
        v = (v << 1) | static_cast<std::size_t>(b);
    }
    return v;
}

class encoding_scheme;

inline phased_ghz ghz_action(const encoding_scheme& scheme, const std::vector<int>& code, ghz_state g);

class encoding_scheme {
public:
    encoding_scheme(std::string id, std::vector<scheme_slot> slots)
        : id_(std::move(id)), slots_(std::move(slots)) {
        if (slots_.empty()) throw invalid_scheme(id_ + ": no slots");
        std::set<int> seen;
        for (const scheme_slot& s : slots_) {
            if (s.particle != 1 && s.particle != 3 && s.particle != 5)
                throw invalid_scheme(id_ + ": particles must be 1, 3 or 5");
            if (!seen.insert(s.particle).second)
                throw invalid_scheme(id_ + ": particle listed twice");
            bits_ += s.alphabet.bits();
        }
        check_ghz_bijection();
    }

    const std::string& id() const { return id_; }
    const std::vector<scheme_slot>& slots() const { return slots_; }
    int bits_per_group() const { return bits_; }

    std::vector<int> positions() const {
        std::vector<int> p;
        for (const scheme_slot& s : slots_) p.push_back(s.particle);
        return p;
    }

private:
    // A scheme is usable only if, from every starting GHZ state, its 2^bits
    // operation tuples reach 2^bits distinct GHZ states.
    void check_ghz_bijection() const;

    std::string id_;
    std::vector<scheme_slot> slots_;
    int bits_ = 0;
};

// The operation tuple for one bit group, in slot order. Bits are
// most-significant-first within the group, matching the slot listing.
inline std::vector<particle_op> encode_group(const encoding_scheme& scheme,
                                             const std::vector<int>& code) {
    if (static_cast<int>(code.size()) != scheme.bits_per_group())
        throw std::invalid_argument("code length must equal bits_per_group");
    std::vector<particle_op> ops;
    std::size_t consumed = 0;
    for (const scheme_slot& slot : scheme.slots()) {
        const int w = slot.alphabet.bits();
        std::size_t idx = 0;
        for (int i = 0; i < w; ++i) {
            const int b = code[consumed + i];
            if (b != 0 && b != 1) throw std::invalid_argument("code bits must be 0 or 1");
            idx = (idx << 1) | static_cast<std::size_t>(b);
        }
        consumed += w;
        ops.push_back({slot.particle, slot.alphabet.ops[idx]});
    }
    return ops;
}

// Apply a coded operation tuple to a GHZ state on the sender's particle
// triple (labels 1, 3, 5) and identify the result.
inline phased_ghz ghz_action(const encoding_scheme& scheme, const std::vector<int>& code, ghz_state g) {
    state_vector v = ghz_vector(g, 1, 3, 5);
    for (const particle_op& po : encode_group(scheme, code))
        v = apply_single(v, po.op, po.particle);
    return identify_ghz(v);
}

inline void encoding_scheme::check_ghz_bijection() const {
    const std::size_t n = std::size_t{1} << bits_;
    for (ghz_state g : all_ghz_states) {
        std::set<ghz_state> images;
        for (std::size_t v = 0; v < n; ++v) {
            phased_ghz out{ghz_state::p_plus, cx{}};
            try {
                out = ghz_action(*this, code_bits(v, bits_), g);
            } catch (const not_a_ghz_state&) {
                throw invalid_scheme(id_ + ": operations leave the GHZ basis");
            }
            images.insert(out.state);
        }
        if (images.size() != n)
            throw invalid_scheme(id_ + ": operations do not act bijectively on the GHZ basis");
    }
}

// Three-bit labels for the GHZ states, used by the key-distribution mode.
// The standard assignment runs P+, P-, Q+, Q-, R+, R-, S+, S- = 000..111.
class ghz_bit_code {
public:
    explicit ghz_bit_code(std::array<int, 8> code_of_state) : code_(code_of_state) {
        std::array<bool, 8> used{};
        for (int c : code_) {
            if (c < 0 || c > 7 || used[static_cast<std::size_t>(c)])
                throw std::invalid_argument("ghz_bit_code must be a bijection onto 000..111");
            used[static_cast<std::size_t>(c)] = true;
        }
    }

    static ghz_bit_code standard() { return ghz_bit_code({0, 1, 2, 3, 4, 5, 6, 7}); }

    int code_of(ghz_state g) const { return code_[static_cast<std::size_t>(g)]; }
    std::vector<int> bits_of(ghz_state g) const { return code_bits(static_cast<std::size_t>(code_of(g)), 3); }

private:
    std::array<int, 8> code_;
};

inline std::vector<int> ghz_to_bits(const ghz_bit_code& code, ghz_state g) {
    return code.bits_of(g);
}

// A bit sequence to transmit. Length constraints are enforced at protocol
// entry, not here.
struct message {
    std::vector<int> bits;

    static message from_string(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("empty message");
        message m;
        m.bits.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("message must contain only 0 and 1");
            m.bits.push_back(c - '0');
        }
        return m;
    }

    std::string to_string() const {
        std::string s;
        s.reserve(bits.size());
        for (int b : bits) s.push_back(b ? '1' : '0');
        return s;
    }
};

// Scheme catalog. Identifiers are stable and CLI-addressable.
//
// main        pauli4 on particle 1, {I,X} on particle 3, code ij|k
// b1          pauli4 on particle 1, {I,iY} on particle 3, code ij|k
//             (the one-bit alphabet swap on particle 3 leaves particle 1's
//             four-operator alphabet in place, keeping three bits per group)
// b2          {I,X} on particle 1, pauli4 on particle 3, code i|jk
// b3          {I,iY} on particle 1, pauli4 on particle 3, code i|jk
// c:<m>,<n>:x or :iy
//             pauli4 on particle m, the named one-bit alphabet on particle n,
//             for any ordered pair of distinct m, n in {1,3,5}; the pauli4
//             bits come first in the group code
// d           {I,iY} on each of particles 1, 3 and 5, one bit per particle
inline std::vector<encoding_scheme> list_schemes() {
    using namespace alphabets;
    std::vector<encoding_scheme> out;
    out.emplace_back("main", std::vector<scheme_slot>{{1, full_pauli()}, {3, identity_x()}});
    out.emplace_back("b1", std::vector<scheme_slot>{{1, full_pauli()}, {3, identity_iy()}});
    out.emplace_back("b2", std::vector<scheme_slot>{{1, identity_x()}, {3, full_pauli()}});
    out.emplace_back("b3", std::vector<scheme_slot>{{1, identity_iy()}, {3, full_pauli()}});
    for (int m : {1, 3, 5})
        for (int n : {1, 3, 5}) {
            if (m == n) continue;
            const std::string mn = std::to_string(m) + "," + std::to_string(n);
            out.emplace_back("c:" + mn + ":x",
                             std::vector<scheme_slot>{{m, full_pauli()}, {n, identity_x()}});
            out.emplace_back("c:" + mn + ":iy",
                             std::vector<scheme_slot>{{m, full_pauli()}, {n, identity_iy()}});
        }
    out.emplace_back("d", std::vector<scheme_slot>{{1, identity_iy()}, {3, identity_iy()}, {5, identity_iy()}});
    return out;
}

inline encoding_scheme scheme_by_id(std::string_view id) {
    const std::string wanted = lowercase(id);
    for (encoding_scheme& s : list_schemes())
        if (s.id() == wanted) return s;
    throw std::invalid_argument("unknown scheme id: " + std::string(id));
}

} // namespace qsdc
