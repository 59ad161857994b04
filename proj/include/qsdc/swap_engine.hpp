// swap_engine.hpp
// Entanglement-swapping decompositions. A triple of Bell pairs on qubits
// (1,2), (3,4), (5,6) decomposes into eight GHZ(1,3,5) x GHZ(2,4,6) terms of
// equal weight 1/(2 sqrt 2); the decomposition pairs the two sides
// bijectively. From it we read off the no-operation baseline pairing and
// build the decode table that turns (baseline, observed) into a bit group.
#pragma once

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsdc/bases.hpp"
#include "qsdc/encoding.hpp"
#include "qsdc/state_vector.hpp"

namespace qsdc {

struct decode_failure : std::runtime_error {
    explicit decode_failure(const std::string& what) : std::runtime_error(what) {}
};

struct bell_triple {
    bell_state pair12;
    bell_state pair34;
    bell_state pair56;

    bool operator==(const bell_triple&) const = default;

    // 0..63, pair12-major.
    int index() const {
        return (static_cast<int>(pair12) * 4 + static_cast<int>(pair34)) * 4 +
               static_cast<int>(pair56);
    }
};

inline std::string to_string(const bell_triple& t) {
    std::string s(to_string(t.pair12));
    s += ",";
    s += to_string(t.pair34);
    s += ",";
    s += to_string(t.pair56);
    return s;
}

// Parses "phi+,psi+,phi-" (case-insensitive).
inline bell_triple parse_triple(std::string_view text) {
    std::array<std::string, 3> parts;
    std::size_t part = 0;
    for (char c : text) {
        if (c == ',') {
            if (++part >= 3) throw std::invalid_argument("triple needs exactly three Bell states");
            continue;
        }
        parts[part].push_back(c);
    }
    if (part != 2) throw std::invalid_argument("triple needs exactly three Bell states");
    return bell_triple{parse_bell(parts[0]), parse_bell(parts[1]), parse_bell(parts[2])};
}

inline std::array<bell_triple, 64> all_triples() {
    std::array<bell_triple, 64> out{};
    std::size_t i = 0;
    for (bell_state a : all_bell_states)
        for (bell_state b : all_bell_states)
            for (bell_state c : all_bell_states) out[i++] = bell_triple{a, b, c};
    return out;
}

// The six-qubit product state on labels 1..6.
inline state_vector joint_state(const bell_triple& t) {
    return tensor(tensor(bell_vector(t.pair12, 1, 2), bell_vector(t.pair34, 3, 4)),
                  bell_vector(t.pair56, 5, 6));
}

struct swap_term {
    ghz_state alice;
    ghz_state bob;
    cx coeff;
};

struct swap_decomposition {
    bell_triple triple;
    std::array<swap_term, 8> terms; // in alice tag order

    ghz_state bob_for(ghz_state alice) const {
        for (const swap_term& t : terms)
            if (t.alice == alice) return t.bob;
        throw std::logic_error("decomposition misses an alice state");
    }

    ghz_state alice_for(ghz_state bob) const {
        for (const swap_term& t : terms)
            if (t.bob == bob) return t.alice;
        throw std::logic_error("decomposition misses a bob state");
    }
};

// Decompose by projection: for each GHZ state g on (1,3,5), the partial inner
// product with the joint state is proportional to exactly one GHZ state on
// (2,4,6). Uniform across all 64 triples; the coefficient keeps its phase.
inline swap_decomposition decompose(const bell_triple& t) {
    const state_vector joint = joint_state(t);
    swap_decomposition out{t, {}};
    std::array<bool, 8> bob_seen{};
    for (std::size_t i = 0; i < 8; ++i) {
        const ghz_state ga = all_ghz_states[i];
        projection_result proj = project_amplitude(joint, ghz_vector(ga, 1, 3, 5), {1, 3, 5});
        const double weight = proj.residual.norm();
        if (weight < norm_tol)
            throw std::logic_error("swap decomposition lost a term");
        const phased_ghz gb = identify_ghz(proj.residual.normalized());
        if (bob_seen[static_cast<std::size_t>(gb.state)])
            throw std::logic_error("swap decomposition is not a bijection");
        bob_seen[static_cast<std::size_t>(gb.state)] = true;
        out.terms[i] = swap_term{ga, gb.state, weight * gb.phase};
    }
    return out;
}

// bob outcome -> alice outcome with no local operation applied, indexed by
// the bob ghz_state enum value.
inline std::array<ghz_state, 8> baseline_pairing(const bell_triple& t) {
    const swap_decomposition d = decompose(t);
    std::array<ghz_state, 8> map{};
    for (const swap_term& term : d.terms)
        map[static_cast<std::size_t>(term.bob)] = term.alice;
    return map;
}

// Lookup tables for decoding: the baseline pairing of a triple plus the
// action of every coded operation on every possible baseline state.
class decode_table {
public:
    decode_table(const bell_triple& t, const encoding_scheme& scheme)
        : triple_(t), scheme_id_(scheme.id()), bits_(scheme.bits_per_group()),
          baseline_(baseline_pairing(t)) {
        const std::size_t n_codes = std::size_t{1} << bits_;
        for (auto& row : inverse_) row.fill(-1);
        for (std::size_t b = 0; b < 8; ++b) {
            const ghz_state base = all_ghz_states[b];
            std::array<bool, 8> seen{};
            for (std::size_t v = 0; v < n_codes; ++v) {
                const phased_ghz obs = ghz_action(scheme, code_bits(v, bits_), base);
                const std::size_t o = static_cast<std::size_t>(obs.state);
                if (seen[o])
                    throw invalid_scheme(scheme.id() + ": operations do not act bijectively");
                seen[o] = true;
                op_map_[b][v] = obs.state;
                inverse_[b][o] = static_cast<int>(v);
            }
        }
    }

    const bell_triple& triple() const { return triple_; }
    const std::string& scheme_id() const { return scheme_id_; }
    int bits() const { return bits_; }

    ghz_state baseline_for(ghz_state bob_outcome) const {
        return baseline_[static_cast<std::size_t>(bob_outcome)];
    }

    ghz_state observed_for(ghz_state baseline, const std::vector<int>& code) const {
        if (static_cast<int>(code.size()) != bits_)
            throw std::invalid_argument("code length must equal bits_per_group");
        return op_map_[static_cast<std::size_t>(baseline)][code_value(code)];
    }

    // The unique code whose operation maps baseline to observed.
    std::vector<int> decode(ghz_state baseline, ghz_state observed) const {
        const int v = inverse_[static_cast<std::size_t>(baseline)][static_cast<std::size_t>(observed)];
        if (v < 0)
            throw decode_failure("no operation maps " + std::string(to_string(baseline)) + " to " +
                                 std::string(to_string(observed)) + "; channel corrupted or states mismatched");
        return code_bits(static_cast<std::size_t>(v), bits_);
    }

    // The baseline that a known code carries onto the observed state. Used by
    // the sender in key-distribution mode to recover the shared random bits.
    ghz_state baseline_from(const std::vector<int>& code, ghz_state observed) const {
        const std::size_t v = code_value(code);
        for (std::size_t b = 0; b < 8; ++b)
            if (op_map_[b][v] == observed) return all_ghz_states[b];
        throw decode_failure("no baseline reaches the observed state under this code");
    }

private:
    bell_triple triple_;
    std::string scheme_id_;
    int bits_;
    std::array<ghz_state, 8> baseline_;
    std::array<std::array<ghz_state, 8>, 8> op_map_{}; // [baseline][code value]
    std::array<std::array<int, 8>, 8> inverse_{};      // [baseline][observed] -> code value
};

inline decode_table build_decode_table(const bell_triple& t, const encoding_scheme& scheme) {
    return decode_table(t, scheme);
}

inline std::vector<int> decode_group(const encoding_scheme& scheme, const decode_table& table,
                                     ghz_state baseline, ghz_state observed) {
    if (table.scheme_id() != scheme.id())
        throw std::invalid_argument("decode table was built for scheme " + table.scheme_id());
    return table.decode(baseline, observed);
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Stable text export. Decomposition terms are one per line: alice tag, bob
// tag, coefficient real part, imaginary part.
inline std::string serialize_terms(const swap_decomposition& d) {
    std::string out;
    for (const swap_term& t : d.terms) {
        out += to_string(t.alice);
        out += " ";
        out += to_string(t.bob);
        out += " ";
        out += format_double(t.coeff.real());
        out += " ";
        out += format_double(t.coeff.imag());
        out += "\n";
    }
    return out;
}

inline std::string serialize_tables(const swap_decomposition& d, const decode_table& table) {
    std::string out = "# triple: " + to_string(d.triple) + "\n";
    out += "# terms (alice bob re im)\n";
    out += serialize_terms(d);
    out += "# baseline (bob alice)\n";
    for (ghz_state bob : all_ghz_states) {
        out += "baseline ";
        out += to_string(bob);
        out += " ";
        out += to_string(d.alice_for(bob));
        out += "\n";
    }
    out += "# decode (baseline code observed), scheme " + table.scheme_id() + "\n";
    const std::size_t n_codes = std::size_t{1} << table.bits();
    for (ghz_state base : all_ghz_states)
        for (std::size_t v = 0; v < n_codes; ++v) {
            const std::vector<int> code = code_bits(v, table.bits());
            out += "decode ";
            out += to_string(base);
            out += " ";
            for (int b : code) out += b ? '1' : '0';
            out += " ";
            out += to_string(table.observed_for(base, code));
            out += "\n";
        }
    return out;
}

} // namespace qsdc
