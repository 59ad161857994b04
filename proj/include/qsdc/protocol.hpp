// protocol.hpp
// The two-party communication protocol over three shared Bell pairs per
// group. Per group the sender holds qubits 1, 3, 5 and the receiver qubits
// 2, 4, 6:
//
//   distribution    pairs are created and the receiver halves sent once;
//                   an eavesdropper may intercept-resend them in transit
//   verification    a random subset of groups is sacrificed to a paired
//                   Z/X correlation test; tampering shows up as mismatches
//   message phase   per group: the sender encodes a bit group as local
//                   operations, both sides measure in the GHZ basis, and the
//                   receiver decodes from (baseline, announced outcome);
//                   only classical messages flow from here on
//
// The key-distribution mode replaces message bits with random ones and also
// extracts the baseline state's bit label, yielding six shared bits per group.
//
// Randomness discipline: one counting_rng drives a run. Draw order is fixed:
// per group the triple (three draws when random), then per receiver qubit the
// eavesdropper (one draw, plus basis and measurement draws when intercepted);
// then the verification sample (one draw per selected group), per tested pair
// the shared basis, the sender's and the receiver's measurement; then per
// message group the two GHZ measurements. With strategy none or probability 0
// the eavesdropper consumes no draws at all.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsdc/bases.hpp"
#include "qsdc/encoding.hpp"
#include "qsdc/rng.hpp"
#include "qsdc/state_vector.hpp"
#include "qsdc/swap_engine.hpp"
#include "qsdc/transcript.hpp"

namespace qsdc {

enum class eve_strategy { none, intercept_z, intercept_x, intercept_random };

inline std::string_view to_string(eve_strategy s) {
    switch (s) {
    case eve_strategy::none: return "none";
    case eve_strategy::intercept_z: return "z";
    case eve_strategy::intercept_x: return "x";
    case eve_strategy::intercept_random: return "random";
    }
    throw std::logic_error("bad eve_strategy");
}

inline eve_strategy parse_eve_strategy(std::string_view name) {
    const std::string n = lowercase(name);
    if (n == "none") return eve_strategy::none;
    if (n == "z") return eve_strategy::intercept_z;
    if (n == "x") return eve_strategy::intercept_x;
    if (n == "random") return eve_strategy::intercept_random;
    throw std::invalid_argument("unknown eavesdropper strategy: " + std::string(name));
}

// Intercept-resend only: no quantum memory, no entangling probes.
struct eve_config {
    eve_strategy strategy = eve_strategy::none;
    double intercept_probability = 0.0;

    bool active() const { return strategy != eve_strategy::none && intercept_probability > 0.0; }

    void validate() const {
        if (!(intercept_probability >= 0.0 && intercept_probability <= 1.0))
            throw std::invalid_argument("intercept probability must lie in [0, 1]");
    }
};

// Where each group's Bell triple comes from: one fixed triple, an explicit
// per-group list, or uniform random draws (three per group, pair order
// (1,2), (3,4), (5,6)).
class triple_source {
public:
    static triple_source fixed(const bell_triple& t) {
        triple_source s;
        s.fixed_ = t;
        return s;
    }

    static triple_source list(std::vector<bell_triple> triples) {
        triple_source s;
        s.list_ = std::move(triples);
        return s;
    }

    static triple_source random() { return {}; }

    bool is_random() const { return !fixed_ && !list_; }

    bell_triple get(std::size_t group, counting_rng& rng) const {
        if (fixed_) return *fixed_;
        if (list_) {
            if (group >= list_->size())
                throw std::invalid_argument("triple list shorter than the group count");
            return (*list_)[group];
        }
        const auto draw = [&rng] {
            return all_bell_states[static_cast<std::size_t>(rng.uniform_int(4))];
        };
        const bell_state a = draw(), b = draw(), c = draw();
        return bell_triple{a, b, c};
    }

    std::string describe() const {
        if (fixed_) return to_string(*fixed_);
        if (list_) return "list[" + std::to_string(list_->size()) + "]";
        return "random";
    }

private:
    std::optional<bell_triple> fixed_;
    std::optional<std::vector<bell_triple>> list_;
};

// One ordered group of three shared pairs and its (possibly tampered) joint
// state over qubits 1..6.
struct pair_group {
    int index;
    bell_triple triple;
    state_vector joint;
};

struct verification_report {
    int pairs_tested = 0;
    int mismatches = 0;
    double qber = 0.0;
    bool passed = true;
};

namespace detail {

inline std::vector<state_vector> z_basis(int label) {
    return {state_vector::basis({label}, 0), state_vector::basis({label}, 1)};
}

inline std::vector<state_vector> x_basis(int label) {
    return {state_vector({label}, {cx{inv_sqrt2, 0}, cx{inv_sqrt2, 0}}),
            state_vector({label}, {cx{inv_sqrt2, 0}, cx{-inv_sqrt2, 0}})};
}

// basis: 0 = Z, 1 = X. Returns the measured bit and collapses the state.
inline int measure_qubit(state_vector& joint, int label, int basis, counting_rng& rng) {
    const std::vector<state_vector> b = basis ? x_basis(label) : z_basis(label);
    measurement_result r = measure_in_basis(joint, b, {label}, rng);
    joint = std::move(r.post_state);
    return static_cast<int>(r.outcome);
}

// Expected XOR of the two measured bits for a pure Bell pair: 0 when the
// halves agree in that basis, 1 when they disagree.
inline int expected_parity(bell_state b, int basis) {
    if (basis == 0) // Z
        return (b == bell_state::psi_plus || b == bell_state::psi_minus) ? 1 : 0;
    // X
    return (b == bell_state::phi_minus || b == bell_state::psi_minus) ? 1 : 0;
}

// Intercept-resend on one transiting qubit. Returns true when intercepted.
inline bool eve_intercept(state_vector& joint, int group, int label, const eve_config& eve,
                          counting_rng& rng, transcript* tr) {
    if (!eve.active()) return false;
    if (rng.uniform01() >= eve.intercept_probability) return false;
    int basis = 0;
    switch (eve.strategy) {
    case eve_strategy::intercept_z: basis = 0; break;
    case eve_strategy::intercept_x: basis = 1; break;
    case eve_strategy::intercept_random: basis = rng.coin(); break;
    case eve_strategy::none: return false;
    }
    const int outcome = measure_qubit(joint, label, basis, rng);
    if (tr)
        tr->append("eve", "eve_intercept",
                   {{"group", group}, {"qubit", label}, {"basis", basis ? "X" : "Z"}, {"outcome", outcome}},
                   rng.draws());
    return true;
}

inline json triple_json(const bell_triple& t) {
    return json{std::string(to_string(t.pair12)), std::string(to_string(t.pair34)),
                std::string(to_string(t.pair56))};
}

inline std::string bits_string(const std::vector<int>& bits) {
    std::string s;
    for (int b : bits) s.push_back(b ? '1' : '0');
    return s;
}

// Caches one decode table per distinct triple; a run uses a single scheme.
class table_cache {
public:
    explicit table_cache(const encoding_scheme& scheme) : scheme_(scheme) {}

    const decode_table& get(const bell_triple& t) {
        auto it = tables_.find(t.index());
        if (it == tables_.end())
            it = tables_.emplace(t.index(), decode_table(t, scheme_)).first;
        return it->second;
    }

private:
    const encoding_scheme& scheme_;
    std::map<int, decode_table> tables_;
};

} // namespace detail

// Step one: create the groups and send the receiver halves through the
// channel the eavesdropper can reach (qubits 2, 4 and 6).
inline std::vector<pair_group> distribute(int n_groups, const triple_source& source,
                                          const eve_config& eve, counting_rng& rng,
                                          transcript& tr) {
    if (n_groups < 1) throw std::invalid_argument("need at least one group");
    eve.validate();
    std::vector<pair_group> groups;
    groups.reserve(static_cast<std::size_t>(n_groups));
    for (int i = 0; i < n_groups; ++i) {
        const bell_triple t = source.get(static_cast<std::size_t>(i), rng);
        state_vector joint = joint_state(t);
        tr.append("alice", "group_created", {{"group", i}, {"triple", detail::triple_json(t)}},
                  rng.draws());
        tr.append("alice", "quantum_sent", {{"group", i}, {"qubits", {2, 4, 6}}}, rng.draws());
        for (int q : {2, 4, 6}) detail::eve_intercept(joint, i, q, eve, rng, &tr);
        groups.push_back(pair_group{i, t, std::move(joint)});
    }
    return groups;
}

// Fidelity test on sacrificed groups: for every pair both parties measure in
// a shared random Z or X basis and compare the outcome parity against the
// declared Bell state. The sample is consumed.
inline verification_report verify_channel(std::vector<pair_group> sample, double threshold,
                                          counting_rng& rng, transcript& tr) {
    if (sample.empty()) throw std::invalid_argument("verification sample is empty");
    verification_report report;
    for (pair_group& g : sample) {
        const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {3, 4}, {5, 6}}};
        const std::array<bell_state, 3> declared{g.triple.pair12, g.triple.pair34, g.triple.pair56};
        for (std::size_t p = 0; p < 3; ++p) {
            const int basis = rng.coin();
            const std::string pair_name =
                std::to_string(pairs[p].first) + std::to_string(pairs[p].second);
            tr.append("joint", "verify_basis_choice",
                      {{"group", g.index}, {"pair", pair_name}, {"basis", basis ? "X" : "Z"}},
                      rng.draws());
            const int a = detail::measure_qubit(g.joint, pairs[p].first, basis, rng);
            const int b = detail::measure_qubit(g.joint, pairs[p].second, basis, rng);
            const bool mismatch = ((a ^ b) != detail::expected_parity(declared[p], basis));
            tr.append("joint", "verify_outcome",
                      {{"group", g.index}, {"pair", pair_name}, {"alice", a}, {"bob", b},
                       {"mismatch", mismatch}},
                      rng.draws());
            ++report.pairs_tested;
            if (mismatch) ++report.mismatches;
        }
    }
    report.qber = static_cast<double>(report.mismatches) / report.pairs_tested;
    report.passed = report.qber <= threshold;
    tr.append("joint", "verify_report",
              {{"pairs_tested", report.pairs_tested}, {"mismatches", report.mismatches},
               {"qber", report.qber}, {"passed", report.passed}},
              rng.draws());
    return report;
}

struct run_result {
    transcript tr;
    message sent;              // qsdc mode only
    message decoded;           // qsdc mode only
    std::vector<int> alice_key; // qkd mode only
    std::vector<int> bob_key;   // qkd mode only
    verification_report verification;
    bool aborted = false;
    std::string abort_reason;

    bool ok() const { return !aborted; }
};

namespace detail {

// Shared skeleton of both modes. Computes the group budget, distributes,
// sacrifices the verification sample and returns the surviving groups in
// their original order, or nothing when verification fails.
struct prepared_run {
    std::vector<pair_group> groups;
    verification_report verification;
    bool aborted = false;
    std::string abort_reason;
};

inline int total_groups_needed(int payload_groups, double verify_fraction) {
    if (!(verify_fraction >= 0.0 && verify_fraction < 1.0))
        throw std::invalid_argument("verify fraction must lie in [0, 1)");
    int n = payload_groups;
    while (true) {
        const int n_verify = static_cast<int>(std::ceil(verify_fraction * n));
        if (n - n_verify >= payload_groups) return n;
        ++n;
    }
}

inline prepared_run prepare_groups(int payload_groups, const triple_source& source,
                                   const eve_config& eve, double verify_fraction,
                                   double threshold, counting_rng& rng, transcript& tr) {
    const int n_total = total_groups_needed(payload_groups, verify_fraction);
    const int n_verify = n_total - payload_groups;
    std::vector<pair_group> groups = distribute(n_total, source, eve, rng, tr);

    prepared_run out;
    if (n_verify == 0) {
        tr.close_quantum_phase();
        out.groups = std::move(groups);
        return out;
    }

    // Joint sacrificial draw: a partial shuffle over the group indices, every
    // coin recorded through the shared seeded rng.
    std::vector<int> indices(static_cast<std::size_t>(n_total));
    for (int i = 0; i < n_total; ++i) indices[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < n_verify; ++j) {
        const std::size_t k =
            static_cast<std::size_t>(j) +
            static_cast<std::size_t>(rng.uniform_int(static_cast<std::uint64_t>(n_total - j)));
        std::swap(indices[static_cast<std::size_t>(j)], indices[k]);
    }
    std::vector<int> sacrificed(indices.begin(), indices.begin() + n_verify);
    std::sort(sacrificed.begin(), sacrificed.end());
    tr.append("joint", "verify_sample", {{"groups", sacrificed}}, rng.draws());

    std::vector<pair_group> sample;
    std::vector<pair_group> kept;
    for (pair_group& g : groups) {
        if (std::binary_search(sacrificed.begin(), sacrificed.end(), g.index))
            sample.push_back(std::move(g));
        else
            kept.push_back(std::move(g));
    }

    out.verification = verify_channel(std::move(sample), threshold, rng, tr);
    if (!out.verification.passed) {
        tr.append("joint", "abort", {{"reason", "verification failed"}}, rng.draws());
        out.aborted = true;
        out.abort_reason = "verification failed";
        return out;
    }
    out.groups = std::move(kept);
    return out;
}

// Steps (3) through (8) for one group. Returns the decoded bit group, or
// nothing when no operation explains the observed pair of outcomes.
struct group_exchange {
    ghz_state alice_outcome;
    ghz_state bob_outcome;
    ghz_state baseline;
    std::optional<std::vector<int>> decoded;
};

inline group_exchange exchange_group(pair_group& g, const encoding_scheme& scheme,
                                     const std::vector<int>& code, const decode_table& table,
                                     counting_rng& rng, transcript& tr) {
    // (3) encode: local operations on the sender's particles only
    json ops_json = json::array();
    for (const particle_op& po : encode_group(scheme, code)) {
        g.joint = apply_single(g.joint, po.op, po.particle);
        ops_json.push_back({{"particle", po.particle}, {"op", po.op.name}});
    }
    tr.append("alice", "encode_op",
              {{"group", g.index}, {"code", bits_string(code)}, {"ops", ops_json}}, rng.draws());

    // (4) sender's GHZ measurement on 1, 3, 5
    measurement_result ra = measure_in_basis(g.joint, ghz_basis(1, 3, 5), {1, 3, 5}, rng);
    g.joint = std::move(ra.post_state);
    const ghz_state alice_out = all_ghz_states[ra.outcome];
    tr.append("alice", "alice_ghz_measurement",
              {{"group", g.index}, {"outcome", std::string(to_string(alice_out))}}, rng.draws());

    // (5) announcement that a measurement happened, result withheld
    tr.append("alice", "measurement_announced", {{"group", g.index}}, rng.draws());

    // (6) receiver's GHZ measurement on 2, 4, 6 and baseline inference
    measurement_result rb = measure_in_basis(g.joint, ghz_basis(2, 4, 6), {2, 4, 6}, rng);
    g.joint = std::move(rb.post_state);
    const ghz_state bob_out = all_ghz_states[rb.outcome];
    tr.append("bob", "bob_ghz_measurement",
              {{"group", g.index}, {"outcome", std::string(to_string(bob_out))}}, rng.draws());
    const ghz_state baseline = table.baseline_for(bob_out);
    tr.append("bob", "bob_baseline",
              {{"group", g.index}, {"baseline", std::string(to_string(baseline))}}, rng.draws());

    // (7) the receiver asks for the result only after his own measurement is
    // on record, then the sender reveals it
    tr.append("bob", "result_request", {{"group", g.index}}, rng.draws());
    tr.append("alice", "result_reveal",
              {{"group", g.index}, {"outcome", std::string(to_string(alice_out))}}, rng.draws());

    // (8) decode by comparing the computed baseline with the announced result
    group_exchange ex{alice_out, bob_out, baseline, std::nullopt};
    try {
        ex.decoded = table.decode(baseline, alice_out);
        tr.append("bob", "decoded_bits",
                  {{"group", g.index}, {"bits", bits_string(*ex.decoded)}}, rng.draws());
    } catch (const decode_failure&) {
        tr.append("bob", "decode_failure",
                  {{"group", g.index}, {"baseline", std::string(to_string(baseline))},
                   {"observed", std::string(to_string(alice_out))}},
                  rng.draws());
    }
    return ex;
}

} // namespace detail

// Direct communication: the message bits select the sender's operations.
// With no eavesdropper and a passing verification the decoded bits equal the
// sent bits for every seed.
inline run_result run_qsdc(const message& msg, const encoding_scheme& scheme,
                           const triple_source& source, const eve_config& eve,
                           double verify_fraction, double threshold, counting_rng& rng) {
    const int bits = scheme.bits_per_group();
    if (msg.bits.empty() || msg.bits.size() % static_cast<std::size_t>(bits) != 0)
        throw std::invalid_argument("message length must be a positive multiple of " +
                                    std::to_string(bits));
    eve.validate();

    run_result result;
    result.sent = msg;
    result.tr.append("system", "run_config",
                     {{"mode", "qsdc"}, {"scheme", scheme.id()}, {"message", msg.to_string()},
                      {"triple", source.describe()},
                      {"eve", {{"strategy", std::string(to_string(eve.strategy))},
                               {"probability", eve.intercept_probability}}},
                      {"verify_fraction", verify_fraction}, {"threshold", threshold},
                      {"seed", rng.seed()}},
                     rng.draws());

    const int n_msg = static_cast<int>(msg.bits.size()) / bits;
    detail::prepared_run prep = detail::prepare_groups(n_msg, source, eve, verify_fraction,
                                                       threshold, rng, result.tr);
    result.verification = prep.verification;
    if (prep.aborted) {
        result.aborted = true;
        result.abort_reason = prep.abort_reason;
        result.tr.append("system", "run_summary",
                         {{"sent", msg.to_string()}, {"decoded", ""}, {"match", false},
                          {"aborted", true}},
                         rng.draws());
        return result;
    }

    detail::table_cache tables(scheme);
    for (int gi = 0; gi < n_msg; ++gi) {
        pair_group& g = prep.groups[static_cast<std::size_t>(gi)];
        const std::vector<int> code(msg.bits.begin() + gi * bits,
                                    msg.bits.begin() + (gi + 1) * bits);
        detail::group_exchange ex =
            detail::exchange_group(g, scheme, code, tables.get(g.triple), rng, result.tr);
        if (!ex.decoded) {
            result.aborted = true;
            result.abort_reason = "decode failure; possible tampering";
            result.tr.append("joint", "abort", {{"reason", result.abort_reason}},
                             rng.draws());
            break;
        }
        result.decoded.bits.insert(result.decoded.bits.end(), ex.decoded->begin(),
                                   ex.decoded->end());
    }

    result.tr.append("system", "run_summary",
                     {{"sent", msg.to_string()}, {"decoded", result.decoded.to_string()},
                      {"match", !result.aborted && result.decoded.bits == msg.bits},
                      {"aborted", result.aborted}},
                     rng.draws());
    return result;
}

// Key distribution: the sender's operations are chosen by fresh random bits.
// Each surviving group yields six shared key bits, the three chosen bits plus
// the three-bit label of the baseline state.
inline run_result run_qkd(int n_groups, const encoding_scheme& scheme, const ghz_bit_code& code,
                          const triple_source& source, const eve_config& eve,
                          double verify_fraction, double threshold, counting_rng& rng) {
    if (n_groups < 1) throw std::invalid_argument("need at least one key group");
    eve.validate();

    run_result result;
    result.tr.append("system", "run_config",
                     {{"mode", "qkd"}, {"scheme", scheme.id()}, {"groups", n_groups},
                      {"triple", source.describe()},
                      {"eve", {{"strategy", std::string(to_string(eve.strategy))},
                               {"probability", eve.intercept_probability}}},
                      {"verify_fraction", verify_fraction}, {"threshold", threshold},
                      {"seed", rng.seed()}},
                     rng.draws());

    detail::prepared_run prep = detail::prepare_groups(n_groups, source, eve, verify_fraction,
                                                       threshold, rng, result.tr);
    result.verification = prep.verification;
    if (prep.aborted) {
        result.aborted = true;
        result.abort_reason = prep.abort_reason;
        result.tr.append("system", "run_summary",
                         {{"key_bits", 0}, {"keys_match", false}, {"aborted", true}},
                         rng.draws());
        return result;
    }

    detail::table_cache tables(scheme);
    const int bits = scheme.bits_per_group();
    for (int gi = 0; gi < n_groups; ++gi) {
        pair_group& g = prep.groups[static_cast<std::size_t>(gi)];
        std::vector<int> a(static_cast<std::size_t>(bits));
        for (int& b : a) b = rng.coin();
        const decode_table& table = tables.get(g.triple);
        detail::group_exchange ex =
            detail::exchange_group(g, scheme, a, table, rng, result.tr);
        if (!ex.decoded) {
            result.aborted = true;
            result.abort_reason = "decode failure; possible tampering";
            result.tr.append("joint", "abort", {{"reason", result.abort_reason}}, rng.draws());
            break;
        }

        // The sender recovers the baseline from her own code and outcome; the
        // receiver already has it. Both append their certain and random bits.
        const ghz_state alice_baseline = table.baseline_from(a, ex.alice_outcome);
        const std::vector<int> alice_random = code.bits_of(alice_baseline);
        const std::vector<int> bob_random = code.bits_of(ex.baseline);

        result.alice_key.insert(result.alice_key.end(), a.begin(), a.end());
        result.alice_key.insert(result.alice_key.end(), alice_random.begin(), alice_random.end());
        result.bob_key.insert(result.bob_key.end(), ex.decoded->begin(), ex.decoded->end());
        result.bob_key.insert(result.bob_key.end(), bob_random.begin(), bob_random.end());

        result.tr.append("joint", "qkd_bits",
                         {{"group", g.index}, {"certain", detail::bits_string(*ex.decoded)},
                          {"random", detail::bits_string(bob_random)}},
                         rng.draws());
    }

    result.tr.append("system", "run_summary",
                     {{"key_bits", result.alice_key.size()},
                      {"keys_match", !result.aborted && result.alice_key == result.bob_key},
                      {"aborted", result.aborted}},
                     rng.draws());
    return result;
}

// Eavesdropper-detection statistics: single Bell pairs, one intercept-resend
// pass, one shared-basis correlation test per pair.
struct attack_report {
    int pairs = 0;
    int mismatches = 0;
    double rate = 0.0;
};

inline attack_report run_attack(bell_state pair_state, const eve_config& eve, int n_pairs,
                                counting_rng& rng) {
    if (n_pairs < 1) throw std::invalid_argument("need at least one pair");
    eve.validate();
    attack_report report;
    report.pairs = n_pairs;
    for (int i = 0; i < n_pairs; ++i) {
        state_vector pair = bell_vector(pair_state, 1, 2);
        detail::eve_intercept(pair, i, 2, eve, rng, nullptr);
        const int basis = rng.coin();
        const int a = detail::measure_qubit(pair, 1, basis, rng);
        const int b = detail::measure_qubit(pair, 2, basis, rng);
        if ((a ^ b) != detail::expected_parity(pair_state, basis)) ++report.mismatches;
    }
    report.rate = static_cast<double>(report.mismatches) / report.pairs;
    return report;
}

} // namespace qsdc
