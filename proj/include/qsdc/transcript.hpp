// transcript.hpp
// Ordered record of every protocol event. Serialized as JSON lines, one event
// per line, with a strict replay contract: the same configuration and seed
// produce a byte-identical transcript.
#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qsdc {

using json = nlohmann::json;

// Event kinds that travel over the (ideal, authenticated) classical channel:
//   measurement_announced, result_request, result_reveal,
//   verify_basis_choice, verify_outcome, abort
// Everything else is a local or bookkeeping event. quantum_sent marks the one
// quantum transfer of the protocol, the initial distribution of pair halves.
struct transcript_event {
    std::uint64_t seq;
    std::string actor;
    std::string kind;
    json payload;
    std::uint64_t rng_position; // rng draws consumed when the event was recorded
};

class transcript {
public:
    void append(std::string actor, std::string kind, json payload, std::uint64_t rng_position) {
        if (quantum_phase_closed_ && kind == "quantum_sent")
            throw std::logic_error("quantum transfer recorded after verification; "
                                   "the message phase is classical only");
        if (kind == "verify_report") quantum_phase_closed_ = true;
        events_.push_back({next_seq_++, std::move(actor), std::move(kind), std::move(payload),
                           rng_position});
    }

    // After distribution (and verification, when it runs) no further quantum
    // transfer may appear; append() enforces this from here on.
    void close_quantum_phase() { quantum_phase_closed_ = true; }
    bool quantum_phase_closed() const { return quantum_phase_closed_; }

    const std::vector<transcript_event>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }

    std::string to_jsonl() const {
        std::string out;
        for (const transcript_event& e : events_) {
            json line{{"seq", e.seq},
                      {"actor", e.actor},
                      {"kind", e.kind},
                      {"payload", e.payload},
                      {"rng", e.rng_position}};
            out += line.dump();
            out += "\n";
        }
        return out;
    }

    void write_jsonl(std::ostream& os) const { os << to_jsonl(); }

private:
    std::vector<transcript_event> events_;
    std::uint64_t next_seq_ = 0;
    bool quantum_phase_closed_ = false;
};

} // namespace qsdc
