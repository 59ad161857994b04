// qsdc_main.cpp
// Command line driver.
//
//   qsdc run     simulate a full protocol run (qsdc or qkd mode)
//   qsdc tables  dump swapping decompositions and decode tables
//   qsdc attack  estimate eavesdropper detection statistics
//
// Exit status: 0 success, 1 protocol abort or decode mismatch, 2 usage error.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qsdc/qsdc.hpp"

namespace {

std::uint64_t seed_from_env_or(std::uint64_t fallback) {
    if (const char* env = std::getenv("QSDC_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("QSDC_SEED is not an unsigned integer");
        }
    }
    return fallback;
}

qsdc::triple_source parse_triple_source(const std::string& text) {
    if (qsdc::lowercase(text) == "random") return qsdc::triple_source::random();
    return qsdc::triple_source::fixed(qsdc::parse_triple(text));
}

struct run_options {
    std::string mode = "qsdc";
    std::string message;
    int groups = 0;
    std::string scheme_id = "main";
    std::string triple = "phi+,phi+,phi+";
    std::string eve = "none";
    double eve_probability = 1.0;
    double verify_fraction = 0.25;
    double threshold = 0.0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string transcript_path = "transcript.jsonl";
};

int cmd_run(const run_options& opt) {
    const std::uint64_t seed = opt.seed_given ? opt.seed : seed_from_env_or(1);
    const qsdc::encoding_scheme scheme = qsdc::scheme_by_id(opt.scheme_id);
    const qsdc::triple_source source = parse_triple_source(opt.triple);
    const qsdc::eve_config eve{qsdc::parse_eve_strategy(opt.eve), opt.eve_probability};
    qsdc::counting_rng rng(seed);

    qsdc::run_result result;
    if (opt.mode == "qsdc") {
        if (opt.message.empty())
            throw std::invalid_argument("qsdc mode needs --message");
        const qsdc::message msg = qsdc::message::from_string(opt.message);
        result = qsdc::run_qsdc(msg, scheme, source, eve, opt.verify_fraction, opt.threshold, rng);
    } else if (opt.mode == "qkd") {
        if (opt.groups < 1)
            throw std::invalid_argument("qkd mode needs --groups >= 1");
        result = qsdc::run_qkd(opt.groups, scheme, qsdc::ghz_bit_code::standard(), source, eve,
                               opt.verify_fraction, opt.threshold, rng);
    } else {
        throw std::invalid_argument("mode must be qsdc or qkd");
    }

    std::ofstream out(opt.transcript_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write transcript to " + opt.transcript_path);
    result.tr.write_jsonl(out);
    out.close();

    std::printf("mode: %s\n", opt.mode.c_str());
    std::printf("scheme: %s\n", scheme.id().c_str());
    std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
    if (result.verification.pairs_tested > 0)
        std::printf("verification: pairs=%d mismatches=%d qber=%.6f %s\n",
                    result.verification.pairs_tested, result.verification.mismatches,
                    result.verification.qber,
                    result.verification.passed ? "passed" : "failed");
    else
        std::printf("verification: skipped\n");

    bool success = false;
    if (opt.mode == "qsdc") {
        const bool match = !result.aborted && result.decoded.bits == result.sent.bits;
        std::printf("sent:    %s\n", result.sent.to_string().c_str());
        std::printf("decoded: %s\n", result.decoded.to_string().c_str());
        std::printf("match: %s\n", match ? "yes" : "no");
        success = match;
    } else {
        const bool match = !result.aborted && result.alice_key == result.bob_key;
        std::printf("key bits per party: %zu\n", result.alice_key.size());
        std::printf("alice key: %s\n", qsdc::message{result.alice_key}.to_string().c_str());
        std::printf("bob key:   %s\n", qsdc::message{result.bob_key}.to_string().c_str());
        std::printf("keys match: %s\n", match ? "yes" : "no");
        success = match;
    }
    if (result.aborted)
        std::printf("aborted: %s\n", result.abort_reason.c_str());
    std::printf("transcript: %s (%zu events)\n", opt.transcript_path.c_str(), result.tr.size());
    return success ? 0 : 1;
}

struct tables_options {
    std::string triple;
    bool all = false;
    std::string scheme_id = "main";
    std::string output = "tables.txt";
};

int cmd_tables(const tables_options& opt) {
    if (opt.all ? !opt.triple.empty() : opt.triple.empty())
        throw std::invalid_argument("tables needs --triple <bell,bell,bell> or --all, not both");
    const qsdc::encoding_scheme scheme = qsdc::scheme_by_id(opt.scheme_id);

    std::string body;
    int blocks = 0;
    if (opt.all) {
        for (const qsdc::bell_triple& t : qsdc::all_triples()) {
            body += qsdc::serialize_tables(qsdc::decompose(t), qsdc::decode_table(t, scheme));
            ++blocks;
        }
    } else {
        const qsdc::bell_triple t = qsdc::parse_triple(opt.triple);
        body += qsdc::serialize_tables(qsdc::decompose(t), qsdc::decode_table(t, scheme));
        ++blocks;
    }

    std::ofstream out(opt.output, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write tables to " + opt.output);
    out << body;
    out.close();
    std::printf("wrote %d table block%s to %s\n", blocks, blocks == 1 ? "" : "s",
                opt.output.c_str());
    return 0;
}

struct attack_options {
    std::string strategy = "random";
    double probability = 1.0;
    int pairs = 10000;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

int cmd_attack(const attack_options& opt) {
    const std::uint64_t seed = opt.seed_given ? opt.seed : seed_from_env_or(1);
    const qsdc::eve_config eve{qsdc::parse_eve_strategy(opt.strategy), opt.probability};
    qsdc::counting_rng rng(seed);
    const qsdc::attack_report report =
        qsdc::run_attack(qsdc::bell_state::phi_plus, eve, opt.pairs, rng);

    const double sigma = std::sqrt(report.rate * (1.0 - report.rate) / report.pairs);
    std::printf("strategy: %s\n", opt.strategy.c_str());
    std::printf("probability: %g\n", opt.probability);
    std::printf("pairs: %d\n", report.pairs);
    std::printf("mismatches: %d\n", report.mismatches);
    std::printf("rate: %.6f\n", report.rate);
    std::printf("ci3sigma: [%.6f, %.6f]\n", report.rate - 3 * sigma, report.rate + 3 * sigma);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement-swapping QSDC/QKD simulator"};
    app.require_subcommand(1);

    run_options ro;
    CLI::App* run = app.add_subcommand("run", "simulate a protocol run");
    run->add_option("--mode", ro.mode, "qsdc or qkd")->required();
    run->add_option("--message", ro.message, "bit string to send (qsdc mode)");
    run->add_option("--groups", ro.groups, "key groups to run (qkd mode)");
    run->add_option("--scheme", ro.scheme_id, "encoding scheme id (default main)");
    run->add_option("--triple", ro.triple, "Bell triple, e.g. phi+,psi+,phi-, or 'random'");
    run->add_option("--eve", ro.eve, "eavesdropper strategy: none, z, x, random");
    run->add_option("--eve-probability", ro.eve_probability, "per-qubit intercept probability");
    run->add_option("--verify-fraction", ro.verify_fraction, "fraction of groups sacrificed");
    run->add_option("--threshold", ro.threshold, "maximum tolerated verification error rate");
    run->add_option("--seed", ro.seed, "rng seed (or env QSDC_SEED)")
        ->each([&ro](const std::string&) { ro.seed_given = true; });
    run->add_option("--transcript", ro.transcript_path, "transcript output path");

    tables_options to;
    CLI::App* tables = app.add_subcommand("tables", "dump decomposition and decode tables");
    tables->add_option("--triple", to.triple, "Bell triple to decompose");
    tables->add_flag("--all", to.all, "emit all 64 triples");
    tables->add_option("--scheme", to.scheme_id, "encoding scheme id for the decode table");
    tables->add_option("--output", to.output, "output file path");

    attack_options ao;
    CLI::App* attack = app.add_subcommand("attack", "eavesdropper detection statistics");
    attack->add_option("--strategy", ao.strategy, "none, z, x or random");
    attack->add_option("--probability", ao.probability, "per-qubit intercept probability");
    attack->add_option("--pairs", ao.pairs, "number of tested pairs");
    attack->add_option("--seed", ao.seed, "rng seed (or env QSDC_SEED)")
        ->each([&ao](const std::string&) { ao.seed_given = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(ro);
        if (tables->parsed()) return cmd_tables(to);
        if (attack->parsed()) return cmd_attack(ao);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
