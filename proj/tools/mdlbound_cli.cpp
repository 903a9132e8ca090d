#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mdlbound/commands.hpp"
#include "mdlbound/errors.hpp"
#include "mdlbound/ingest.hpp"

using namespace mdlbound;

namespace {

struct Options {
    std::string input;
    std::string data;
    std::string format = "auto";
    std::string record;
    std::string alphabet;
    std::vector<std::string> models;
    double raw_bits_per_symbol = 0.0;
    std::uint64_t seed = 0;
    std::size_t replicates = 1000;
    std::vector<double> quantiles;
    std::string output;
    bool json = false;
    bool skip_ambiguous = false;
    unsigned threads = 0;

    std::size_t max_word_length = 4;
    bool include_aa = false;

    std::size_t length = 3000;
    std::vector<double> probs;
    std::size_t analyze_up_to = 0;
    std::string sequence_out;

    std::size_t cells = 2;
    std::uint64_t n = 0;

    CLI::Option* raw_bits_opt = nullptr;
};

void add_input_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--input", o.input, "Sequence file (FASTA or raw text)");
    cmd->add_option("--data", o.data, "Inline raw sequence instead of a file");
    cmd->add_option("--format", o.format, "Input format")->check(CLI::IsMember({"auto", "fasta", "raw"}));
    cmd->add_option("--record", o.record, "FASTA record identifier (default: first)");
    cmd->add_option("--alphabet", o.alphabet, "Declared alphabet, e.g. ACGT");
    cmd->add_flag("--skip-ambiguous", o.skip_ambiguous, "Drop nucleotide ambiguity codes");
}

void add_output_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--output", o.output, "Write the report to this file");
    cmd->add_flag("--json", o.json, "JSON instead of TSV");
}

void add_raw_bits_option(CLI::App* cmd, Options& o) {
    o.raw_bits_opt = cmd->add_option("--raw-bits-per-symbol", o.raw_bits_per_symbol,
                                     "Raw cost per symbol (default log2 of the alphabet size)")
                         ->check(CLI::PositiveNumber);
}

RunConfig to_config(const Options& o) {
    RunConfig c;
    if (!o.input.empty()) c.input_path = o.input;
    if (!o.data.empty()) c.inline_data = o.data;
    c.format = o.format == "fasta" ? InputFormat::fasta : o.format == "raw" ? InputFormat::raw : InputFormat::automatic;
    if (!o.record.empty()) c.record = o.record;
    if (!o.alphabet.empty()) c.alphabet = o.alphabet;
    c.models = o.models;
    if (o.raw_bits_opt && o.raw_bits_opt->count() > 0) c.raw_bits_per_symbol = o.raw_bits_per_symbol;
    c.output = o.json ? ReportFormat::json : ReportFormat::tsv;
    c.seed = o.seed;
    c.replicates = o.replicates;
    if (!o.quantiles.empty()) {
        if (o.quantiles.size() != 2 || !(o.quantiles[0] >= 0 && o.quantiles[0] <= o.quantiles[1] && o.quantiles[1] <= 1))
            throw usage_error("--quantiles needs LO,HI with 0 <= LO <= HI <= 1");
        c.quantiles = {o.quantiles[0], o.quantiles[1]};
    }
    c.skip_ambiguous = o.skip_ambiguous;
    c.threads = o.threads;
    return c;
}

// Writes to --output when given, otherwise to stdout.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
    if (path.empty()) {
        write(std::cout);
        std::cout.flush();
        if (!std::cout) throw data_error("failed to write to standard output");
        return;
    }
    std::ofstream out(path);
    if (!out) throw data_error("cannot open output file '" + path + "'");
    write(out);
    out.close();
    if (!out) throw data_error("failed to write '" + path + "'");
}

ProbVector parse_probs(const std::vector<double>& probs, std::size_t cells) {
    if (probs.empty()) return ProbVector(std::vector<double>(cells, 1.0 / static_cast<double>(cells)));
    if (probs.size() != cells) throw usage_error("--probs needs one probability per alphabet symbol");
    try {
        return ProbVector(probs);
    } catch (const std::exception& e) {
        throw usage_error(std::string("invalid --probs: ") + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Description-length bounds for symbol sequences under parsing models"};
    app.require_subcommand(1);
    Options o;

    auto* analyze = app.add_subcommand("analyze", "Code lengths under a list of parsing models");
    add_input_options(analyze, o);
    add_output_options(analyze, o);
    add_raw_bits_option(analyze, o);
    analyze->add_option("--models", o.models, "Models: fixed:K, fixed:K.P, K.P, 1, aa, aa:P, lz78")
        ->delimiter(',');

    auto* scan = app.add_subcommand("scan", "Pick the fixed-length parsing with the shortest code");
    add_input_options(scan, o);
    add_output_options(scan, o);
    add_raw_bits_option(scan, o);
    scan->add_option("--max-word-length", o.max_word_length, "Largest word length")->check(CLI::PositiveNumber);
    scan->add_flag("--include-aa", o.include_aa, "Also consider amino-acid reading frames");

    auto* simulate = app.add_subcommand("simulate", "Draw an i.i.d. sequence");
    add_output_options(simulate, o);
    add_raw_bits_option(simulate, o);
    simulate->add_option("--length", o.length, "Number of symbols");
    simulate->add_option("--alphabet", o.alphabet, "Symbols (default 01)");
    simulate->add_option("--probs", o.probs, "Symbol probabilities (default uniform)")->delimiter(',');
    simulate->add_option("--seed", o.seed, "Random seed");
    simulate->add_option("--analyze", o.analyze_up_to, "Report rates for word lengths 1..K instead of the sequence");
    simulate->add_option("--sequence-out", o.sequence_out, "With --analyze, also save the sequence here");

    auto* permute = app.add_subcommand("permute", "Rate statistics over random permutations");
    add_input_options(permute, o);
    add_output_options(permute, o);
    add_raw_bits_option(permute, o);
    permute->add_option("--models", o.models, "Models (default fixed:1..fixed:4)")->delimiter(',');
    permute->add_option("--seed", o.seed, "Random seed");
    permute->add_option("--replicates", o.replicates, "Number of permutations")->check(CLI::PositiveNumber);
    permute->add_option("--quantiles", o.quantiles, "Quantile levels LO,HI")->delimiter(',');
    permute->add_option("--threads", o.threads, "Worker threads (0: all cores)");

    auto* exact = app.add_subcommand("exact-nml", "Exact and asymptotic NML complexity by enumeration");
    add_output_options(exact, o);
    exact->add_option("--cells", o.cells, "Alphabet size")->check(CLI::PositiveNumber);
    exact->add_option("--length", o.n, "Sequence length")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) {
            const auto reports = cmd_analyze(to_config(o), &std::cerr);
            emit(o.output, [&](std::ostream& out) { write_report(reports, to_config(o).output, out); });
        } else if (*scan) {
            const auto result = cmd_scan(to_config(o), o.max_word_length, o.include_aa, &std::cerr);
            emit(o.output, [&](std::ostream& out) { write_report(result.table, to_config(o).output, out); });
            std::cerr << "winner: " << result.best().model_label << '\n';
        } else if (*simulate) {
            const std::string alphabet = o.alphabet.empty() ? "01" : o.alphabet;
            const auto probs = parse_probs(o.probs, alphabet.size());
            const auto seq = simulate_iid(o.length, alphabet, probs, o.seed);
            const auto config = to_config(o);
            if (o.analyze_up_to > 0) {
                if (!o.sequence_out.empty()) emit(o.sequence_out, [&](std::ostream& out) { write_raw(out, seq); });
                const auto rows = rate_sweep(seq, o.analyze_up_to, config.raw_bits_per_symbol);
                emit(o.output, [&](std::ostream& out) { write_report(rows, config.output, out); });
            } else {
                emit(o.output, [&](std::ostream& out) { write_raw(out, seq); });
            }
        } else if (*permute) {
            const auto config = to_config(o);
            const auto summary = cmd_permute(config, &std::cerr);
            emit(o.output, [&](std::ostream& out) { write_report(summary, config.output, out); });
        } else if (*exact) {
            const auto r = exact_nml(o.cells, o.n);
            emit(o.output, [&](std::ostream& out) {
                if (o.json) {
                    out << "{\"cells\": " << o.cells << ", \"length\": " << o.n << std::setprecision(17)
                        << ", \"exact_bits\": " << r.exact_bits << ", \"asymptotic_bits\": " << r.asymptotic_bits
                        << ", \"gap_bits\": " << r.gap_bits() << "}\n";
                } else {
                    out << "cells\tlength\texact_bits\tasymptotic_bits\tgap_bits\n"
                        << o.cells << '\t' << o.n << std::fixed << std::setprecision(4) << '\t' << r.exact_bits
                        << '\t' << r.asymptotic_bits << '\t' << r.gap_bits() << '\n';
                }
            });
        }
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
