#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mdlbound/ingest.hpp"
#include "mdlbound/nml.hpp"
#include "mdlbound/parsing.hpp"
#include "mdlbound/randomize.hpp"

namespace mdlbound {

enum class InputFormat { automatic, fasta, raw };

struct RunConfig {
    std::optional<std::string> input_path;
    std::optional<std::string> inline_data;
    InputFormat format = InputFormat::automatic;
    std::optional<std::string> record;  // FASTA identifier; first record when empty
    std::optional<std::string> alphabet;
    std::vector<std::string> models;
    std::optional<double> raw_bits_per_symbol;
    ReportFormat output = ReportFormat::tsv;
    std::uint64_t seed = 0;
    std::size_t replicates = 1000;
    std::pair<double, double> quantiles{0.01, 0.99};
    bool skip_ambiguous = false;
    unsigned threads = 0;
};

/// Reads the configured input. FASTA records over A/C/G/T get the full
/// nucleotide alphabet unless one is declared. Dropped ambiguity codes are
/// reported on `log`.
SymbolSequence load_sequence(const RunConfig& config, std::ostream* log = nullptr);

/// A parsing model or, when `parsing` is empty, the LZ78 baseline.
struct ModelSpec {
    std::optional<ParsingModel> parsing;

    bool is_lz78() const noexcept { return !parsing.has_value(); }
    std::string label() const { return parsing ? parsing->label() : "lz78"; }
};

/// Expands labels: "fixed:K" gives every phase of length K; "lz78" and
/// single models such as "fixed:3.1", "3.1", "1", "aa", "aa:2" pass through.
std::vector<ModelSpec> expand_models(std::span<const std::string> labels);

/// Model grid used when none is requested: identity, fixed:2..4 all phases,
/// and the amino-acid model in frame 0 for nucleotide data.
std::vector<std::string> default_models(const SymbolSequence& seq);

CodeLengthReport analyze_model(const SymbolSequence& seq, const ModelSpec& model,
                               std::optional<double> raw_bits_per_symbol = std::nullopt);

std::vector<CodeLengthReport> analyze(const SymbolSequence& seq, std::span<const ModelSpec> models,
                                      std::optional<double> raw_bits_per_symbol = std::nullopt);

struct ScanResult {
    std::vector<CodeLengthReport> table;
    std::size_t winner = 0;  // index into table

    const CodeLengthReport& best() const { return table.at(winner); }
};

/// Every fixed:k.p with k <= max_word_length (plus amino-acid frames when
/// asked and the data are nucleotides). The winner has the fewest total bits;
/// ties go to the smaller k, then the smaller p.
ScanResult scan(const SymbolSequence& seq, std::size_t max_word_length, bool include_amino_acid = false,
                std::optional<double> raw_bits_per_symbol = std::nullopt);

/// Rates of fixed:k.0 for k = 1..max_word_length.
std::vector<RateRow> rate_sweep(const SymbolSequence& seq, std::size_t max_word_length,
                                std::optional<double> raw_bits_per_symbol = std::nullopt);

struct ExactNmlResult {
    double exact_bits = 0.0;
    double asymptotic_bits = 0.0;
    double gap_bits() const noexcept { return exact_bits - asymptotic_bits; }
};

ExactNmlResult exact_nml(std::size_t m, std::uint64_t n);

std::vector<CodeLengthReport> cmd_analyze(const RunConfig& config, std::ostream* log = nullptr);
ScanResult cmd_scan(const RunConfig& config, std::size_t max_word_length, bool include_amino_acid,
                    std::ostream* log = nullptr);
PermutationSummary cmd_permute(const RunConfig& config, std::ostream* log = nullptr);

}  // namespace mdlbound
