#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdlbound/nml.hpp"
#include "mdlbound/parsing.hpp"
#include "mdlbound/randomize.hpp"

namespace mdlbound {

struct FastaRecord {
    std::string identifier;
    std::string description;
    std::string sequence;

    friend bool operator==(const FastaRecord&, const FastaRecord&) = default;
};

/// Reads every record. Sequence lines are concatenated with whitespace
/// removed; ';' comment lines and blank lines are ignored.
std::vector<FastaRecord> read_fasta(std::istream& in);

void write_fasta(std::ostream& out, std::span<const FastaRecord> records, std::size_t line_width = 70);

/// Whitespace-stripped symbols, validated against `declared` when given.
SymbolSequence read_raw(std::istream& in, const std::optional<std::string>& declared = std::nullopt);

void write_raw(std::ostream& out, const SymbolSequence& seq);

/// True for IUPAC nucleotide ambiguity codes (N, R, Y, ...), either case.
bool is_ambiguity_code(char c) noexcept;

/// Removes ambiguity codes in place and returns how many were dropped.
std::size_t drop_ambiguity_codes(std::string& symbols);

/// One row of a word-length sweep over i.i.d. data.
struct RateRow {
    std::string model_label;
    std::uint64_t n_words = 0;
    std::uint64_t dict_size = 0;
    ModelRates rates;
};

enum class ReportFormat { tsv, json };

/// Column names of the TSV code-length table, in order.
inline constexpr const char* kReportColumns[] = {
    "model",     "n_words",         "dict_size",  "entropy_bits_per_word", "entropy_term_bits",
    "complexity_bits", "total_bits", "raw_bits", "rate"};

/// TSV: one row per report, numbers fixed to 4 decimals. JSON: array of
/// objects with the same fields at full double precision.
void write_report(std::span<const CodeLengthReport> reports, ReportFormat format, std::ostream& out);

/// Three statistic blocks (original, mean, sd, lower and upper quantile) by
/// model columns.
void write_report(const PermutationSummary& summary, ReportFormat format, std::ostream& out);

void write_report(std::span<const RateRow> rows, ReportFormat format, std::ostream& out);

/// Parses the JSON written by write_report for code-length tables.
std::vector<CodeLengthReport> read_report_json(std::istream& in);

}  // namespace mdlbound
