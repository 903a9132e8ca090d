#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdlbound/expfam.hpp"

namespace mdlbound {

/// A finite-alphabet symbol string together with its declared alphabet.
/// Symbols are single bytes.
class SymbolSequence {
public:
    /// Validates that every symbol belongs to `alphabet`; the alphabet is
    /// stored sorted and must have distinct, non-empty entries.
    SymbolSequence(std::string symbols, std::string alphabet);

    const std::string& symbols() const noexcept { return symbols_; }
    const std::string& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    double bits_per_symbol() const noexcept;

    /// Alphabet cells as one-symbol words, in sorted order.
    std::vector<std::string> alphabet_words() const;

    friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;

private:
    std::string symbols_;
    std::string alphabet_;
};

inline constexpr std::string_view kNucleotides = "ACGT";

/// True when every symbol of the alphabet is one of A, C, G, T.
bool is_nucleotide_alphabet(std::string_view alphabet);

/// Rule mapping a symbol sequence to a word sequence.
class ParsingModel {
public:
    enum class Kind { fixed, amino_acid, identity };

    static ParsingModel fixed(std::size_t word_length, std::size_t phase);
    static ParsingModel amino_acid(std::size_t phase);
    /// Symbol-by-symbol parsing, labeled "1".
    static ParsingModel identity();

    /// Parses one label: "fixed:K.P", "K.P", "1", "aa", "aa:P", "a.a.".
    /// Throws usage_error on anything else.
    static ParsingModel parse(std::string_view label);

    Kind kind() const noexcept { return kind_; }
    std::size_t word_length() const noexcept { return word_length_; }
    std::size_t phase() const noexcept { return phase_; }
    /// Number of source symbols consumed per word.
    std::size_t symbols_per_word() const noexcept;
    std::string label() const;

    std::vector<std::string> apply(const SymbolSequence& seq) const;

    friend bool operator==(const ParsingModel&, const ParsingModel&) = default;

private:
    ParsingModel(Kind kind, std::size_t word_length, std::size_t phase)
        : kind_(kind), word_length_(word_length), phase_(phase) {}

    Kind kind_;
    std::size_t word_length_;
    std::size_t phase_;
};

/// Non-overlapping words seq[p..p+k), seq[p+k..p+2k), ...; the trailing
/// partial word is dropped.
std::vector<std::string> parse_fixed(const SymbolSequence& seq, std::size_t k, std::size_t phase);

/// In-frame codons starting at `phase`, translated with the standard genetic
/// code; stop codons become "*".
std::vector<std::string> translate_codons(const SymbolSequence& seq, std::size_t phase);

/// Amino acid (or '*') for one codon over {A,C,G,T}.
char translate_codon(std::string_view codon);

WordCounts count_words(std::span<const std::string> words);

/// Builds a sequence from raw symbols. With a declared alphabet the
/// declaration wins (and every symbol is validated against it); otherwise the
/// alphabet is the sorted set of observed symbols.
SymbolSequence infer_alphabet(std::string_view raw,
                              const std::optional<std::string>& declared = std::nullopt);

}  // namespace mdlbound
