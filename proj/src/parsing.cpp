#include "mdlbound/parsing.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "mdlbound/errors.hpp"

namespace mdlbound {

namespace {

// Standard genetic code (NCBI table 1), codons ordered T, C, A, G.
constexpr std::string_view kCodonTable =
    "FFLLSSSSYY**CC*WLLLLPPPPHHQQRRRRIIIMTTTTNNKKSSRRVVVVAAAADDEEGGGG";

int base_index(char c) {
    switch (c) {
        case 'T': return 0;
        case 'C': return 1;
        case 'A': return 2;
        case 'G': return 3;
        default: return -1;
    }
}

std::size_t parse_count(std::string_view text, std::string_view label) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw usage_error("unknown model label '" + std::string(label) + "'");
    return value;
}

}  // namespace

SymbolSequence::SymbolSequence(std::string symbols, std::string alphabet)
    : symbols_(std::move(symbols)), alphabet_(std::move(alphabet)) {
    if (alphabet_.empty()) throw data_error("alphabet must contain at least one symbol");
    std::sort(alphabet_.begin(), alphabet_.end());
    if (std::adjacent_find(alphabet_.begin(), alphabet_.end()) != alphabet_.end())
        throw data_error("alphabet symbols must be distinct");

    std::array<bool, 256> allowed{};
    for (unsigned char c : alphabet_) allowed[c] = true;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const auto c = static_cast<unsigned char>(symbols_[i]);
        if (!allowed[c]) {
            throw data_error("symbol '" + std::string(1, symbols_[i]) + "' at offset " +
                             std::to_string(i) + " is outside the alphabet");
        }
    }
}

double SymbolSequence::bits_per_symbol() const noexcept {
    return std::log2(static_cast<double>(alphabet_.size()));
}

std::vector<std::string> SymbolSequence::alphabet_words() const {
    std::vector<std::string> out;
    out.reserve(alphabet_.size());
    for (char c : alphabet_) out.emplace_back(1, c);
    return out;
}

bool is_nucleotide_alphabet(std::string_view alphabet) {
    return !alphabet.empty() && std::all_of(alphabet.begin(), alphabet.end(), [](char c) {
        return kNucleotides.find(c) != std::string_view::npos;
    });
}

ParsingModel ParsingModel::fixed(std::size_t word_length, std::size_t phase) {
    if (word_length == 0) throw usage_error("word length must be at least 1");
    if (phase >= word_length) throw usage_error("phase must be smaller than the word length");
    return {Kind::fixed, word_length, phase};
}

ParsingModel ParsingModel::amino_acid(std::size_t phase) {
    if (phase >= 3) throw usage_error("amino-acid phase must be 0, 1 or 2");
    return {Kind::amino_acid, 3, phase};
}

ParsingModel ParsingModel::identity() { return {Kind::identity, 1, 0}; }

ParsingModel ParsingModel::parse(std::string_view label) {
    if (label == "1" || label == "identity") return identity();
    if (label == "aa" || label == "a.a.") return amino_acid(0);
    if (label.starts_with("aa:")) return amino_acid(parse_count(label.substr(3), label));
    if (label.starts_with("a.a.")) return amino_acid(parse_count(label.substr(4), label));

    std::string_view body = label;
    if (body.starts_with("fixed:")) body.remove_prefix(6);
    const auto dot = body.find('.');
    if (dot == std::string_view::npos)
        throw usage_error("unknown model label '" + std::string(label) + "'");
    const auto k = parse_count(body.substr(0, dot), label);
    const auto p = parse_count(body.substr(dot + 1), label);
    if (k == 0 || p >= k) throw usage_error("invalid word length or phase in '" + std::string(label) + "'");
    return fixed(k, p);
}

std::size_t ParsingModel::symbols_per_word() const noexcept {
    return kind_ == Kind::identity ? 1 : word_length_;
}

std::string ParsingModel::label() const {
    switch (kind_) {
        case Kind::identity: return "1";
        case Kind::amino_acid: return phase_ == 0 ? "a.a." : "a.a." + std::to_string(phase_);
        case Kind::fixed: break;
    }
    return std::to_string(word_length_) + "." + std::to_string(phase_);
}

std::vector<std::string> ParsingModel::apply(const SymbolSequence& seq) const {
    switch (kind_) {
        case Kind::identity: return parse_fixed(seq, 1, 0);
        case Kind::amino_acid: return translate_codons(seq, phase_);
        case Kind::fixed: break;
    }
    return parse_fixed(seq, word_length_, phase_);
}

std::vector<std::string> parse_fixed(const SymbolSequence& seq, std::size_t k, std::size_t phase) {
    if (k == 0) throw usage_error("word length must be at least 1");
    if (phase >= k) throw usage_error("phase must be smaller than the word length");
    std::vector<std::string> words;
    const auto& s = seq.symbols();
    if (s.size() <= phase) return words;
    words.reserve((s.size() - phase) / k);
    for (std::size_t i = phase; i + k <= s.size(); i += k) words.emplace_back(s, i, k);
    return words;
}

char translate_codon(std::string_view codon) {
    if (codon.size() != 3) throw data_error("codon must have three bases");
    int index = 0;
    for (char c : codon) {
        const int b = base_index(c);
        if (b < 0) throw data_error("non-nucleotide symbol '" + std::string(1, c) + "' in codon");
        index = index * 4 + b;
    }
    return kCodonTable[static_cast<std::size_t>(index)];
}

std::vector<std::string> translate_codons(const SymbolSequence& seq, std::size_t phase) {
    if (phase >= 3) throw usage_error("amino-acid phase must be 0, 1 or 2");
    if (!is_nucleotide_alphabet(seq.alphabet()))
        throw data_error("amino-acid translation requires the nucleotide alphabet {A,C,G,T}");
    std::vector<std::string> out;
    const auto& s = seq.symbols();
    if (s.size() <= phase) return out;
    out.reserve((s.size() - phase) / 3);
    for (std::size_t i = phase; i + 3 <= s.size(); i += 3)
        out.emplace_back(1, translate_codon(std::string_view(s).substr(i, 3)));
    return out;
}

WordCounts count_words(std::span<const std::string> words) {
    WordCounts counts;
    for (const auto& w : words) counts.add(w);
    return counts;
}

SymbolSequence infer_alphabet(std::string_view raw, const std::optional<std::string>& declared) {
    if (raw.empty()) throw data_error("empty input");
    if (declared) return SymbolSequence(std::string(raw), *declared);
    std::array<bool, 256> seen{};
    for (unsigned char c : raw) seen[c] = true;
    std::string alphabet;
    for (std::size_t c = 0; c < seen.size(); ++c)
        if (seen[c]) alphabet.push_back(static_cast<char>(c));
    return SymbolSequence(std::string(raw), std::move(alphabet));
}

}  // namespace mdlbound
