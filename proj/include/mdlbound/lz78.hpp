#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mdlbound/nml.hpp"
#include "mdlbound/parsing.hpp"

namespace mdlbound {

/// LZ78 incremental parse. Phrase i (1-based) extends dictionary entry
/// `prefix` (0 is the empty phrase) by `symbol`. Only the final phrase may
/// lack a symbol: it is trailing input that exactly matched an existing
/// phrase.
struct Lz78Parse {
    struct Phrase {
        std::size_t prefix = 0;
        std::optional<char> symbol;

        friend bool operator==(const Phrase&, const Phrase&) = default;
    };

    std::vector<Phrase> phrases;

    std::size_t phrase_count() const noexcept { return phrases.size(); }
    /// Phrases that carry an extension symbol.
    std::size_t complete_phrase_count() const noexcept;
};

enum class Lz78AddressModel {
    flat,         // every phrase pays log2 c with c the final phrase count
    incremental,  // phrase t pays log2 t
};

Lz78Parse lz78_parse(const SymbolSequence& seq);

/// Expands a parse back to the symbol string.
std::string lz78_reconstruct(const Lz78Parse& parse);

/// Address + symbol accounting. Address bits go in entropy_term_bits and
/// symbol bits in complexity_bits; the trailing phrase is charged a full
/// symbol.
CodeLengthReport lz78_codelength(const Lz78Parse& parse, double alphabet_bits, double raw_bits,
                                 Lz78AddressModel model = Lz78AddressModel::flat);

}  // namespace mdlbound
