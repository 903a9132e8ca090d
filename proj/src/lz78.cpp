#include "mdlbound/lz78.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "mdlbound/errors.hpp"

namespace mdlbound {

std::size_t Lz78Parse::complete_phrase_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(
        phrases.begin(), phrases.end(), [](const Phrase& p) { return p.symbol.has_value(); }));
}

Lz78Parse lz78_parse(const SymbolSequence& seq) {
    if (seq.empty()) throw data_error("empty sequence");

    // (node << 8 | symbol) -> child node
    std::unordered_map<std::uint64_t, std::size_t> trie;
    trie.reserve(seq.size());
    Lz78Parse parse;
    std::size_t node = 0;
    for (char ch : seq.symbols()) {
        const std::uint64_t key = (static_cast<std::uint64_t>(node) << 8) | static_cast<unsigned char>(ch);
        auto it = trie.find(key);
        if (it != trie.end()) {
            node = it->second;
            continue;
        }
        parse.phrases.push_back({node, ch});
        trie.emplace(key, parse.phrases.size());
        node = 0;
    }
    if (node != 0) parse.phrases.push_back({node, std::nullopt});
    return parse;
}

std::string lz78_reconstruct(const Lz78Parse& parse) {
    std::vector<std::string> dict{std::string()};
    dict.reserve(parse.phrases.size() + 1);
    std::string out;
    for (std::size_t i = 0; i < parse.phrases.size(); ++i) {
        const auto& p = parse.phrases[i];
        if (p.prefix >= dict.size()) throw data_error("phrase refers to an unknown prefix");
        std::string phrase = dict[p.prefix];
        if (p.symbol) {
            phrase.push_back(*p.symbol);
        } else if (i + 1 != parse.phrases.size()) {
            throw data_error("only the final phrase may lack a symbol");
        }
        out += phrase;
        dict.push_back(std::move(phrase));
    }
    return out;
}

CodeLengthReport lz78_codelength(const Lz78Parse& parse, double alphabet_bits, double raw_bits,
                                 Lz78AddressModel model) {
    const std::size_t c = parse.phrase_count();
    if (c == 0) throw data_error("empty parse");
    if (!(raw_bits > 0.0)) throw data_error("raw bits must be positive");

    const double cd = static_cast<double>(c);
    double address_bits = 0.0;
    if (model == Lz78AddressModel::flat) {
        address_bits = cd * std::log2(cd);
    } else {
        for (std::size_t t = 1; t <= c; ++t) address_bits += std::log2(static_cast<double>(t));
    }

    CodeLengthReport r;
    r.model_label = "lz78";
    r.n_words = c;
    r.dict_size_m = c;
    r.entropy_term_bits = address_bits;
    r.entropy_bits_per_word = address_bits / cd;
    r.complexity_bits = cd * alphabet_bits;
    r.total_bits = r.entropy_term_bits + r.complexity_bits;
    r.raw_bits = raw_bits;
    r.rate = r.total_bits / raw_bits;
    return r;
}

}  // namespace mdlbound
