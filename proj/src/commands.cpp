#include "mdlbound/commands.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mdlbound/errors.hpp"
#include "mdlbound/lz78.hpp"

namespace mdlbound {

namespace {

std::string read_all(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool looks_like_fasta(std::string_view text) {
    const auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string_view::npos && text[pos] == '>';
}

std::string strip_ambiguity(std::string symbols, bool skip, std::ostream* log) {
    if (!skip) return symbols;
    const auto dropped = drop_ambiguity_codes(symbols);
    if (log && dropped > 0) *log << "dropped " << dropped << " ambiguity code(s)\n";
    return symbols;
}

}  // namespace

SymbolSequence load_sequence(const RunConfig& config, std::ostream* log) {
    if (config.input_path.has_value() == config.inline_data.has_value())
        throw usage_error("exactly one of --input and --data is required");

    std::string text;
    if (config.input_path) {
        std::ifstream in(*config.input_path, std::ios::binary);
        if (!in) throw data_error("cannot open input file '" + *config.input_path + "'");
        text = read_all(in);
    } else {
        text = *config.inline_data;
    }

    InputFormat format = config.format;
    if (format == InputFormat::automatic) format = looks_like_fasta(text) ? InputFormat::fasta : InputFormat::raw;

    std::istringstream in(text);
    if (format == InputFormat::raw) {
        std::string symbols;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) symbols.push_back(c);
        return infer_alphabet(strip_ambiguity(std::move(symbols), config.skip_ambiguous, log), config.alphabet);
    }

    const auto records = read_fasta(in);
    const FastaRecord* chosen = &records.front();
    if (config.record) {
        const auto it = std::find_if(records.begin(), records.end(),
                                     [&](const FastaRecord& r) { return r.identifier == *config.record; });
        if (it == records.end()) throw data_error("no FASTA record named '" + *config.record + "'");
        chosen = &*it;
    }
    std::string symbols = chosen->sequence;
    std::transform(symbols.begin(), symbols.end(), symbols.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    symbols = strip_ambiguity(std::move(symbols), config.skip_ambiguous, log);

    if (!config.alphabet) {
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (is_ambiguity_code(symbols[i]))
                throw data_error("ambiguity code '" + std::string(1, symbols[i]) + "' at offset " +
                                 std::to_string(i) + " (use --skip-ambiguous to drop them)");
        }
        const bool nucleotides = std::all_of(symbols.begin(), symbols.end(), [](char c) {
            return kNucleotides.find(c) != std::string_view::npos;
        });
        if (nucleotides && !symbols.empty()) return SymbolSequence(std::move(symbols), std::string(kNucleotides));
    }
    return infer_alphabet(symbols, config.alphabet);
}

std::vector<ModelSpec> expand_models(std::span<const std::string> labels) {
    std::vector<ModelSpec> out;
    for (const auto& label : labels) {
        if (label == "lz78") {
            out.push_back(ModelSpec{});
            continue;
        }
        if (label.starts_with("fixed:") && label.find('.') == std::string::npos) {
            std::size_t k = 0;
            const auto digits = std::string_view(label).substr(6);
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
            if (ec != std::errc{} || ptr != digits.data() + digits.size() || k == 0)
                throw usage_error("unknown model label '" + label + "'");
            for (std::size_t p = 0; p < k; ++p) out.push_back(ModelSpec{ParsingModel::fixed(k, p)});
            continue;
        }
        out.push_back(ModelSpec{ParsingModel::parse(label)});
    }
    if (out.empty()) throw usage_error("no models requested");
    return out;
}

std::vector<std::string> default_models(const SymbolSequence& seq) {
    std::vector<std::string> labels{"1", "fixed:2", "fixed:3", "fixed:4"};
    if (is_nucleotide_alphabet(seq.alphabet())) labels.emplace_back("aa");
    return labels;
}

CodeLengthReport analyze_model(const SymbolSequence& seq, const ModelSpec& model,
                               std::optional<double> raw_bits_per_symbol) {
    const double per_symbol = raw_bits_per_symbol.value_or(seq.bits_per_symbol());
    if (model.is_lz78()) {
        if (seq.empty()) throw data_error("cannot parse an empty sequence");
        return lz78_codelength(lz78_parse(seq), seq.bits_per_symbol(),
                               static_cast<double>(seq.size()) * per_symbol);
    }
    const auto& parsing = *model.parsing;
    if (parsing.kind() == ParsingModel::Kind::amino_acid && !is_nucleotide_alphabet(seq.alphabet()))
        throw data_error("the amino-acid model needs a nucleotide alphabet");
    const auto words = parsing.apply(seq);
    if (words.empty()) throw data_error("model " + parsing.label() + " produces no words");
    const double raw = covered_raw_bits(seq, parsing, words.size(), raw_bits_per_symbol);
    return nml_codelength_multinomial(count_words(words), raw, parsing.label());
}

std::vector<CodeLengthReport> analyze(const SymbolSequence& seq, std::span<const ModelSpec> models,
                                      std::optional<double> raw_bits_per_symbol) {
    std::vector<CodeLengthReport> out;
    out.reserve(models.size());
    for (const auto& m : models) out.push_back(analyze_model(seq, m, raw_bits_per_symbol));
    return out;
}

ScanResult scan(const SymbolSequence& seq, std::size_t max_word_length, bool include_amino_acid,
                std::optional<double> raw_bits_per_symbol) {
    if (max_word_length == 0) throw usage_error("maximum word length must be at least 1");
    std::vector<ModelSpec> models;
    for (std::size_t k = 1; k <= max_word_length; ++k)
        for (std::size_t p = 0; p < k; ++p)
            if (p + k <= seq.size()) models.push_back(ModelSpec{ParsingModel::fixed(k, p)});
    if (include_amino_acid && is_nucleotide_alphabet(seq.alphabet()))
        for (std::size_t p = 0; p < 3; ++p)
            if (p + 3 <= seq.size()) models.push_back(ModelSpec{ParsingModel::amino_acid(p)});
    if (models.empty()) throw data_error("sequence too short for any model");

    ScanResult result;
    result.table = analyze(seq, models, raw_bits_per_symbol);
    // Models are generated in (k, p) order, so the first minimum wins ties.
    for (std::size_t i = 1; i < result.table.size(); ++i)
        if (result.table[i].total_bits < result.table[result.winner].total_bits) result.winner = i;
    return result;
}

std::vector<RateRow> rate_sweep(const SymbolSequence& seq, std::size_t max_word_length,
                                std::optional<double> raw_bits_per_symbol) {
    std::vector<RateRow> rows;
    for (std::size_t k = 1; k <= max_word_length; ++k) {
        const auto model = ParsingModel::fixed(k, 0);
        const auto counts = word_count_values(seq, model);
        std::uint64_t n = 0;
        for (auto c : counts) n += c;
        if (n == 0) break;
        rows.push_back(RateRow{std::to_string(k), n, counts.size(), model_rates(seq, model, raw_bits_per_symbol)});
    }
    return rows;
}

ExactNmlResult exact_nml(std::size_t m, std::uint64_t n) {
    if (m == 0) throw usage_error("number of cells must be at least 1");
    return ExactNmlResult{shtarkov_lognormalizer_exact(m, n), n == 0 ? 0.0 : nml_complexity_multinomial(m, n)};
}

std::vector<CodeLengthReport> cmd_analyze(const RunConfig& config, std::ostream* log) {
    const auto seq = load_sequence(config, log);
    const auto labels = config.models.empty() ? default_models(seq) : config.models;
    const auto models = expand_models(labels);
    return analyze(seq, models, config.raw_bits_per_symbol);
}

ScanResult cmd_scan(const RunConfig& config, std::size_t max_word_length, bool include_amino_acid,
                    std::ostream* log) {
    return scan(load_sequence(config, log), max_word_length, include_amino_acid, config.raw_bits_per_symbol);
}

PermutationSummary cmd_permute(const RunConfig& config, std::ostream* log) {
    if (config.replicates == 0) throw usage_error("replicates must be at least 1");
    const auto seq = load_sequence(config, log);
    const std::vector<std::string> fallback{"fixed:1", "fixed:2", "fixed:3", "fixed:4"};
    std::vector<ParsingModel> models;
    for (const auto& spec : expand_models(config.models.empty() ? fallback : config.models)) {
        if (spec.is_lz78()) throw usage_error("lz78 is not available for permutation studies");
        models.push_back(*spec.parsing);
    }
    PermutationOptions options;
    options.replicates = config.replicates;
    options.quantile_levels = config.quantiles;
    options.seed = config.seed;
    options.raw_bits_per_symbol = config.raw_bits_per_symbol;
    options.threads = config.threads;
    return permutation_study(seq, models, options);
}

}  // namespace mdlbound
