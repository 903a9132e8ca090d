#include "mdlbound/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <string_view>

#include <fmt/format.h>
#include "json.hpp"

#include "mdlbound/errors.hpp"

namespace mdlbound {

namespace {

using nlohmann::json;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

void check_stream(const std::ostream& out) {
    if (!out) throw data_error("failed to write output");
}

json to_json(const CodeLengthReport& r) {
    return json{{"model", r.model_label},
                {"n_words", r.n_words},
                {"dict_size", r.dict_size_m},
                {"entropy_bits_per_word", r.entropy_bits_per_word},
                {"entropy_term_bits", r.entropy_term_bits},
                {"complexity_bits", r.complexity_bits},
                {"total_bits", r.total_bits},
                {"raw_bits", r.raw_bits},
                {"rate", r.rate}};
}

std::string quantile_name(const char* side, double level) {
    return fmt::format("{}_q{:g}", side, level);
}

}  // namespace

std::vector<FastaRecord> read_fasta(std::istream& in) {
    std::vector<FastaRecord> records;
    std::string line;
    std::size_t line_no = 0;
    auto finish = [&](std::size_t header_line) {
        if (!records.empty() && records.back().sequence.empty())
            throw data_error(fmt::format("FASTA record '{}' (line {}) has no sequence",
                                         records.back().identifier, header_line));
    };
    std::size_t header_line = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == ';') continue;
        if (text.front() == '>') {
            finish(header_line);
            header_line = line_no;
            const auto header = trim(text.substr(1));
            const auto split = std::find_if(header.begin(), header.end(), is_space);
            FastaRecord rec;
            rec.identifier.assign(header.begin(), split);
            rec.description = std::string(trim(std::string_view(split, header.end())));
            if (rec.identifier.empty())
                throw data_error(fmt::format("FASTA header without identifier at line {}", line_no));
            records.push_back(std::move(rec));
            continue;
        }
        if (records.empty())
            throw data_error(fmt::format("FASTA sequence data before any '>' header at line {}", line_no));
        for (char c : text)
            if (!is_space(c)) records.back().sequence.push_back(c);
    }
    finish(header_line);
    if (records.empty()) throw data_error("no FASTA records found");
    return records;
}

void write_fasta(std::ostream& out, std::span<const FastaRecord> records, std::size_t line_width) {
    if (line_width == 0) line_width = 70;
    for (const auto& r : records) {
        out << '>' << r.identifier;
        if (!r.description.empty()) out << ' ' << r.description;
        out << '\n';
        for (std::size_t i = 0; i < r.sequence.size(); i += line_width)
            out << std::string_view(r.sequence).substr(i, line_width) << '\n';
    }
    check_stream(out);
}

SymbolSequence read_raw(std::istream& in, const std::optional<std::string>& declared) {
    std::string symbols;
    char c;
    while (in.get(c))
        if (!is_space(c)) symbols.push_back(c);
    return infer_alphabet(symbols, declared);
}

void write_raw(std::ostream& out, const SymbolSequence& seq) {
    out << seq.symbols() << '\n';
    check_stream(out);
}

bool is_ambiguity_code(char c) noexcept {
    constexpr std::string_view codes = "NRYKMSWBDHVnrykmswbdhv";
    return codes.find(c) != std::string_view::npos;
}

std::size_t drop_ambiguity_codes(std::string& symbols) {
    const auto before = symbols.size();
    std::erase_if(symbols, is_ambiguity_code);
    return before - symbols.size();
}

void write_report(std::span<const CodeLengthReport> reports, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::json) {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        out << arr.dump(2) << '\n';
        check_stream(out);
        return;
    }
    for (std::size_t i = 0; i < std::size(kReportColumns); ++i)
        out << (i ? "\t" : "") << kReportColumns[i];
    out << '\n';
    for (const auto& r : reports) {
        out << fmt::format("{}\t{}\t{}\t{:.4f}\t{:.4f}\t{:.4f}\t{:.4f}\t{:.4f}\t{:.4f}\n", r.model_label,
                           r.n_words, r.dict_size_m, r.entropy_bits_per_word, r.entropy_term_bits,
                           r.complexity_bits, r.total_bits, r.raw_bits, r.rate);
    }
    check_stream(out);
}

void write_report(const PermutationSummary& summary, ReportFormat format, std::ostream& out) {
    const auto [lo, hi] = summary.quantile_levels;
    if (format == ReportFormat::json) {
        json stats = json::object();
        for (std::size_t s = 0; s < kStatisticCount; ++s) {
            json block = json::object();
            for (std::size_t j = 0; j < summary.models.size(); ++j) {
                const auto& c = summary.cells[s][j];
                block[summary.models[j]] = json{{"original", c.original}, {"mean", c.mean},
                                                {"sd", c.sd},             {"lower", c.lower},
                                                {"upper", c.upper}};
            }
            stats[statistic_name(static_cast<Statistic>(s))] = std::move(block);
        }
        json doc{{"replicates", summary.replicates},
                 {"seed", summary.seed},
                 {"quantile_levels", {lo, hi}},
                 {"models", summary.models},
                 {"statistics", std::move(stats)}};
        out << doc.dump(2) << '\n';
        check_stream(out);
        return;
    }

    out << "statistic\tsummary";
    for (const auto& m : summary.models) out << '\t' << m;
    out << '\n';
    const std::string lower = quantile_name("lower", lo);
    const std::string upper = quantile_name("upper", hi);
    for (std::size_t s = 0; s < kStatisticCount; ++s) {
        const char* name = statistic_name(static_cast<Statistic>(s));
        auto row = [&](std::string_view label, auto field, const char* spec) {
            out << name << '\t' << label;
            for (const auto& c : summary.cells[s]) out << '\t' << fmt::format(fmt::runtime(spec), field(c));
            out << '\n';
        };
        row("original", [](const StatisticSummary& c) { return c.original; }, "{:.4f}");
        row("mean", [](const StatisticSummary& c) { return c.mean; }, "{:.4f}");
        row("sd_x1e3", [](const StatisticSummary& c) { return c.sd * 1e3; }, "{:.2f}");
        row(lower, [](const StatisticSummary& c) { return c.lower; }, "{:.4f}");
        row(upper, [](const StatisticSummary& c) { return c.upper; }, "{:.4f}");
    }
    check_stream(out);
}

void write_report(std::span<const RateRow> rows, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::json) {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back(json{{"model", r.model_label},
                               {"n_words", r.n_words},
                               {"dict_size", r.dict_size},
                               {"rate_entropy", r.rates.rate_entropy},
                               {"rate_entropy_plus_dim", r.rates.rate_entropy_plus_dim},
                               {"rate_nml", r.rates.rate_nml}});
        }
        out << arr.dump(2) << '\n';
        check_stream(out);
        return;
    }
    out << "model\tn_words\tdict_size\trate_entropy\trate_entropy_plus_dim\trate_nml\n";
    for (const auto& r : rows) {
        out << fmt::format("{}\t{}\t{}\t{:.6f}\t{:.6f}\t{:.6f}\n", r.model_label, r.n_words, r.dict_size,
                           r.rates.rate_entropy, r.rates.rate_entropy_plus_dim, r.rates.rate_nml);
    }
    check_stream(out);
}

std::vector<CodeLengthReport> read_report_json(std::istream& in) {
    std::vector<CodeLengthReport> out;
    try {
        const json doc = json::parse(in);
        for (const auto& o : doc) {
            CodeLengthReport r;
            r.model_label = o.at("model").get<std::string>();
            r.n_words = o.at("n_words").get<std::uint64_t>();
            r.dict_size_m = o.at("dict_size").get<std::uint64_t>();
            r.entropy_bits_per_word = o.at("entropy_bits_per_word").get<double>();
            r.entropy_term_bits = o.at("entropy_term_bits").get<double>();
            r.complexity_bits = o.at("complexity_bits").get<double>();
            r.total_bits = o.at("total_bits").get<double>();
            r.raw_bits = o.at("raw_bits").get<double>();
            r.rate = o.at("rate").get<double>();
            out.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw data_error(std::string("malformed report JSON: ") + e.what());
    }
    return out;
}

}  // namespace mdlbound
