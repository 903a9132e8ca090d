#include "mdlbound/randomize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "mdlbound/errors.hpp"
#include "mdlbound/nml.hpp"

namespace mdlbound {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw data_error("empty range");
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t replicate) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(replicate + 0x632be59bd9b4e019ULL));
}

SymbolSequence simulate_iid(std::size_t n, const std::string& alphabet, const ProbVector& probs,
                            std::uint64_t seed) {
    if (alphabet.size() != probs.size())
        throw data_error("alphabet and probability vector have different lengths");
    std::vector<double> cumulative(probs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        cumulative[k] = acc;
    }
    // The last cell with positive mass absorbs rounding at the top.
    std::size_t last = probs.size() - 1;
    while (last > 0 && probs[last] == 0.0) --last;

    Rng rng(seed);
    std::string out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        std::size_t k = 0;
        while (k < last && (u >= cumulative[k] || probs[k] == 0.0)) ++k;
        out.push_back(alphabet[k]);
    }
    return SymbolSequence(std::move(out), alphabet);
}

SymbolSequence permute_sequence(const SymbolSequence& seq, std::uint64_t seed) {
    std::string s = seq.symbols();
    Rng rng(seed);
    for (std::size_t i = s.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(s[i - 1], s[j]);
    }
    return SymbolSequence(std::move(s), seq.alphabet());
}

const char* statistic_name(Statistic s) noexcept {
    switch (s) {
        case Statistic::rate_nml: return "rate_nml";
        case Statistic::rate_entropy: return "rate_entropy";
        case Statistic::rate_entropy_plus_dim: return "rate_entropy_plus_dim";
    }
    return "?";
}

double ModelRates::get(Statistic s) const noexcept {
    switch (s) {
        case Statistic::rate_nml: return rate_nml;
        case Statistic::rate_entropy: return rate_entropy;
        case Statistic::rate_entropy_plus_dim: return rate_entropy_plus_dim;
    }
    return 0.0;
}

std::vector<std::uint64_t> word_count_values(const SymbolSequence& seq, const ParsingModel& model) {
    const bool packable = model.kind() != ParsingModel::Kind::fixed || model.word_length() <= 8;
    if (!packable) {
        const auto words = model.apply(seq);
        return count_words(words).values();
    }

    std::vector<std::uint64_t> keys;
    if (model.kind() == ParsingModel::Kind::amino_acid) {
        for (const auto& w : model.apply(seq)) keys.push_back(static_cast<unsigned char>(w[0]));
    } else {
        const std::size_t k = model.symbols_per_word();
        const auto& s = seq.symbols();
        if (s.size() > model.phase()) {
            keys.reserve((s.size() - model.phase()) / k);
            for (std::size_t i = model.phase(); i + k <= s.size(); i += k) {
                std::uint64_t key = 0;
                for (std::size_t j = 0; j < k; ++j) key = (key << 8) | static_cast<unsigned char>(s[i + j]);
                keys.push_back(key);
            }
        }
    }
    std::sort(keys.begin(), keys.end());
    std::vector<std::uint64_t> counts;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        counts.push_back(j - i);
        i = j;
    }
    return counts;
}

double covered_raw_bits(const SymbolSequence& seq, const ParsingModel& model, std::uint64_t n_words,
                        std::optional<double> raw_bits_per_symbol) {
    const double per_symbol = raw_bits_per_symbol.value_or(seq.bits_per_symbol());
    return static_cast<double>(n_words) * static_cast<double>(model.symbols_per_word()) * per_symbol;
}

ModelRates model_rates(const SymbolSequence& seq, const ParsingModel& model,
                       std::optional<double> raw_bits_per_symbol) {
    const auto counts = word_count_values(seq, model);
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    if (n == 0) throw data_error("model " + model.label() + " produces no words");
    const double raw = covered_raw_bits(seq, model, n, raw_bits_per_symbol);
    const auto report = nml_codelength_multinomial(counts, raw);
    return ModelRates{
        .rate_nml = report.rate,
        .rate_entropy = report.entropy_term_bits / raw,
        .rate_entropy_plus_dim =
            (report.entropy_term_bits + bic_complexity_bits(report.dict_size_m, n)) / raw,
    };
}

double nearest_rank_quantile(std::span<const double> sorted, double level) {
    if (sorted.empty()) throw data_error("no values");
    if (!(level >= 0.0 && level <= 1.0)) throw data_error("quantile level outside [0, 1]");
    const auto rank = static_cast<std::size_t>(std::ceil(level * static_cast<double>(sorted.size())));
    return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

PermutationSummary permutation_study(const SymbolSequence& seq, std::span<const ParsingModel> models,
                                     const PermutationOptions& options) {
    if (options.replicates == 0) throw data_error("at least one replicate is required");
    const auto [lo, hi] = options.quantile_levels;
    if (!(lo >= 0.0 && lo <= hi && hi <= 1.0)) throw data_error("quantile levels must satisfy 0 <= lo <= hi <= 1");

    const std::size_t n_models = models.size();
    const std::size_t reps = options.replicates;
    // values[(r * n_models + model)]
    std::vector<ModelRates> values(reps * n_models);

    auto run_replicate = [&](std::size_t r) {
        const auto permuted = permute_sequence(seq, replicate_seed(options.seed, r));
        for (std::size_t j = 0; j < n_models; ++j)
            values[r * n_models + j] = model_rates(permuted, models[j], options.raw_bits_per_symbol);
    };

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                            : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
    if (threads <= 1) {
        for (std::size_t r = 0; r < reps; ++r) run_replicate(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back([&, t] {
                    try {
                        for (std::size_t r = next++; r < reps; r = next++) run_replicate(r);
                    } catch (...) {
                        errors[t] = std::current_exception();
                        next = reps;
                    }
                });
            }
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    PermutationSummary summary;
    summary.replicates = reps;
    summary.seed = options.seed;
    summary.quantile_levels = options.quantile_levels;
    for (const auto& m : models) summary.models.push_back(m.label());

    std::vector<double> column(reps);
    for (std::size_t j = 0; j < n_models; ++j) {
        const auto original = model_rates(seq, models[j], options.raw_bits_per_symbol);
        for (std::size_t s = 0; s < kStatisticCount; ++s) {
            const auto stat = static_cast<Statistic>(s);
            for (std::size_t r = 0; r < reps; ++r) column[r] = values[r * n_models + j].get(stat);

            double mean = 0.0;
            for (double v : column) mean += v;
            mean /= static_cast<double>(reps);
            double ss = 0.0;
            for (double v : column) ss += (v - mean) * (v - mean);

            std::vector<double> sorted = column;
            std::sort(sorted.begin(), sorted.end());
            if (sorted.front() == sorted.back()) {
                mean = sorted.front();
                ss = 0.0;
            }
            summary.cells[s].push_back(StatisticSummary{
                .original = original.get(stat),
                .mean = mean,
                .sd = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) : 0.0,
                .lower = nearest_rank_quantile(sorted, lo),
                .upper = nearest_rank_quantile(sorted, hi),
            });
        }
    }
    return summary;
}

}  // namespace mdlbound
