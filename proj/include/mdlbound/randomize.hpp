#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mdlbound/expfam.hpp"
#include "mdlbound/parsing.hpp"

namespace mdlbound {

/// Seeded generator with platform-independent output. The engine is
/// std::mt19937_64, whose sequence is fixed by the standard; bounded integers
/// use rejection sampling and doubles take the top 53 bits, so no
/// implementation-defined std distribution is involved.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of replicate r; depends only on (seed, r).
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t replicate) noexcept;

/// n i.i.d. draws over `alphabet` with probabilities aligned to its symbols.
SymbolSequence simulate_iid(std::size_t n, const std::string& alphabet, const ProbVector& probs,
                            std::uint64_t seed);

/// Uniform random permutation (Fisher-Yates) of the symbols.
SymbolSequence permute_sequence(const SymbolSequence& seq, std::uint64_t seed);

enum class Statistic : std::size_t {
    rate_nml = 0,               // NML total / raw
    rate_entropy = 1,           // n H(theta_hat) / raw
    rate_entropy_plus_dim = 2,  // (n H + (d/2) log2 n) / raw
};
inline constexpr std::size_t kStatisticCount = 3;

const char* statistic_name(Statistic s) noexcept;

struct ModelRates {
    double rate_nml = 0.0;
    double rate_entropy = 0.0;
    double rate_entropy_plus_dim = 0.0;

    double get(Statistic s) const noexcept;
};

/// Word-count multiset of a parse, in unspecified order. Faster than
/// count_words for the small fixed-length words used in permutation studies.
std::vector<std::uint64_t> word_count_values(const SymbolSequence& seq, const ParsingModel& model);

/// Raw bits charged to a model: symbols covered by its words times
/// bits-per-symbol (the sequence's own unless overridden).
double covered_raw_bits(const SymbolSequence& seq, const ParsingModel& model, std::uint64_t n_words,
                        std::optional<double> raw_bits_per_symbol = std::nullopt);

ModelRates model_rates(const SymbolSequence& seq, const ParsingModel& model,
                       std::optional<double> raw_bits_per_symbol = std::nullopt);

struct StatisticSummary {
    double original = 0.0;  // value on the unpermuted sequence
    double mean = 0.0;
    double sd = 0.0;        // sample SD; 0 for a single replicate
    double lower = 0.0;     // quantile at the lower level
    double upper = 0.0;     // quantile at the upper level
};

struct PermutationSummary {
    std::vector<std::string> models;
    // cells[statistic][model]
    std::array<std::vector<StatisticSummary>, kStatisticCount> cells;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
    std::pair<double, double> quantile_levels{0.01, 0.99};

    const StatisticSummary& at(Statistic s, std::size_t model) const {
        return cells[static_cast<std::size_t>(s)][model];
    }
};

/// Nearest-rank (type 1) quantile: the ceil(level * N)-th smallest value.
double nearest_rank_quantile(std::span<const double> sorted, double level);

struct PermutationOptions {
    std::size_t replicates = 1000;
    std::pair<double, double> quantile_levels{0.01, 0.99};
    std::uint64_t seed = 0;
    std::optional<double> raw_bits_per_symbol;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Permutes the sequence `replicates` times (replicate r uses
/// replicate_seed(seed, r)) and summarizes the three rate statistics under
/// every model. Output is bit-identical for any thread count.
PermutationSummary permutation_study(const SymbolSequence& seq, std::span<const ParsingModel> models,
                                     const PermutationOptions& options);

}  // namespace mdlbound
