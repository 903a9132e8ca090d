#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "mdlbound/expfam.hpp"

namespace mdlbound {

/// Per-model code length breakdown, one row of a compression table.
struct CodeLengthReport {
    std::string model_label;
    std::uint64_t n_words = 0;
    std::uint64_t dict_size_m = 0;
    double entropy_bits_per_word = 0.0;
    double entropy_term_bits = 0.0;
    double complexity_bits = 0.0;
    double total_bits = 0.0;
    double raw_bits = 0.0;
    double rate = 0.0;
    // Set when the dictionary is large relative to the word count (m > n/5),
    // where the asymptotic complexity term is no longer trustworthy.
    bool small_sample_warning = false;

    friend bool operator==(const CodeLengthReport&, const CodeLengthReport&) = default;
};

struct RedundancyReport {
    ProbVector theta0;
    std::uint64_t n = 0;
    double nH_hat_bits = 0.0;
    double nloglik_theta0_bits = 0.0;
    double Cn_realized = 0.0;
    double R_nml_bits = 0.0;
};

/// Complexity ("rest") terms of the multinomial NML code length for a
/// dictionary of m observed words and n words in total, d = m - 1:
///   (d/2) log2 n - d/2 - log2 Gamma((d+1)/2) + (1/2) log2 pi
double nml_complexity_multinomial(std::size_t m, std::uint64_t n);

/// Two-part (BIC-style) complexity, (d/2) log2 n.
double bic_complexity_bits(std::size_t m, std::uint64_t n);

/// Multinomial NML code length of a word sequence given its counts.
CodeLengthReport nml_codelength_multinomial(const WordCounts& counts, double raw_bits,
                                            std::string model_label = {});

/// Fast path on bare counts; the label is left empty.
CodeLengthReport nml_codelength_multinomial(std::span<const std::uint64_t> counts,
                                            double raw_bits);

/// Generic asymptotic NML length for a d-dimensional exponential family:
/// entropy_term + (d/2) log2(n / 2pi) + log_jeffreys_integral.
double nml_codelength_asymptotic(std::size_t d, std::uint64_t n, double entropy_term_bits,
                                 double log_jeffreys_integral_bits);

/// Upper bound on the number of count compositions the exact oracle will
/// enumerate.
inline constexpr double kExactOracleCompositionLimit = 1e8;

/// Number of count vectors (n_1..n_m) summing to n, C(n+m-1, m-1), as a double.
double composition_count(std::size_t m, std::uint64_t n);

/// Exact Shtarkov log-normalizer in bits,
///   log2 sum_{n_1+..+n_m=n} multinomial(n; n_1..n_m) prod (n_k/n)^{n_k},
/// enumerated over count compositions with a streaming log-sum-exp.
/// Throws data_error when the composition count exceeds the oracle limit.
double shtarkov_lognormalizer_exact(std::size_t m, std::uint64_t n);

/// NML regret of the Gaussian location family restricted to an interval,
/// (1/2) log2(n / 2pi) + log2(b - a). Exact for this family, not asymptotic:
/// the maximized likelihood integrates to sqrt(n / 2pi) per unit of MLE range.
double gaussian_location_regret(std::uint64_t n, const GaussianLocationFamily& family);

/// Redundancy diagnostics against a hypothetical source theta0. The vector
/// theta0 is aligned with `cells`; every observed word must be a cell with
/// positive probability.
RedundancyReport redundancy_report(const WordCounts& counts, std::span<const std::string> cells,
                                   const ProbVector& theta0);

}  // namespace mdlbound
