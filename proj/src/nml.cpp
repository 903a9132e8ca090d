#include "mdlbound/nml.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "mdlbound/errors.hpp"

namespace mdlbound {

namespace {

constexpr double kSmallSampleRatio = 5.0;

// Running log-sum-exp in natural log; deterministic for a fixed push order.
class LogSumExp {
public:
    void push(double x) {
        if (x == -std::numeric_limits<double>::infinity()) return;
        if (x <= max_) {
            sum_ += std::exp(x - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - x) + 1.0;
            max_ = x;
        }
    }
    double value() const { return max_ + std::log(sum_); }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

// Adds the contribution of every composition of `remaining` into cells
// [cell, m) on top of `partial`. The last cell takes whatever is left.
void enumerate_compositions(std::size_t cell, std::size_t m, std::uint64_t remaining,
                            double partial, const std::vector<double>& per_cell,
                            LogSumExp& acc) {
    if (cell + 1 == m) {
        acc.push(partial + per_cell[remaining]);
        return;
    }
    for (std::uint64_t c = 0; c <= remaining; ++c) {
        enumerate_compositions(cell + 1, m, remaining - c, partial + per_cell[c], per_cell, acc);
    }
}

CodeLengthReport build_report(std::span<const std::uint64_t> counts, double raw_bits) {
    if (!(raw_bits >= 0.0)) throw data_error("raw bits must be non-negative");
    std::uint64_t n = 0;
    std::size_t m = 0;
    for (auto c : counts) {
        n += c;
        if (c > 0) ++m;
    }
    if (n == 0) throw data_error("empty sequence");

    CodeLengthReport r;
    r.n_words = n;
    r.dict_size_m = m;
    r.entropy_term_bits = entropy_term_bits(counts);
    r.entropy_bits_per_word = r.entropy_term_bits / static_cast<double>(n);
    r.complexity_bits = nml_complexity_multinomial(m, n);
    r.total_bits = r.entropy_term_bits + r.complexity_bits;
    r.raw_bits = raw_bits;
    if (raw_bits > 0.0) {
        r.rate = r.total_bits / raw_bits;
    } else if (r.total_bits == 0.0) {
        r.rate = 0.0;  // a one-symbol alphabet: nothing to code either way
    } else {
        throw data_error("raw bits must be positive");
    }
    r.small_sample_warning = static_cast<double>(m) > static_cast<double>(n) / kSmallSampleRatio;
    return r;
}

}  // namespace

double nml_complexity_multinomial(std::size_t m, std::uint64_t n) {
    if (m == 0 || n == 0) throw data_error("empty sequence");
    if (m == 1) return 0.0;
    const double d = static_cast<double>(m - 1);
    return 0.5 * d * std::log2(static_cast<double>(n)) - 0.5 * d - log2_gamma(0.5 * (d + 1.0)) +
           0.5 * std::log2(std::numbers::pi);
}

double bic_complexity_bits(std::size_t m, std::uint64_t n) {
    if (m == 0 || n == 0) throw data_error("empty sequence");
    return 0.5 * static_cast<double>(m - 1) * std::log2(static_cast<double>(n));
}

CodeLengthReport nml_codelength_multinomial(const WordCounts& counts, double raw_bits,
                                            std::string model_label) {
    const auto values = counts.values();
    auto r = build_report(values, raw_bits);
    r.model_label = std::move(model_label);
    return r;
}

CodeLengthReport nml_codelength_multinomial(std::span<const std::uint64_t> counts,
                                            double raw_bits) {
    return build_report(counts, raw_bits);
}

double nml_codelength_asymptotic(std::size_t d, std::uint64_t n, double entropy_term_bits,
                                 double log_jeffreys_integral_bits) {
    if (n == 0) throw data_error("empty sequence");
    return entropy_term_bits +
           0.5 * static_cast<double>(d) *
               std::log2(static_cast<double>(n) / (2.0 * std::numbers::pi)) +
           log_jeffreys_integral_bits;
}

double composition_count(std::size_t m, std::uint64_t n) {
    if (m == 0) return 0.0;
    const double k = static_cast<double>(m - 1);
    const double nn = static_cast<double>(n);
    return std::exp(std::lgamma(nn + k + 1.0) - std::lgamma(k + 1.0) - std::lgamma(nn + 1.0));
}

double shtarkov_lognormalizer_exact(std::size_t m, std::uint64_t n) {
    if (m == 0) throw data_error("dictionary must have at least one cell");
    // Rounding in the exp/lgamma estimate cannot move a count across 1e8 by
    // more than a fraction of a composition.
    if (composition_count(m, n) > kExactOracleCompositionLimit * (1.0 + 1e-9))
        throw data_error("instance too large for exact oracle");
    if (n == 0) return 0.0;

    // Per-cell part of log[multinomial coefficient * prod (c/n)^c]:
    // -log c! + c log(c/n), with 0^0 = 1.
    const double nn = static_cast<double>(n);
    std::vector<double> per_cell(n + 1);
    for (std::uint64_t c = 0; c <= n; ++c) {
        const double cd = static_cast<double>(c);
        per_cell[c] = -std::lgamma(cd + 1.0) + (c == 0 ? 0.0 : cd * std::log(cd / nn));
    }
    LogSumExp acc;
    enumerate_compositions(0, m, n, std::lgamma(nn + 1.0), per_cell, acc);
    return acc.value() / std::numbers::ln2;
}

double gaussian_location_regret(std::uint64_t n, const GaussianLocationFamily& family) {
    if (n == 0) throw data_error("empty sequence");
    return 0.5 * std::log2(static_cast<double>(n) / (2.0 * std::numbers::pi)) +
           family.log_jeffreys_integral_bits();
}

RedundancyReport redundancy_report(const WordCounts& counts, std::span<const std::string> cells,
                                   const ProbVector& theta0) {
    if (cells.size() != theta0.size())
        throw data_error("theta0 and cell list have different lengths");
    if (counts.n() < 3) throw data_error("redundancy diagnostics need at least 3 words");

    double nloglik = 0.0;
    for (const auto& [word, c] : counts.cells()) {
        std::size_t k = 0;
        while (k < cells.size() && cells[k] != word) ++k;
        if (k == cells.size() || theta0[k] <= 0.0)
            throw data_error("theta0 has no support for observed word '" + word + "'");
        nloglik -= static_cast<double>(c) * std::log2(theta0[k]);
    }

    double h0 = 0.0;
    for (double p : theta0.values())
        if (p > 0.0) h0 -= p * std::log2(p);

    const auto values = counts.values();
    const double nH_hat = entropy_term_bits(values);
    const double nd = static_cast<double>(counts.n());
    const double total = nH_hat + nml_complexity_multinomial(counts.m(), counts.n());

    return RedundancyReport{
        .theta0 = theta0,
        .n = counts.n(),
        .nH_hat_bits = nH_hat,
        .nloglik_theta0_bits = nloglik,
        .Cn_realized = (nloglik - nH_hat) / std::log2(std::log2(nd)),
        .R_nml_bits = total - nd * h0,
    };
}

}  // namespace mdlbound
