#include "mdlbound/expfam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mdlbound/errors.hpp"

namespace mdlbound {

namespace {

constexpr double kSumTolerance = 1e-12;

}  // namespace

ProbVector::ProbVector(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw data_error("probability vector must have at least one cell");
    double sum = 0.0;
    for (double v : p_) {
        if (!(v >= 0.0 && v <= 1.0)) throw data_error("probability outside [0, 1]");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) throw data_error("probabilities do not sum to 1");
}

bool ProbVector::full_support() const noexcept {
    return std::all_of(p_.begin(), p_.end(), [](double v) { return v > 0.0; });
}

void WordCounts::add(std::string_view word, std::uint64_t count) {
    if (count == 0) return;
    auto it = cells_.find(word);
    if (it == cells_.end()) {
        cells_.emplace(std::string(word), count);
    } else {
        it->second += count;
    }
    n_ += count;
}

std::uint64_t WordCounts::count(std::string_view word) const {
    auto it = cells_.find(word);
    return it == cells_.end() ? 0 : it->second;
}

std::vector<std::uint64_t> WordCounts::values() const {
    std::vector<std::uint64_t> out;
    out.reserve(cells_.size());
    for (const auto& [word, c] : cells_) out.push_back(c);
    return out;
}

std::vector<std::string> WordCounts::words() const {
    std::vector<std::string> out;
    out.reserve(cells_.size());
    for (const auto& [word, c] : cells_) out.push_back(word);
    return out;
}

GaussianLocationFamily::GaussianLocationFamily(double lower, double upper)
    : lower_(lower), upper_(upper) {
    if (!(upper_ - lower_ > 0.0) || !std::isfinite(upper_ - lower_))
        throw data_error("degenerate parameter interval");
}

double GaussianLocationFamily::log_jeffreys_integral_bits() const { return std::log2(width()); }

double log2_gamma(double x) {
    if (!(x > 0.0)) throw data_error("log-gamma argument must be positive");
    return std::lgamma(x) / std::numbers::ln2;
}

ProbVector multinomial_mle(const WordCounts& counts) {
    if (counts.empty()) throw data_error("empty sequence");
    std::vector<double> p;
    p.reserve(counts.m());
    const double n = static_cast<double>(counts.n());
    for (const auto& [word, c] : counts.cells()) p.push_back(static_cast<double>(c) / n);
    // Renormalize so rounding never trips the sum check for large m.
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= sum;
    return ProbVector(std::move(p));
}

double entropy_term_bits(std::span<const std::uint64_t> counts) {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    if (n == 0) throw data_error("empty sequence");
    // n H = n log2 n - sum n_k log2 n_k
    const double nd = static_cast<double>(n);
    double acc = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        const double cd = static_cast<double>(c);
        acc += cd * std::log2(nd / cd);
    }
    return acc;
}

double empirical_entropy_bits(std::span<const std::uint64_t> counts) {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    if (n == 0) throw data_error("empty sequence");
    return entropy_term_bits(counts) / static_cast<double>(n);
}

double empirical_entropy_bits(const WordCounts& counts) {
    const auto v = counts.values();
    return empirical_entropy_bits(std::span<const std::uint64_t>(v));
}

double fisher_det_multinomial(const ProbVector& p) {
    double prod = 1.0;
    for (double v : p.values()) {
        if (v <= 0.0) throw data_error("boundary parameter: Fisher information is infinite");
        prod *= v;
    }
    return 1.0 / prod;
}

double jeffreys_log_integral_multinomial(std::size_t m) {
    if (m == 0) throw data_error("dictionary must have at least one cell");
    const double half_m = 0.5 * static_cast<double>(m);
    return half_m * std::log2(std::numbers::pi) - log2_gamma(half_m);
}

}  // namespace mdlbound
