#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mdlbound {

/// Probability vector over the cells of a dictionary.
///
/// Entries lie in [0, 1] and sum to one within 1e-12. Construction
/// validates; there is no way to hold an invalid vector.
class ProbVector {
public:
    explicit ProbVector(std::vector<double> p);

    std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t k) const { return p_[k]; }
    std::span<const double> values() const noexcept { return p_; }

    bool full_support() const noexcept;

private:
    std::vector<double> p_;
};

/// Observed words with their counts. Only words with positive count are
/// stored, so m() is the number of distinct observed words. Iteration is in
/// sorted word order, which fixes the cell order of everything derived.
class WordCounts {
public:
    using map_type = std::map<std::string, std::uint64_t, std::less<>>;

    WordCounts() = default;

    void add(std::string_view word, std::uint64_t count = 1);

    std::uint64_t n() const noexcept { return n_; }
    std::size_t m() const noexcept { return cells_.size(); }
    bool empty() const noexcept { return n_ == 0; }

    std::uint64_t count(std::string_view word) const;
    const map_type& cells() const noexcept { return cells_; }

    /// Counts in sorted-word order.
    std::vector<std::uint64_t> values() const;
    std::vector<std::string> words() const;

    friend bool operator==(const WordCounts&, const WordCounts&) = default;

private:
    map_type cells_;
    std::uint64_t n_ = 0;
};

/// Gaussian location family N(theta, 1) with theta restricted to [lower, upper].
/// Fisher information is identically 1, so the Jeffreys integral is the
/// interval width.
class GaussianLocationFamily {
public:
    GaussianLocationFamily(double lower, double upper);

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    double width() const noexcept { return upper_ - lower_; }

    double log_partition(double theta) const noexcept { return 0.5 * theta * theta; }
    double fisher_information(double) const noexcept { return 1.0; }
    /// log2 of the integral of sqrt(I(theta)) over the interval.
    double log_jeffreys_integral_bits() const;

private:
    double lower_;
    double upper_;
};

/// log2 Gamma(x) for x > 0.
double log2_gamma(double x);

/// p_k = n_k / n in sorted-word order.
ProbVector multinomial_mle(const WordCounts& counts);

/// Plug-in entropy H(p_hat) in bits per word, 0 log 0 = 0.
double empirical_entropy_bits(const WordCounts& counts);
double empirical_entropy_bits(std::span<const std::uint64_t> counts);

/// n * H(p_hat) in bits: the maximized negative log-likelihood of the words.
double entropy_term_bits(std::span<const std::uint64_t> counts);

/// Determinant of the multinomial Fisher information, 1 / prod p_k.
double fisher_det_multinomial(const ProbVector& p);

/// log2 of the integral of prod p_k^{-1/2} over the (m-1)-simplex,
/// (m/2) log2 pi - log2 Gamma(m/2).
double jeffreys_log_integral_multinomial(std::size_t m);

}  // namespace mdlbound
