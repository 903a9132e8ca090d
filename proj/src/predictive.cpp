#include "mdlbound/predictive.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string_view>
#include <unordered_map>

#include "mdlbound/errors.hpp"

namespace mdlbound {

namespace {

using CellIndex = std::unordered_map<std::string_view, std::size_t>;

CellIndex index_alphabet(std::span<const std::string> alphabet) {
    if (alphabet.empty()) throw data_error("alphabet must have at least one cell");
    CellIndex index;
    index.reserve(alphabet.size());
    for (std::size_t k = 0; k < alphabet.size(); ++k) {
        if (!index.emplace(alphabet[k], k).second)
            throw data_error("duplicate alphabet cell '" + alphabet[k] + "'");
    }
    return index;
}

std::size_t lookup(const CellIndex& index, std::string_view word) {
    auto it = index.find(word);
    if (it == index.end()) throw data_error("word '" + std::string(word) + "' is not in the alphabet");
    return it->second;
}

std::vector<std::uint64_t> aligned_counts(const WordCounts& counts,
                                          std::span<const std::string> alphabet) {
    const auto index = index_alphabet(alphabet);
    std::vector<std::uint64_t> out(alphabet.size(), 0);
    for (const auto& [word, c] : counts.cells()) out[lookup(index, word)] = c;
    return out;
}

// Natural-log Dirichlet-multinomial marginal of an ordered sequence.
double log_marginal(std::span<const std::uint64_t> counts, const DirichletPrior& prior) {
    double n = 0.0;
    double acc = std::lgamma(prior.total());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        const double c = static_cast<double>(counts[k]);
        n += c;
        if (counts[k] > 0) acc += std::lgamma(c + prior[k]) - std::lgamma(prior[k]);
    }
    return acc - std::lgamma(n + prior.total());
}

// Phi(upper) - Phi(lower) without cancellation in either tail.
double normal_mass(double lower, double upper) {
    const double s = std::numbers::sqrt2;
    if (lower >= 0.0) return 0.5 * (std::erfc(lower / s) - std::erfc(upper / s));
    if (upper <= 0.0) return 0.5 * (std::erfc(-upper / s) - std::erfc(-lower / s));
    return 1.0 - 0.5 * std::erfc(upper / s) - 0.5 * std::erfc(-lower / s);
}

}  // namespace

DirichletPrior::DirichletPrior(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.empty()) throw data_error("Dirichlet prior needs at least one cell");
    for (double a : alpha_) {
        if (!(a > 0.0) || !std::isfinite(a)) throw data_error("Dirichlet concentration must be positive");
        total_ += a;
    }
}

DirichletPrior DirichletPrior::jeffreys(std::size_t m) {
    return DirichletPrior(std::vector<double>(m, 0.5));
}

double DirichletPrior::log2_density(const ProbVector& p) const {
    if (p.size() != alpha_.size()) throw data_error("prior and parameter sizes differ");
    double acc = std::lgamma(total_);
    for (std::size_t k = 0; k < alpha_.size(); ++k) {
        if (p[k] <= 0.0) throw data_error("boundary parameter: density undefined");
        acc += (alpha_[k] - 1.0) * std::log(p[k]) - std::lgamma(alpha_[k]);
    }
    return acc / std::numbers::ln2;
}

MixturePrior::MixturePrior(std::vector<component> components) : components_(std::move(components)) {
    if (components_.empty()) throw data_error("mixture prior needs at least one component");
    double sum = 0.0;
    for (const auto& [w, prior] : components_) {
        if (!(w > 0.0)) throw data_error("mixture weights must be positive");
        if (prior.size() != components_.front().second.size())
            throw data_error("mixture components disagree on cell count");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw data_error("mixture weights do not sum to 1");
}

MixturePrior::MixturePrior(DirichletPrior single) {
    components_.emplace_back(1.0, std::move(single));
}

double sequential_predictive_codelength(std::span<const std::string> words,
                                        std::span<const std::string> alphabet,
                                        const DirichletPrior& prior) {
    if (prior.size() != alphabet.size()) throw data_error("prior size differs from alphabet size");
    const auto index = index_alphabet(alphabet);
    std::vector<double> counts(alphabet.size(), 0.0);
    double seen = 0.0;
    double bits = 0.0;
    for (const auto& w : words) {
        const std::size_t k = lookup(index, w);
        bits -= std::log2((counts[k] + prior[k]) / (seen + prior.total()));
        counts[k] += 1.0;
        seen += 1.0;
    }
    return bits;
}

double mixture_codelength_closed_form(const WordCounts& counts,
                                      std::span<const std::string> alphabet,
                                      const MixturePrior& prior) {
    if (prior.cells() != alphabet.size()) throw data_error("prior size differs from alphabet size");
    const auto aligned = aligned_counts(counts, alphabet);

    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    terms.reserve(prior.components().size());
    for (const auto& [w, dirichlet] : prior.components()) {
        terms.push_back(std::log(w) + log_marginal(aligned, dirichlet));
        max_term = std::max(max_term, terms.back());
    }
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - max_term);
    return -(max_term + std::log(sum)) / std::numbers::ln2;
}

double plugin_predictive_codelength(std::span<const std::string> words,
                                    std::span<const std::string> alphabet, double epsilon) {
    if (!(epsilon > 0.0)) throw data_error("smoothing epsilon must be positive");
    const auto index = index_alphabet(alphabet);
    const double m = static_cast<double>(alphabet.size());
    std::vector<double> counts(alphabet.size(), 0.0);
    double seen = 0.0;
    double bits = 0.0;
    for (const auto& w : words) {
        const std::size_t k = lookup(index, w);
        bits -= std::log2((counts[k] + epsilon) / (seen + m * epsilon));
        counts[k] += 1.0;
        seen += 1.0;
    }
    return bits;
}

MixtureExpansion mixture_expansion_terms(const WordCounts& counts,
                                         std::span<const std::string> alphabet,
                                         const DirichletPrior& prior) {
    if (prior.size() != alphabet.size()) throw data_error("prior size differs from alphabet size");
    const auto aligned = aligned_counts(counts, alphabet);
    if (counts.empty()) throw data_error("empty sequence");
    for (auto c : aligned)
        if (c == 0) throw data_error("boundary MLE: expansion requires every cell observed");

    const double n = static_cast<double>(counts.n());
    std::vector<double> p;
    p.reserve(aligned.size());
    for (auto c : aligned) p.push_back(static_cast<double>(c) / n);
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= sum;
    const ProbVector theta_hat(std::move(p));

    MixtureExpansion e;
    e.entropy_term_bits = entropy_term_bits(aligned);
    e.dim_term_bits = 0.5 * static_cast<double>(aligned.size() - 1) *
                      std::log2(n / (2.0 * std::numbers::pi));
    e.fisher_prior_term_bits =
        0.5 * std::log2(fisher_det_multinomial(theta_hat)) - prior.log2_density(theta_hat);
    return e;
}

double gaussian_neg_loglik_bits(std::span<const double> samples, double theta) {
    double ss = 0.0;
    for (double x : samples) ss += (x - theta) * (x - theta);
    const double n = static_cast<double>(samples.size());
    return (0.5 * n * std::log(2.0 * std::numbers::pi) + 0.5 * ss) / std::numbers::ln2;
}

double gaussian_location_mixture_bits(std::span<const double> samples,
                                      const GaussianLocationFamily& family) {
    if (samples.empty()) throw data_error("empty sequence");
    const double n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    const double root_n = std::sqrt(n);
    const double mass = normal_mass(root_n * (family.lower() - mean), root_n * (family.upper() - mean));
    if (!(mass > 0.0)) throw data_error("sample mean too far outside the parameter interval");
    // integral_a^b prod phi(x_i - theta) = p(x; mean) sqrt(2pi/n) mass
    return gaussian_neg_loglik_bits(samples, mean) +
           0.5 * std::log2(n / (2.0 * std::numbers::pi)) + std::log2(family.width()) -
           std::log2(mass);
}

}  // namespace mdlbound
