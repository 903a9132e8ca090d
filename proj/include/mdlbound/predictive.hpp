#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mdlbound/expfam.hpp"

namespace mdlbound {

/// Dirichlet prior over the cells of an alphabet.
class DirichletPrior {
public:
    explicit DirichletPrior(std::vector<double> alpha);

    /// Jeffreys prior, Dirichlet(1/2, ..., 1/2).
    static DirichletPrior jeffreys(std::size_t m);

    std::size_t size() const noexcept { return alpha_.size(); }
    double operator[](std::size_t k) const { return alpha_[k]; }
    std::span<const double> alpha() const noexcept { return alpha_; }
    double total() const noexcept { return total_; }

    /// log2 of the density at p with respect to Lebesgue measure on the
    /// first m-1 coordinates.
    double log2_density(const ProbVector& p) const;

private:
    std::vector<double> alpha_;
    double total_ = 0.0;
};

/// Finite mixture of Dirichlet priors with weights summing to one.
class MixturePrior {
public:
    using component = std::pair<double, DirichletPrior>;

    explicit MixturePrior(std::vector<component> components);
    MixturePrior(DirichletPrior single);  // NOLINT: implicit single-component mixture

    const std::vector<component>& components() const noexcept { return components_; }
    std::size_t cells() const noexcept { return components_.front().second.size(); }

private:
    std::vector<component> components_;
};

/// Sequential Bayesian predictive code length in bits. Each word is coded
/// with the posterior predictive (count + alpha) / (seen + sum alpha) and
/// then added to the counts.
double sequential_predictive_codelength(std::span<const std::string> words,
                                        std::span<const std::string> alphabet,
                                        const DirichletPrior& prior);

/// -log2 of the Dirichlet-multinomial marginal probability of the specific
/// ordered sequence with these counts (no multinomial coefficient).
double mixture_codelength_closed_form(const WordCounts& counts,
                                      std::span<const std::string> alphabet,
                                      const MixturePrior& prior);

/// Plug-in predictive code length with additive smoothing epsilon > 0:
/// each word is coded with (count + eps) / (seen + m eps). eps = 1/2 gives
/// the Krichevsky-Trofimov coder.
double plugin_predictive_codelength(std::span<const std::string> words,
                                    std::span<const std::string> alphabet, double epsilon);

/// Asymptotic expansion of the mixture code length, in bits.
struct MixtureExpansion {
    double entropy_term_bits = 0.0;    // n H(theta_hat)
    double dim_term_bits = 0.0;        // (d/2) log2(n / 2pi)
    double fisher_prior_term_bits = 0.0;  // log2(|I(theta_hat)|^{1/2} / w(theta_hat))

    double total() const noexcept {
        return entropy_term_bits + dim_term_bits + fisher_prior_term_bits;
    }
};

/// Requires every alphabet cell to be observed (interior MLE).
MixtureExpansion mixture_expansion_terms(const WordCounts& counts,
                                         std::span<const std::string> alphabet,
                                         const DirichletPrior& prior);

/// Negative log2-likelihood of samples under N(theta, 1) (a description
/// length: densities, not probabilities).
double gaussian_neg_loglik_bits(std::span<const double> samples, double theta);

/// Mixture description length of samples under N(theta, 1) with theta drawn
/// from the uniform (Jeffreys) prior on the family's interval:
///   -log2 [ (1/(b-a)) * integral_a^b prod phi(x_i - theta) dtheta ].
double gaussian_location_mixture_bits(std::span<const double> samples,
                                      const GaussianLocationFamily& family);

}  // namespace mdlbound
