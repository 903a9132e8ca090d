// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any selected criterion fails. `--only N` runs one criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mdlbound/commands.hpp"
#include "mdlbound/lz78.hpp"
#include "mdlbound/nml.hpp"
#include "mdlbound/predictive.hpp"
#include "mdlbound/randomize.hpp"
#include "support.hpp"

using namespace mdlbound;
using testing::near;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[" << what << "] ";
        }
    }
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

struct B0059Row {
    const char* model;
    std::uint64_t n, m;
    double entropy, first, rest, total, rate;
};

constexpr B0059Row kB0059Rows[] = {
    {"1", 2907, 4, 1.9924, 5792.00, 16.58, 5808.58, 0.9991},
    {"2.0", 1453, 16, 3.9570, 5749.49, 59.81, 5809.31, 0.9995},
    {"2.1", 1453, 16, 3.9425, 5728.44, 59.81, 5788.25, 0.9959},
    {"3.0", 969, 58, 5.2842, 5120.39, 157.11, 5277.51, 0.9077},
    {"3.1", 968, 63, 5.5905, 5411.63, 167.13, 5578.76, 0.9605},
    {"3.2", 968, 64, 5.6706, 5489.10, 169.11, 5658.21, 0.9742},
    {"4.0", 726, 218, 7.4507, 5409.24, 345.07, 5754.31, 0.9908},
    {"4.1", 726, 217, 7.4337, 5396.87, 344.20, 5741.07, 0.9885},
    {"4.2", 726, 219, 7.4814, 5431.49, 345.940, 5777.43, 0.9947},
    {"4.3", 726, 221, 7.4678, 5421.64, 347.67, 5769.31, 0.9933},
    {"a.a.", 969, 21, 4.1056, 3978.31, 69.92, 4048.22, 0.6963},
};

Outcome b0059_code_lengths() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig config;
    config.input_path = testing::fixture("b0059.fasta");
    config.models = {"1", "2.0", "2.1", "3.0", "3.1", "3.2", "4.0", "4.1", "4.2", "4.3", "a.a."};
    const auto reports = cmd_analyze(config);
    const double elapsed = seconds_since(t0);
    o.require(reports.size() == std::size(kB0059Rows), "row count");
    double worst_bits = 0.0, worst_rate = 0.0;
    for (std::size_t i = 0; i < std::min(reports.size(), std::size(kB0059Rows)); ++i) {
        const auto& r = reports[i];
        const auto& want = kB0059Rows[i];
        o.require(r.model_label == want.model, "label " + r.model_label);
        o.require(r.n_words == want.n && r.dict_size_m == want.m, std::string("n/m of ") + want.model);
        for (auto [got, exp] : {std::pair{r.entropy_bits_per_word, want.entropy}, {r.entropy_term_bits, want.first},
                                {r.complexity_bits, want.rest}, {r.total_bits, want.total}})
            worst_bits = std::max(worst_bits, std::abs(got - exp));
        worst_rate = std::max(worst_rate, std::abs(r.rate - want.rate));
    }
    o.require(worst_bits <= 0.02, "bits tolerance");
    o.require(worst_rate <= 0.0002, "rate tolerance");
    o.require(elapsed < 1.0, "runtime");
    o.detail << "max |bits diff| " << fmt(worst_bits) << " (tol 0.02), max |rate diff| " << fmt(worst_rate, 5)
             << " (tol 0.0002), " << fmt(elapsed, 3) << " s";
    return o;
}

Outcome codon_rediscovery() {
    Outcome o;
    for (const char* gene : {"b0059.fasta", "b0060.fasta"}) {
        const auto result = scan(testing::load_fixture(gene), 4);
        o.require(result.best().model_label == "3.0", std::string(gene) + " winner");
        o.detail << gene << " winner " << result.best().model_label << " rate " << fmt(result.best().rate) << "; ";
        if (std::string(gene) == "b0060.fasta") o.require(near(result.best().rate, 0.958, 0.001), "b0060 rate");
    }
    o.detail << "expected 3.0 and b0060 rate 0.958 +/- 0.001";
    return o;
}

Outcome bernoulli_rates() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    constexpr int kSeeds = 200;
    constexpr std::size_t kMaxWord = 9;
    const double published[] = {1.0020, 1.0036, 1.0088, 1.0130};

    std::vector<double> mean_nml(kMaxWord + 1, 0.0);
    std::vector<int> above_one(kMaxWord + 1, 0);
    double mean_entropy8 = 0.0;
    for (int s = 0; s < kSeeds; ++s) {
        const auto seq = simulate_iid(3000, "01", ProbVector({0.5, 0.5}), 1000 + static_cast<std::uint64_t>(s));
        const auto rows = rate_sweep(seq, kMaxWord);
        for (std::size_t k = 1; k <= kMaxWord; ++k) {
            const auto& r = rows[k - 1].rates;
            mean_nml[k] += r.rate_nml / kSeeds;
            above_one[k] += r.rate_nml > 1.0;
            if (k == 8) mean_entropy8 += r.rate_entropy / kSeeds;
        }
    }
    const double elapsed = seconds_since(t0);

    o.detail << kSeeds << " seeds; (a) means";
    for (std::size_t k = 1; k <= 4; ++k) {
        o.detail << " " << fmt(mean_nml[k]);
        o.require(near(mean_nml[k], published[k - 1], 0.005), "a: word length " + std::to_string(k));
    }
    o.detail << "; (b) share > 1:";
    for (std::size_t k = 1; k <= 8; ++k) {
        const double share = static_cast<double>(above_one[k]) / kSeeds;
        o.detail << " " << fmt(share, 3);
        o.require(share >= 0.95, "b: word length " + std::to_string(k) + " share " + fmt(share, 3));
    }
    o.detail << "; (c) mean entropy rate at 8 " << fmt(mean_entropy8);
    o.require(mean_entropy8 <= 0.96, "c");
    const double below9 = 1.0 - static_cast<double>(above_one[9]) / kSeeds;
    o.detail << "; (d) share < 1 at 9 " << fmt(below9, 3) << "; " << fmt(elapsed, 2) << " s";
    o.require(below9 >= 0.80, "d");
    o.require(elapsed < 30.0, "runtime");
    return o;
}

Outcome exact_vs_asymptotic() {
    Outcome o;
    double prev = INFINITY;
    for (std::uint64_t n : {100, 1000, 10000}) {
        const double asym = 0.5 * std::log2(static_cast<double>(n) / (2 * std::numbers::pi)) + std::log2(std::numbers::pi);
        const double gap = std::abs(shtarkov_lognormalizer_exact(2, n) - asym);
        o.detail << "n=" << n << " gap " << fmt(gap, 5) << "; ";
        o.require(gap < prev, "decreasing at n=" + std::to_string(n));
        if (n == 1000) o.require(gap <= 0.05, "n=1000");
        if (n == 10000) o.require(gap <= 0.02, "n=10000");
        prev = gap;
    }
    return o;
}

Outcome kraft_equality() {
    Outcome o;
    double worst = 0.0;
    for (auto [m, n] : {std::pair{2, 10}, std::pair{3, 6}, std::pair{4, 4}}) {
        const double normalizer = shtarkov_lognormalizer_exact(m, n);
        const auto alphabet = testing::digit_alphabet(m);
        const auto jeffreys = DirichletPrior::jeffreys(m);
        double nml = 0.0, mixture = 0.0;
        testing::for_each_sequence(m, n, [&](const std::vector<int>& x) {
            nml += std::exp2(-(entropy_term_bits(testing::counts_of(x, m)) + normalizer));
            mixture += std::exp2(-mixture_codelength_closed_form(count_words(testing::as_words(x)), alphabet, jeffreys));
        });
        worst = std::max({worst, std::abs(nml - 1.0), std::abs(mixture - 1.0)});
        o.detail << "(" << m << "," << n << ") nml " << fmt(nml, 12) << " mix " << fmt(mixture, 12) << "; ";
    }
    o.require(worst <= 1e-9, "tolerance");
    return o;
}

Outcome predictive_identity() {
    Outcome o;
    Rng rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = 1 + rng.below(8);
        std::vector<int> x(1 + rng.below(10000));
        for (auto& v : x) v = static_cast<int>(rng.below(m));
        const auto words = testing::as_words(x);
        const auto alphabet = testing::digit_alphabet(m);
        const auto jeffreys = DirichletPrior::jeffreys(m);
        const double seq = sequential_predictive_codelength(words, alphabet, jeffreys);
        const double closed = mixture_codelength_closed_form(count_words(words), alphabet, jeffreys);
        worst = std::max(worst, std::abs(seq - closed));
    }
    o.require(worst <= 1e-9, "tolerance");
    o.detail << "1000 sequences, max |diff| " << worst << " bits (tol 1e-9)";
    return o;
}

Outcome mixture_vs_nml() {
    Outcome o;
    const std::vector<std::string> alphabet{"0", "1"};
    const auto jeffreys = DirichletPrior::jeffreys(2);
    const double normalizer = shtarkov_lognormalizer_exact(2, 10000);
    for (std::uint64_t zeros : {5000, 3000, 1000}) {
        WordCounts c;
        c.add("0", zeros);
        c.add("1", 10000 - zeros);
        const double mix = mixture_codelength_closed_form(c, alphabet, jeffreys);
        const double nml = entropy_term_bits(c.values()) + normalizer;
        const double expansion = mixture_expansion_terms(c, alphabet, jeffreys).total();
        o.require(std::abs(mix - nml) <= 0.1, "vs exact NML at " + std::to_string(zeros));
        o.require(std::abs(mix - expansion) <= 0.05, "vs expansion at " + std::to_string(zeros));
        o.detail << "theta " << fmt(zeros / 10000.0, 1) << ": |mix-nml| " << fmt(std::abs(mix - nml)) << " |mix-exp| "
                 << fmt(std::abs(mix - expansion)) << "; ";
    }
    return o;
}

Outcome gaussian_exactness() {
    Outcome o;
    constexpr int n = 100;
    const GaussianLocationFamily family(-1.0, 1.0);

    // Standard normal draws (Box-Muller), recentred to the requested mean.
    Rng rng(7);
    std::vector<double> base(n);
    for (auto& v : base) {
        const double u1 = 1.0 - rng.uniform01(), u2 = rng.uniform01();
        v = std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
    }
    double mean = 0.0;
    for (double v : base) mean += v / n;

    double worst_identity = 0.0, worst_quadrature = 0.0, inner_correction = 0.0;
    for (double target : {0.0, 0.03, 0.5, -0.5, 0.9}) {
        std::vector<double> x(base);
        for (auto& v : x) v += target - mean;
        double xbar = 0.0;
        for (double v : x) xbar += v / n;

        const double mixture = gaussian_location_mixture_bits(x, family);
        const double at_mle = gaussian_neg_loglik_bits(x, xbar);

        // Quadrature oracle over the raw likelihood product.
        auto likelihood = [&](double theta) {
            double log_p = 0.0;
            for (double v : x) log_p += -0.5 * (v - theta) * (v - theta) - 0.5 * std::log(2 * std::numbers::pi);
            return std::exp(log_p);
        };
        const double integral = testing::simpson(likelihood, -1.0, 1.0, 40000);
        const double by_quadrature = -std::log2(integral / family.width());
        worst_quadrature = std::max(worst_quadrature, std::abs(by_quadrature - mixture));

        const double rn = std::sqrt(static_cast<double>(n));
        const double mass = 0.5 * (std::erf((1.0 - xbar) * rn / std::sqrt(2.0)) - std::erf((-1.0 - xbar) * rn / std::sqrt(2.0)));
        const double correction = -std::log2(mass);
        const double predicted = 0.5 * std::log2(n / (2 * std::numbers::pi)) + std::log2(2.0) + correction;
        worst_identity = std::max(worst_identity, std::abs((mixture - at_mle) - predicted));
        worst_identity = std::max(worst_identity, std::abs(gaussian_location_regret(n, family) + correction - predicted));
        if (std::abs(xbar) <= 1.0 - 5.0 / rn) inner_correction = std::max(inner_correction, correction);
    }
    o.require(worst_identity <= 1e-6, "identity");
    o.require(worst_quadrature <= 1e-6, "quadrature");
    o.require(inner_correction <= 1e-6, "inner correction");
    o.detail << "max identity error " << worst_identity << ", vs quadrature " << worst_quadrature
             << ", correction with mean >= 5/sqrt(n) inside " << inner_correction << " (tol 1e-6)";
    return o;
}

Outcome lz78_baseline() {
    Outcome o;
    const auto seq = testing::load_fixture("b0059.fasta");
    const auto report = analyze_model(seq, ModelSpec{});
    const auto c = report.n_words;
    o.require(c + 2 >= 635 && c <= 635 + 2, "phrase count");
    o.require(near(report.rate, 1.24, 0.01), "rate");
    o.detail << "phrases " << c << " (635 +/- 2), rate " << fmt(report.rate) << " (1.24 +/- 0.01); ";

    Rng rng(99);
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::string alphabet = std::string("ACGT01xyz").substr(0, 1 + rng.below(9));
        std::string s(1 + rng.below(5000), ' ');
        for (auto& ch : s) ch = alphabet[rng.below(alphabet.size())];
        failures += lz78_reconstruct(lz78_parse(SymbolSequence(s, alphabet))) != s;
    }
    o.require(failures == 0, "round trip");
    o.detail << "round-trip failures " << failures << "/1000";
    return o;
}

struct B0060Column {
    const char* model;
    double nml_mean, nml_sd, nml_q01;
    double ent_sd, ent_q99;
    double dim_sd, dim_q01;
};

constexpr B0060Column kB0060Columns[] = {
    {"1.0", 0.999, 0.00, 0.999, 0.00, 0.996, 0.00, 0.999},
    {"2.0", 1.006, 0.74, 1.004, 0.74, 0.995, 0.74, 1.008},
    {"2.1", 1.006, 0.76, 1.004, 0.76, 0.995, 0.76, 1.008},
    {"3.0", 1.020, 1.69, 1.016, 1.69, 0.990, 1.70, 1.046},
    {"3.1", 1.020, 1.77, 1.016, 1.77, 0.990, 1.78, 1.047},
    {"3.2", 1.020, 1.71, 1.016, 1.71, 0.990, 1.71, 1.047},
    {"4.0", 1.020, 4.22, 1.011, 3.69, 0.961, 7.49, 1.157},
    {"4.1", 1.020, 4.33, 1.010, 3.79, 0.961, 7.66, 1.156},
    {"4.2", 1.020, 4.15, 1.011, 3.63, 0.960, 7.37, 1.157},
    {"4.3", 1.020, 3.92, 1.011, 3.42, 0.960, 7.01, 1.157},
};

Outcome b0060_permutations() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig config;
    config.input_path = testing::fixture("b0060.fasta");
    config.models = {"fixed:1", "fixed:2", "fixed:3", "fixed:4"};
    config.replicates = 1000;
    config.seed = 20240601;
    const auto summary = cmd_permute(config);
    const double elapsed = seconds_since(t0);

    auto sd_ok = [](double got, double printed_e3) {
        const double printed = printed_e3 * 1e-3;
        if (printed == 0.0) return got == 0.0;
        return got >= printed / 2.0 && got <= printed * 2.0;
    };
    double worst_mean = 0.0, worst_q = 0.0, worst_sd_ratio = 1.0;
    for (std::size_t j = 0; j < std::size(kB0060Columns); ++j) {
        const auto& want = kB0060Columns[j];
        o.require(summary.models.at(j) == want.model, "column order");
        const auto& nml = summary.at(Statistic::rate_nml, j);
        const auto& ent = summary.at(Statistic::rate_entropy, j);
        const auto& dim = summary.at(Statistic::rate_entropy_plus_dim, j);
        const std::string tag = std::string(" ") + want.model;
        o.require(near(nml.mean, want.nml_mean, 0.005), "mean" + tag);
        o.require(sd_ok(nml.sd, want.nml_sd), "nml sd" + tag);
        o.require(sd_ok(ent.sd, want.ent_sd), "entropy sd" + tag);
        o.require(sd_ok(dim.sd, want.dim_sd), "entropy+dim sd" + tag);
        o.require(near(nml.lower, want.nml_q01, 0.01), "nml q01" + tag);
        o.require(near(ent.upper, want.ent_q99, 0.01), "entropy q99" + tag);
        o.require(near(dim.lower, want.dim_q01, 0.01), "entropy+dim q01" + tag);
        worst_mean = std::max(worst_mean, std::abs(nml.mean - want.nml_mean));
        worst_q = std::max({worst_q, std::abs(nml.lower - want.nml_q01), std::abs(ent.upper - want.ent_q99),
                            std::abs(dim.lower - want.dim_q01)});
        for (auto [got, printed] : {std::pair{nml.sd, want.nml_sd}, {ent.sd, want.ent_sd}, {dim.sd, want.dim_sd}})
            if (printed > 0.0) {
                const double ratio = got / (printed * 1e-3);
                worst_sd_ratio = std::max(worst_sd_ratio, std::max(ratio, 1.0 / ratio));
            }
    }
    o.require(elapsed < 60.0, "runtime");
    o.detail << "max |mean diff| " << fmt(worst_mean) << " (tol 0.005), worst SD ratio " << fmt(worst_sd_ratio, 2)
             << " (tol 2), max |quantile diff| " << fmt(worst_q) << " (tol 0.01), " << fmt(elapsed, 2) << " s";
    return o;
}

struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "b0059 code-length table", b0059_code_lengths},
    {2, "codon rediscovery by scan", codon_rediscovery},
    {3, "Bernoulli rate table over seeds", bernoulli_rates},
    {4, "exact vs asymptotic normalizer", exact_vs_asymptotic},
    {5, "Kraft equality", kraft_equality},
    {6, "sequential predictive = closed-form mixture", predictive_identity},
    {7, "Jeffreys mixture vs NML and expansion", mixture_vs_nml},
    {8, "Gaussian location exactness", gaussian_exactness},
    {9, "LZ78 baseline", lz78_baseline},
    {10, "b0060 permutation statistics", b0060_permutations},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
            return 2;
        }
    }
    int failed = 0, ran = 0;
    for (const auto& c : kCriteria) {
        if (only && c.id != only) continue;
        ++ran;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    if (ran == 0) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }
    std::printf("%d/%d criteria passed\n", ran - failed, ran);
    return failed ? 1 : 0;
}
