#pragma once

// Helpers shared by the test binaries. The oracles here are deliberately
// naive: direct sums and products over enumerated sequences, with no code
// shared with the library beyond its public types.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "mdlbound/commands.hpp"

namespace testing {

inline std::string fixture(const std::string& name) { return std::string(MDLBOUND_FIXTURE_DIR) + "/" + name; }

inline mdlbound::SymbolSequence load_fixture(const std::string& name) {
    mdlbound::RunConfig config;
    config.input_path = fixture(name);
    return mdlbound::load_sequence(config);
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Calls fn on every sequence of length n over {0..m-1}.
inline void for_each_sequence(std::size_t m, std::size_t n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> x(n, 0);
    while (true) {
        fn(x);
        std::size_t i = 0;
        while (i < n && ++x[i] == static_cast<int>(m)) x[i++] = 0;
        if (i == n) return;
    }
}

inline std::vector<std::string> as_words(const std::vector<int>& x) {
    std::vector<std::string> w;
    for (int v : x) w.push_back(std::string(1, static_cast<char>('0' + v)));
    return w;
}

inline std::vector<std::string> digit_alphabet(std::size_t m) {
    std::vector<std::string> a;
    for (std::size_t k = 0; k < m; ++k) a.push_back(std::string(1, static_cast<char>('0' + k)));
    return a;
}

inline std::vector<std::uint64_t> counts_of(const std::vector<int>& x, std::size_t m) {
    std::vector<std::uint64_t> c(m, 0);
    for (int v : x) ++c[static_cast<std::size_t>(v)];
    return c;
}

/// Maximized likelihood prod_i theta_hat(x_i), as a plain product.
inline double max_likelihood(const std::vector<int>& x, std::size_t m) {
    const auto c = counts_of(x, m);
    double p = 1.0;
    for (int v : x) p *= static_cast<double>(c[static_cast<std::size_t>(v)]) / static_cast<double>(x.size());
    return p;
}

/// Shtarkov sum by brute force over all m^n sequences, in bits.
inline double shtarkov_by_sequences(std::size_t m, std::size_t n) {
    double sum = 0.0;
    for_each_sequence(m, n, [&](const std::vector<int>& x) { sum += max_likelihood(x, m); });
    return std::log2(sum);
}

/// Krichevsky-Trofimov probability of a sequence as a running product.
inline double kt_probability(const std::vector<int>& x, std::size_t m) {
    std::vector<double> seen(m, 0.0);
    double p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto v = static_cast<std::size_t>(x[i]);
        p *= (seen[v] + 0.5) / (static_cast<double>(i) + 0.5 * static_cast<double>(m));
        seen[v] += 1.0;
    }
    return p;
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace testing
