#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace srp::testing {

// Regularized upper incomplete gamma Q(a, x) by series / continued fraction.
inline double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q domain");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) {
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-14) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-14) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// p-value for observed counts against expected proportions.
inline double chi_square_p(const std::vector<long>& counts,
                           const std::vector<double>& probs) {
    if (counts.size() != probs.size() || counts.size() < 2) {
        throw std::invalid_argument("chi_square_p shape");
    }
    long total = 0;
    for (long c : counts) total += c;
    double stat = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = total * probs[i];
        if (expected <= 0.0) throw std::invalid_argument("chi_square_p expected bin");
        const double diff = counts[i] - expected;
        stat += diff * diff / expected;
    }
    const double df = static_cast<double>(counts.size() - 1);
    return gamma_q(df / 2.0, stat / 2.0);
}

}  // namespace srp::testing
