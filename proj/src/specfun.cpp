#include "wigbound/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wigbound/error.hpp"

namespace wigbound {

double hermite_poly(int n, double x) {
    if (n < 0) throw Error("hermite_poly: negative degree");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double laguerre_poly(int n, double x) {
    if (n < 0) throw Error("laguerre_poly: negative degree");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

void oscillator_fns(double x, std::span<double> out) {
    if (out.empty()) return;
    // h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}
    out[0] = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
    if (out.size() == 1) return;
    out[1] = std::numbers::sqrt2 * x * out[0];
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        const double kk = static_cast<double>(k);
        out[k + 1] = x * std::sqrt(2.0 / (kk + 1.0)) * out[k] - std::sqrt(kk / (kk + 1.0)) * out[k - 1];
    }
}

double oscillator_fn(int n, double x) {
    if (n < 0) throw Error("oscillator_fn: negative index");
    const double h0 = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
    if (n == 0) return h0;
    double prev = h0;
    double cur = std::numbers::sqrt2 * x * h0;
    for (int k = 1; k < n; ++k) {
        const double next = x * std::sqrt(2.0 / (k + 1.0)) * cur - std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

// Legendre P_n(z) and its derivative.
std::pair<double, double> legendre_with_derivative(int n, double z) {
    double p0 = 1.0;
    double p1 = z;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (z * p1 - p0) / (z * z - 1.0);
    return {p1, dp};
}

} // namespace

double hurwitz_zeta(double s, double a) {
    if (!(a > 0.0)) throw Error("hurwitz_zeta: a must be positive");
    if (s == 1.0) throw Error("hurwitz_zeta: pole at s = 1");
    // Euler-Maclaurin: direct sum up to N, then the integral, half-endpoint
    // and Bernoulli tail terms at N + a.
    constexpr int N = 12;
    constexpr double b2j[] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
    double sum = 0.0;
    for (int k = 0; k < N; ++k) sum += std::pow(k + a, -s);
    const double t = N + a;
    sum += std::pow(t, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(t, -s);
    double rising = s;   // s (s+1) ... (s+2j-2)
    double fact = 2.0;   // (2j)!
    double power = std::pow(t, -s - 1.0);
    for (int j = 1; j <= 7; ++j) {
        sum += b2j[j - 1] / fact * rising * power;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2.0 * j + 1) * (2.0 * j + 2);
        power /= t * t;
    }
    return sum;
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw Error("gauss_legendre: need at least one node");
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    if (n == 1) {
        rule.weights[0] = 2.0;
        return rule;
    }
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, d] = legendre_with_derivative(n, z);
            dp = d;
            const double step = p / d;
            z -= step;
            if (std::abs(step) < 1e-15) break;
        }
        dp = legendre_with_derivative(n, z).second;
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadratureRule gauss_legendre(int n, double lo, double hi) {
    QuadratureRule rule = gauss_legendre(n);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

QuadratureRule gauss_laguerre(int n) {
    if (n < 1) throw Error("gauss_laguerre: need at least one node");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        // initial guesses after Stroud & Secrest
        if (i == 0) {
            z = 3.0 / (1.0 + 2.4 * n);
        } else if (i == 1) {
            z += 15.0 / (1.0 + 2.5 * n);
        } else {
            const double ai = i - 1;
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - rule.nodes[i - 2]);
        }
        double lp1 = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * k + 1.0 - z) * p2 - k * p3) / (k + 1.0);
            }
            // p1 = L_n(z), p2 = L_{n-1}(z)
            const double dp = n * (p1 - p2) / z;
            const double step = p1 / dp;
            z -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, z)) break;
        }
        rule.nodes[i] = z;
        lp1 = laguerre_poly(n + 1, z);
        rule.weights[i] = z / ((n + 1.0) * (n + 1.0) * lp1 * lp1);
    }
    return rule;
}

} // namespace wigbound
