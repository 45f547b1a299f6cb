#pragma once

// Orthogonal polynomials, Hermite functions and Gauss rules.
//
// Safe range for the polynomial evaluators: n <= 200, |x| <= 20. Outside it
// the raw polynomials may overflow; the normalized Hermite functions stay
// finite well beyond it.

#include <span>
#include <vector>

namespace wigbound {

struct QuadratureRule {
    std::vector<double> nodes;   // strictly increasing
    std::vector<double> weights; // positive

    std::size_t size() const { return nodes.size(); }
};

/// Physicists' Hermite polynomial H_n(x).
double hermite_poly(int n, double x);

/// Laguerre polynomial L_n(x).
double laguerre_poly(int n, double x);

/// L2-normalized Hermite function h_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2}.
double oscillator_fn(int n, double x);

/// Fills out[k] = h_k(x) for k = 0 .. out.size()-1 in one recurrence sweep.
void oscillator_fns(double x, std::span<double> out);

/// Hurwitz zeta function zeta(s, a) = sum_{k>=0} (k + a)^{-s}, analytically
/// continued in s (s != 1), for a > 0.
double hurwitz_zeta(double s, double a);

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Legendre rule mapped affinely onto [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

/// n-point Gauss-Laguerre rule for weight e^{-t} on [0, inf).
QuadratureRule gauss_laguerre(int n);

} // namespace wigbound
