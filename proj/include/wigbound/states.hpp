#pragma once

// Wavefunction samples on a uniform grid, in dimensionless units.
//
// Inner products are plain Riemann sums sum_i f_i conj(g_i) dx. The same
// rule is used by the Nystrom discretization, so sampled oscillator states
// satisfy the discrete eigen-relations without any weight rescaling.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace wigbound {

using complex = std::complex<double>;

struct GridSpec {
    double x0 = -8.0;
    double dx = 0.01;
    std::size_t count = 1601;

    double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
    double x_last() const { return x(count - 1); }
};

/// Desk-scale default: x in [-8, 8], dx = 0.01.
inline GridSpec default_state_grid() { return {}; }

struct WavefunctionGrid {
    double x0 = 0.0;
    double dx = 1.0;
    std::vector<complex> values;

    WavefunctionGrid() = default;
    WavefunctionGrid(double x0_, double dx_, std::vector<complex> values_);

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
    double x_last() const { return x(values.size() - 1); }
    GridSpec grid() const { return {x0, dx, values.size()}; }

    /// Linear interpolation of psi at arbitrary x; zero outside [x0, x_last].
    complex interpolate(double x) const;
};

double norm_squared(const WavefunctionGrid& psi);

/// sum_i a_i conj(b_i) dx; the grids must match.
complex inner_product(const WavefunctionGrid& a, const WavefunctionGrid& b);

/// Returns psi rescaled to unit norm. Throws "degenerate state" for zero norm.
WavefunctionGrid normalize(WavefunctionGrid psi);

/// Samples of the normalized Hermite function h_n. The grid must span the
/// classical turning points +-sqrt(2n+1) plus a margin of 4.
WavefunctionGrid oscillator_state(int n, double x0, double dx, std::size_t count);
WavefunctionGrid oscillator_state(int n, const GridSpec& grid = default_state_grid());

/// Displaced ground state pi^{-1/4} exp(-(x-q0)^2/2 + i p0 x); grid must cover q0 +- 8.
WavefunctionGrid coherent_state(double q0, double p0, double x0, double dx, std::size_t count);
WavefunctionGrid coherent_state(double q0, double p0, const GridSpec& grid = default_state_grid());

/// Normalized sum_k coeffs[k] h_k on the given grid.
WavefunctionGrid oscillator_superposition(const std::vector<complex>& coeffs,
                                          const GridSpec& grid = default_state_grid());

/// Convex mixture of pure states sharing one grid.
class Ensemble {
public:
    Ensemble(std::vector<double> weights, std::vector<WavefunctionGrid> members);

    const std::vector<double>& weights() const { return weights_; }
    const std::vector<WavefunctionGrid>& members() const { return members_; }
    std::size_t size() const { return weights_.size(); }

private:
    std::vector<double> weights_;
    std::vector<WavefunctionGrid> members_;
};

/// CSV with header `x,re,im`; x spacing must be uniform to 1e-9 dx.
WavefunctionGrid read_state_csv(std::istream& in);
void write_state_csv(std::ostream& out, const WavefunctionGrid& psi);

} // namespace wigbound
