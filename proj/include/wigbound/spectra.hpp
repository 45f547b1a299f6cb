#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wigbound/kernel.hpp"
#include "wigbound/regions.hpp"
#include "wigbound/states.hpp"

namespace wigbound {

enum class Method { exact, nystrom };

const char* to_string(Method m);

struct SpectrumResult {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::optional<int> n_min; // oscillator index attaining lambda_min (disk/annulus)
    std::optional<int> n_max;
    Method method = Method::exact;
    double residual = 0.0; // max ||A v - lambda v|| over the two extremal pairs (nystrom)
    std::optional<WavefunctionGrid> minimizer; // extremal states, unit norm on the Nystrom grid
    std::optional<WavefunctionGrid> maximizer;
    std::vector<std::string> warnings;
};

/// Extreme eigenvalues of the Nystrom matrix via a full Hermitian
/// eigendecomposition. Throws if k.a is not Hermitian to 1e-10.
SpectrumResult extremal_eigenvalues(const KernelMatrix& k, bool with_vectors = false);

/// All eigenvalues, ascending.
std::vector<double> eigenvalues(const KernelMatrix& k);

/// lambda_n(a) = (-1)^n int_0^{a^2} L_n(2u) e^{-u} du, by Gauss-Legendre with n + 32 nodes.
double disk_eigenvalue(int n, double a);

/// lambda_n(r2) - lambda_n(r1).
double annulus_eigenvalue(int n, double r1, double r2);

/// Auto cutoff for the oscillator index scan: max(50, ceil(10 r^2)).
int envelope_cutoff(double radius);

/// lambda_max = lambda_0(a); lambda_min = min_{n <= N} lambda_n(a), ties to smaller n.
SpectrumResult disk_envelope(double a, std::optional<int> n_max = std::nullopt);

/// Extremes over n of annulus_eigenvalue(n, r1, r2).
SpectrumResult annulus_envelope(double r1, double r2, std::optional<int> n_max = std::nullopt);

/// Greatest a in (0, n+3] with lambda_n(a) = lambda_{n+1}(a).
double crossing_radius(int n);

enum class BoundsMode { automatic, exact, numeric };

struct BoundsOptions {
    BoundsMode mode = BoundsMode::automatic;
    std::optional<std::size_t> grid_count; // Nystrom points
    std::optional<double> window;          // half-width around the region's q-midpoint
    std::optional<int> n_max;              // oscillator index cutoff for exact envelopes
};

/// Best-possible bounds on the integral of any Wigner function over s.
/// Disks, ellipses and annuli use the closed-form oscillator spectrum unless
/// numeric mode is requested; everything else goes through Nystrom.
SpectrumResult region_bounds(const Region& s, const BoundsOptions& opts = {});

/// Radius of the centred disk whose spectrum equals that of s (disk or ellipse).
std::optional<double> equivalent_disk_radius(const Region& s);

/// Form of s accepted by kernel_eval: standalone disks/annuli centred,
/// ellipses (also inside unions) converted to graph form.
Region kernel_ready(const Region& s);

} // namespace wigbound
