#pragma once

// Hermitian Fredholm kernel K_S(x, y) whose expectation value in a state psi
// equals the integral of psi's Wigner function over S, and its Nystrom matrix.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wigbound/regions.hpp"
#include "wigbound/states.hpp"

namespace wigbound {

/// Below this |x - y| the kernel switches to its analytic diagonal limit.
inline constexpr double kDiagonalThreshold = 1e-8;

/// K_S(x, y). Supports graph regions, disks (any centre), annuli and unions.
/// Ellipses must be reduced to a disk (or converted to graph form) first.
complex kernel_eval(const Region& s, double x, double y);

/// Quadrature used when the kernel acts on grid functions.
///
/// `rectangle` is the bare rule dx * K(x_i, x_j). It converges slowly because
/// K_S is not smooth where its support band ends: a disk kernel vanishes
/// there like a square root, a graph kernel generally jumps. `corrected` adds
/// the leading generalized Euler-Maclaurin term for each such edge,
/// -zeta(-alpha, theta) dx^{1+alpha} times the edge coefficient, spread
/// linearly over the two nodes around the edge. Disks narrower than two grid
/// cells are not resolved by any point rule; their rows are lumped onto the
/// mirror node instead.
enum class Quadrature { rectangle, corrected };

/// (K_S psi)(x_i) on psi's own grid.
WavefunctionGrid apply_kernel(const Region& s, const WavefunctionGrid& psi, Quadrature rule = Quadrature::corrected);

struct KernelMatrix {
    double x0 = 0.0;
    double dx = 1.0;
    Eigen::MatrixXcd a;
    std::string region_tag;
    double trace = 0.0;                // sum of diagonal entries
    double expected_trace = 0.0;       // area / (2 pi), +inf when unbounded
    std::vector<std::string> warnings; // window / resolution diagnostics

    std::size_t size() const { return static_cast<std::size_t>(a.rows()); }
    double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
};

struct Window {
    double lo;
    double hi;
};

/// Centred on the region's q-midpoint with half-width
/// max(6, 2.5 * extent + 4), extent = largest half-side of the bounding box.
Window default_window(const Region& s);

/// Grid count for a window at 25 points per unit length.
std::size_t default_count(const Window& w);

/// a_ij = dx K_S(x_i, x_j) plus the edge terms of `rule`, then
/// a <- (a + a^H) / 2.
KernelMatrix assemble(const Region& s, double x0, double dx, std::size_t count,
                      Quadrature rule = Quadrature::corrected);
KernelMatrix assemble(const Region& s, const Window& w, std::size_t count, Quadrature rule = Quadrature::corrected);

/// Translation to the origin for standalone disks/annuli (spectrum-preserving);
/// other shapes are returned unchanged.
Region centred_for_spectrum(const Region& s);

} // namespace wigbound
