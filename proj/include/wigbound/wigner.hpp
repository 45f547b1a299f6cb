#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wigbound/regions.hpp"
#include "wigbound/states.hpp"

namespace wigbound {

/// W(q_i, p_j) on a uniform rectangular grid, stored with q as the outer index.
struct WignerGrid {
    std::vector<double> qs;
    std::vector<double> ps;
    std::vector<double> w; // w[i * ps.size() + j]

    WignerGrid() = default;
    WignerGrid(std::vector<double> qs_, std::vector<double> ps_, std::vector<double> w_);

    double& at(std::size_t i, std::size_t j) { return w[i * ps.size() + j]; }
    double at(std::size_t i, std::size_t j) const { return w[i * ps.size() + j]; }
    double dq() const;
    double dp() const;
};

/// count uniformly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t count);
/// lo, lo + step, ... up to hi (inclusive within half a step).
std::vector<double> arange(double lo, double hi, double step);

/// W(q,p) = (1/pi) sum_x conj(psi(q+x)) psi(q-x) e^{2ipx} dx over psi's own
/// x-grid, with psi linearly interpolated at q +- x.
WignerGrid wigner_transform(const WavefunctionGrid& psi, const std::vector<double>& qs, const std::vector<double>& ps);

/// Closed form for the n-th oscillator eigenstate.
double number_state_wigner(int n, double q, double p);

/// Pointwise convex combination sum_i p_i W_i.
WignerGrid mixed_wigner(const Ensemble& ens, const std::vector<double>& qs, const std::vector<double>& ps);

struct IntegralIdentities {
    double total;  // sum W dq dp
    double purity; // sum W^2 dq dp
};

IntegralIdentities integral_identities(const WignerGrid& w);

struct Quasiprobability {
    double value;
    bool truncated; // region reached past the grid where W had already decayed
};

/// Grid-edge |W| below which a region may extend past the grid.
inline constexpr double kTailTolerance = 1e-8;

/// Q_S = sum chi_S(q_i, p_j) W(q_i, p_j) dq dp with membership tested at the
/// grid points (cell centres). Throws "uncovered region" if S leaves the
/// grid's cells while W at the grid edge is still above kTailTolerance.
Quasiprobability quasiprobability_checked(const WignerGrid& w, const Region& s);
double quasiprobability(const WignerGrid& w, const Region& s);

struct PointwiseBoundReport {
    double min;
    double max;
    bool ok;
};

/// ok iff every value lies within [-1/pi - eps, 1/pi + eps], eps = 1e-6 + allowance.
PointwiseBoundReport pointwise_bound_report(const WignerGrid& w, double allowance = 0.0);

/// CSV `q,p,w`, one row per grid point. Any row order is accepted on read;
/// both axes must be uniform.
WignerGrid read_wigner_csv(std::istream& in);
void write_wigner_csv(std::ostream& out, const WignerGrid& w);

} // namespace wigbound
