#include "wigbound/states.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>

#include "wigbound/error.hpp"
#include "wigbound/format.hpp"
#include "wigbound/specfun.hpp"

namespace wigbound {

WavefunctionGrid::WavefunctionGrid(double x0_, double dx_, std::vector<complex> values_)
    : x0(x0_), dx(dx_), values(std::move(values_)) {
    if (!(dx > 0.0) || !std::isfinite(dx)) throw Error("wavefunction grid: dx must be positive");
    if (values.empty()) throw Error("wavefunction grid: no samples");
}

complex WavefunctionGrid::interpolate(double x) const {
    const double t = (x - x0) / dx;
    if (t < 0.0 || t > static_cast<double>(values.size() - 1)) return {0.0, 0.0};
    const double fl = std::floor(t);
    auto i = static_cast<std::size_t>(fl);
    if (i + 1 >= values.size()) return values.back();
    const double frac = t - fl;
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

double norm_squared(const WavefunctionGrid& psi) {
    double sum = 0.0;
    for (const complex& v : psi.values) sum += std::norm(v);
    return sum * psi.dx;
}

complex inner_product(const WavefunctionGrid& a, const WavefunctionGrid& b) {
    if (a.size() != b.size() || a.dx != b.dx || a.x0 != b.x0)
        throw Error("inner_product: grids differ");
    complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) sum += a.values[i] * std::conj(b.values[i]);
    return sum * a.dx;
}

WavefunctionGrid normalize(WavefunctionGrid psi) {
    const double n2 = norm_squared(psi);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw Error("degenerate state");
    const double scale = 1.0 / std::sqrt(n2);
    for (complex& v : psi.values) v *= scale;
    return psi;
}

namespace {

void require_support(const GridSpec& g, double lo, double hi, const char* what) {
    if (g.count < 2 || !(g.dx > 0.0)) throw Error(std::string(what) + ": invalid grid");
    // half-cell slack so that grids ending "at" the bound pass despite rounding
    const double slack = 0.5 * g.dx;
    if (g.x0 > lo + slack || g.x_last() < hi - slack)
        throw Error(std::string(what) + ": insufficient support");
}

} // namespace

WavefunctionGrid oscillator_state(int n, double x0, double dx, std::size_t count) {
    return oscillator_state(n, GridSpec{x0, dx, count});
}

WavefunctionGrid oscillator_state(int n, const GridSpec& grid) {
    if (n < 0) throw Error("oscillator_state: negative index");
    const double reach = std::sqrt(2.0 * n + 1.0) + 4.0;
    require_support(grid, -reach, reach, "oscillator_state");
    std::vector<complex> values(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) values[i] = oscillator_fn(n, grid.x(i));
    return {grid.x0, grid.dx, std::move(values)};
}

WavefunctionGrid coherent_state(double q0, double p0, double x0, double dx, std::size_t count) {
    return coherent_state(q0, p0, GridSpec{x0, dx, count});
}

WavefunctionGrid coherent_state(double q0, double p0, const GridSpec& grid) {
    require_support(grid, q0 - 8.0, q0 + 8.0, "coherent_state");
    const double norm = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
    std::vector<complex> values(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double x = grid.x(i);
        const double u = x - q0;
        values[i] = norm * std::exp(-0.5 * u * u) * std::polar(1.0, p0 * x);
    }
    return {grid.x0, grid.dx, std::move(values)};
}

WavefunctionGrid oscillator_superposition(const std::vector<complex>& coeffs, const GridSpec& grid) {
    if (coeffs.empty()) throw Error("oscillator_superposition: no coefficients");
    const int n_top = static_cast<int>(coeffs.size()) - 1;
    const double reach = std::sqrt(2.0 * n_top + 1.0) + 4.0;
    require_support(grid, -reach, reach, "oscillator_superposition");
    std::vector<double> h(coeffs.size());
    std::vector<complex> values(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        oscillator_fns(grid.x(i), h);
        complex v{0.0, 0.0};
        for (std::size_t k = 0; k < coeffs.size(); ++k) v += coeffs[k] * h[k];
        values[i] = v;
    }
    return normalize(WavefunctionGrid{grid.x0, grid.dx, std::move(values)});
}

Ensemble::Ensemble(std::vector<double> weights, std::vector<WavefunctionGrid> members)
    : weights_(std::move(weights)), members_(std::move(members)) {
    if (weights_.empty()) throw Error("ensemble: no members");
    if (weights_.size() != members_.size()) throw Error("ensemble: weight and member counts differ");
    for (double p : weights_)
        if (!(p > 0.0)) throw Error("ensemble: weights must be positive");
    const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-10) throw Error("ensemble: weights must sum to 1");
    const WavefunctionGrid& first = members_.front();
    for (const WavefunctionGrid& m : members_) {
        if (m.x0 != first.x0 || m.dx != first.dx || m.size() != first.size())
            throw Error("ensemble: members must share one grid");
    }
}

WavefunctionGrid read_state_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error("state csv: empty input");
    const auto header = split(trim(line), ',');
    if (header.size() != 3 || trim(header[0]) != "x" || trim(header[1]) != "re" || trim(header[2]) != "im")
        throw Error("state csv: expected header x,re,im");
    std::vector<double> xs;
    std::vector<complex> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 3) throw Error("state csv: line " + std::to_string(line_no) + " needs 3 columns");
        xs.push_back(parse_double(cols[0]));
        values.emplace_back(parse_double(cols[1]), parse_double(cols[2]));
    }
    if (xs.size() < 2) throw Error("state csv: need at least two samples");
    const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    if (!(dx > 0.0)) throw Error("state csv: x must increase");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double expected = xs.front() + static_cast<double>(i) * dx;
        if (std::abs(xs[i] - expected) > 1e-9 * dx)
            throw Error("state csv: x spacing is not uniform near x=" + fmt9(xs[i]));
    }
    return {xs.front(), dx, std::move(values)};
}

void write_state_csv(std::ostream& out, const WavefunctionGrid& psi) {
    out << "x,re,im\n";
    for (std::size_t i = 0; i < psi.size(); ++i)
        out << fmt9(psi.x(i)) << ',' << fmt9(psi.values[i].real()) << ',' << fmt9(psi.values[i].imag()) << '\n';
}

} // namespace wigbound
