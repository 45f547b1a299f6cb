#include "wigbound/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

#include "wigbound/error.hpp"
#include "wigbound/format.hpp"
#include "wigbound/specfun.hpp"

namespace wigbound {

namespace {

constexpr double kInvPi = 1.0 / std::numbers::pi;

void require_uniform(const std::vector<double>& v, const char* axis) {
    if (v.size() < 2) throw Error(std::string("wigner grid: axis ") + axis + " needs at least two points");
    const double step = (v.back() - v.front()) / static_cast<double>(v.size() - 1);
    if (!(step > 0.0) || !std::isfinite(step)) throw Error(std::string("wigner grid: axis ") + axis + " must increase");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i] - (v.front() + static_cast<double>(i) * step)) > 1e-6 * step)
            throw Error(std::string("wigner grid: axis ") + axis + " is not uniformly spaced");
    }
}

double axis_step(const std::vector<double>& v) {
    return (v.back() - v.front()) / static_cast<double>(v.size() - 1);
}

} // namespace

WignerGrid::WignerGrid(std::vector<double> qs_, std::vector<double> ps_, std::vector<double> w_)
    : qs(std::move(qs_)), ps(std::move(ps_)), w(std::move(w_)) {
    require_uniform(qs, "q");
    require_uniform(ps, "p");
    if (w.size() != qs.size() * ps.size()) throw Error("wigner grid: value count does not match axes");
}

double WignerGrid::dq() const { return axis_step(qs); }
double WignerGrid::dp() const { return axis_step(ps); }

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count < 2) throw Error("linspace: need at least two points");
    std::vector<double> out(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
    out.back() = hi;
    return out;
}

std::vector<double> arange(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi > lo)) throw Error("arange: need lo < hi and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
    return out;
}

WignerGrid wigner_transform(const WavefunctionGrid& psi, const std::vector<double>& qs, const std::vector<double>& ps) {
    require_uniform(qs, "q");
    require_uniform(ps, "p");
    const double x_lo = psi.x0;
    const double x_hi = psi.x_last();
    const double dx = psi.dx;
    const std::size_t n = psi.size();
    for (double q : {qs.front(), qs.back()}) {
        if (q < x_lo - 1e-9 * dx || q > x_hi + 1e-9 * dx)
            throw Error("wigner_transform: q=" + fmt9(q) + " outside the wavefunction support");
    }

    const std::size_t np = ps.size();
    std::vector<double> out(qs.size() * np);
    // running phases e^{2 i p x_k}, split into re/im so the inner loop vectorizes
    std::vector<double> step_re(np), step_im(np), ph_re(np), ph_im(np), acc_re(np), acc_im(np);
    for (std::size_t j = 0; j < np; ++j) {
        step_re[j] = std::cos(2.0 * ps[j] * dx);
        step_im[j] = std::sin(2.0 * ps[j] * dx);
    }
    std::vector<complex> fwd, bwd;

    for (std::size_t i = 0; i < qs.size(); ++i) {
        const double q = qs[i];
        // q +- k dx share one fractional grid offset
        double t = (q - x_lo) / dx;
        t = std::clamp(t, 0.0, static_cast<double>(n - 1));
        double base = std::floor(t);
        double frac = t - base;
        if (frac > 1.0 - 1e-12) {
            base += 1.0;
            frac = 0.0;
        } else if (frac < 1e-12) {
            frac = 0.0;
        }
        const auto i0 = static_cast<std::ptrdiff_t>(base);
        const auto sample = [&](std::ptrdiff_t idx) -> complex {
            if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(n)) return {0.0, 0.0};
            if (frac == 0.0) return psi.values[idx];
            const complex next = idx + 1 < static_cast<std::ptrdiff_t>(n) ? psi.values[idx + 1] : complex{0.0, 0.0};
            return psi.values[idx] * (1.0 - frac) + next * frac;
        };
        // offsets k with q +- k dx still inside the support
        const auto reach = static_cast<std::ptrdiff_t>(n);
        fwd.clear();
        bwd.clear();
        for (std::ptrdiff_t k = 0; k <= reach; ++k) {
            const std::ptrdiff_t up = i0 + k;
            const std::ptrdiff_t down = i0 - k;
            if (up >= static_cast<std::ptrdiff_t>(n) || down < 0) break;
            // c_k = conj(psi(q + x_k)) psi(q - x_k) and its mirror c_{-k}
            fwd.push_back(std::conj(sample(up)) * sample(down));
            bwd.push_back(std::conj(sample(down)) * sample(up));
        }

        std::fill(acc_re.begin(), acc_re.end(), fwd[0].real());
        std::fill(acc_im.begin(), acc_im.end(), fwd[0].imag());
        std::fill(ph_re.begin(), ph_re.end(), 1.0);
        std::fill(ph_im.begin(), ph_im.end(), 0.0);
        for (std::size_t k = 1; k < fwd.size(); ++k) {
            const double fr = fwd[k].real(), fi = fwd[k].imag();
            const double br = bwd[k].real(), bi = bwd[k].imag();
            for (std::size_t j = 0; j < np; ++j) {
                const double pr = ph_re[j] * step_re[j] - ph_im[j] * step_im[j];
                const double pi = ph_re[j] * step_im[j] + ph_im[j] * step_re[j];
                ph_re[j] = pr;
                ph_im[j] = pi;
                // fwd * e^{+i phi} + bwd * e^{-i phi}
                acc_re[j] += fr * pr - fi * pi + br * pr + bi * pi;
                acc_im[j] += fr * pi + fi * pr - br * pi + bi * pr;
            }
        }
        for (std::size_t j = 0; j < np; ++j) {
            const double re = acc_re[j] * dx * kInvPi;
            const double im = acc_im[j] * dx * kInvPi;
            if (std::abs(im) > 1e-8) throw Error("asymmetric sampling");
            out[i * np + j] = re;
        }
    }
    return {qs, ps, std::move(out)};
}

double number_state_wigner(int n, double q, double p) {
    const double r2 = q * q + p * p;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * kInvPi * laguerre_poly(n, 2.0 * r2) * std::exp(-r2);
}

WignerGrid mixed_wigner(const Ensemble& ens, const std::vector<double>& qs, const std::vector<double>& ps) {
    WignerGrid total;
    for (std::size_t m = 0; m < ens.size(); ++m) {
        WignerGrid part = wigner_transform(ens.members()[m], qs, ps);
        const double weight = ens.weights()[m];
        if (m == 0) {
            total = std::move(part);
            for (double& v : total.w) v *= weight;
        } else {
            for (std::size_t k = 0; k < total.w.size(); ++k) total.w[k] += weight * part.w[k];
        }
    }
    return total;
}

IntegralIdentities integral_identities(const WignerGrid& w) {
    double total = 0.0;
    double purity = 0.0;
    for (double v : w.w) {
        total += v;
        purity += v * v;
    }
    const double cell = w.dq() * w.dp();
    return {total * cell, purity * cell};
}

Quasiprobability quasiprobability_checked(const WignerGrid& w, const Region& s) {
    const double dq = w.dq();
    const double dp = w.dp();
    const BoundingBox box = bounding_box(s);
    const double eps = 1e-12;
    const bool covered = box.q_lo >= w.qs.front() - 0.5 * dq - eps && box.q_hi <= w.qs.back() + 0.5 * dq + eps &&
                         box.p_lo >= w.ps.front() - 0.5 * dp - eps && box.p_hi <= w.ps.back() + 0.5 * dp + eps;
    bool truncated = false;
    if (!covered) {
        const std::size_t nq = w.qs.size();
        const std::size_t np = w.ps.size();
        double edge = 0.0;
        for (std::size_t j = 0; j < np; ++j) edge = std::max({edge, std::abs(w.at(0, j)), std::abs(w.at(nq - 1, j))});
        for (std::size_t i = 0; i < nq; ++i) edge = std::max({edge, std::abs(w.at(i, 0)), std::abs(w.at(i, np - 1))});
        if (edge > kTailTolerance) throw Error("uncovered region");
        truncated = true;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < w.qs.size(); ++i) {
        const double q = w.qs[i];
        if (q <= box.q_lo - dq || q >= box.q_hi + dq) continue;
        for (std::size_t j = 0; j < w.ps.size(); ++j)
            if (indicator(s, q, w.ps[j])) sum += w.at(i, j);
    }
    return {sum * dq * dp, truncated};
}

double quasiprobability(const WignerGrid& w, const Region& s) { return quasiprobability_checked(w, s).value; }

PointwiseBoundReport pointwise_bound_report(const WignerGrid& w, double allowance) {
    const auto [lo, hi] = std::minmax_element(w.w.begin(), w.w.end());
    const double eps = 1e-6 + allowance;
    const bool ok = *lo >= -kInvPi - eps && *hi <= kInvPi + eps;
    return {*lo, *hi, ok};
}

WignerGrid read_wigner_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error("wigner csv: empty input");
    const auto header = split(trim(line), ',');
    if (header.size() != 3 || trim(header[0]) != "q" || trim(header[1]) != "p" || trim(header[2]) != "w")
        throw Error("wigner csv: expected header q,p,w");
    struct Row {
        double q, p, w;
    };
    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 3) throw Error("wigner csv: line " + std::to_string(line_no) + " needs 3 columns");
        rows.push_back({parse_double(cols[0]), parse_double(cols[1]), parse_double(cols[2])});
    }
    std::vector<double> qs, ps;
    for (const Row& r : rows) {
        qs.push_back(r.q);
        ps.push_back(r.p);
    }
    for (auto* axis : {&qs, &ps}) {
        std::sort(axis->begin(), axis->end());
        axis->erase(std::unique(axis->begin(), axis->end()), axis->end());
    }
    if (rows.size() != qs.size() * ps.size()) throw Error("wigner csv: rows do not form a full rectangular grid");
    std::vector<double> w(rows.size(), 0.0);
    std::vector<char> seen(rows.size(), 0);
    for (const Row& r : rows) {
        const auto i = static_cast<std::size_t>(std::lower_bound(qs.begin(), qs.end(), r.q) - qs.begin());
        const auto j = static_cast<std::size_t>(std::lower_bound(ps.begin(), ps.end(), r.p) - ps.begin());
        const std::size_t idx = i * ps.size() + j;
        if (seen[idx]) throw Error("wigner csv: duplicate grid point (" + fmt9(r.q) + ", " + fmt9(r.p) + ")");
        seen[idx] = 1;
        w[idx] = r.w;
    }
    return {std::move(qs), std::move(ps), std::move(w)};
}

void write_wigner_csv(std::ostream& out, const WignerGrid& w) {
    out << "q,p,w\n";
    for (std::size_t i = 0; i < w.qs.size(); ++i) {
        const std::string q = fmt9(w.qs[i]);
        for (std::size_t j = 0; j < w.ps.size(); ++j) out << q << ',' << fmt9(w.ps[j]) << ',' << fmt9(w.at(i, j)) << '\n';
    }
}

} // namespace wigbound
