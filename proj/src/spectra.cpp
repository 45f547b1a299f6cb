#include "wigbound/spectra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "wigbound/error.hpp"
#include "wigbound/format.hpp"
#include "wigbound/specfun.hpp"

namespace wigbound {

const char* to_string(Method m) { return m == Method::exact ? "exact" : "nystrom"; }

namespace {

void require_hermitian(const KernelMatrix& k) {
    if (k.a.rows() != k.a.cols()) throw Error("kernel matrix is not square");
    const double asym = (k.a - k.a.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) throw Error("kernel matrix is not Hermitian (deviation " + fmt9(asym) + ")");
}

bool is_real(const Eigen::MatrixXcd& a) { return a.imag().cwiseAbs().maxCoeff() == 0.0; }

WavefunctionGrid as_state(const KernelMatrix& k, const Eigen::VectorXcd& v) {
    const double scale = 1.0 / std::sqrt(k.dx);
    std::vector<complex> values(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) values[static_cast<std::size_t>(i)] = v(i) * scale;
    return {k.x0, k.dx, std::move(values)};
}

} // namespace

SpectrumResult extremal_eigenvalues(const KernelMatrix& k, bool with_vectors) {
    require_hermitian(k);
    SpectrumResult r;
    r.method = Method::nystrom;
    r.warnings = k.warnings;
    if (k.a.rows() == 0) return r;

    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
    if (is_real(k.a)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k.a.real());
        if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
        values = solver.eigenvalues();
        vectors = solver.eigenvectors().cast<complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(k.a);
        if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
        values = solver.eigenvalues();
        vectors = solver.eigenvectors();
    }
    const Eigen::Index last = values.size() - 1;
    r.lambda_min = values(0);
    r.lambda_max = values(last);
    const Eigen::VectorXcd v_min = vectors.col(0);
    const Eigen::VectorXcd v_max = vectors.col(last);
    r.residual = std::max((k.a * v_min - r.lambda_min * v_min).norm(), (k.a * v_max - r.lambda_max * v_max).norm());
    if (with_vectors) {
        r.minimizer = as_state(k, v_min);
        r.maximizer = as_state(k, v_max);
    }
    return r;
}

std::vector<double> eigenvalues(const KernelMatrix& k) {
    require_hermitian(k);
    Eigen::VectorXd values;
    if (is_real(k.a)) {
        values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(k.a.real(), Eigen::EigenvaluesOnly).eigenvalues();
    } else {
        values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(k.a, Eigen::EigenvaluesOnly).eigenvalues();
    }
    return {values.data(), values.data() + values.size()};
}

double disk_eigenvalue(int n, double a) {
    if (n < 0) throw Error("disk_eigenvalue: negative index");
    if (!(a >= 0.0)) throw Error("disk_eigenvalue: radius must be non-negative");
    if (a == 0.0) return 0.0;
    const QuadratureRule rule = gauss_legendre(n + 32, 0.0, a * a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double u = rule.nodes[i];
        sum += rule.weights[i] * laguerre_poly(n, 2.0 * u) * std::exp(-u);
    }
    return (n % 2 == 0) ? sum : -sum;
}

double annulus_eigenvalue(int n, double r1, double r2) {
    if (!(r1 >= 0.0) || !(r2 > r1)) throw Error("annulus_eigenvalue: need 0 <= r1 < r2");
    return disk_eigenvalue(n, r2) - disk_eigenvalue(n, r1);
}

int envelope_cutoff(double radius) { return std::max(50, static_cast<int>(std::ceil(10.0 * radius * radius))); }

namespace {

// Tie tolerance between branch values; equal branches resolve to the smaller n.
constexpr double kTie = 1e-13;

void flag_cutoff(SpectrumResult& r, int cutoff) {
    if ((r.n_min && *r.n_min == cutoff) || (r.n_max && *r.n_max == cutoff))
        r.warnings.push_back("extremal index reached the scan cutoff N=" + std::to_string(cutoff) +
                             "; increase n_max");
}

} // namespace

SpectrumResult disk_envelope(double a, std::optional<int> n_max) {
    if (!(a >= 0.0)) throw Error("disk_envelope: radius must be non-negative");
    const int cutoff = n_max.value_or(envelope_cutoff(a));
    if (cutoff < 0) throw Error("disk_envelope: n_max must be non-negative");
    SpectrumResult r;
    r.method = Method::exact;
    r.lambda_max = disk_eigenvalue(0, a);
    r.n_max = 0;
    r.lambda_min = r.lambda_max;
    r.n_min = 0;
    for (int n = 1; n <= cutoff; ++n) {
        const double v = disk_eigenvalue(n, a);
        if (v < r.lambda_min - kTie) {
            r.lambda_min = v;
            r.n_min = n;
        }
    }
    if (a > 0.0) flag_cutoff(r, cutoff);
    return r;
}

SpectrumResult annulus_envelope(double r1, double r2, std::optional<int> n_max) {
    if (!(r1 >= 0.0) || !(r2 > r1)) throw Error("annulus_envelope: need 0 <= r1 < r2");
    const int cutoff = n_max.value_or(envelope_cutoff(r2));
    if (cutoff < 0) throw Error("annulus_envelope: n_max must be non-negative");
    SpectrumResult r;
    r.method = Method::exact;
    r.lambda_min = r.lambda_max = annulus_eigenvalue(0, r1, r2);
    r.n_min = r.n_max = 0;
    for (int n = 1; n <= cutoff; ++n) {
        const double v = annulus_eigenvalue(n, r1, r2);
        if (v < r.lambda_min - kTie) {
            r.lambda_min = v;
            r.n_min = n;
        }
        if (v > r.lambda_max + kTie) {
            r.lambda_max = v;
            r.n_max = n;
        }
    }
    flag_cutoff(r, cutoff);
    return r;
}

double crossing_radius(int n) {
    if (n < 1) throw Error("crossing_radius: n must be >= 1");
    // lambda_n - lambda_{n+1} = int_0^A g(u) e^{-u} du with g integrating to zero
    // over [0, inf), so it equals -e^{-A} int_0^inf g(A + t) e^{-t} dt. The
    // scaled tail keeps its sign where the raw difference underflows into noise.
    const QuadratureRule tail = gauss_laguerre(n + 2);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const auto scaled_gap = [&](double a) {
        const double A = a * a;
        double sum = 0.0;
        for (std::size_t i = 0; i < tail.size(); ++i) {
            const double x = 2.0 * (A + tail.nodes[i]);
            sum += tail.weights[i] * (laguerre_poly(n, x) + laguerre_poly(n + 1, x));
        }
        return -sign * sum;
    };

    const double step = 0.01;
    const int top = static_cast<int>(std::lround((n + 3) / step));
    double hi = top * step;
    double f_hi = scaled_gap(hi);
    for (int k = top - 1; k >= 1; --k) {
        double lo = k * step;
        double f_lo = scaled_gap(lo);
        if (f_lo == 0.0) return lo;
        if ((f_lo < 0.0) != (f_hi < 0.0)) {
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = scaled_gap(mid);
                if (f_mid == 0.0) return mid;
                if ((f_mid < 0.0) == (f_lo < 0.0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        hi = lo;
        f_hi = f_lo;
    }
    throw Error("crossing_radius: no bracket found for n=" + std::to_string(n));
}


std::optional<double> equivalent_disk_radius(const Region& s) {
    if (s.is<Disk>()) return s.as<Disk>().radius;
    if (s.is<Ellipse>()) return reduce_ellipse(s.as<Ellipse>()).radius;
    return std::nullopt;
}

namespace {

Region graph_parts(const Region& s) {
    if (s.is<Ellipse>()) {
        GraphRegion g = ellipse_to_graph(s.as<Ellipse>());
        return Region::graph(g.b, g.c, std::move(g.f1), std::move(g.f2));
    }
    if (s.is<UnionRegion>()) {
        std::vector<Region> parts;
        for (const Region& p : s.as<UnionRegion>().parts) parts.push_back(graph_parts(p));
        return Region::union_of(std::move(parts));
    }
    return s;
}

} // namespace

Region kernel_ready(const Region& s) {
    if (s.is<Ellipse>()) {
        // spectra are invariant under the translation to the origin
        const Ellipse& e = s.as<Ellipse>();
        return graph_parts(Region::ellipse({0.0, 0.0}, e.semi_major, e.semi_minor, e.angle));
    }
    return graph_parts(centred_for_spectrum(s));
}

SpectrumResult region_bounds(const Region& s, const BoundsOptions& opts) {
    const bool closed_form = s.is<Disk>() || s.is<Ellipse>() || s.is<Annulus>();
    if (opts.mode == BoundsMode::exact && !closed_form)
        throw Error("no closed-form spectrum for " + s.tag() + "; use numeric mode");
    if (closed_form && opts.mode != BoundsMode::numeric) {
        if (s.is<Annulus>()) {
            const Annulus& a = s.as<Annulus>();
            return annulus_envelope(a.r_inner, a.r_outer, opts.n_max);
        }
        return disk_envelope(*equivalent_disk_radius(s), opts.n_max);
    }

    const Region numeric = kernel_ready(s);
    Window w{0.0, 0.0};
    if (opts.window) {
        if (!(*opts.window > 0.0)) throw Error("window half-width must be positive");
        const BoundingBox box = bounding_box(numeric);
        const double mid = std::isfinite(box.q_mid()) ? box.q_mid() : 0.0;
        w = {mid - *opts.window, mid + *opts.window};
    } else {
        w = default_window(numeric);
    }
    const std::size_t count = opts.grid_count.value_or(default_count(w));
    return extremal_eigenvalues(assemble(numeric, w, count));
}

} // namespace wigbound
