#include "wigbound/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wigbound/error.hpp"
#include "wigbound/format.hpp"
#include "wigbound/specfun.hpp"

namespace wigbound {

namespace {

constexpr double kInvPi = 1.0 / std::numbers::pi;

// A disk narrower than this many grid cells is lumped rather than sampled.
constexpr double kResolvedCells = 2.0;

bool in_band(const GraphRegion& g, double x, double y) {
    const double s = 0.5 * (x + y);
    return s > g.b && s < g.c;
}

complex graph_edge_value(double f1, double f2, double d) {
    if (std::abs(d) < kDiagonalThreshold) return {(f2 - f1) * 0.5 * kInvPi, 0.0};
    // [e^{i d F2} - e^{i d F1}] / (2 pi i d), written without the cancellation
    const double mag = std::sin(0.5 * d * (f2 - f1)) * kInvPi / d;
    return std::polar(1.0, 0.5 * d * (f1 + f2)) * mag;
}

complex graph_kernel(const GraphRegion& g, double x, double y) {
    if (!in_band(g, x, y)) return {0.0, 0.0};
    const double s = 0.5 * (x + y);
    return graph_edge_value(g.f1(s), g.f2(s), x - y);
}

complex disk_kernel(const Point& c, double radius, double x, double y) {
    const double s = 0.5 * (x + y) - c.q;
    const double h2 = radius * radius - s * s;
    if (!(h2 > 0.0)) return {0.0, 0.0};
    const double h = std::sqrt(h2);
    const double d = x - y;
    const double mag = std::abs(d) < kDiagonalThreshold ? h * kInvPi : std::sin(d * h) * kInvPi / d;
    if (c.p == 0.0) return {mag, 0.0};
    return std::polar(1.0, d * c.p) * mag;
}

// Regions flattened into signed disks and graph pieces; an annulus is an
// outer disk minus an inner one.
struct DiskPiece {
    Point center;
    double radius;
    double sign;
};

struct Pieces {
    std::vector<DiskPiece> disks;
    std::vector<const GraphRegion*> graphs;
};

void collect(const Region& s, Pieces& out) {
    struct Visitor {
        Pieces& out;
        void operator()(const GraphRegion& g) const { out.graphs.push_back(&g); }
        void operator()(const Disk& d) const { out.disks.push_back({d.center, d.radius, 1.0}); }
        void operator()(const Ellipse&) const { throw Error("reduce to disk first"); }
        void operator()(const Annulus& a) const {
            out.disks.push_back({a.center, a.r_outer, 1.0});
            if (a.r_inner > 0.0) out.disks.push_back({a.center, a.r_inner, -1.0});
        }
        void operator()(const UnionRegion& u) const {
            for (const Region& part : u.parts) collect(part, out);
        }
    };
    std::visit(Visitor{out}, s.shape());
}

struct Nodes {
    double x0;
    double dx;
    std::size_t n;
    double x(std::ptrdiff_t i) const { return x0 + static_cast<double>(i) * dx; }
};

struct Term {
    std::size_t row;
    std::size_t col;
    complex value;
};

class Rule {
public:
    Rule(const Region& s, const Nodes& nodes, Quadrature q) : nodes_(nodes), corrected_(q == Quadrature::corrected) {
        collect(s, pieces_);
        for (const DiskPiece& d : pieces_.disks) {
            if (corrected_ && d.radius < kResolvedCells * nodes.dx) {
                lumped_.push_back(d);
            } else {
                sampled_.push_back(d);
            }
        }
        if (corrected_) build_terms();
    }

    // Point-sampled part of the kernel (unresolved disks excluded).
    complex point(double x, double y) const {
        complex k{0.0, 0.0};
        for (const DiskPiece& d : sampled_) k += d.sign * disk_kernel(d.center, d.radius, x, y);
        for (const GraphRegion* g : pieces_.graphs) k += graph_kernel(*g, x, y);
        return k;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool fully_resolved() const { return lumped_.empty(); }

private:
    void add(std::ptrdiff_t row, std::ptrdiff_t col, complex v) {
        const auto n = static_cast<std::ptrdiff_t>(nodes_.n);
        if (row < 0 || row >= n || col < 0 || col >= n || v == complex{0.0, 0.0}) return;
        terms_.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col), v});
    }

    // Spread an edge value located at fractional index lo + frac.
    void spread(std::ptrdiff_t row, std::ptrdiff_t lo, double frac, complex v) {
        add(row, lo, (1.0 - frac) * v);
        add(row, lo + 1, frac * v);
    }

    void build_terms() {
        const double dx = nodes_.dx;
        const auto n = static_cast<std::ptrdiff_t>(nodes_.n);
        for (const DiskPiece& d : sampled_) {
            // K ~ (sqrt(r)/pi) e^{i (x - Y) p0} sqrt|Y - y| next to either edge Y.
            const double scale = d.sign * std::sqrt(d.radius) * kInvPi * std::pow(dx, 1.5);
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                const double x = nodes_.x(i);
                const double y_hi = 2.0 * (d.center.q + d.radius) - x;
                const double t_hi = (y_hi - nodes_.x0) / dx;
                const auto j_hi = static_cast<std::ptrdiff_t>(std::ceil(t_hi)) - 1;
                const double th_hi = t_hi - static_cast<double>(j_hi);
                spread(i, j_hi, th_hi, -sqrt_edge_zeta(th_hi) * scale * phase(d, x - y_hi));

                const double y_lo = 2.0 * (d.center.q - d.radius) - x;
                const double t_lo = (y_lo - nodes_.x0) / dx;
                const auto j_lo = static_cast<std::ptrdiff_t>(std::floor(t_lo)) + 1;
                const double th_lo = static_cast<double>(j_lo) - t_lo;
                spread(i, j_lo - 1, 1.0 - th_lo, -sqrt_edge_zeta(th_lo) * scale * phase(d, x - y_lo));
            }
        }
        for (const GraphRegion* g : pieces_.graphs) {
            const bool upper = std::isfinite(g->c) && g->f1.covers(g->c) && g->f2.covers(g->c);
            const bool lower = std::isfinite(g->b) && g->f1.covers(g->b) && g->f2.covers(g->b);
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                const double x = nodes_.x(i);
                if (upper) {
                    const double y = 2.0 * g->c - x;
                    const double t = (y - nodes_.x0) / dx;
                    // last node inside the band; near-coincident nodes follow
                    // the kernel's own membership test
                    auto j = static_cast<std::ptrdiff_t>(std::ceil(t)) - 1;
                    const auto jr = static_cast<std::ptrdiff_t>(std::lround(t));
                    if (std::abs(t - static_cast<double>(jr)) < 1e-9) j = in_band(*g, x, nodes_.x(jr)) ? jr : jr - 1;
                    const double th = std::clamp(t - static_cast<double>(j), 0.0, 1.0);
                    const complex edge = graph_edge_value(g->f1(g->c), g->f2(g->c), x - y);
                    spread(i, j, th, -(0.5 - th) * dx * edge);
                }
                if (lower) {
                    const double y = 2.0 * g->b - x;
                    const double t = (y - nodes_.x0) / dx;
                    auto j = static_cast<std::ptrdiff_t>(std::floor(t)) + 1;
                    const auto jr = static_cast<std::ptrdiff_t>(std::lround(t));
                    if (std::abs(t - static_cast<double>(jr)) < 1e-9) j = in_band(*g, x, nodes_.x(jr)) ? jr : jr + 1;
                    const double th = std::clamp(static_cast<double>(j) - t, 0.0, 1.0);
                    const complex edge = graph_edge_value(g->f1(g->b), g->f2(g->b), x - y);
                    spread(i, j - 1, 1.0 - th, -(0.5 - th) * dx * edge);
                }
            }
        }
        if (lumped_.empty()) return;
        // Whole-row integral of a thin disk kernel, placed at the mirror point
        // y = 2 q0 - x; s = q0 + r sin(phi) removes the edge singularities.
        const QuadratureRule rule = gauss_legendre(24, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
        for (const DiskPiece& d : lumped_) {
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                const double x = nodes_.x(i);
                complex total{0.0, 0.0};
                for (std::size_t k = 0; k < rule.size(); ++k) {
                    const double h = d.radius * std::cos(rule.nodes[k]);
                    const double dist = 2.0 * (x - d.center.q - d.radius * std::sin(rule.nodes[k]));
                    const double mag = std::abs(dist) < kDiagonalThreshold ? h * kInvPi : std::sin(dist * h) * kInvPi / dist;
                    // dy = 2 ds = 2 h dphi
                    total += rule.weights[k] * 2.0 * h * mag * phase(d, dist);
                }
                const double t = (2.0 * d.center.q - x - nodes_.x0) / dx;
                const auto j = static_cast<std::ptrdiff_t>(std::floor(t));
                spread(i, j, t - static_cast<double>(j), d.sign * total);
            }
        }
    }

    static complex phase(const DiskPiece& d, double dist) {
        return d.center.p == 0.0 ? complex{1.0, 0.0} : std::polar(1.0, dist * d.center.p);
    }

    // zeta(-1/2, theta) for theta in [0, 1]; theta = 0 puts a node on the
    // edge where the kernel vanishes, the same as theta = 1.
    static double sqrt_edge_zeta(double theta) { return hurwitz_zeta(-0.5, theta > 0.0 ? theta : 1.0); }

    Nodes nodes_;
    bool corrected_;
    Pieces pieces_;
    std::vector<DiskPiece> sampled_;
    std::vector<DiskPiece> lumped_;
    std::vector<Term> terms_;
};

} // namespace

complex kernel_eval(const Region& s, double x, double y) {
    struct Visitor {
        double x, y;
        complex operator()(const GraphRegion& g) const { return graph_kernel(g, x, y); }
        complex operator()(const Disk& d) const { return disk_kernel(d.center, d.radius, x, y); }
        complex operator()(const Ellipse&) const { throw Error("reduce to disk first"); }
        complex operator()(const Annulus& a) const {
            complex k = disk_kernel(a.center, a.r_outer, x, y);
            if (a.r_inner > 0.0) k -= disk_kernel(a.center, a.r_inner, x, y);
            return k;
        }
        complex operator()(const UnionRegion& u) const {
            complex k{0.0, 0.0};
            for (const Region& part : u.parts) k += kernel_eval(part, x, y);
            return k;
        }
    };
    return std::visit(Visitor{x, y}, s.shape());
}

WavefunctionGrid apply_kernel(const Region& s, const WavefunctionGrid& psi, Quadrature q) {
    const BoundingBox box = bounding_box(s);
    if (!std::isfinite(box.q_lo) || !std::isfinite(box.q_hi) || box.q_lo < psi.x0 - 1e-12 ||
        box.q_hi > psi.x_last() + 1e-12)
        throw Error("apply_kernel: wavefunction grid does not cover the kernel support");
    const std::size_t n = psi.size();
    const Rule rule(s, {psi.x0, psi.dx, n}, q);
    std::vector<complex> out(n, complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const double x = psi.x(i);
        complex sum{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            if (psi.values[j] == complex{0.0, 0.0}) continue;
            sum += rule.point(x, psi.x(j)) * psi.values[j];
        }
        out[i] = sum * psi.dx;
    }
    for (const Term& t : rule.terms()) out[t.row] += t.value * psi.values[t.col];
    return {psi.x0, psi.dx, std::move(out)};
}

Window default_window(const Region& s) {
    const BoundingBox box = bounding_box(s);
    if (!box.bounded()) throw Error("unbounded region: declare a truncation window explicitly");
    const double extent = 0.5 * std::max(box.q_hi - box.q_lo, box.p_hi - box.p_lo);
    const double half = std::max(6.0, 2.5 * extent + 4.0);
    const double mid = box.q_mid();
    return {mid - half, mid + half};
}

std::size_t default_count(const Window& w) {
    return static_cast<std::size_t>(std::ceil((w.hi - w.lo) * 25.0)) + 1;
}

KernelMatrix assemble(const Region& s, const Window& w, std::size_t count, Quadrature q) {
    if (count < 2 || !(w.hi > w.lo)) throw Error("assemble: need a non-empty window and at least two points");
    return assemble(s, w.lo, (w.hi - w.lo) / static_cast<double>(count - 1), count, q);
}

KernelMatrix assemble(const Region& s, double x0, double dx, std::size_t count, Quadrature q) {
    if (count < 1 || !(dx > 0.0)) throw Error("assemble: need dx > 0 and at least one point");
    KernelMatrix k;
    k.x0 = x0;
    k.dx = dx;
    k.region_tag = s.tag();
    const Rule rule(s, {x0, dx, count}, q);
    const auto n = static_cast<Eigen::Index>(count);
    k.a.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double y = k.x(static_cast<std::size_t>(j));
        for (Eigen::Index i = 0; i < n; ++i) k.a(i, j) = dx * rule.point(k.x(static_cast<std::size_t>(i)), y);
    }
    for (const Term& t : rule.terms())
        k.a(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) += t.value;
    k.a = (0.5 * (k.a + k.a.adjoint())).eval();

    k.trace = k.a.diagonal().real().sum();
    const double area_s = area(s);
    k.expected_trace = area_s / (2.0 * std::numbers::pi);
    const BoundingBox box = bounding_box(s);
    const double x_hi = k.x(count - 1);
    if (!std::isfinite(area_s)) {
        k.warnings.push_back("unbounded region: trace diagnostic unavailable; spectrum depends on the declared window [" +
                             fmt9(x0) + ", " + fmt9(x_hi) + "]");
    } else {
        if (box.q_lo < x0 || box.q_hi > x_hi)
            k.warnings.push_back("window [" + fmt9(x0) + ", " + fmt9(x_hi) + "] does not contain the region's q-range");
        // a disk thinner than the grid has no meaningful diagonal samples
        if (rule.fully_resolved() && k.expected_trace > 0.0 &&
            std::abs(k.trace - k.expected_trace) > 0.01 * k.expected_trace)
            k.warnings.push_back("trace " + fmt9(k.trace) + " deviates from area/(2 pi) = " + fmt9(k.expected_trace) +
                                 " by more than 1%");
    }
    return k;
}

Region centred_for_spectrum(const Region& s) {
    if (s.is<Disk>()) return Region::disk({0.0, 0.0}, s.as<Disk>().radius);
    if (s.is<Annulus>()) {
        const Annulus& a = s.as<Annulus>();
        return Region::annulus({0.0, 0.0}, a.r_inner, a.r_outer);
    }
    return s;
}

} // namespace wigbound
