#include "wigbound/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "wigbound/error.hpp"
#include "wigbound/format.hpp"

namespace wigbound {

// ---------------------------------------------------------------- polylines

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2) throw Error("piecewise-linear: need at least two knots");
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        if (!std::isfinite(knots_[i].first) || !std::isfinite(knots_[i].second))
            throw Error("piecewise-linear: knots must be finite");
        if (i > 0 && !(knots_[i].first > knots_[i - 1].first))
            throw Error("piecewise-linear: knot abscissae must strictly increase");
    }
}

PiecewiseLinear PiecewiseLinear::constant(double value, double q_lo, double q_hi) {
    return PiecewiseLinear({{q_lo, value}, {q_hi, value}});
}

double PiecewiseLinear::operator()(double q) const {
    if (!covers(q)) throw Error("piecewise-linear: q=" + fmt9(q) + " outside knot range");
    auto it = std::upper_bound(knots_.begin(), knots_.end(), q,
                               [](double v, const std::pair<double, double>& k) { return v < k.first; });
    if (it == knots_.end()) return knots_.back().second;
    if (it == knots_.begin()) return knots_.front().second;
    const auto& [q1, v1] = *it;
    const auto& [q0, v0] = *(it - 1);
    const double t = (q - q0) / (q1 - q0);
    return v0 + t * (v1 - v0);
}

double PiecewiseLinear::min_value() const {
    double m = kInf;
    for (const auto& k : knots_) m = std::min(m, k.second);
    return m;
}

double PiecewiseLinear::max_value() const {
    double m = -kInf;
    for (const auto& k : knots_) m = std::max(m, k.second);
    return m;
}

double PiecewiseLinear::integral(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    if (!covers(lo) || !covers(hi)) throw Error("piecewise-linear: integration range outside knots");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        const double a = std::max(lo, knots_[i].first);
        const double b = std::min(hi, knots_[i + 1].first);
        if (b <= a) continue;
        sum += 0.5 * ((*this)(a) + (*this)(b)) * (b - a);
    }
    return sum;
}

// ---------------------------------------------------------------- factories

Region Region::graph(double b, double c, PiecewiseLinear f1, PiecewiseLinear f2) {
    if (std::isnan(b) || std::isnan(c) || !(b < c)) throw Error("graph region: need b < c");
    if (b == kInf || c == -kInf) throw Error("graph region: b must be < +inf and c > -inf");
    if (f1.knots().empty() || f2.knots().empty()) throw Error("graph region: missing boundary functions");
    for (const PiecewiseLinear* f : {&f1, &f2}) {
        if (std::isfinite(b) && !f->covers(b)) throw Error("graph region: boundary knots must cover b");
        if (std::isfinite(c) && !f->covers(c)) throw Error("graph region: boundary knots must cover c");
    }
    // F2 >= F1 on (b, c): both are linear between the merged knot set
    std::vector<double> qs;
    for (const auto& k : f1.knots()) qs.push_back(k.first);
    for (const auto& k : f2.knots()) qs.push_back(k.first);
    const double lo = std::max({b, f1.q_min(), f2.q_min()});
    const double hi = std::min({c, f1.q_max(), f2.q_max()});
    qs.push_back(lo);
    qs.push_back(hi);
    for (double q : qs) {
        if (q < lo || q > hi) continue;
        if (f2(q) < f1(q) - 1e-12 * (1.0 + std::abs(f1(q))))
            throw Error("graph region: F2 < F1 at q=" + fmt9(q));
    }
    GraphRegion g{b, c, std::move(f1), std::move(f2)};
    return Region(std::move(g));
}

Region Region::disk(Point center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw Error("disk: radius must be positive");
    return Region(Disk{center, radius});
}

Region Region::ellipse(Point center, double semi_major, double semi_minor, double angle) {
    if (!(semi_major > 0.0) || !(semi_minor > 0.0) || !std::isfinite(semi_major) || !std::isfinite(semi_minor))
        throw Error("ellipse: semi-axes must be positive");
    if (semi_minor > semi_major) {
        std::swap(semi_major, semi_minor);
        angle += 0.5 * std::numbers::pi;
    }
    return Region(Ellipse{center, semi_major, semi_minor, angle});
}

Region Region::annulus(Point center, double r_inner, double r_outer) {
    if (!(r_inner >= 0.0) || !(r_outer > r_inner) || !std::isfinite(r_outer))
        throw Error("annulus: need 0 <= r_inner < r_outer");
    return Region(Annulus{center, r_inner, r_outer});
}

Region Region::union_of(std::vector<Region> parts) {
    if (parts.empty()) throw Error("union: no parts");
    std::vector<Region> flat;
    for (Region& r : parts) {
        if (r.is<UnionRegion>()) {
            for (const Region& sub : r.as<UnionRegion>().parts) flat.push_back(sub);
        } else {
            flat.push_back(std::move(r));
        }
    }
    Region u(UnionRegion{std::move(flat)});
    const BoundingBox box = bounding_box(u);
    const auto& ps = u.as<UnionRegion>().parts;
    if (box.bounded() && ps.size() > 1) {
        std::mt19937_64 rng(0x5eed1234ULL);
        std::uniform_real_distribution<double> uq(box.q_lo, box.q_hi);
        std::uniform_real_distribution<double> up(box.p_lo, box.p_hi);
        for (int i = 0; i < 100000; ++i) {
            const double q = uq(rng);
            const double p = up(rng);
            int hits = 0;
            for (const Region& part : ps) hits += indicator(part, q, p);
            if (hits > 1) throw Error("union: parts overlap near (" + fmt9(q) + ", " + fmt9(p) + ")");
        }
    }
    return u;
}

std::string Region::tag() const {
    struct Visitor {
        std::string operator()(const GraphRegion& g) const {
            return "graph(b=" + fmt9(g.b) + ", c=" + fmt9(g.c) + ")";
        }
        std::string operator()(const Disk& d) const {
            return "disk(r=" + fmt9(d.radius) + " at " + fmt9(d.center.q) + "," + fmt9(d.center.p) + ")";
        }
        std::string operator()(const Ellipse& e) const {
            return "ellipse(" + fmt9(e.semi_major) + "x" + fmt9(e.semi_minor) + ", angle " + fmt9(e.angle) + ")";
        }
        std::string operator()(const Annulus& a) const {
            return "annulus(" + fmt9(a.r_inner) + ".." + fmt9(a.r_outer) + ")";
        }
        std::string operator()(const UnionRegion& u) const {
            std::string s = "union[";
            for (std::size_t i = 0; i < u.parts.size(); ++i) s += (i ? "; " : "") + u.parts[i].tag();
            return s + "]";
        }
    };
    return std::visit(Visitor{}, shape_);
}

// ---------------------------------------------------------------- geometry

bool BoundingBox::bounded() const {
    return std::isfinite(q_lo) && std::isfinite(q_hi) && std::isfinite(p_lo) && std::isfinite(p_hi);
}

namespace {

int ellipse_indicator(const Ellipse& e, double q, double p) {
    const double dq = q - e.center.q;
    const double dp = p - e.center.p;
    const double c = std::cos(e.angle);
    const double s = std::sin(e.angle);
    const double u = (dq * c + dp * s) / e.semi_major;
    const double v = (-dq * s + dp * c) / e.semi_minor;
    return u * u + v * v < 1.0 ? 1 : 0;
}

} // namespace

int indicator(const Region& s, double q, double p) {
    struct Visitor {
        double q, p;
        int operator()(const GraphRegion& g) const {
            if (!(q > g.b && q < g.c) || !g.f1.covers(q) || !g.f2.covers(q)) return 0;
            return (p > g.f1(q) && p < g.f2(q)) ? 1 : 0;
        }
        int operator()(const Disk& d) const {
            const double dq = q - d.center.q;
            const double dp = p - d.center.p;
            return dq * dq + dp * dp < d.radius * d.radius ? 1 : 0;
        }
        int operator()(const Ellipse& e) const { return ellipse_indicator(e, q, p); }
        int operator()(const Annulus& a) const {
            const double dq = q - a.center.q;
            const double dp = p - a.center.p;
            const double r2 = dq * dq + dp * dp;
            return (r2 > a.r_inner * a.r_inner && r2 < a.r_outer * a.r_outer) ? 1 : 0;
        }
        int operator()(const UnionRegion& u) const {
            int sum = 0;
            for (const Region& part : u.parts) sum += indicator(part, q, p);
            return sum;
        }
    };
    return std::visit(Visitor{q, p}, s.shape());
}

double area(const Region& s) {
    struct Visitor {
        double operator()(const GraphRegion& g) const {
            if (!g.bounded()) return kInf;
            return g.f2.integral(g.b, g.c) - g.f1.integral(g.b, g.c);
        }
        double operator()(const Disk& d) const { return std::numbers::pi * d.radius * d.radius; }
        double operator()(const Ellipse& e) const { return std::numbers::pi * e.semi_major * e.semi_minor; }
        double operator()(const Annulus& a) const {
            return std::numbers::pi * (a.r_outer * a.r_outer - a.r_inner * a.r_inner);
        }
        double operator()(const UnionRegion& u) const {
            double sum = 0.0;
            for (const Region& part : u.parts) sum += area(part);
            return sum;
        }
    };
    return std::visit(Visitor{}, s.shape());
}

BoundingBox bounding_box(const Region& s) {
    struct Visitor {
        BoundingBox operator()(const GraphRegion& g) const {
            return {g.b, g.c, g.f1.min_value(), g.f2.max_value()};
        }
        BoundingBox operator()(const Disk& d) const {
            return {d.center.q - d.radius, d.center.q + d.radius, d.center.p - d.radius, d.center.p + d.radius};
        }
        BoundingBox operator()(const Ellipse& e) const {
            const double c = std::cos(e.angle);
            const double s = std::sin(e.angle);
            const double A = e.semi_major;
            const double B = e.semi_minor;
            const double wq = std::sqrt(A * A * c * c + B * B * s * s);
            const double wp = std::sqrt(A * A * s * s + B * B * c * c);
            return {e.center.q - wq, e.center.q + wq, e.center.p - wp, e.center.p + wp};
        }
        BoundingBox operator()(const Annulus& a) const {
            return (*this)(Disk{a.center, a.r_outer});
        }
        BoundingBox operator()(const UnionRegion& u) const {
            BoundingBox box{kInf, -kInf, kInf, -kInf};
            for (const Region& part : u.parts) {
                const BoundingBox b = bounding_box(part);
                box.q_lo = std::min(box.q_lo, b.q_lo);
                box.q_hi = std::max(box.q_hi, b.q_hi);
                box.p_lo = std::min(box.p_lo, b.p_lo);
                box.p_hi = std::max(box.p_hi, b.p_hi);
            }
            return box;
        }
    };
    return std::visit(Visitor{}, s.shape());
}

// ---------------------------------------------------------------- canonical maps

CanonicalMap::CanonicalMap(double alpha, double beta, double gamma, double mu, double nu, double rho)
    : alpha_(alpha), beta_(beta), gamma_(gamma), mu_(mu), nu_(nu), rho_(rho) {
    const double det = alpha * mu - beta * nu;
    if (!std::isfinite(det) || std::abs(det - 1.0) > 1e-12)
        throw Error("canonical map: alpha*mu - beta*nu must equal 1 (got " + fmt9(det) + ")");
}

CanonicalMap CanonicalMap::rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, -s, 0.0, c, s, 0.0};
}

Point CanonicalMap::operator()(Point x) const {
    return {alpha_ * x.q + beta_ * x.p + gamma_, nu_ * x.q + mu_ * x.p + rho_};
}

CanonicalMap CanonicalMap::after(const CanonicalMap& first) const {
    // [a b; n m] * [a' b'; n' m']
    const double a = alpha_ * first.alpha_ + beta_ * first.nu_;
    const double b = alpha_ * first.beta_ + beta_ * first.mu_;
    const double n = nu_ * first.alpha_ + mu_ * first.nu_;
    const double m = nu_ * first.beta_ + mu_ * first.mu_;
    const Point t = (*this)(Point{first.gamma_, first.rho_});
    return {a, b, t.q, m, n, t.p};
}

CanonicalMap CanonicalMap::inverse() const {
    // inverse of the linear part has det 1: [m -b; -n a]
    const double a = mu_;
    const double b = -beta_;
    const double n = -nu_;
    const double m = alpha_;
    return {a, b, -(a * gamma_ + b * rho_), m, n, -(n * gamma_ + m * rho_)};
}

namespace {

struct Axes {
    double major, minor, angle;
};

// Semi-axes and orientation of the ellipse M * (unit disk).
Axes ellipse_axes(double m00, double m01, double m10, double m11) {
    const double a = m00 * m00 + m01 * m01;
    const double b = m00 * m10 + m01 * m11;
    const double c = m10 * m10 + m11 * m11;
    const double mean = 0.5 * (a + c);
    const double rad = std::hypot(0.5 * (a - c), b);
    const double l1 = mean + rad;
    const double l2 = std::max(mean - rad, 0.0);
    const double angle = 0.5 * std::atan2(2.0 * b, a - c);
    return {std::sqrt(l1), std::sqrt(l2), angle};
}

bool is_rotation(const CanonicalMap& m) {
    return std::abs(m.alpha() - m.mu()) < 1e-12 && std::abs(m.beta() + m.nu()) < 1e-12;
}

} // namespace

Region apply_canonical(const Region& s, const CanonicalMap& m) {
    struct Visitor {
        const CanonicalMap& m;
        Region operator()(const GraphRegion& g) const {
            if (m.beta() != 0.0) throw Error("shape not closed under map");
            // alpha * mu = 1, so both flip sign together
            const bool flip = m.alpha() < 0.0;
            auto image = [&](const PiecewiseLinear& f) {
                std::vector<std::pair<double, double>> knots;
                for (const auto& [q, v] : f.knots()) {
                    const Point x = m(Point{q, v});
                    knots.emplace_back(x.q, x.p);
                }
                if (flip) std::reverse(knots.begin(), knots.end());
                return PiecewiseLinear(std::move(knots));
            };
            const double b = m.alpha() * g.b + m.gamma();
            const double c = m.alpha() * g.c + m.gamma();
            if (flip) return Region::graph(c, b, image(g.f2), image(g.f1));
            return Region::graph(b, c, image(g.f1), image(g.f2));
        }
        Region operator()(const Disk& d) const {
            const Point c = m(d.center);
            if (is_rotation(m)) return Region::disk(c, d.radius);
            const Axes ax = ellipse_axes(m.alpha(), m.beta(), m.nu(), m.mu());
            return Region::ellipse(c, d.radius * ax.major, d.radius * ax.minor, ax.angle);
        }
        Region operator()(const Ellipse& e) const {
            const double c = std::cos(e.angle);
            const double s = std::sin(e.angle);
            // M * R(angle) * diag(A, B)
            const double r00 = c * e.semi_major, r01 = -s * e.semi_minor;
            const double r10 = s * e.semi_major, r11 = c * e.semi_minor;
            const double m00 = m.alpha() * r00 + m.beta() * r10;
            const double m01 = m.alpha() * r01 + m.beta() * r11;
            const double m10 = m.nu() * r00 + m.mu() * r10;
            const double m11 = m.nu() * r01 + m.mu() * r11;
            const Axes ax = ellipse_axes(m00, m01, m10, m11);
            const Point center = m(e.center);
            if (std::abs(ax.major - ax.minor) <= 1e-12 * ax.major) {
                return Region::disk(center, std::sqrt(ax.major * ax.minor));
            }
            return Region::ellipse(center, ax.major, ax.minor, ax.angle);
        }
        Region operator()(const Annulus& a) const {
            if (!is_rotation(m)) throw Error("shape not closed under map");
            return Region::annulus(m(a.center), a.r_inner, a.r_outer);
        }
        Region operator()(const UnionRegion& u) const {
            std::vector<Region> parts;
            for (const Region& part : u.parts) parts.push_back(apply_canonical(part, m));
            return Region::union_of(std::move(parts));
        }
    };
    return std::visit(Visitor{m}, s.shape());
}

EllipseReduction reduce_ellipse(const Ellipse& e) {
    const double radius = std::sqrt(e.semi_major * e.semi_minor);
    const double squeeze = std::sqrt(e.semi_minor / e.semi_major);
    const CanonicalMap squash(squeeze, 0.0, 0.0, 1.0 / squeeze, 0.0, 0.0);
    const CanonicalMap map = squash.after(CanonicalMap::rotation(-e.angle))
                                 .after(CanonicalMap::translation(-e.center.q, -e.center.p));
    return {radius, map};
}

GraphRegion ellipse_to_graph(const Ellipse& e, int segments) {
    if (segments < 2) throw Error("ellipse_to_graph: need at least two segments");
    const double c = std::cos(e.angle);
    const double s = std::sin(e.angle);
    const double ia2 = 1.0 / (e.semi_major * e.semi_major);
    const double ib2 = 1.0 / (e.semi_minor * e.semi_minor);
    // a2 P^2 + 2 a1 P Q + a0 Q^2 = 1 with Q = q - q0, P = p - p0
    const double a2 = s * s * ia2 + c * c * ib2;
    const double a1 = c * s * (ia2 - ib2);
    const double a0 = c * c * ia2 + s * s * ib2;
    const double half = std::sqrt(e.semi_major * e.semi_major * c * c + e.semi_minor * e.semi_minor * s * s);
    std::vector<std::pair<double, double>> lower, upper;
    for (int k = 0; k <= segments; ++k) {
        const double Q = -half * std::cos(std::numbers::pi * k / segments);
        const double disc = std::max(0.0, a1 * a1 * Q * Q - a2 * (a0 * Q * Q - 1.0));
        const double root = (k == 0 || k == segments) ? 0.0 : std::sqrt(disc);
        const double mid = -a1 * Q / a2;
        lower.emplace_back(e.center.q + Q, e.center.p + mid - root / a2);
        upper.emplace_back(e.center.q + Q, e.center.p + mid + root / a2);
    }
    return {e.center.q - half, e.center.q + half, PiecewiseLinear(std::move(lower)),
            PiecewiseLinear(std::move(upper))};
}

} // namespace wigbound
