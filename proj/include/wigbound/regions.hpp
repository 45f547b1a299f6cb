#pragma once

// Phase-plane subregions: graph regions b < q < c, F1(q) < p < F2(q), plus
// disks, ellipses, annuli and disjoint unions of these. Boundary points are
// outside. Coordinates are dimensionless (areas in units of hbar).

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wigbound {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Point {
    double q = 0.0;
    double p = 0.0;
};

/// Polyline through (q, value) knots with strictly increasing q. Evaluating
/// outside [front().q, back().q] throws.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    explicit PiecewiseLinear(std::vector<std::pair<double, double>> knots);
    static PiecewiseLinear constant(double value, double q_lo, double q_hi);

    double operator()(double q) const;
    bool covers(double q) const { return !knots_.empty() && q >= knots_.front().first && q <= knots_.back().first; }
    double q_min() const { return knots_.front().first; }
    double q_max() const { return knots_.back().first; }
    double min_value() const;
    double max_value() const;

    /// Exact integral over [lo, hi] (within the knot range).
    double integral(double lo, double hi) const;

    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

private:
    std::vector<std::pair<double, double>> knots_;
};

struct GraphRegion {
    double b = -kInf;
    double c = kInf;
    PiecewiseLinear f1; // lower boundary
    PiecewiseLinear f2; // upper boundary

    bool bounded() const { return std::isfinite(b) && std::isfinite(c); }
};

struct Disk {
    Point center;
    double radius = 1.0;
};

struct Ellipse {
    Point center;
    double semi_major = 1.0;
    double semi_minor = 1.0;
    double angle = 0.0; // direction of the major axis, radians from the q axis
};

struct Annulus {
    Point center;
    double r_inner = 0.0;
    double r_outer = 1.0;
};

class Region;

struct UnionRegion {
    std::vector<Region> parts;
};

class Region {
public:
    using Shape = std::variant<GraphRegion, Disk, Ellipse, Annulus, UnionRegion>;

    // Validating factories.
    static Region graph(double b, double c, PiecewiseLinear f1, PiecewiseLinear f2);
    static Region disk(Point center, double radius);
    static Region ellipse(Point center, double semi_major, double semi_minor, double angle = 0.0);
    static Region annulus(Point center, double r_inner, double r_outer);
    /// Flattens nested unions; rejects overlapping parts (Monte Carlo check).
    static Region union_of(std::vector<Region> parts);

    const Shape& shape() const { return shape_; }
    template <class T> bool is() const { return std::holds_alternative<T>(shape_); }
    template <class T> const T& as() const { return std::get<T>(shape_); }

    std::string tag() const;

private:
    explicit Region(Shape shape) : shape_(std::move(shape)) {}
    Shape shape_;
};

struct BoundingBox {
    double q_lo, q_hi, p_lo, p_hi;

    bool bounded() const;
    double q_mid() const { return 0.5 * (q_lo + q_hi); }
    double p_mid() const { return 0.5 * (p_lo + p_hi); }
};

/// 1 iff (q, p) lies strictly inside s.
int indicator(const Region& s, double q, double p);

/// Exact area; +inf for unbounded graph regions.
double area(const Region& s);

BoundingBox bounding_box(const Region& s);

/// Affine unimodular map q' = alpha q + beta p + gamma, p' = nu q + mu p + rho.
class CanonicalMap {
public:
    CanonicalMap(double alpha, double beta, double gamma, double mu, double nu, double rho);

    static CanonicalMap identity() { return {1, 0, 0, 1, 0, 0}; }
    static CanonicalMap translation(double dq, double dp) { return {1, 0, dq, 1, 0, dp}; }
    static CanonicalMap rotation(double theta);

    Point operator()(Point x) const;
    /// this after first
    CanonicalMap after(const CanonicalMap& first) const;
    CanonicalMap inverse() const;

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    double mu() const { return mu_; }
    double nu() const { return nu_; }
    double rho() const { return rho_; }

private:
    double alpha_, beta_, gamma_, mu_, nu_, rho_;
};

/// Image of s under m. Disks and ellipses map to the ellipse family; annuli
/// only under rigid motions; graph regions only when beta == 0.
Region apply_canonical(const Region& s, const CanonicalMap& m);

struct EllipseReduction {
    double radius;    // sqrt(semi_major * semi_minor): same area
    CanonicalMap map; // takes the ellipse onto the centered disk of that radius
};

EllipseReduction reduce_ellipse(const Ellipse& e);

/// Graph form of an ellipse, F1/F2 sampled at `segments + 1` Chebyshev-spaced knots.
GraphRegion ellipse_to_graph(const Ellipse& e, int segments = 4000);

} // namespace wigbound
