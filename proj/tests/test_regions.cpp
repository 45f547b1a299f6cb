#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wigbound/error.hpp"
#include "wigbound/region_json.hpp"
#include "wigbound/regions.hpp"

using namespace wigbound;

namespace {

constexpr double kPi = std::numbers::pi;

Region unit_strip(double p_shift) {
    return Region::graph(-1.0, 1.0, PiecewiseLinear::constant(p_shift - 0.5, -1.0, 1.0),
                         PiecewiseLinear::constant(p_shift + 0.5, -1.0, 1.0));
}

Region tent() {
    return Region::graph(-1.0, 1.0, PiecewiseLinear({{-1.0, 0.0}, {1.0, 0.0}}),
                         PiecewiseLinear({{-1.0, 0.0}, {0.0, 1.5}, {1.0, 0.0}}));
}

} // namespace

TEST_CASE("piecewise linear functions") {
    const PiecewiseLinear f({{0.0, 1.0}, {1.0, 3.0}, {3.0, -1.0}});
    CHECK(f(0.5) == doctest::Approx(2.0));
    CHECK(f(2.0) == doctest::Approx(1.0));
    CHECK(f.min_value() == -1.0);
    CHECK(f.max_value() == 3.0);
    CHECK(f.integral(0.0, 3.0) == doctest::Approx(2.0 + 2.0));
    CHECK(f.integral(0.5, 2.0) == doctest::Approx(0.5 * (2.0 + 3.0) * 0.5 + 0.5 * (3.0 + 1.0)));
    CHECK_THROWS_AS(f(3.5), Error);
    CHECK_THROWS_AS(f(-0.1), Error);
    CHECK_THROWS_AS(PiecewiseLinear({{0.0, 1.0}}), Error);
    CHECK_THROWS_AS(PiecewiseLinear({{0.0, 1.0}, {0.0, 2.0}}), Error);
}

TEST_CASE("region validation") {
    CHECK_THROWS_AS(Region::disk({0.0, 0.0}, 0.0), Error);
    CHECK_THROWS_AS(Region::disk({0.0, 0.0}, -1.0), Error);
    CHECK_THROWS_AS(Region::ellipse({0.0, 0.0}, 1.0, 0.0), Error);
    CHECK_THROWS_AS(Region::annulus({0.0, 0.0}, 1.0, 1.0), Error);
    CHECK_THROWS_AS(Region::annulus({0.0, 0.0}, -0.1, 1.0), Error);
    CHECK_THROWS_AS(Region::graph(1.0, -1.0, PiecewiseLinear::constant(0.0, -1.0, 1.0),
                                  PiecewiseLinear::constant(1.0, -1.0, 1.0)),
                    Error);
    // F2 below F1
    CHECK_THROWS_AS(Region::graph(-1.0, 1.0, PiecewiseLinear::constant(1.0, -1.0, 1.0),
                                  PiecewiseLinear::constant(0.0, -1.0, 1.0)),
                    Error);
    // knots must reach the finite ends
    CHECK_THROWS_AS(Region::graph(-1.0, 2.0, PiecewiseLinear::constant(0.0, -1.0, 1.0),
                                  PiecewiseLinear::constant(1.0, -1.0, 1.0)),
                    Error);
}

TEST_CASE("swapped ellipse axes are normalised") {
    const Region e = Region::ellipse({0.0, 0.0}, 0.5, 2.0, 0.0);
    CHECK(e.as<Ellipse>().semi_major == 2.0);
    CHECK(e.as<Ellipse>().semi_minor == 0.5);
    CHECK(indicator(e, 0.0, 1.9) == 1);
    CHECK(indicator(e, 1.9, 0.0) == 0);
}

TEST_CASE("areas") {
    CHECK(area(Region::disk({3.0, 1.0}, 2.0)) == doctest::Approx(4.0 * kPi));
    CHECK(area(Region::ellipse({0.0, 0.0}, 2.0, 0.5, 0.3)) == doctest::Approx(kPi));
    CHECK(area(Region::annulus({0.0, 0.0}, 0.5, 1.0)) == doctest::Approx(0.75 * kPi));
    CHECK(area(unit_strip(0.0)) == doctest::Approx(2.0));
    CHECK(area(tent()) == doctest::Approx(1.5));
    CHECK(area(Region::union_of({unit_strip(0.0), unit_strip(2.0)})) == doctest::Approx(4.0));
    const Region half_plane =
        Region::graph(-kInf, 0.0, PiecewiseLinear::constant(-1.0, -50.0, 0.0), PiecewiseLinear::constant(1.0, -50.0, 0.0));
    CHECK(std::isinf(area(half_plane)));
    CHECK_FALSE(bounding_box(half_plane).bounded());
}

TEST_CASE("indicators treat the boundary as outside") {
    const Region d = Region::disk({0.0, 0.0}, 1.0);
    CHECK(indicator(d, 0.0, 0.0) == 1);
    CHECK(indicator(d, 1.0, 0.0) == 0);
    CHECK(indicator(d, 0.6, 0.8) == 0);
    const Region a = Region::annulus({0.0, 0.0}, 0.5, 1.0);
    CHECK(indicator(a, 0.0, 0.0) == 0);
    CHECK(indicator(a, 0.75, 0.0) == 1);
    CHECK(indicator(a, 0.5, 0.0) == 0);
    CHECK(indicator(unit_strip(0.0), 0.0, 0.5) == 0);
    CHECK(indicator(unit_strip(0.0), -1.0, 0.0) == 0);
    CHECK(indicator(unit_strip(0.0), 0.99, 0.49) == 1);
}

TEST_CASE("union indicator is the sum of the parts") {
    const Region u = Region::union_of({unit_strip(0.0), unit_strip(1.5), Region::disk({4.0, 0.0}, 1.0)});
    const auto& parts = u.as<UnionRegion>().parts;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uq(-2.0, 6.0), up(-2.0, 3.0);
    for (int k = 0; k < 2000; ++k) {
        const double q = uq(rng), p = up(rng);
        int sum = 0;
        for (const Region& part : parts) sum += indicator(part, q, p);
        CHECK(indicator(u, q, p) == sum);
        CHECK(sum <= 1);
    }
}

TEST_CASE("unions flatten and reject overlaps") {
    const Region inner = Region::union_of({unit_strip(0.0), unit_strip(2.0)});
    const Region outer = Region::union_of({inner, Region::disk({5.0, 0.0}, 1.0)});
    CHECK(outer.as<UnionRegion>().parts.size() == 3);
    CHECK_THROWS_AS(Region::union_of({Region::disk({0.0, 0.0}, 1.0), Region::disk({1.0, 0.0}, 1.0)}), Error);
    CHECK_THROWS_AS(Region::union_of({}), Error);
    // touching along a shared edge is not an overlap
    CHECK_NOTHROW(Region::union_of({unit_strip(0.0), unit_strip(1.0)}));
}

TEST_CASE("canonical maps") {
    CHECK_THROWS_AS(CanonicalMap(2.0, 0.0, 0.0, 1.0, 0.0, 0.0), Error);
    const CanonicalMap shear(1.0, 1.0, 0.3, 1.0, 0.0, -0.2);
    const CanonicalMap round = shear.inverse().after(shear);
    const Point x = round(Point{0.7, -1.1});
    CHECK(std::abs(x.q - 0.7) < 1e-14);
    CHECK(std::abs(x.p + 1.1) < 1e-14);

    const Region d = Region::disk({0.0, 0.0}, 1.0);
    const Region same = apply_canonical(d, CanonicalMap::identity());
    REQUIRE(same.is<Disk>());
    CHECK(same.as<Disk>().radius == 1.0);

    const Region moved = apply_canonical(d, CanonicalMap::translation(1.0, 0.0));
    REQUIRE(moved.is<Disk>());
    CHECK(moved.as<Disk>().center.q == 1.0);
    CHECK(moved.as<Disk>().center.p == 0.0);
}

TEST_CASE("unit shear maps the unit disk to an ellipse of area pi") {
    const Region img = apply_canonical(Region::disk({0.0, 0.0}, 1.0), CanonicalMap(1.0, 1.0, 0.0, 1.0, 0.0, 0.0));
    REQUIRE(img.is<Ellipse>());
    const Ellipse& e = img.as<Ellipse>();
    // singular values of [[1, 1], [0, 1]] (mpmath)
    CHECK(std::abs(e.semi_major - 1.6180339887498948482) < 1e-12);
    CHECK(std::abs(e.semi_minor - 0.6180339887498948482) < 1e-12);
    CHECK(std::abs(area(img) - kPi) < 1e-10);
    // boundary images of the unit circle lie on the ellipse
    for (int k = 0; k < 16; ++k) {
        const double t = 2.0 * kPi * k / 16;
        const Point b{std::cos(t) + std::sin(t), std::sin(t)};
        const double c = std::cos(e.angle), s = std::sin(e.angle);
        const double u = (b.q * c + b.p * s) / e.semi_major;
        const double v = (-b.q * s + b.p * c) / e.semi_minor;
        CHECK(std::abs(u * u + v * v - 1.0) < 1e-10);
    }
}

TEST_CASE("canonical maps preserve area") {
    const CanonicalMap m = CanonicalMap(2.0, 0.0, 1.0, 0.5, 0.0, -3.0).after(CanonicalMap::rotation(0.4));
    for (const Region& s : {Region::disk({0.5, 0.5}, 1.3), Region::ellipse({0.0, 1.0}, 2.0, 0.7, 1.1)})
        CHECK(std::abs(area(apply_canonical(s, m)) - area(s)) < 1e-10);

    const CanonicalMap squeeze(2.0, 0.0, 1.0, 0.5, 0.0, -3.0);
    CHECK(std::abs(area(apply_canonical(tent(), squeeze)) - area(tent())) < 1e-10);
    const CanonicalMap flip(-1.0, 0.0, 0.0, -1.0, 0.0, 0.0);
    const Region flipped = apply_canonical(tent(), flip);
    CHECK(std::abs(area(flipped) - area(tent())) < 1e-10);
    CHECK(indicator(flipped, 0.0, -1.0) == 1);

    CHECK(std::abs(area(apply_canonical(Region::annulus({1.0, 0.0}, 0.5, 1.0), CanonicalMap::rotation(1.0))) -
                   0.75 * kPi) < 1e-10);
    CHECK_THROWS_AS(apply_canonical(Region::annulus({0.0, 0.0}, 0.5, 1.0), squeeze), Error);
    CHECK_THROWS_AS(apply_canonical(tent(), CanonicalMap(1.0, 1.0, 0.0, 1.0, 0.0, 0.0)), Error);
}

TEST_CASE("ellipse reduction") {
    {
        const EllipseReduction r = reduce_ellipse(Region::ellipse({0.0, 0.0}, 1.5, 1.5).as<Ellipse>());
        CHECK(r.radius == doctest::Approx(1.5));
        const Point x = r.map(Point{0.3, -0.2});
        CHECK(std::abs(x.q - 0.3) < 1e-14);
        CHECK(std::abs(x.p + 0.2) < 1e-14);
    }
    CHECK(reduce_ellipse(Ellipse{{0.0, 0.0}, 2.0, 0.5, 0.0}).radius == doctest::Approx(1.0));

    for (const Ellipse& e : {Ellipse{{0.0, 0.0}, 2.0, 0.5, kPi / 3}, Ellipse{{1.2, -0.4}, 3.0, 0.2, -0.9}}) {
        const EllipseReduction r = reduce_ellipse(e);
        CHECK(std::abs(r.radius - std::sqrt(e.semi_major * e.semi_minor)) < 1e-14);
        CHECK(std::abs(r.map.alpha() * r.map.mu() - r.map.beta() * r.map.nu() - 1.0) < 1e-12);
        const double c = std::cos(e.angle), s = std::sin(e.angle);
        for (int k = 0; k < 16; ++k) {
            const double t = 2.0 * kPi * k / 16;
            const double u = e.semi_major * std::cos(t), v = e.semi_minor * std::sin(t);
            const Point b{e.center.q + u * c - v * s, e.center.p + u * s + v * c};
            const Point img = r.map(b);
            CHECK(std::abs(std::hypot(img.q, img.p) - r.radius) < 1e-10);
        }
        const Region disk = apply_canonical(Region::ellipse(e.center, e.semi_major, e.semi_minor, e.angle), r.map);
        REQUIRE(disk.is<Disk>());
        CHECK(std::abs(disk.as<Disk>().radius - r.radius) < 1e-10);
    }
}

TEST_CASE("ellipse in graph form") {
    const Ellipse e{{0.5, -0.3}, 2.0, 0.5, 0.6};
    const GraphRegion g = ellipse_to_graph(e);
    const Region r = Region::graph(g.b, g.c, g.f1, g.f2);
    CHECK(std::abs(area(r) - kPi) < 1e-5);
    const Region exact = Region::ellipse(e.center, e.semi_major, e.semi_minor, e.angle);
    const BoundingBox bg = bounding_box(r), be = bounding_box(exact);
    CHECK(std::abs(bg.q_lo - be.q_lo) < 1e-12);
    CHECK(std::abs(bg.q_hi - be.q_hi) < 1e-12);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> uq(be.q_lo, be.q_hi), up(be.p_lo, be.p_hi);
    int disagree = 0;
    for (int k = 0; k < 20000; ++k) {
        const double q = uq(rng), p = up(rng);
        disagree += indicator(r, q, p) != indicator(exact, q, p);
    }
    CHECK(disagree <= 2);
}

TEST_CASE("region json") {
    const Region d = region_from_json(nlohmann::json::parse(R"({"type":"disk","center":[1,2],"radius":0.5})"));
    REQUIRE(d.is<Disk>());
    CHECK(d.as<Disk>().center.q == 1.0);
    CHECK(d.as<Disk>().radius == 0.5);

    const Region g = region_from_json(nlohmann::json::parse(
        R"({"type":"graph","b":"-inf","c":0,"f1":[[-30,-1],[0,-1]],"f2":[[-30,1],[0,1]]})"));
    REQUIRE(g.is<GraphRegion>());
    CHECK(std::isinf(g.as<GraphRegion>().b));

    const Region u = region_from_json(nlohmann::json::parse(
        R"({"type":"union","parts":[{"type":"annulus","center":[0,0],"r_inner":0.5,"r_outer":1},
                                    {"type":"ellipse","center":[4,0],"semi_major":1,"semi_minor":0.5,"angle":0.2}]})"));
    REQUIRE(u.is<UnionRegion>());
    const Region back = region_from_json(region_to_json(u));
    CHECK(back.tag() == u.tag());
    CHECK(area(back) == doctest::Approx(area(u)));

    CHECK_THROWS_AS(region_from_json(nlohmann::json::parse(R"({"type":"square"})")), Error);
    CHECK_THROWS_AS(region_from_json(nlohmann::json::parse(R"({"type":"disk","center":[0,0]})")), Error);
    CHECK_THROWS_AS(region_from_json(nlohmann::json::parse(R"({"type":"disk","center":[0],"radius":1})")), Error);
    CHECK_THROWS_AS(region_from_json(nlohmann::json::parse(R"([1,2])")), Error);
}
