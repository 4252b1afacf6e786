#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <variant>

#include "polygap/sandwich.hpp"

using namespace polygap;

namespace {

constexpr double kPi = 3.14159265358979323846;

// deterministic low-discrepancy points in [0,1]^2 (Halton, bases 2 and 3)
double halton(int index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

// sample the inner region; every accepted point must lie in the outer one
template <typename InnerContains, typename OuterContains>
void check_containment(const InnerContains& inner, const OuterContains& outer,
                       double box_w, double box_h, int wanted = 10000) {
    int accepted = 0, violations = 0;
    for (int i = 1; accepted < wanted && i < 40 * wanted; ++i) {
        const Vec2 p{halton(i, 2) * box_w, halton(i, 3) * box_h};
        if (!inner(p)) continue;
        ++accepted;
        if (!outer(p)) ++violations;
    }
    REQUIRE(accepted == wanted);
    CHECK(violations == 0);
}

} // namespace

TEST_CASE("sector sandwich radii and containment") {
    const TriangleClass tc(0.05, 0.45);
    const Sandwich s = sector_sandwich(tc);
    const auto& outer = std::get<PlacedSector>(s.outer);
    const auto& inner = std::get<PlacedSector>(s.inner);
    CHECK(outer.spec.radius == 1.0);
    // right apex angle: the foot degenerates to the vertex, radius = B
    CHECK(inner.spec.radius ==
          Catch::Approx(std::sin(0.45 * kPi) / std::sin(0.5 * kPi)).epsilon(1e-12));
    CHECK(inner.spec.radius == Catch::Approx(0.98769).margin(1e-5));

    const Polygon tri = triangle_from_class(tc);
    // triangle inside outer sector, inner sector inside triangle
    check_containment([&](Vec2 p) { return polygon_contains(tri, p, 1e-12); },
                      [&](Vec2 p) { return outer.contains(p, 1e-9); }, 1.0, 0.2);
    check_containment([&](Vec2 p) { return inner.contains(p, -1e-9); },
                      [&](Vec2 p) { return polygon_contains(tri, p, 1e-9); }, 1.0, 0.2);
}

TEST_CASE("sector sandwich with an acute apex uses the perpendicular foot") {
    const TriangleClass tc(0.1, 0.45); // apex angle 0.45 pi < pi/2
    const Sandwich s = sector_sandwich(tc);
    const auto& inner = std::get<PlacedSector>(s.inner);
    CHECK(inner.spec.radius == Catch::Approx(std::sin(0.45 * kPi)).epsilon(1e-12));
    const Polygon tri = triangle_from_class(tc);
    check_containment([&](Vec2 p) { return inner.contains(p, -1e-9); },
                      [&](Vec2 p) { return polygon_contains(tri, p, 1e-9); }, 1.0, 0.4);
}

TEST_CASE("sector sandwich rejects the isosceles ambiguity") {
    CHECK_THROWS_AS(sector_sandwich(TriangleClass(0.1, 0.1)), DomainError);
}

TEST_CASE("sector sandwich containment at (0.05, 0.3)") {
    const TriangleClass tc(0.05, 0.3);
    const Sandwich s = sector_sandwich(tc);
    const auto& outer = std::get<PlacedSector>(s.outer);
    const auto& inner = std::get<PlacedSector>(s.inner);
    const Polygon tri = triangle_from_class(tc);
    check_containment([&](Vec2 p) { return polygon_contains(tri, p, 1e-12); },
                      [&](Vec2 p) { return outer.contains(p, 1e-9); }, 1.0, 0.2);
    check_containment([&](Vec2 p) { return inner.contains(p, -1e-9); },
                      [&](Vec2 p) { return polygon_contains(tri, p, 1e-9); }, 1.0, 0.2);
}

TEST_CASE("isosceles sandwich fixed point") {
    const Sandwich s = isosceles_sandwich(TriangleClass(0.1, 0.1));
    const Polygon tri = triangle_from_class(TriangleClass(0.1, 0.1));
    const auto& inner = std::get<Polygon>(s.inner);
    const auto& outer = std::get<Polygon>(s.outer);
    for (int i = 0; i < 3; ++i) {
        CHECK(norm(inner.vertices()[i] - tri.vertices()[i]) < 1e-12);
        CHECK(norm(outer.vertices()[i] - tri.vertices()[i]) < 1e-12);
    }
}

TEST_CASE("isosceles sandwich containment inside the validity region") {
    const TriangleClass tc = TriangleClass::canonical(0.08, 0.1);
    REQUIRE(tc.alpha / tc.beta > 0.6601);
    const Sandwich s = isosceles_sandwich(tc);
    const Polygon tri = triangle_from_class(tc);
    const auto& inner = std::get<Polygon>(s.inner);
    const auto& outer = std::get<Polygon>(s.outer);
    check_containment([&](Vec2 p) { return polygon_contains(inner, p, -1e-9); },
                      [&](Vec2 p) { return polygon_contains(tri, p, 1e-9); }, 1.0, 0.3);
    check_containment([&](Vec2 p) { return polygon_contains(tri, p, -1e-9); },
                      [&](Vec2 p) { return polygon_contains(outer, p, 1e-9); }, 1.0, 0.3);
}

TEST_CASE("isosceles sandwich regime guard") {
    // 0.06/0.1 = 0.6 sits below the sqrt(c1'/c1) threshold
    CHECK_THROWS_AS(isosceles_sandwich(TriangleClass(0.06, 0.1)), RegimeError);
    CHECK_THROWS_AS(isosceles_sandwich(TriangleClass(0.3, 0.34)), RegimeError);
}

TEST_CASE("rectangle sandwich of a rectangle is exact") {
    const Polygon r({{0, 0}, {1, 0}, {1, 0.4}, {0, 0.4}});
    const Sandwich s = rectangle_sandwich(r);
    CHECK(s.area_defect == Catch::Approx(0.0).margin(1e-12));
    CHECK(polygon_area(std::get<Polygon>(s.inner)) ==
          Catch::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("rectangle sandwich of the capped trapezoid has h^3 defect") {
    // right trapezoid with parallel vertical sides h and h - h^3, already in
    // its base frame: the best inscribed rectangle is the full-width one of
    // height h - h^3, so the defect is exactly h^3
    for (const double h : {0.2, 0.1, 0.05}) {
        const Polygon t({{0, 0}, {1, 0}, {1, h - h * h * h}, {0, h}});
        const Sandwich s = rectangle_sandwich(t);
        INFO("h=" << h);
        CHECK(s.area_defect == Catch::Approx(h * h * h).epsilon(1e-9));
        CHECK(s.area_defect > 0.0);
    }
}

TEST_CASE("rectangle sandwich of a triangle against the sweep oracle") {
    const double h = 0.3;
    const Polygon tri({{0, 0}, {1, 0}, {0.4, h}});
    const Sandwich s = rectangle_sandwich(tri);
    // brute-force height sweep at resolution 1e-4
    double best = 0.0;
    for (int i = 1; i <= 10000; ++i) {
        const double t = h * i / 10001.0;
        const auto sec = horizontal_section(tri, t);
        if (!sec) continue;
        best = std::max(best, t * (std::min(1.0, sec->second) - std::max(0.0, sec->first)));
    }
    const double defect_oracle = polygon_area(std::get<Polygon>(s.outer)) - best;
    CHECK(s.area_defect == Catch::Approx(defect_oracle).margin(2e-4));
    CHECK(s.area_defect > 0.0);
    CHECK(s.area_defect < h);
}
