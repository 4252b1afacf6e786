// Inscribed/circumscribed comparison domains: sector pairs at a collapsing
// vertex, approximating isosceles pairs for almost-isosceles triangles, and
// inscribed/bounding rectangle pairs for normalized polygons.
#ifndef POLYGAP_SANDWICH_HPP
#define POLYGAP_SANDWICH_HPP

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "polygap/constants.hpp"
#include "polygap/error.hpp"
#include "polygap/geometry.hpp"
#include "polygap/sector.hpp"

namespace polygap {

// A sector with a pose: apex position and start direction (angle from +x);
// it spans [start_angle, start_angle + alpha*pi].
struct PlacedSector {
    SectorSpec spec;
    Vec2 apex{0.0, 0.0};
    double start_angle = 0.0;

    bool contains(Vec2 p, double tol = 1e-12) const {
        const Vec2 d = p - apex;
        const double r = norm(d);
        if (r > spec.radius + tol) return false;
        if (r <= tol) return true;
        double ang = std::atan2(d.y, d.x) - start_angle;
        while (ang < -geo::kPi) ang += 2 * geo::kPi;
        while (ang > geo::kPi) ang -= 2 * geo::kPi;
        const double span = spec.alpha * geo::kPi;
        return ang >= -tol / std::max(r, tol) && ang <= span + tol / std::max(r, tol);
    }
};

enum class SandwichKind { sector, isosceles, rectangle };

struct Sandwich {
    SandwichKind kind;
    std::variant<PlacedSector, Polygon> inner;
    std::variant<PlacedSector, Polygon> outer;
    double area_defect = 0.0; // rectangle kind: Area(outer) - Area(inner)
};

/// Sector pair pinching a triangle at its strictly smallest angle: the outer
/// sector has radius 1 (= diameter); the inner radius is the distance from
/// the small-angle vertex to the opposite edge when the perpendicular foot
/// lands on that edge, else the shorter adjacent side.
inline Sandwich sector_sandwich(const TriangleClass& tc) {
    if (!(tc.alpha < tc.beta * (1 - 1e-12)))
        throw DomainError("sector_sandwich: alpha == beta leaves the smallest "
                          "vertex ambiguous");
    const double a = tc.alpha * geo::kPi;
    const double b = tc.beta * geo::kPi;
    const double gamma = 1.0 - tc.alpha - tc.beta;
    const double B = std::sin(b) / std::sin(a + b);
    // foot of the perpendicular from the alpha vertex lies on the opposite
    // edge iff both other angles are acute; beta*pi < pi/2 always holds in
    // the moduli triangle, so only the apex angle decides.
    const double rho_in = (gamma <= 0.5) ? std::sin(b) : B;
    return Sandwich{SandwichKind::sector,
                    PlacedSector{SectorSpec(tc.alpha, rho_in), {0.0, 0.0}, 0.0},
                    PlacedSector{SectorSpec(tc.alpha, 1.0), {0.0, 0.0}, 0.0}, 0.0};
}

/// Almost-isosceles pair: inner isosceles with base angles beta*pi sharing
/// the apex and the (1,0) vertex, outer isosceles with base angles alpha*pi
/// sharing the origin and the apex.  Valid in the regime alpha <= beta < 1/3
/// with alpha/beta above sqrt(c1'/c1).
inline Sandwich isosceles_sandwich(
    const TriangleClass& tc,
    const AsymptoticConstants& cs = AsymptoticConstants::reference()) {
    if (!(tc.beta < 1.0 / 3.0))
        throw RegimeError("isosceles_sandwich: needs collapsing angles "
                          "(alpha <= beta < 1/3)");
    const double threshold = isosceles_ratio_threshold(cs);
    if (tc.alpha / tc.beta <= threshold)
        throw RegimeError("isosceles_sandwich: alpha/beta = " +
                          std::to_string(tc.alpha / tc.beta) +
                          " is below the validity threshold " +
                          std::to_string(threshold));
    const double a = tc.alpha * geo::kPi;
    const double b = tc.beta * geo::kPi;
    const double A = std::sin(a) / std::sin(a + b);
    const double B = std::sin(b) / std::sin(a + b);
    const Vec2 apex{B * std::cos(a), B * std::sin(a)};
    // inner: angles beta*pi at both base vertices, sides A, A, 2A cos(beta*pi);
    // outer: angles alpha*pi, sides B, B, 2B cos(alpha*pi); both share the apex
    return Sandwich{
        SandwichKind::isosceles,
        Polygon({{1.0 - 2.0 * A * std::cos(b), 0.0}, {1.0, 0.0}, apex}),
        Polygon({{0.0, 0.0}, {2.0 * B * std::cos(a), 0.0}, apex}), 0.0};
}

namespace sandwich_detail {

// Width available to a base-on-axis rectangle of height t inside a
// normalized polygon: by convexity the left boundary is a convex function
// of y and the right one concave, so the binding constraints are at heights
// 0 and t only.
inline double inscribed_width(const Polygon& q, double base_len, double t) {
    const auto sec = horizontal_section(q, t);
    if (!sec) return 0.0;
    const double xl = std::max(0.0, sec->first);
    const double xr = std::min(base_len, sec->second);
    return xr - xl;
}

} // namespace sandwich_detail

/// Bounding box and the maximal-area inscribed axis-aligned rectangle with
/// base on the x axis.  A polygon already sitting in a base frame is used
/// as given (its first edge is the reference side); anything else is
/// normalized first.
inline Sandwich rectangle_sandwich(const Polygon& poly) {
    const Polygon q = in_base_frame(poly) ? poly : normalized(poly);
    const auto& v = q.vertices();
    double xmin = 0.0, xmax = 0.0, ymax = 0.0;
    for (const auto& p : v) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymax = std::max(ymax, p.y);
    }
    const double base_len = norm(v[1] - v[0]);

    // candidate heights: vertex ordinates plus the per-band critical points
    // of t * width(t) (width is piecewise linear in t)
    std::vector<double> hs;
    for (const auto& p : v)
        if (p.y > 0.0) hs.push_back(p.y);
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    std::vector<double> cand = hs;
    const double eps = 1e-9 * ymax;
    double prev = 0.0;
    for (const double t1 : hs) {
        const double t0 = prev;
        prev = t1;
        if (t1 - t0 < 4 * eps) continue;
        const double wa = sandwich_detail::inscribed_width(q, base_len, t0 + eps);
        const double wb = sandwich_detail::inscribed_width(q, base_len, t1 - eps);
        const double slope = (wb - wa) / ((t1 - eps) - (t0 + eps));
        const double c0 = wa - slope * (t0 + eps);
        if (slope < 0.0) {
            const double tstar = -c0 / (2.0 * slope);
            if (tstar > t0 && tstar < t1) cand.push_back(tstar);
        }
    }

    double best_area = 0.0, best_t = 0.0, best_xl = 0.0, best_xr = base_len;
    for (const double t : cand) {
        const auto sec = horizontal_section(q, t);
        if (!sec) continue;
        const double xl = std::max(0.0, sec->first);
        const double xr = std::min(base_len, sec->second);
        if (xr - xl <= 0.0) continue;
        const double area = t * (xr - xl);
        if (area > best_area) {
            best_area = area;
            best_t = t;
            best_xl = xl;
            best_xr = xr;
        }
    }
    if (best_area <= 0.0)
        throw GeometryError("rectangle_sandwich: no inscribed rectangle found");

    const Polygon outer(
        {{xmin, 0.0}, {xmax, 0.0}, {xmax, ymax}, {xmin, ymax}});
    const Polygon inner(
        {{best_xl, 0.0}, {best_xr, 0.0}, {best_xr, best_t}, {best_xl, best_t}});
    return Sandwich{SandwichKind::rectangle, inner, outer,
                    polygon_area(outer) - best_area};
}

} // namespace polygap

#endif
