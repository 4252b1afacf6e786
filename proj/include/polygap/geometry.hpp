// Planar convex polygons, the triangle moduli space, and the normalized
// frame (longest side on the positive x axis) used by height-based
// arguments.
#ifndef POLYGAP_GEOMETRY_HPP
#define POLYGAP_GEOMETRY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polygap/error.hpp"

namespace polygap {

namespace geo {
constexpr double kPi = 3.14159265358979323846;
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double t, Vec2 a) { return {t * a.x, t * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Strictly convex polygon, counterclockwise, no repeated vertices.
class Polygon {
public:
    explicit Polygon(std::vector<Vec2> vertices) : v_(std::move(vertices)) {
        const std::size_t n = v_.size();
        if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
        double scale = 0.0;
        for (const auto& p : v_) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw GeometryError("polygon has a non-finite vertex");
            scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
        }
        if (scale == 0.0) throw GeometryError("polygon is a single point");
        double area2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 e0 = v_[(i + 1) % n] - v_[i];
            const Vec2 e1 = v_[(i + 2) % n] - v_[(i + 1) % n];
            if (norm(e0) <= 1e-13 * scale)
                throw GeometryError("polygon has repeated vertices (edge " +
                                    std::to_string(i) + ")");
            const double cr = cross(e0, e1);
            if (cr <= 1e-12 * norm(e0) * norm(e1))
                throw GeometryError(
                    "polygon is not strictly convex/counterclockwise at vertex " +
                    std::to_string((i + 1) % n));
            area2 += cross(v_[i], v_[(i + 1) % n]);
        }
        if (area2 <= 0.0)
            throw GeometryError("polygon vertices must be counterclockwise");
    }

    const std::vector<Vec2>& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }

private:
    std::vector<Vec2> v_;
};

inline double polygon_area(const Polygon& p) {
    const auto& v = p.vertices();
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * s;
}

/// Max pairwise vertex distance (equals the diameter for convex polygons).
inline double diameter(const Polygon& p) {
    const auto& v = p.vertices();
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            best = std::max(best, norm(v[i] - v[j]));
    return best;
}

inline Polygon scaled(const Polygon& p, double t) {
    if (!(t > 0.0)) throw DomainError("scaled: factor must be positive");
    std::vector<Vec2> w;
    w.reserve(p.size());
    for (const auto& q : p.vertices()) w.push_back({t * q.x, t * q.y});
    return Polygon(std::move(w));
}

/// Signed minimum over edges of the distance of `q` to the inside; >= -tol
/// means inside (boundary counts as inside).
inline bool polygon_contains(const Polygon& p, Vec2 q, double tol = 1e-12) {
    const auto& v = p.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 e = v[(i + 1) % v.size()] - v[i];
        if (cross(e, q - v[i]) < -tol * norm(e)) return false;
    }
    return true;
}

/// Rigid motion taking edge `pick` onto [0, L] x {0} with the polygon above;
/// the picked edge's start vertex becomes the first in the cycle.
inline Polygon normalized_on_edge(const Polygon& p, std::size_t pick) {
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    const Vec2 a = v[pick % n];
    const Vec2 e = v[(pick + 1) % n] - a;
    const double len = norm(e);
    const double c = e.x / len, s = e.y / len;
    std::vector<Vec2> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 d = v[(pick + k) % n] - a;
        w[k] = {d.x * c + d.y * s, -d.x * s + d.y * c};
    }
    w[0] = {0.0, 0.0};
    w[1].y = 0.0;
    return Polygon(std::move(w));
}

// Rigid motion taking the longest side onto [0, L] x {0} with the polygon
// above.  Ties between equally long sides (relative 1e-12) break
// lexicographically on the original vertex coordinates, so the frame is
// deterministic.
inline Polygon normalized(const Polygon& p) {
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    double longest = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        longest = std::max(longest, norm(v[(i + 1) % n] - v[i]));
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (norm(v[(i + 1) % n] - v[i]) < longest * (1.0 - 1e-12)) continue;
        if (pick == n) {
            pick = i;
            continue;
        }
        const Vec2 a = v[pick], b = v[(pick + 1) % n];
        const Vec2 c = v[i], d = v[(i + 1) % n];
        const auto key = [](Vec2 s, Vec2 t) {
            return std::array<double, 4>{s.x, s.y, t.x, t.y};
        };
        if (key(c, d) < key(a, b)) pick = i;
    }
    return normalized_on_edge(p, pick);
}

/// True when the polygon already sits in a base frame: first vertex at the
/// origin, second on the positive x axis, everything above.
inline bool in_base_frame(const Polygon& p) {
    const auto& v = p.vertices();
    const double tol = 1e-12 * diameter(p);
    if (std::fabs(v[0].x) > tol || std::fabs(v[0].y) > tol) return false;
    if (std::fabs(v[1].y) > tol || !(v[1].x > 0.0)) return false;
    for (const auto& w : v)
        if (w.y < -tol) return false;
    return true;
}

/// Height in the normalized frame: the infimal b with p inside [0,a]x[0,b]
/// once the longest side lies on the x axis.
inline double height(const Polygon& p) {
    const Polygon q = normalized(p);
    double h = 0.0;
    for (const auto& w : q.vertices()) h = std::max(h, w.y);
    return h;
}

/// x-extent [xl, xr] of the polygon at ordinate y, empty outside.
inline std::optional<std::pair<double, double>> horizontal_section(const Polygon& p,
                                                                   double y) {
    const auto& v = p.vertices();
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i], b = v[(i + 1) % v.size()];
        if ((a.y - y) * (b.y - y) > 0.0) continue;
        if (a.y == b.y) {
            if (a.y == y) {
                lo = std::min({lo, a.x, b.x});
                hi = std::max({hi, a.x, b.x});
            }
            continue;
        }
        const double t = (y - a.y) / (b.y - a.y);
        if (t < -1e-12 || t > 1.0 + 1e-12) continue;
        const double x = a.x + t * (b.x - a.x);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (hi < lo) return std::nullopt;
    return std::make_pair(lo, hi);
}

/// Upper boundary ordinate of a normalized polygon at abscissa x.
inline double upper_boundary_y(const Polygon& p, double x) {
    const auto& v = p.vertices();
    double best = -1e300;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i], b = v[(i + 1) % v.size()];
        if ((a.x - x) * (b.x - x) > 0.0) continue;
        if (a.x == b.x) {
            best = std::max({best, a.y, b.y});
            continue;
        }
        const double t = (x - a.x) / (b.x - a.x);
        if (t < -1e-12 || t > 1.0 + 1e-12) continue;
        best = std::max(best, a.y + t * (b.y - a.y));
    }
    if (best < -1e299)
        throw DomainError("upper_boundary_y: abscissa outside the polygon");
    return best;
}

// Point (alpha, beta) of the triangle moduli space: the two smallest angles
// divided by pi, with 0 < alpha <= beta <= 1 - alpha - beta.
struct TriangleClass {
    double alpha;
    double beta;

    TriangleClass(double a, double b) : alpha(a), beta(b) {
        if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b))
            throw DomainError("TriangleClass: degenerate class (alpha must be > 0)");
        const double gamma = 1.0 - a - b;
        if (!(a <= b * (1 + 1e-12)) || !(b <= gamma * (1 + 1e-12)) || !(gamma > 0.0))
            throw DomainError("TriangleClass: need 0 < alpha <= beta <= 1-alpha-beta");
    }

    // Any two angle fractions of a valid triangle, sorted into the moduli
    // triangle (the similarity class is unchanged).
    static TriangleClass canonical(double a, double b) {
        const double g = 1.0 - a - b;
        if (!(a > 0.0) || !(b > 0.0) || !(g > 0.0))
            throw DomainError("TriangleClass: angles must be positive with sum 1");
        std::array<double, 3> t{a, b, g};
        std::sort(t.begin(), t.end());
        return TriangleClass(t[0], t[1]);
    }
};

/// Triangle with base angles alpha*pi (at the origin) and beta*pi (at (1,0));
/// the longest side is the base [0,1], so the diameter is 1.
inline Polygon triangle_from_class(const TriangleClass& tc) {
    const double a = tc.alpha * geo::kPi;
    const double b = tc.beta * geo::kPi;
    const double B = std::sin(b) / std::sin(a + b); // side from the alpha vertex
    return Polygon({{0.0, 0.0}, {1.0, 0.0}, {B * std::cos(a), B * std::sin(a)}});
}

/// Uniform grid over the moduli triangle with spacing 1/(3*resolution); the
/// degenerate edge alpha = 0 is excluded by one grid step.
inline std::vector<TriangleClass> moduli_grid(int resolution) {
    if (resolution < 2) throw DomainError("moduli_grid: resolution must be >= 2");
    const double s = 1.0 / (3.0 * resolution);
    std::vector<TriangleClass> out;
    for (int i = 1; i <= resolution; ++i) {
        const double alpha = i * s;
        for (int j = i;; ++j) {
            const double beta = j * s;
            if (beta > (1.0 - alpha) / 2.0 + 1e-12) break;
            out.emplace_back(alpha, beta);
        }
    }
    return out;
}

} // namespace polygap

#endif
