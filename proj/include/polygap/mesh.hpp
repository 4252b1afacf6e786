// Conforming triangulations of convex polygons.
//
// Nodes are laid out on vertical columns through every polygon vertex plus
// uniform subdivisions, each column sampled between the lower and upper
// boundary chains; consecutive columns are stitched by a monotone two-pointer
// merge.  Convexity makes the cover exact (every inter-column slice is a
// trapezoid).  A Lawson flip pass afterwards restores the local Delaunay
// property where the strip pattern violates it, rejecting flips that would
// push an edge beyond the target length.
//
// Thin polygons (height/diameter < 0.2) grade anisotropically: the vertical
// spacing is capped at height/4 so the cross direction always carries at
// least four layers, while the column spacing stays at the target; the
// element count then stays below C/h^2 with C independent of the aspect
// ratio.
#ifndef POLYGAP_MESH_HPP
#define POLYGAP_MESH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "polygap/error.hpp"
#include "polygap/geometry.hpp"

namespace polygap {

struct Mesh {
    std::vector<Vec2> nodes;
    std::vector<std::array<int, 3>> triangles; // positively oriented
    std::vector<bool> boundary;                // per node
    double h_max = 0.0;                        // longest edge
};

struct MeshGrading {
    double dx;
    double dy;
};

inline MeshGrading mesh_grading(const Polygon& p, double h_target) {
    const double d = diameter(p);
    if (!(h_target > 0.0) || h_target >= d)
        throw DomainError("mesh_grading: need 0 < h_target < diameter");
    const double c = 1.0 / std::sqrt(2.0); // diagonal edges stay <= h_target
    double ymin = 1e300, ymax = -1e300;
    for (const auto& v : p.vertices()) {
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    const double ht = ymax - ymin;
    MeshGrading g{h_target * c, h_target * c};
    if (ht / d < 0.2) g.dy = std::min(g.dy, ht / 4.0);
    return g;
}

namespace mesh_detail {

inline std::pair<double, double> vertical_section(const Polygon& p, double x) {
    const auto& v = p.vertices();
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i], b = v[(i + 1) % v.size()];
        if ((a.x - x) * (b.x - x) > 0.0) continue;
        if (a.x == b.x) {
            lo = std::min({lo, a.y, b.y});
            hi = std::max({hi, a.y, b.y});
            continue;
        }
        const double t = (x - a.x) / (b.x - a.x);
        if (t < -1e-12 || t > 1.0 + 1e-12) continue;
        const double y = a.y + t * (b.y - a.y);
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    return {lo, hi};
}

inline double tri_area2(const Mesh& m, const std::array<int, 3>& t) {
    return cross(m.nodes[t[1]] - m.nodes[t[0]], m.nodes[t[2]] - m.nodes[t[0]]);
}

// strictly-inside-circumcircle test for the quad (a,b,c,d) sharing edge a-b
inline bool incircle_violated(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) +
                       (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy) +
                       (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
    const double scale = (adx * adx + ady * ady) + (bdx * bdx + bdy * bdy) +
                         (cdx * cdx + cdy * cdy);
    return det > 1e-9 * scale * scale; // relative margin keeps ties untouched
}

inline void lawson_flips(Mesh& m, double max_edge) {
    using Edge = std::pair<int, int>;
    for (int pass = 0; pass < 20; ++pass) {
        std::map<Edge, std::vector<int>> edge_tris;
        for (int ti = 0; ti < static_cast<int>(m.triangles.size()); ++ti) {
            const auto& t = m.triangles[ti];
            for (int e = 0; e < 3; ++e) {
                int u = t[e], w = t[(e + 1) % 3];
                if (u > w) std::swap(u, w);
                edge_tris[{u, w}].push_back(ti);
            }
        }
        // one flip per triangle per pass keeps the adjacency map honest
        std::vector<char> touched(m.triangles.size(), 0);
        int flips = 0;
        for (const auto& [edge, tris] : edge_tris) {
            if (tris.size() != 2) continue;
            if (touched[tris[0]] || touched[tris[1]]) continue;
            auto& t0 = m.triangles[tris[0]];
            auto& t1 = m.triangles[tris[1]];
            int c0 = -1, c1 = -1; // vertices opposite the shared edge
            for (int v : t0)
                if (v != edge.first && v != edge.second) c0 = v;
            for (int v : t1)
                if (v != edge.first && v != edge.second) c1 = v;
            if (c0 < 0 || c1 < 0 || c0 == c1) continue;
            if (!incircle_violated(m.nodes[edge.first], m.nodes[edge.second],
                                   m.nodes[c0], m.nodes[c1]))
                continue;
            if (norm(m.nodes[c0] - m.nodes[c1]) > max_edge) continue;
            const std::array<int, 3> n0{c0, edge.first, c1};
            const std::array<int, 3> n1{c0, c1, edge.second};
            std::array<int, 3> f0 = n0, f1 = n1;
            if (tri_area2(m, f0) < 0) std::swap(f0[1], f0[2]);
            if (tri_area2(m, f1) < 0) std::swap(f1[1], f1[2]);
            if (tri_area2(m, f0) <= 0.0 || tri_area2(m, f1) <= 0.0) continue;
            t0 = f0;
            t1 = f1;
            touched[tris[0]] = touched[tris[1]] = 1;
            ++flips;
        }
        if (flips == 0) break;
    }
}

} // namespace mesh_detail

inline Mesh triangulate(const Polygon& p, MeshGrading g, double max_edge) {
    if (polygon_area(p) < 1e-14)
        throw GeometryError("triangulate: polygon area below 1e-14");
    const auto& pv = p.vertices();
    const double d = diameter(p);

    std::vector<double> xs;
    for (const auto& v : pv) xs.push_back(v.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [&](double a, double b) { return b - a <= 1e-13 * d; }),
             xs.end());

    std::vector<double> bps{xs.front()};
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double gap = xs[i + 1] - xs[i];
        // boundary-chain edges between columns run along the (straight)
        // chain pieces, so steep chains need proportionally more columns
        const auto [lo0, hi0] = mesh_detail::vertical_section(p, xs[i]);
        const auto [lo1, hi1] = mesh_detail::vertical_section(p, xs[i + 1]);
        const double chain = std::max(std::hypot(gap, hi1 - hi0),
                                      std::hypot(gap, lo1 - lo0));
        const double need = std::max(gap / g.dx, chain / max_edge);
        const int n = std::max(1, static_cast<int>(std::ceil(need - 1e-12)));
        for (int k = 1; k <= n; ++k) bps.push_back(xs[i] + gap * k / n);
    }

    Mesh m;
    std::vector<std::vector<int>> cols(bps.size());
    for (std::size_t j = 0; j < bps.size(); ++j) {
        const auto [lo, hi] = mesh_detail::vertical_section(p, bps[j]);
        const bool edge_col = (j == 0 || j + 1 == bps.size());
        if (hi - lo <= 1e-13 * d) {
            cols[j].push_back(static_cast<int>(m.nodes.size()));
            m.nodes.push_back({bps[j], lo});
            m.boundary.push_back(true);
        } else {
            const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / g.dy - 1e-12)));
            for (int k = 0; k <= n; ++k) {
                cols[j].push_back(static_cast<int>(m.nodes.size()));
                m.nodes.push_back({bps[j], lo + (hi - lo) * k / n});
                m.boundary.push_back(k == 0 || k == n || edge_col);
            }
        }
    }

    for (std::size_t j = 0; j + 1 < cols.size(); ++j) {
        const auto& L = cols[j];
        const auto& R = cols[j + 1];
        std::size_t i = 0, k = 0;
        while (i + 1 < L.size() || k + 1 < R.size()) {
            const bool advance_left =
                (i + 1 < L.size()) &&
                (k + 1 >= R.size() || m.nodes[L[i + 1]].y <= m.nodes[R[k + 1]].y);
            if (advance_left) {
                m.triangles.push_back({L[i], R[k], L[i + 1]});
                ++i;
            } else {
                m.triangles.push_back({L[i], R[k], R[k + 1]});
                ++k;
            }
        }
    }
    std::erase_if(m.triangles, [&](const std::array<int, 3>& t) {
        return mesh_detail::tri_area2(m, t) <= 0.0;
    });

    mesh_detail::lawson_flips(m, max_edge);

    m.h_max = 0.0;
    for (const auto& t : m.triangles)
        for (int e = 0; e < 3; ++e)
            m.h_max = std::max(m.h_max, norm(m.nodes[t[e]] - m.nodes[t[(e + 1) % 3]]));
    return m;
}

inline Mesh triangulate(const Polygon& p, double h_target) {
    MeshGrading g = mesh_grading(p, h_target);
    Mesh m = triangulate(p, g, h_target);
    // rare backstop: strip diagonals between slope-shifted columns can still
    // overshoot the target; shrink uniformly until the measured h_max fits
    for (int i = 0; i < 6 && m.h_max > h_target; ++i) {
        const double shrink = 0.95 * h_target / m.h_max;
        g.dx *= shrink;
        g.dy *= shrink;
        m = triangulate(p, g, h_target);
    }
    return m;
}

} // namespace polygap

#endif
