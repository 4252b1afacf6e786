// First Dirichlet eigenvalues of convex polygons: piecewise-linear conforming
// elements (exact element integrals, so every discrete eigenvalue is an upper
// bound on the true one), a shift-invert subspace iteration at shift zero
// with a sparse Cholesky factorization, and a Richardson h^2 ladder wrapped
// in `dirichlet_eigenvalues`.  Rectangles and equilateral triangles dispatch
// to their separation-of-variables / lattice closed forms.
#ifndef POLYGAP_FEM_HPP
#define POLYGAP_FEM_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "polygap/error.hpp"
#include "polygap/geometry.hpp"
#include "polygap/mesh.hpp"
#include "polygap/spectrum.hpp"

namespace polygap {

struct FemOptions {
    int dense_max_nodes = 400;          // direct dense solve below this
    int dense_fallback_max_nodes = 2000; // dense rescue if iteration stalls
    int max_iterations = 120;
    double ritz_tol = 1e-12;
};

namespace fem_detail {

using SpMat = Eigen::SparseMatrix<double>;

struct Assembled {
    SpMat K, M;
    std::vector<int> interior; // node index per interior dof
    Eigen::Vector2d lo, hi;    // node bounding box
};

inline Assembled assemble_interior(const Mesh& mesh) {
    const int nn = static_cast<int>(mesh.nodes.size());
    std::vector<int> dof(nn, -1);
    Assembled out;
    for (int i = 0; i < nn; ++i)
        if (!mesh.boundary[i]) {
            dof[i] = static_cast<int>(out.interior.size());
            out.interior.push_back(i);
        }
    const int ni = static_cast<int>(out.interior.size());
    std::vector<Eigen::Triplet<double>> tk, tm;
    tk.reserve(mesh.triangles.size() * 9);
    tm.reserve(mesh.triangles.size() * 9);
    for (const auto& t : mesh.triangles) {
        const Vec2 p0 = mesh.nodes[t[0]], p1 = mesh.nodes[t[1]], p2 = mesh.nodes[t[2]];
        const double b[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
        const double c[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
        const double area = 0.5 * cross(p1 - p0, p2 - p0);
        for (int i = 0; i < 3; ++i) {
            const int di = dof[t[i]];
            if (di < 0) continue;
            for (int j = 0; j < 3; ++j) {
                const int dj = dof[t[j]];
                if (dj < 0) continue;
                tk.emplace_back(di, dj, (b[i] * b[j] + c[i] * c[j]) / (4.0 * area));
                tm.emplace_back(di, dj, area / 12.0 * (i == j ? 2.0 : 1.0));
            }
        }
    }
    out.K.resize(ni, ni);
    out.M.resize(ni, ni);
    out.K.setFromTriplets(tk.begin(), tk.end());
    out.M.setFromTriplets(tm.begin(), tm.end());
    out.lo << 1e300, 1e300;
    out.hi << -1e300, -1e300;
    for (const auto& p : mesh.nodes) {
        out.lo.x() = std::min(out.lo.x(), p.x);
        out.lo.y() = std::min(out.lo.y(), p.y);
        out.hi.x() = std::max(out.hi.x(), p.x);
        out.hi.y() = std::max(out.hi.y(), p.y);
    }
    return out;
}

// Deterministic smooth start vectors: tensor sine modes of the bounding box
// sampled at the interior nodes, ordered by their box Rayleigh quotient.
inline Eigen::MatrixXd seed_subspace(const Mesh& mesh, const Assembled& a, int m) {
    const double W = std::max(a.hi.x() - a.lo.x(), 1e-300);
    const double H = std::max(a.hi.y() - a.lo.y(), 1e-300);
    std::vector<std::tuple<double, int, int>> modes;
    for (int i = 1; i <= 40; ++i)
        for (int j = 1; j <= 40; ++j)
            modes.emplace_back((i / W) * (i / W) + (j / H) * (j / H), i, j);
    std::sort(modes.begin(), modes.end());
    const int ni = static_cast<int>(a.interior.size());
    Eigen::MatrixXd X(ni, m);
    for (int col = 0; col < m; ++col) {
        const auto [cost, i, j] = modes[col];
        (void)cost;
        for (int r = 0; r < ni; ++r) {
            const Vec2 p = mesh.nodes[a.interior[r]];
            X(r, col) = std::sin(i * geo::kPi * (p.x - a.lo.x()) / W) *
                        std::sin(j * geo::kPi * (p.y - a.lo.y()) / H);
        }
    }
    return X;
}

inline std::vector<double> dense_eigs(const Assembled& a, int n) {
    Eigen::MatrixXd K = Eigen::MatrixXd(a.K);
    Eigen::MatrixXd M = Eigen::MatrixXd(a.M);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("dense generalized eigensolver failed");
    std::vector<double> vals(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return vals;
}

inline std::vector<double> shift_invert_eigs(const Mesh& mesh, const Assembled& a,
                                             int n, const FemOptions& opt) {
    const int ni = static_cast<int>(a.interior.size());
    const int m = std::min(ni, std::max(2 * n + 4, n + 8));
    Eigen::SimplicialLLT<SpMat> llt(a.K);
    if (llt.info() != Eigen::Success)
        throw ConvergenceError("stiffness factorization failed");

    Eigen::MatrixXd X = seed_subspace(mesh, a, m);
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(n);
    int stable = 0;
    for (int it = 0; it < opt.max_iterations; ++it) {
        const Eigen::MatrixXd Y = llt.solve(a.M * X);
        Eigen::MatrixXd Ah = Y.transpose() * (a.K * Y).eval();
        Eigen::MatrixXd Bh = Y.transpose() * (a.M * Y).eval();
        Ah = 0.5 * (Ah + Ah.transpose()).eval();
        Bh = 0.5 * (Bh + Bh.transpose()).eval();
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Ah, Bh);
        if (es.info() != Eigen::Success)
            throw ConvergenceError("projected eigensolve failed at iteration " +
                                   std::to_string(it));
        X = Y * es.eigenvectors();
        const Eigen::VectorXd theta = es.eigenvalues().head(n);
        const double delta =
            ((theta - prev).cwiseAbs().array() / theta.array().abs()).maxCoeff();
        prev = theta;
        if (delta < opt.ritz_tol) {
            if (++stable < 2) continue;
            // residual certificate before accepting
            double worst = 0.0;
            for (int k = 0; k < n; ++k) {
                const Eigen::VectorXd x = X.col(k);
                const Eigen::VectorXd mx = a.M * x;
                const double r = (a.K * x - theta(k) * mx).norm() /
                                 (theta(k) * mx.norm());
                worst = std::max(worst, r);
            }
            if (worst < 1e-8) return {theta.data(), theta.data() + n};
            stable = 0;
        } else {
            stable = 0;
        }
    }
    throw ConvergenceError("shift-invert iteration did not converge in " +
                           std::to_string(opt.max_iterations) +
                           " iterations (last ritz delta above tolerance)");
}

} // namespace fem_detail

/// n smallest Dirichlet eigenvalues of the meshed polygon (raw discrete
/// values; conforming elements make each an upper bound on the true one).
inline Spectrum fem_eigenvalues(const Mesh& mesh, int n, const FemOptions& opt = {}) {
    if (n < 1) throw DomainError("fem_eigenvalues: n must be >= 1");
    const auto a = fem_detail::assemble_interior(mesh);
    const int ni = static_cast<int>(a.interior.size());
    if (n >= ni)
        throw DomainError("fem_eigenvalues: need n < interior node count (" +
                          std::to_string(ni) + ")");
    std::vector<double> vals;
    if (ni <= opt.dense_max_nodes) {
        vals = fem_detail::dense_eigs(a, n);
    } else {
        try {
            vals = fem_detail::shift_invert_eigs(mesh, a, n, opt);
        } catch (const ConvergenceError&) {
            if (ni <= opt.dense_fallback_max_nodes)
                vals = fem_detail::dense_eigs(a, n);
            else
                throw;
        }
    }
    Spectrum s;
    s.values = std::move(vals);
    s.error_bars.assign(n, 0.0);
    s.method = SpectrumMethod::fem_raw;
    s.validate();
    return s;
}

/// Rectangle closed form: pi^2 (m^2/a^2 + k^2/b^2), a >= b.
inline Spectrum rectangle_spectrum(double a, double b, int n) {
    if (!(a >= b) || !(b > 0.0))
        throw DomainError("rectangle_spectrum: need a >= b > 0");
    if (n < 1) throw DomainError("rectangle_spectrum: n must be >= 1");
    const double pi2 = geo::kPi * geo::kPi;
    std::vector<double> vals;
    for (int m = 1;; ++m) {
        const double base = pi2 * m * m / (a * a);
        if (static_cast<int>(vals.size()) >= n) {
            std::nth_element(vals.begin(), vals.begin() + (n - 1), vals.end());
            if (base + pi2 / (b * b) > vals[n - 1]) break;
        }
        for (int k = 1;; ++k) {
            const double v = base + pi2 * k * k / (b * b);
            if (static_cast<int>(vals.size()) >= n) {
                std::nth_element(vals.begin(), vals.begin() + (n - 1), vals.end());
                if (v > vals[n - 1]) break;
            }
            vals.push_back(v);
        }
    }
    std::sort(vals.begin(), vals.end());
    vals.resize(n);
    Spectrum s;
    s.values = std::move(vals);
    s.error_bars.assign(n, 0.0);
    s.method = SpectrumMethod::closed_form_rectangle;
    return s;
}

/// Equilateral (side a) closed form: (16 pi^2 / 9 a^2)(m^2 + mn + n^2).
inline Spectrum equilateral_spectrum(double side, int n) {
    if (!(side > 0.0)) throw DomainError("equilateral_spectrum: side must be > 0");
    if (n < 1) throw DomainError("equilateral_spectrum: n must be >= 1");
    const double pref = 16.0 * geo::kPi * geo::kPi / (9.0 * side * side);
    std::vector<double> vals;
    const int M = n + 2;
    for (int m = 1; m <= M; ++m)
        for (int k = 1; k <= M; ++k)
            vals.push_back(pref * (m * m + m * k + k * k));
    std::sort(vals.begin(), vals.end());
    vals.resize(n);
    Spectrum s;
    s.values = std::move(vals);
    s.error_bars.assign(n, 0.0);
    s.method = SpectrumMethod::closed_form_equilateral;
    return s;
}

/// Side lengths (a >= b) if the polygon is numerically a rectangle.
inline std::optional<std::pair<double, double>> as_rectangle(const Polygon& p) {
    if (p.size() != 4) return std::nullopt;
    const auto& v = p.vertices();
    for (int i = 0; i < 4; ++i) {
        const Vec2 e0 = v[(i + 1) % 4] - v[i];
        const Vec2 e1 = v[(i + 2) % 4] - v[(i + 1) % 4];
        if (std::fabs(dot(e0, e1)) > 1e-12 * norm(e0) * norm(e1))
            return std::nullopt;
    }
    const double l0 = norm(v[1] - v[0]), l1 = norm(v[2] - v[1]);
    return std::make_pair(std::max(l0, l1), std::min(l0, l1));
}

/// Side length if the polygon is numerically an equilateral triangle.
inline std::optional<double> as_equilateral(const Polygon& p) {
    if (p.size() != 3) return std::nullopt;
    const auto& v = p.vertices();
    const double l0 = norm(v[1] - v[0]);
    const double l1 = norm(v[2] - v[1]);
    const double l2 = norm(v[0] - v[2]);
    const double lmax = std::max({l0, l1, l2}), lmin = std::min({l0, l1, l2});
    if (lmax - lmin > 1e-12 * lmax) return std::nullopt;
    return (l0 + l1 + l2) / 3.0;
}

struct SolveOptions {
    double h0 = 0.0;           // coarsest mesh size; 0 = diameter/6
    int min_levels = 3;        // ladder h, h/2, h/4 before the tolerance check
    int max_levels = 8;
    long node_budget = 200000; // total interior nodes across the finest level
    double thin_ratio = 0.02;  // FEM refusal threshold on height/diameter
    FemOptions fem;
};

/// First n Dirichlet eigenvalues with relative accuracy `tol`: closed forms
/// where exact, otherwise the Richardson ladder over nested meshes.
/// A budget stop flags the spectrum instead of failing.
inline Spectrum dirichlet_eigenvalues(const Polygon& p, int n, double tol,
                                      const SolveOptions& opt = {}) {
    if (n < 1) throw DomainError("dirichlet_eigenvalues: n must be >= 1");
    if (!(tol >= 1e-8))
        throw DomainError("dirichlet_eigenvalues: tol must be >= 1e-8");

    if (const auto rect = as_rectangle(p))
        return rectangle_spectrum(rect->first, rect->second, n);
    if (const auto side = as_equilateral(p))
        return equilateral_spectrum(*side, n);

    const double d = diameter(p);
    const double ht = height(p);
    if (ht / d < opt.thin_ratio)
        throw RegimeError(
            "dirichlet_eigenvalues: height/diameter = " + std::to_string(ht / d) +
            " below " + std::to_string(opt.thin_ratio) +
            "; FEM error bars are unreliable here, use the sandwich bounds");

    double h0 = opt.h0 > 0.0 ? opt.h0 : d / 6.0;
    MeshGrading g0 = mesh_grading(p, h0);
    // make sure the coarsest level already carries enough interior dofs
    for (int guard = 0; guard < 6; ++guard) {
        const Mesh m = triangulate(p, g0, h0);
        int ni = 0;
        for (bool b : m.boundary) ni += b ? 0 : 1;
        if (ni > std::max(n, 8)) break;
        h0 *= 0.5;
        g0 = mesh_grading(p, h0);
    }

    std::vector<std::vector<double>> raw;
    std::vector<double> extrap, bars, prev_extrap;
    Spectrum out;
    for (int level = 0; level < opt.max_levels; ++level) {
        const MeshGrading g{g0.dx / (1 << level), g0.dy / (1 << level)};
        const Mesh mesh = triangulate(p, g, h0 / (1 << level));
        long ni = 0;
        for (bool b : mesh.boundary) ni += b ? 0 : 1;
        if (ni > opt.node_budget) {
            out.flags.push_back("budget_exceeded");
            break;
        }
        raw.push_back(fem_eigenvalues(mesh, n, opt.fem).values);
        if (raw.size() < 2) continue;
        const auto& fine = raw.back();
        const auto& coarse = raw[raw.size() - 2];
        prev_extrap = extrap;
        extrap.assign(n, 0.0);
        bars.assign(n, 0.0);
        for (int k = 0; k < n; ++k) {
            extrap[k] = (4.0 * fine[k] - coarse[k]) / 3.0;
            bars[k] = std::fabs(fine[k] - coarse[k]) / 3.0;
            if (!prev_extrap.empty())
                bars[k] += std::fabs(extrap[k] - prev_extrap[k]);
        }
        if (static_cast<int>(raw.size()) >= opt.min_levels) {
            double worst = 0.0;
            for (int k = 0; k < n; ++k) worst = std::max(worst, bars[k] / extrap[k]);
            if (worst <= tol) break;
            if (level + 1 == opt.max_levels) out.flags.push_back("budget_exceeded");
        }
    }
    if (extrap.empty()) {
        // budget too small for even two levels: report raw values, flagged
        out.values = raw.empty() ? std::vector<double>{} : raw.back();
        out.error_bars.assign(out.values.size(), 0.0);
        for (auto& b : out.error_bars) b = 1e300;
        if (raw.empty())
            throw ConvergenceError("dirichlet_eigenvalues: node budget excludes "
                                   "even the coarsest mesh");
        out.method = SpectrumMethod::fem_raw;
        return out;
    }
    // extrapolation noise can reorder a near-degenerate pair; clamp when the
    // violation sits inside the combined bars
    for (int k = 1; k < n; ++k) {
        if (extrap[k] < extrap[k - 1]) {
            if (extrap[k - 1] - extrap[k] > bars[k] + bars[k - 1])
                throw ConvergenceError(
                    "dirichlet_eigenvalues: extrapolated values out of order "
                    "beyond their error bars");
            extrap[k] = extrap[k - 1];
        }
    }
    out.values = extrap;
    out.error_bars = bars;
    out.method = SpectrumMethod::fem_extrapolated;
    out.validate();
    return out;
}

} // namespace polygap

#endif
