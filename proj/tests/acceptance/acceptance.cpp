// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances are pinned in code, next to each check.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "polygap/polygap.hpp"

using namespace polygap;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPi2 = kPi * kPi;

struct Harness {
    int failures = 0;

    void line(const std::string& id, bool ok, const std::string& detail,
              double seconds) {
        std::printf("[%s] %-3s %s (%.1fs)\n", ok ? "PASS" : "FAIL", id.c_str(),
                    detail.c_str(), seconds);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

std::string fmt(const char* spec, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, spec);
    std::vsnprintf(buf, sizeof buf, spec, ap);
    va_end(ap);
    return buf;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Richardson ladder on a fixed polygon bypassing the closed-form dispatch
// (criteria 2 and 3 ask for FEM accuracy on domains that have closed forms).
std::vector<double> fem_ladder(const Polygon& p, int n, double h0, int levels) {
    const MeshGrading g0 = mesh_grading(p, h0);
    std::vector<std::vector<double>> raw;
    for (int l = 0; l < levels; ++l)
        raw.push_back(
            fem_eigenvalues(triangulate(p, {g0.dx / (1 << l), g0.dy / (1 << l)},
                                        h0 / (1 << l)),
                            n)
                .values);
    std::vector<double> e(n);
    for (int k = 0; k < n; ++k)
        e[k] = (4.0 * raw.back()[k] - raw[raw.size() - 2][k]) / 3.0;
    return e;
}

// every xi computed anywhere in the suite lands here for the universal-floor
// check of criterion 7
std::vector<double> g_all_xi;

double record_xi(double xi) {
    g_all_xi.push_back(xi);
    return xi;
}

void criterion1(Harness& h) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;

    std::mt19937 rng(20260810); // fixed seed: the suite stays deterministic
    std::uniform_real_distribution<double> side(0.05, 4.0);
    for (int i = 0; i < 100 && ok; ++i) {
        double a = side(rng), b = side(rng);
        if (a < b) std::swap(a, b);
        const double direct = rectangle_gap(a, b);
        const double formula = (a * a + b * b) * 3 * kPi2 / (a * a);
        const Polygon rect({{0, 0}, {a, 0}, {a, b}, {0, b}});
        const double via_spectrum =
            record_xi(gap(rect, rectangle_spectrum(a, b, 2)).xi);
        if (std::fabs(direct - formula) > 1e-12 * formula ||
            std::fabs(via_spectrum - direct) > 1e-12 * direct) {
            ok = false;
            why = fmt("mismatch at a=%g b=%g", a, b);
        }
    }
    const double sq = record_xi(gap(Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}),
                                    rectangle_spectrum(1, 1, 2))
                                    .xi);
    if (std::fabs(sq - 6 * kPi2) > 1e-12 * sq) {
        ok = false;
        why = "xi(square) != 6 pi^2";
    }
    const double thin = record_xi(rectangle_gap(1.0, 1e-3));
    if (std::fabs(thin - 3 * kPi2) / (3 * kPi2) > 1e-5) {
        ok = false;
        why = "xi(1 x 1e-3) not within 1e-5 of 3 pi^2";
    }
    const double dt = seconds_since(t0);
    if (dt >= 1.0) {
        ok = false;
        why += " runtime over 1s";
    }
    h.line("C1", ok,
           "closed-form rectangle gap: 100 random pairs at 1e-12, square 6 pi^2, "
           "interval limit 3 pi^2" +
               (why.empty() ? "" : "; " + why),
           dt);
}

void criterion2(Harness& h) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto sq = fem_ladder(Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 1, 0.05, 3);
    const double rel_sq = std::fabs(sq[0] - 2 * kPi2) / (2 * kPi2);

    const Spectrum iso = dirichlet_eigenvalues(Polygon({{0, 0}, {1, 0}, {0, 1}}), 2,
                                               1e-6, [] {
                                                   SolveOptions o;
                                                   o.h0 = 0.05;
                                                   return o;
                                               }());
    record_xi(gap(Polygon({{0, 0}, {1, 0}, {0, 1}}), iso).xi);
    const double rel_i1 = std::fabs(iso.values[0] - 5 * kPi2) / (5 * kPi2);
    const double rel_i2 = std::fabs(iso.values[1] - 10 * kPi2) / (10 * kPi2);

    const double dt = seconds_since(t0);
    const bool ok = rel_sq < 1e-3 && rel_i1 < 2e-3 && rel_i2 < 2e-3 && dt < 60.0;
    h.line("C2", ok,
           fmt("FEM ladder accuracy: square lambda1 rel %.2e (<1e-3), right-isosceles "
               "%.2e / %.2e (<2e-3)",
               rel_sq, rel_i1, rel_i2),
           dt);
}

void criterion3(Harness& h) {
    const auto t0 = std::chrono::steady_clock::now();
    const Polygon eq({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
    const auto lam = fem_ladder(eq, 2, 0.1, 4);
    const double xi_fem = record_xi(lam[1] - lam[0]); // diameter 1
    const double rel_fem = std::fabs(xi_fem - 64 * kPi2 / 9) / (64 * kPi2 / 9);
    const double xi_exact = record_xi(gap(eq, equilateral_spectrum(1.0, 2)).xi);
    const double rel_exact = std::fabs(xi_exact - 64 * kPi2 / 9) / (64 * kPi2 / 9);
    const double dt = seconds_since(t0);
    const bool ok = rel_fem < 1e-2 && rel_exact < 1e-12;
    h.line("C3", ok,
           fmt("equilateral gap 64 pi^2/9: FEM rel %.2e (<1e-2), closed form rel %.1e "
               "(<1e-12)",
               rel_fem, rel_exact),
           dt);
}

void criterion4(Harness& h) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail = "sector two-term estimate, error ratio per halving:";
    for (int i = 1; i <= 2; ++i) {
        double prev_rem = 0.0, prev_rel = 0.0;
        std::string rems, rels;
        for (const double alpha : {0.1, 0.05, 0.025}) {
            const double exact = sector_spectrum(SectorSpec(alpha, 1.0), 2).values[i - 1];
            const double est = sector_eigenvalue_estimate(alpha, i);
            const double err = std::fabs(exact - est);
            const double rem = err * alpha * alpha; // relative to the 1/alpha^2 scale
            const double rel = err / exact;
            if (prev_rem > 0.0) {
                const double ratio = prev_rem / rem;
                rems += fmt(" %.2f", ratio);
                rels += fmt(" %.2f", prev_rel / rel);
                if (ratio < 2.0 || ratio > 3.2) ok = false;
            }
            prev_rem = rem;
            prev_rel = rel;
        }
        detail += fmt(" i=%d: [%s ] in [2.0,3.2] (plain rel-to-exact:%s)", i,
                      rems.c_str(), rels.c_str());
    }
    const double dt = seconds_since(t0);
    if (dt >= 5.0) ok = false;
    h.line("C4", ok, detail, dt);
}

void criterion5(Harness& h) {
    // (a) sandwich-bound collapse exponent at beta = 0.45
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<double, double>> two_term, certified;
    for (const double a : {0.05, 0.04, 0.03, 0.02, 0.01}) {
        const TriangleClass tc(a, 0.45);
        two_term.push_back({a, sector_sandwich_gap_estimate(tc)});
        certified.push_back({a, sector_sandwich_gap_bound(tc)});
    }
    const ExponentFit fa = fit_collapse_exponent(two_term);
    const ExponentFit fc = fit_collapse_exponent(certified);
    const bool ok_a = std::fabs(fa.slope + 4.0 / 3.0) <= 0.05;
    h.line("C5a", ok_a,
           fmt("sector sandwich bound exponent, two-term form: slope %.4f in -4/3 "
               "+- 0.05 (exact-zero certified form gives %.4f: its alpha^(-2/3) "
               "term still dominates at these alphas)",
               fa.slope, fc.slope),
           seconds_since(t0));

    // (b) FEM xi exponent along the same trajectory
    const auto t1 = std::chrono::steady_clock::now();
    std::vector<std::pair<double, double>> fem;
    std::string xis;
    for (const double a : {0.15, 0.1, 0.07, 0.05}) {
        const Polygon tri =
            triangle_from_class(TriangleClass::canonical(a, 0.45));
        SolveOptions o;
        o.h0 = 0.09;
        const Spectrum s = dirichlet_eigenvalues(tri, 2, 2e-4, o);
        const double xi = record_xi(gap(tri, s).xi);
        fem.push_back({a, xi});
        xis += fmt(" %.1f", xi);
    }
    const ExponentFit fb = fit_collapse_exponent(fem);
    const bool ok_b = std::fabs(fb.slope + 4.0 / 3.0) <= 0.2;
    h.line("C5b", ok_b,
           fmt("FEM xi exponent at beta=0.45: slope %.4f vs -4/3 +- 0.2 (xi:%s); "
               "the true gap carries alpha^(-2/3)/alpha^(-1) corrections that keep "
               "the log-log slope near -0.85 on [0.05, 0.15] -- see the decisions "
               "ledger",
               fb.slope, xis.c_str()),
           seconds_since(t1));
}

void criterion6(Harness& h) {
    const auto t0 = std::chrono::steady_clock::now();
    FamilyRunOptions opt;
    opt.solver_tol = 5e-4;

    FamilyDescriptor bounded;
    bounded.kind = FamilyKind::quad_bounded;
    bounded.schedule = {0.2, 0.1, 0.05, 0.025};
    const auto rb = run_family(bounded, opt);

    FamilyDescriptor unbounded;
    unbounded.kind = FamilyKind::quad_unbounded;
    unbounded.schedule = {0.2, 0.1, 0.05, 0.025};
    unbounded.params["x"] = 1.5;
    const auto ru = run_family(unbounded, opt);

    bool ok = true;
    std::string why;
    double bmin = 1e300, bmax = 0.0, bfinal = 0.0;
    for (const auto& e : rb) {
        if (!e.report) {
            ok = false;
            why += " bounded entry missing FEM;";
            continue;
        }
        record_xi(e.report->xi);
        bmin = std::min(bmin, e.report->xi);
        bmax = std::max(bmax, e.report->xi);
        bfinal = e.report->xi;
        if (e.verdict.verdict != Verdict::bounded) {
            ok = false;
            why += fmt(" bounded h=%g misclassified as %s;", e.parameter,
                       to_string(e.verdict.verdict));
        }
    }
    if (bmax / bmin > 2.0) {
        ok = false;
        why += fmt(" bounded max/min %.2f > 2;", bmax / bmin);
    }
    if (std::fabs(bfinal - 3 * kPi2) / (3 * kPi2) > 0.25) {
        ok = false;
        why += fmt(" bounded final %.2f not within 25%% of 3 pi^2;", bfinal);
    }

    std::vector<double> uxi;
    for (const auto& e : ru) {
        if (!e.report) {
            ok = false;
            why += " unbounded entry missing FEM;";
            continue;
        }
        record_xi(e.report->xi);
        uxi.push_back(e.report->xi);
        if (e.verdict.verdict != Verdict::unbounded) {
            ok = false;
            why += fmt(" unbounded h=%g misclassified as %s;", e.parameter,
                       to_string(e.verdict.verdict));
        }
    }
    for (std::size_t i = 1; i < uxi.size(); ++i)
        if (uxi[i] <= uxi[i - 1]) {
            ok = false;
            why += " unbounded xi not strictly increasing;";
        }
    const double ufirst = uxi.empty() ? 0.0 : uxi.front();
    const double ulast = uxi.empty() ? 0.0 : uxi.back();
    if (uxi.empty() || ulast <= 2.0 * ufirst) {
        ok = false;
        why += fmt(" xi(0.025)=%.1f not > 2 xi(0.2)=%.1f;", ulast, ufirst);
    }
    const double dt = seconds_since(t0);
    if (dt >= 600.0) {
        ok = false;
        why += " runtime over 10 min;";
    }
    h.line("C6", ok,
           fmt("collapse dichotomy: bounded xi in [%.2f, %.2f] (max/min %.2f, final "
               "vs 3 pi^2 %+.1f%%), unbounded xi %.1f -> %.1f (x%.1f), verdicts 8/8%s",
               bmin, bmax, bmax / bmin, 100 * (bfinal / (3 * kPi2) - 1), ufirst, ulast,
               ulast / std::max(ufirst, 1e-300), why.c_str()),
           dt);
}

void criterion7(Harness& h) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;

    // domain monotonicity on 20 nested pairs
    int pairs = 0;
    const auto grid5 = moduli_grid(5);
    for (const auto& tc : grid5) {
        if (pairs >= 10) break;
        const Polygon tri = triangle_from_class(tc);
        const Spectrum st = dirichlet_eigenvalues(tri, 2, 1e-3);
        record_xi(gap(tri, st).xi);
        const double w = 1.0, ht = height(tri); // triangle inside its bounding box
        const auto sb = rectangle_spectrum(std::max(w, ht), std::min(w, ht), 2);
        for (int k = 0; k < 2; ++k)
            if (st.values[k] + st.error_bars[k] < sb.values[k]) {
                ok = false;
                why += fmt(" bbox pair (%.3f,%.3f) k=%d;", tc.alpha, tc.beta, k);
            }
        ++pairs;
    }
    for (const auto& tc : grid5) {
        if (pairs >= 20) break;
        if (!(tc.alpha < tc.beta * (1 - 1e-9)) || tc.alpha > 0.25) continue;
        const Polygon tri = triangle_from_class(tc);
        const Spectrum st = dirichlet_eigenvalues(tri, 2, 1e-3);
        const Sandwich s = sector_sandwich(tc);
        const auto inner = std::get<PlacedSector>(s.inner);
        const auto si = sector_spectrum(inner.spec, 2);
        // inner sector sits inside the triangle: its eigenvalues dominate
        for (int k = 0; k < 2; ++k)
            if (si.values[k] < st.values[k] - st.error_bars[k]) {
                ok = false;
                why += fmt(" sector pair (%.3f,%.3f) k=%d;", tc.alpha, tc.beta, k);
            }
        ++pairs;
    }
    if (pairs < 20) {
        ok = false;
        why += fmt(" only %d pairs;", pairs);
    }

    // scale invariance via FEM (factor 4) and closed form (factor 2.7)
    const Polygon tri({{0, 0}, {1, 0}, {0.3, 0.4}});
    const double xi1 = gap(tri, dirichlet_eigenvalues(tri, 2, 1e-4)).xi;
    const Polygon tri4 = scaled(tri, 4.0);
    const double xi4 = gap(tri4, dirichlet_eigenvalues(tri4, 2, 1e-4)).xi;
    const double scale_rel = std::fabs(xi1 - xi4) / xi1;
    if (scale_rel > 1e-10) {
        ok = false;
        why += fmt(" FEM scale drift %.2e;", scale_rel);
    }
    const double xr1 = rectangle_gap(1.3, 0.7);
    const double xr2 = (1.3 * 2.7 * 1.3 * 2.7 + 0.7 * 2.7 * 0.7 * 2.7) * 3 * kPi2 /
                       (1.3 * 2.7 * 1.3 * 2.7);
    if (std::fabs(xr1 - xr2) / xr1 > 1e-10) {
        ok = false;
        why += " closed-form scale drift;";
    }

    // moduli scan at resolution 10
    const auto grid = moduli_grid(10);
    double min_xi = 1e300;
    std::size_t argmin = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Polygon t = triangle_from_class(grid[i]);
        const Spectrum s = dirichlet_eigenvalues(t, 2, 1e-3);
        const double xi = record_xi(gap(t, s).xi);
        if (xi < min_xi) {
            min_xi = xi;
            argmin = i;
        }
    }
    const bool at_corner = std::fabs(grid[argmin].alpha - 1.0 / 3) < 1e-9 &&
                           std::fabs(grid[argmin].beta - 1.0 / 3) < 1e-9;
    if (!at_corner) {
        ok = false;
        why += fmt(" scan argmin at (%.4f, %.4f);", grid[argmin].alpha,
                   grid[argmin].beta);
    }
    if (min_xi < (64 * kPi2 / 9) * 0.99) {
        ok = false;
        why += fmt(" scan min %.3f below 64 pi^2/9 - 1%%;", min_xi);
    }

    // universal floor over every xi computed in this suite
    int floor_violations = 0;
    for (const double xi : g_all_xi)
        if (xi < kPi2) ++floor_violations;
    if (floor_violations > 0) {
        ok = false;
        why += fmt(" %d universal-floor violations;", floor_violations);
    }

    h.line("C7", ok,
           fmt("properties: 20 monotone pairs, scale drift %.1e (<1e-10), scan min "
               "%.4f at (%.4f, %.4f) vs floor %.4f, %zu xi samples >= pi^2%s",
               scale_rel, min_xi, grid[argmin].alpha, grid[argmin].beta,
               (64 * kPi2 / 9) * 0.99, g_all_xi.size(), why.c_str()),
           seconds_since(t0));
}

void criterion8(Harness& h) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;
    for (int s = 1; s <= 10; ++s) {
        const double z = bessel_zero(BesselOrder(0.5), s);
        if (std::fabs(z - s * kPi) > 1e-10 * s * kPi) {
            ok = false;
            why += fmt(" j_{1/2,%d};", s);
        }
    }
    for (const double nu : {0.0, 1.0, 3.5, 10.0, 25.0, 50.0, 75.5, 99.0}) {
        for (int s = 1; s <= 5; ++s) {
            const double a = bessel_zero(BesselOrder(nu), s);
            const double b = bessel_zero(BesselOrder(nu + 1.0), s);
            const double c = bessel_zero(BesselOrder(nu), s + 1);
            if (!(a < b && b < c)) {
                ok = false;
                why += fmt(" interlacing nu=%g s=%d;", nu, s);
            }
        }
    }
    const auto printed = AsymptoticConstants::printed();
    if (std::fabs(printed.c1 - 3.71151827) > 5e-8 ||
        std::fabs(printed.c2 - 6.48921613) > 5e-8 ||
        std::fabs(printed.c1_prime - 1.61722832) > 5e-8) {
        ok = false;
        why += " printed constants drifted;";
    }
    h.line("C8", ok,
           fmt("special functions: half-integer zeros at s*pi (1e-10), interlacing "
               "on nu in [0,100], constants %.8f / %.8f / %.8f%s",
               printed.c1, printed.c2, printed.c1_prime, why.c_str()),
           seconds_since(t0));
}

} // namespace

int main() {
    Harness h;
    criterion1(h);
    criterion2(h);
    criterion3(h);
    criterion4(h);
    criterion5(h);
    criterion6(h);
    criterion7(h);
    criterion8(h);
    std::printf("%d criterion(s) failed\n", h.failures);
    return h.failures;
}
