// The gap functional xi = d^2 (lambda_2 - lambda_1), its closed forms,
// certified sandwich lower bounds, proof-derived diagnostics, and the
// log-log exponent fit used by the collapse experiments.
#ifndef POLYGAP_GAP_HPP
#define POLYGAP_GAP_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "polygap/constants.hpp"
#include "polygap/error.hpp"
#include "polygap/geometry.hpp"
#include "polygap/sandwich.hpp"
#include "polygap/sector.hpp"
#include "polygap/spectrum.hpp"

namespace polygap {

inline constexpr double kUniversalGapFloor =
    9.86960440108935861883; // pi^2, best known floor for d^2 (l2 - l1)

struct BoundEntry {
    double value;
    std::string provenance;
    bool asymptotic = false; // two-term estimates carry unquantified remainders
};

struct GapReport {
    double diameter = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double xi = 0.0;
    std::vector<BoundEntry> lower_bounds;
    std::vector<BoundEntry> upper_bounds;
    std::vector<std::string> flags;
};

/// Gap report for a polygon whose first two eigenvalues are already known.
/// The diameter is always recomputed from the polygon so that
/// xi = diameter^2 (lambda2 - lambda1) holds by construction.
inline GapReport gap(const Polygon& p, const Spectrum& spectrum) {
    if (spectrum.values.size() < 2)
        throw DomainError("gap: spectrum must carry at least two eigenvalues");
    GapReport r;
    r.diameter = diameter(p);
    r.lambda1 = spectrum.values[0];
    r.lambda2 = spectrum.values[1];
    r.xi = r.diameter * r.diameter * (r.lambda2 - r.lambda1);
    r.lower_bounds.push_back({kUniversalGapFloor, "universal", false});
    r.flags = spectrum.flags;
    if (spectrum.method == SpectrumMethod::fem_raw) r.flags.push_back("fem_raw");
    return r;
}

/// Closed-form xi of an a x b rectangle (a >= b): (a^2 + b^2) 3 pi^2 / a^2.
inline double rectangle_gap(double a, double b) {
    if (!(a >= b) || !(b > 0.0)) throw DomainError("rectangle_gap: need a >= b > 0");
    return (a * a + b * b) * 3.0 * geo::kPi * geo::kPi / (a * a);
}

/// Certified lower bound lambda2(outer sector) - lambda1(inner sector) for
/// the diameter-1 triangle of the given class; both spectra are exact
/// Bessel-zero sector spectra, so domain monotonicity makes this a true
/// bound on xi.
inline double sector_sandwich_gap_bound(const TriangleClass& tc) {
    if (!(tc.alpha <= 0.25))
        throw RegimeError("sector_sandwich_gap_bound: alpha must be <= 1/4");
    const Sandwich s = sector_sandwich(tc);
    const auto& outer = std::get<PlacedSector>(s.outer);
    const auto& inner = std::get<PlacedSector>(s.inner);
    const double l2_outer = sector_spectrum(outer.spec, 2).values[1];
    const double l1_inner = sector_spectrum(inner.spec, 1).values[0];
    return l2_outer - l1_inner;
}

/// Two-term variant of the sector sandwich bound: both sector eigenvalues
/// replaced by 1/alpha^2 + c_i/alpha^(4/3) scaled to the sandwich radii.
/// Asymptotic only -- its remainder carries unquantified constants.
inline double sector_sandwich_gap_estimate(
    const TriangleClass& tc,
    const AsymptoticConstants& cs = AsymptoticConstants::reference()) {
    const Sandwich s = sector_sandwich(tc);
    const auto& outer = std::get<PlacedSector>(s.outer);
    const auto& inner = std::get<PlacedSector>(s.inner);
    const double l2_outer =
        sector_eigenvalue_estimate(tc.alpha, 2, cs) / (outer.spec.radius * outer.spec.radius);
    const double l1_inner =
        sector_eigenvalue_estimate(tc.alpha, 1, cs) / (inner.spec.radius * inner.spec.radius);
    return l2_outer - l1_inner;
}

/// Two-term eigenvalue pair (lambda1, lambda2) of the diameter-1 obtuse
/// isosceles triangle with both small angles alpha*pi.
inline std::pair<double, double> freitas_isosceles_eigenvalues(
    double alpha, const AsymptoticConstants& cs = AsymptoticConstants::reference()) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("freitas_isosceles_eigenvalues: alpha must be positive");
    if (alpha > 0.125)
        throw RegimeError("freitas_isosceles_eigenvalues: expansion is used only "
                          "for alpha <= 1/8");
    const double a2 = alpha * alpha;
    const double a43 = std::pow(alpha, 4.0 / 3.0);
    return {4.0 / a2 + 4.0 * cs.c1_prime / a43, 4.0 / a2 + 4.0 * cs.c1 / a43};
}

/// Almost-isosceles two-term bound: lambda2 of the circumscribed isosceles
/// minus lambda1 of the inscribed one, both via the two-term expansions with
/// the exact side lengths and cosine factors.  Asymptotic only.
inline double isosceles_sandwich_gap_bound(
    const TriangleClass& tc,
    const AsymptoticConstants& cs = AsymptoticConstants::reference()) {
    (void)isosceles_sandwich(tc, cs); // regime validation + containment geometry
    const double a = tc.alpha * geo::kPi;
    const double b = tc.beta * geo::kPi;
    const double A = std::sin(a) / std::sin(a + b);
    const double B = std::sin(b) / std::sin(a + b);
    const double inner_half = A * std::cos(b);  // half base of the inscribed
    const double outer_half = B * std::cos(a);  // half base of the circumscribed
    const double l1_inner =
        1.0 / (inner_half * inner_half * tc.beta * tc.beta) +
        cs.c1_prime / (inner_half * inner_half * std::pow(tc.beta, 4.0 / 3.0));
    const double l2_outer =
        1.0 / (outer_half * outer_half * tc.alpha * tc.alpha) +
        cs.c1 / (outer_half * outer_half * std::pow(tc.alpha, 4.0 / 3.0));
    return l2_outer - l1_inner;
}

/// One-dimensional Poincare bound pi^2 / height^2 on lambda_1.
inline double poincare_lower_bound(double height) {
    if (!(height > 0.0)) throw DomainError("poincare_lower_bound: height must be > 0");
    return geo::kPi * geo::kPi / (height * height);
}

/// Mass-leakage estimate ht(U)^(2/3) ht(V)^2 / (ht(U)^2 - ht(V)^2); constant
/// factors dropped, an order-of-magnitude diagnostic only.
inline double mass_leakage_bound(double ht_U, double ht_V) {
    if (!(ht_U > 0.0) || ht_V < 0.0)
        throw DomainError("mass_leakage_bound: need ht_U > 0 and ht_V >= 0");
    if (ht_V >= ht_U)
        throw RegimeError("mass_leakage_bound: requires ht_V < ht_U");
    return std::pow(ht_U, 2.0 / 3.0) * ht_V * ht_V / (ht_U * ht_U - ht_V * ht_V);
}

struct ExponentFit {
    double slope;
    double r_squared;
};

/// Least-squares slope of log(xi) against log(parameter).
inline ExponentFit fit_collapse_exponent(
    const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 3)
        throw DomainError("fit_collapse_exponent: need at least 3 samples");
    double mx = 0.0, my = 0.0;
    for (const auto& [p, xi] : samples) {
        if (!(p > 0.0) || !(xi > 0.0))
            throw DomainError("fit_collapse_exponent: samples must be positive");
        mx += std::log(p);
        my += std::log(xi);
    }
    const double n = static_cast<double>(samples.size());
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [p, xi] : samples) {
        const double dx = std::log(p) - mx;
        const double dy = std::log(xi) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0)
        throw DomainError("fit_collapse_exponent: parameters must be distinct");
    const double slope = sxy / sxx;
    const double r2 = (syy <= 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return {slope, r2};
}

} // namespace polygap

#endif
