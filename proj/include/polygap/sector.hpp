// Closed-form Dirichlet spectra of circular sectors and the thin-sector
// two-term eigenvalue estimates.
//
// A sector of opening angle alpha*pi and radius r has eigenvalues
// (j_{k/alpha,s} / r)^2 over k,s >= 1.  Enumeration over (k,s) is cut off
// with the elementary bounds j_{nu,s} > nu and j_{nu,s} > (s - 1/4)pi, both
// monotone in the indices, so the reported n smallest values are certain.
#ifndef POLYGAP_SECTOR_HPP
#define POLYGAP_SECTOR_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "polygap/bessel.hpp"
#include "polygap/constants.hpp"
#include "polygap/error.hpp"
#include "polygap/spectrum.hpp"

namespace polygap {

struct SectorSpec {
    double alpha;  // opening angle is alpha*pi
    double radius = 1.0;

    SectorSpec(double alpha_, double radius_ = 1.0) : alpha(alpha_), radius(radius_) {
        if (!(alpha > 0.0) || alpha > 2.0 || !std::isfinite(alpha))
            throw DomainError("SectorSpec: need 0 < alpha <= 2, got " +
                              std::to_string(alpha_));
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw DomainError("SectorSpec: radius must be positive");
    }
};

/// Eigenvalue of the (k,s) sector mode: (j_{k/alpha,s})^2 / r^2.
inline double sector_mode_eigenvalue(const SectorSpec& spec, int k, int s) {
    if (k < 1 || s < 1)
        throw DomainError("sector_mode_eigenvalue: mode indices must be >= 1");
    const double z = bessel_zero(BesselOrder(static_cast<double>(k) / spec.alpha), s);
    return (z / spec.radius) * (z / spec.radius);
}

namespace sector_detail {

constexpr double kPi = 3.14159265358979323846;

// j_{nu,s} exceeds both nu and (s - 1/4)pi; squared and scaled this gives a
// cheap certified lower bound for the (k,s) eigenvalue.
inline double mode_lower_bound(double alpha, double r, int k, int s) {
    const double nu = static_cast<double>(k) / alpha;
    const double lb = std::max(nu, (s - 0.25) * kPi);
    return (lb / r) * (lb / r);
}

} // namespace sector_detail

/// The n smallest sector eigenvalues, ascending, with multiplicity.
inline Spectrum sector_spectrum(const SectorSpec& spec, int n) {
    if (n < 1) throw DomainError("sector_spectrum: n must be >= 1");
    std::vector<double> vals;
    // Seed with the k=1 column; extend columns while their floor can still
    // undercut the current n-th candidate.
    for (int k = 1;; ++k) {
        if (static_cast<int>(vals.size()) >= n) {
            std::nth_element(vals.begin(), vals.begin() + (n - 1), vals.end());
            const double nth = vals[n - 1];
            if (sector_detail::mode_lower_bound(spec.alpha, spec.radius, k, 1) > nth)
                break;
        }
        for (int s = 1;; ++s) {
            if (static_cast<int>(vals.size()) >= n) {
                std::nth_element(vals.begin(), vals.begin() + (n - 1), vals.end());
                const double nth = vals[n - 1];
                if (sector_detail::mode_lower_bound(spec.alpha, spec.radius, k, s) > nth)
                    break;
            }
            vals.push_back(sector_mode_eigenvalue(spec, k, s));
        }
    }
    std::sort(vals.begin(), vals.end());
    vals.resize(n);
    // snap near-degenerate pairs to an exact multiple eigenvalue
    for (int i = 1; i < n; ++i)
        if (vals[i] - vals[i - 1] <= 1e-12 * vals[i]) vals[i] = vals[i - 1];
    Spectrum out;
    out.values = std::move(vals);
    out.error_bars.assign(n, 0.0);
    out.method = SpectrumMethod::sector_exact;
    return out;
}

/// Two-term thin-sector estimate 1/alpha^2 + c_i/alpha^(4/3) of the i-th
/// eigenvalue (radius 1), valid as alpha -> 0; guarded at alpha <= 1/4.
inline double sector_eigenvalue_estimate(
    double alpha, int i,
    const AsymptoticConstants& c = AsymptoticConstants::reference()) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("sector_eigenvalue_estimate: alpha must be positive");
    if (alpha > 0.25)
        throw RegimeError("sector_eigenvalue_estimate: alpha=" + std::to_string(alpha) +
                          " is outside the thin-sector regime (alpha <= 1/4)");
    if (i != 1 && i != 2)
        throw DomainError("sector_eigenvalue_estimate: i must be 1 or 2");
    const double ci = (i == 1) ? c.c1 : c.c2;
    return 1.0 / (alpha * alpha) + ci / std::pow(alpha, 4.0 / 3.0);
}

} // namespace polygap

#endif
