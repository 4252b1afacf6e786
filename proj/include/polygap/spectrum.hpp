// Ordered Dirichlet eigenvalue lists with error estimates and a method tag.
#ifndef POLYGAP_SPECTRUM_HPP
#define POLYGAP_SPECTRUM_HPP

#include <cmath>
#include <string>
#include <vector>

#include "polygap/error.hpp"

namespace polygap {

enum class SpectrumMethod {
    fem_raw,
    fem_extrapolated,
    closed_form_rectangle,
    closed_form_equilateral,
    sector_exact,
};

inline const char* to_string(SpectrumMethod m) {
    switch (m) {
        case SpectrumMethod::fem_raw: return "fem_raw";
        case SpectrumMethod::fem_extrapolated: return "fem_extrapolated";
        case SpectrumMethod::closed_form_rectangle: return "closed_form_rectangle";
        case SpectrumMethod::closed_form_equilateral: return "closed_form_equilateral";
        case SpectrumMethod::sector_exact: return "sector_exact";
    }
    return "?";
}

struct Spectrum {
    std::vector<double> values;     // ascending, strictly positive
    std::vector<double> error_bars; // nonnegative, finite, same length
    SpectrumMethod method = SpectrumMethod::fem_raw;
    std::vector<std::string> flags; // e.g. "budget_exceeded"

    void validate() const {
        if (values.size() != error_bars.size())
            throw DomainError("Spectrum: values/error_bars length mismatch");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!(values[i] > 0.0) || !std::isfinite(values[i]))
                throw DomainError("Spectrum: eigenvalues must be positive and finite");
            if (i > 0 && values[i] < values[i - 1])
                throw DomainError("Spectrum: eigenvalues must be ascending");
            if (!(error_bars[i] >= 0.0) || !std::isfinite(error_bars[i]))
                throw DomainError("Spectrum: error bars must be finite and >= 0");
        }
    }

    bool flagged() const { return !flags.empty(); }
};

} // namespace polygap

#endif
