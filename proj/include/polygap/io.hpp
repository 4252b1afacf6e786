// File formats and report emission: polygon files (one `x y` pair per line,
// `#` comments), family descriptor files (`key=value` lines), the gap-report
// CSV schema, a plain-text mesh dump, and small self-contained SVG plots.
#ifndef POLYGAP_IO_HPP
#define POLYGAP_IO_HPP

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "polygap/error.hpp"
#include "polygap/families.hpp"
#include "polygap/gap.hpp"
#include "polygap/geometry.hpp"
#include "polygap/mesh.hpp"

namespace polygap {

namespace io_detail {

inline std::string fmt(double v, const char* spec = "%.12g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// commas separate CSV fields, so free-text cells swap them out
inline std::string csv_sanitize(std::string s) {
    for (auto& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

} // namespace io_detail

/// Parse a polygon (CCW convex, `x y` per line); errors carry line numbers.
inline Polygon read_polygon(std::istream& in, const std::string& name) {
    std::vector<Vec2> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = io_detail::trim(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        double x, y;
        if (!(ls >> x >> y))
            throw ParseError(name + ":" + std::to_string(lineno) +
                             ": expected two coordinates, got '" + line + "'");
        std::string rest;
        if (ls >> rest)
            throw ParseError(name + ":" + std::to_string(lineno) +
                             ": trailing content '" + rest + "'");
        pts.push_back({x, y});
    }
    try {
        return Polygon(std::move(pts));
    } catch (const GeometryError& e) {
        throw ParseError(name + ": " + e.what());
    }
}

inline Polygon read_polygon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return read_polygon(in, path);
}

inline void write_polygon(std::ostream& out, const Polygon& p) {
    out << "# polygon, counterclockwise, one 'x y' pair per line\n";
    for (const auto& v : p.vertices())
        out << io_detail::fmt(v.x, "%.17g") << " " << io_detail::fmt(v.y, "%.17g")
            << "\n";
}

/// Parse a family descriptor (`kind=`, `schedule=`, parameters; `files=` for
/// custom families, paths relative to the descriptor's directory).
inline FamilyDescriptor read_descriptor(std::istream& in, const std::string& name,
                                        const std::string& dir = ".") {
    FamilyDescriptor d;
    bool have_kind = false;
    std::string line;
    int lineno = 0;
    std::vector<std::string> files;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = io_detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(name + ":" + std::to_string(lineno) +
                             ": expected key=value, got '" + line + "'");
        const std::string key = io_detail::trim(line.substr(0, eq));
        const std::string val = io_detail::trim(line.substr(eq + 1));
        if (key == "kind") {
            have_kind = true;
            if (val == "triangle_trajectory") d.kind = FamilyKind::triangle_trajectory;
            else if (val == "quad_bounded") d.kind = FamilyKind::quad_bounded;
            else if (val == "quad_unbounded") d.kind = FamilyKind::quad_unbounded;
            else if (val == "rectangle") d.kind = FamilyKind::rectangle;
            else if (val == "custom") d.kind = FamilyKind::custom;
            else
                throw ParseError(name + ":" + std::to_string(lineno) +
                                 ": unknown kind '" + val + "'");
        } else if (key == "schedule") {
            std::istringstream vs(val);
            std::string tok;
            while (std::getline(vs, tok, ',')) {
                try {
                    d.schedule.push_back(std::stod(io_detail::trim(tok)));
                } catch (...) {
                    throw ParseError(name + ":" + std::to_string(lineno) +
                                     ": bad schedule entry '" + tok + "'");
                }
            }
        } else if (key == "files") {
            std::istringstream vs(val);
            std::string tok;
            while (std::getline(vs, tok, ';')) files.push_back(io_detail::trim(tok));
        } else {
            try {
                d.params[key] = std::stod(val);
            } catch (...) {
                throw ParseError(name + ":" + std::to_string(lineno) +
                                 ": bad numeric value '" + val + "' for key '" + key +
                                 "'");
            }
        }
    }
    if (!have_kind) throw ParseError(name + ": missing 'kind='");
    for (const auto& f : files)
        d.custom_polygons.push_back(read_polygon_file(dir + "/" + f));
    try {
        d.validate();
    } catch (const DomainError& e) {
        throw ParseError(name + ": " + e.what());
    }
    return d;
}

inline FamilyDescriptor read_descriptor_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    const auto slash = path.find_last_of('/');
    const std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
    return read_descriptor(in, path, dir);
}

// ---- gap report CSV ----

struct GapRow {
    std::optional<double> alpha, beta;
    double diameter = 0.0;
    std::optional<double> lambda1, lambda2, xi;
    std::optional<double> lb_sector;
    std::optional<double> lb_universal;
    std::string method;
    std::vector<std::string> flags;
    std::optional<std::string> verdict, witness;
};

inline std::string gap_csv_header(bool family_columns = false) {
    std::string h = "alpha,beta,diameter,lambda1,lambda2,xi,lb_sector,lb_universal,"
                    "method,flags";
    if (family_columns) h += ",verdict,witness";
    return h;
}

inline std::string to_csv(const GapRow& r, bool family_columns = false) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? io_detail::fmt(*v) : std::string();
    };
    std::string flags;
    for (const auto& f : r.flags) {
        if (!flags.empty()) flags += ';';
        flags += io_detail::csv_sanitize(f);
    }
    std::string s = opt(r.alpha) + "," + opt(r.beta) + "," + io_detail::fmt(r.diameter) +
                    "," + opt(r.lambda1) + "," + opt(r.lambda2) + "," + opt(r.xi) + "," +
                    opt(r.lb_sector) + "," + opt(r.lb_universal) + "," + r.method + "," +
                    flags;
    if (family_columns)
        s += "," + (r.verdict ? *r.verdict : std::string()) + "," +
             (r.witness ? io_detail::csv_sanitize(*r.witness) : std::string());
    return s;
}

/// Row for a standalone polygon report (fills the class columns for
/// triangles from the vertex angles).
inline GapRow make_gap_row(const Polygon& p, const GapReport& rep) {
    GapRow r;
    if (p.size() == 3) {
        const auto& v = p.vertices();
        const auto angle = [&](int i) {
            const Vec2 a = v[(i + 1) % 3] - v[i];
            const Vec2 b = v[(i + 2) % 3] - v[i];
            return std::acos(dot(a, b) / (norm(a) * norm(b))) / geo::kPi;
        };
        const auto tc = TriangleClass::canonical(angle(0), angle(1));
        r.alpha = tc.alpha;
        r.beta = tc.beta;
    }
    r.diameter = rep.diameter;
    r.lambda1 = rep.lambda1;
    r.lambda2 = rep.lambda2;
    r.xi = rep.xi;
    for (const auto& b : rep.lower_bounds) {
        if (b.provenance == "sector_sandwich") r.lb_sector = b.value;
        if (b.provenance == "universal") r.lb_universal = b.value;
    }
    r.flags = rep.flags;
    return r;
}

inline GapRow make_family_row(const FamilyEntryReport& e) {
    GapRow r;
    r.alpha = e.alpha;
    r.beta = e.beta;
    r.diameter = e.diam;
    if (e.report) {
        r.lambda1 = e.report->lambda1;
        r.lambda2 = e.report->lambda2;
        r.xi = e.report->xi;
        r.method = "fem";
        for (const auto& b : e.report->lower_bounds)
            if (b.provenance == "universal") r.lb_universal = b.value;
        r.flags = e.report->flags;
    } else {
        r.method = "bounds_only";
        r.lb_universal = kUniversalGapFloor;
    }
    for (const auto& b : e.bounds)
        if (b.provenance == "sector_sandwich") r.lb_sector = b.value;
    for (const auto& f : e.flags) r.flags.push_back(f);
    r.verdict = to_string(e.verdict.verdict);
    r.witness = e.verdict.witness;
    return r;
}

// ---- mesh dump ----

inline void write_mesh(std::ostream& out, const Mesh& m) {
    out << "# polygap mesh dump: 'nodes N' then N lines 'x y boundary(0|1)',\n";
    out << "# 'triangles M' then M lines 'i j k' (0-based, counterclockwise)\n";
    out << "nodes " << m.nodes.size() << "\n";
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
        out << io_detail::fmt(m.nodes[i].x, "%.17g") << " "
            << io_detail::fmt(m.nodes[i].y, "%.17g") << " " << (m.boundary[i] ? 1 : 0)
            << "\n";
    out << "triangles " << m.triangles.size() << "\n";
    for (const auto& t : m.triangles)
        out << t[0] << " " << t[1] << " " << t[2] << "\n";
}

// ---- SVG emission ----

namespace io_detail {

inline std::string color_ramp(double t) {
    // blue (low) to red (high) through white
    t = std::min(1.0, std::max(0.0, t));
    const int r = static_cast<int>(255 * std::min(1.0, 2 * t));
    const int b = static_cast<int>(255 * std::min(1.0, 2 * (1 - t)));
    const int g = static_cast<int>(255 * (1 - std::fabs(2 * t - 1)) * 0.9);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

} // namespace io_detail

/// Heat map of xi over the moduli triangle; one cell per (alpha, beta, xi).
inline std::string svg_moduli_heatmap(
    const std::vector<std::tuple<double, double, double>>& cells, int resolution) {
    const double W = 640, Hh = 640, pad = 60;
    const double amax = 1.0 / 3.0, bmax = 0.5;
    const auto X = [&](double a) { return pad + a / amax * (W - 2 * pad); };
    const auto Y = [&](double b) { return Hh - pad - b / bmax * (Hh - 2 * pad); };
    double lo = 1e300, hi = -1e300;
    for (const auto& [a, b, xi] : cells) {
        lo = std::min(lo, xi);
        hi = std::max(hi, xi);
    }
    const double span = (hi > lo) ? std::log(hi / lo) : 1.0;
    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << Hh
      << "' viewBox='0 0 " << W << " " << Hh << "'>\n";
    s << "<rect width='100%' height='100%' fill='white'/>\n";
    const double cell = (W - 2 * pad) / (3.0 * resolution) * (1.0 / amax) * 0.95;
    for (const auto& [a, b, xi] : cells) {
        const double t = std::log(xi / lo) / span;
        s << "<rect x='" << io_detail::fmt(X(a) - cell / 2, "%.2f") << "' y='"
          << io_detail::fmt(Y(b) - cell / 2, "%.2f") << "' width='"
          << io_detail::fmt(cell, "%.2f") << "' height='" << io_detail::fmt(cell, "%.2f")
          << "' fill='" << io_detail::color_ramp(t) << "'><title>alpha="
          << io_detail::fmt(a, "%.6g") << " beta=" << io_detail::fmt(b, "%.6g")
          << " xi=" << io_detail::fmt(xi, "%.6g") << "</title></rect>\n";
    }
    // moduli triangle outline: (0,0)-(1/3,1/3)-(0,1/2)
    s << "<polygon points='" << X(0) << "," << Y(0) << " " << X(1.0 / 3) << ","
      << Y(1.0 / 3) << " " << X(0) << "," << Y(0.5)
      << "' fill='none' stroke='black'/>\n";
    s << "<text x='" << W / 2 << "' y='" << Hh - 15
      << "' font-size='14'>alpha (smallest angle / pi)</text>\n";
    s << "<text x='15' y='" << Hh / 2 << "' font-size='14' transform='rotate(-90 15 "
      << Hh / 2 << ")'>beta</text>\n";
    s << "<text x='" << pad << "' y='25' font-size='13'>xi range ["
      << io_detail::fmt(lo, "%.6g") << ", " << io_detail::fmt(hi, "%.6g")
      << "], log color scale</text>\n";
    s << "</svg>\n";
    return s.str();
}

/// Log-log polyline of (parameter, xi) samples with the fitted slope.
inline std::string svg_loglog(const std::vector<std::pair<double, double>>& pts,
                              double slope, const std::string& xlabel) {
    const double W = 640, Hh = 480, pad = 60;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& [p, v] : pts) {
        x0 = std::min(x0, std::log10(p));
        x1 = std::max(x1, std::log10(p));
        y0 = std::min(y0, std::log10(v));
        y1 = std::max(y1, std::log10(v));
    }
    if (x1 - x0 < 1e-12) x1 = x0 + 1;
    if (y1 - y0 < 1e-12) y1 = y0 + 1;
    const auto X = [&](double p) {
        return pad + (std::log10(p) - x0) / (x1 - x0) * (W - 2 * pad);
    };
    const auto Y = [&](double v) {
        return Hh - pad - (std::log10(v) - y0) / (y1 - y0) * (Hh - 2 * pad);
    };
    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << Hh
      << "' viewBox='0 0 " << W << " " << Hh << "'>\n";
    s << "<rect width='100%' height='100%' fill='white'/>\n";
    s << "<line x1='" << pad << "' y1='" << Hh - pad << "' x2='" << W - pad << "' y2='"
      << Hh - pad << "' stroke='black'/>\n";
    s << "<line x1='" << pad << "' y1='" << pad << "' x2='" << pad << "' y2='"
      << Hh - pad << "' stroke='black'/>\n";
    s << "<polyline fill='none' stroke='crimson' stroke-width='1.5' points='";
    for (const auto& [p, v] : pts)
        s << io_detail::fmt(X(p), "%.2f") << "," << io_detail::fmt(Y(v), "%.2f") << " ";
    s << "'/>\n";
    for (const auto& [p, v] : pts)
        s << "<circle cx='" << io_detail::fmt(X(p), "%.2f") << "' cy='"
          << io_detail::fmt(Y(v), "%.2f") << "' r='3' fill='crimson'/>\n";
    s << "<text x='" << W / 2 << "' y='" << Hh - 15 << "' font-size='14'>" << xlabel
      << " (log)</text>\n";
    s << "<text x='" << pad << "' y='25' font-size='13'>xi (log), fitted slope "
      << io_detail::fmt(slope, "%.4f") << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

} // namespace polygap

#endif
