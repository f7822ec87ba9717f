#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "heterodyne.hpp"
#include "phasespace.hpp"

// Bit-exact persistence.  Two formats per object:
//   - binary: little-endian raw float64 payloads.  Phase-space grids carry a
//     fixed header; fields are a bare payload plus a text sidecar (<path>.meta).
//   - CSV: '#'-prefixed metadata lines and 17-significant-digit values, which
//     round-trip IEEE doubles exactly.

namespace krspace {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : Error {
    using Error::Error;
};
struct MalformedHeaderError : IoError {
    using IoError::IoError;
};
struct TruncatedFileError : IoError {
    std::uint64_t expected_bytes, actual_bytes;
    TruncatedFileError(const std::string& msg, std::uint64_t expected, std::uint64_t actual)
        : IoError(msg), expected_bytes(expected), actual_bytes(actual) {}
};
struct VersionMismatchError : IoError {
    std::uint32_t found, expected;
    VersionMismatchError(const std::string& msg, std::uint32_t f, std::uint32_t e)
        : IoError(msg), found(f), expected(e) {}
};
struct ConfigError : Error {
    int line;
    ConfigError(const std::string& msg, int line_no) : Error(msg), line(line_no) {}
};

namespace io_detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <typename T>
void put(std::string& out, T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
}

template <typename T>
T get(const std::string& in, std::size_t& off) {
    if (off + sizeof(T) > in.size())
        throw TruncatedFileError("grid file truncated inside header", off + sizeof(T),
                                 in.size());
    T v;
    std::memcpy(&v, in.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

inline std::string read_entire(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline void write_entire(const std::filesystem::path& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw IoError("short write to '" + path.string() + "'");
}

} // namespace io_detail

// ---------------------------------------------------------------------------
// Phase-space grid, binary
// ---------------------------------------------------------------------------

inline constexpr char grid_magic[8] = {'K', 'R', 'S', 'P', 'A', 'C', 'E', 'G'};
inline constexpr std::uint32_t grid_format_version = 1;
inline constexpr std::uint32_t endian_marker = 0x01020304u;

inline void save_grid(const PhaseSpaceGrid& g, const std::filesystem::path& path) {
    std::string out;
    out.append(grid_magic, sizeof(grid_magic));
    io_detail::put<std::uint32_t>(out, grid_format_version);
    io_detail::put<std::uint32_t>(out, endian_marker);
    io_detail::put<std::uint32_t>(out, static_cast<std::uint32_t>(g.kind));
    const bool real = is_real_kind(g.kind);
    io_detail::put<std::uint32_t>(out, real ? 1u : 0u); // 0 complex128, 1 real64
    io_detail::put<std::uint32_t>(out, g.x_grid.unit_mode == UnitMode::millimeters ? 1u : 0u);
    io_detail::put<std::uint32_t>(out, 0u); // reserved
    io_detail::put<std::uint64_t>(out, g.n_x());
    io_detail::put<std::uint64_t>(out, g.n_p());
    io_detail::put<double>(out, g.x_grid.extent);
    io_detail::put<double>(out, g.x_grid.origin);
    io_detail::put<double>(out, g.p_grid.extent);
    io_detail::put<double>(out, g.p_grid.origin);
    for (const cplx& v : g.values) {
        io_detail::put<double>(out, v.real());
        if (!real) io_detail::put<double>(out, v.imag());
    }
    io_detail::write_entire(path, out);
}

inline PhaseSpaceGrid load_grid(const std::filesystem::path& path) {
    const std::string in = io_detail::read_entire(path);
    std::size_t off = 0;
    if (in.size() < sizeof(grid_magic) ||
        std::memcmp(in.data(), grid_magic, sizeof(grid_magic)) != 0)
        throw MalformedHeaderError("'" + path.string() + "' is not a phase-space grid file");
    off = sizeof(grid_magic);
    const auto version = io_detail::get<std::uint32_t>(in, off);
    if (version != grid_format_version)
        throw VersionMismatchError("grid file version " + std::to_string(version) +
                                       " (expected " + std::to_string(grid_format_version) + ")",
                                   version, grid_format_version);
    const auto endian = io_detail::get<std::uint32_t>(in, off);
    if (endian != endian_marker)
        throw MalformedHeaderError("grid file endianness marker mismatch");
    const auto kind_raw = io_detail::get<std::uint32_t>(in, off);
    if (kind_raw > static_cast<std::uint32_t>(GridKind::CharW))
        throw MalformedHeaderError("grid file carries unknown kind tag " +
                                   std::to_string(kind_raw));
    const auto value_type = io_detail::get<std::uint32_t>(in, off);
    if (value_type > 1) throw MalformedHeaderError("grid file carries unknown value type");
    const auto unit_raw = io_detail::get<std::uint32_t>(in, off);
    io_detail::get<std::uint32_t>(in, off); // reserved
    const auto nx = io_detail::get<std::uint64_t>(in, off);
    const auto np = io_detail::get<std::uint64_t>(in, off);
    const double xe = io_detail::get<double>(in, off);
    const double xo = io_detail::get<double>(in, off);
    const double pe = io_detail::get<double>(in, off);
    const double po = io_detail::get<double>(in, off);
    const UnitMode mode = unit_raw ? UnitMode::millimeters : UnitMode::dimensionless;

    const std::uint64_t per_value = value_type == 1 ? 8 : 16;
    const std::uint64_t expected = off + nx * np * per_value;
    if (in.size() != expected)
        throw TruncatedFileError("grid payload size mismatch: expected " +
                                     std::to_string(expected) + " bytes, found " +
                                     std::to_string(in.size()),
                                 expected, in.size());
    PhaseSpaceGrid g;
    g.x_grid = Grid1D(nx, xe, mode, xo);
    g.p_grid = Grid1D(np, pe, mode, po);
    g.kind = static_cast<GridKind>(kind_raw);
    g.values.resize(nx * np);
    for (cplx& v : g.values) {
        const double re = io_detail::get<double>(in, off);
        const double im = value_type == 1 ? 0.0 : io_detail::get<double>(in, off);
        v = cplx{re, im};
    }
    return g;
}

// ---------------------------------------------------------------------------
// Phase-space grid, CSV
// ---------------------------------------------------------------------------

inline void save_grid_csv(const PhaseSpaceGrid& g, const std::filesystem::path& path) {
    std::string out;
    out += "# krspace grid v1\n";
    out += "# kind = " + std::string(to_string(g.kind)) + "\n";
    out += "# unit_mode = " + std::string(to_string(g.x_grid.unit_mode)) + "\n";
    out += "# n_x = " + std::to_string(g.n_x()) + "\n";
    out += "# n_p = " + std::to_string(g.n_p()) + "\n";
    out += "# x_extent = " + io_detail::fmt_double(g.x_grid.extent) + "\n";
    out += "# x_origin = " + io_detail::fmt_double(g.x_grid.origin) + "\n";
    out += "# p_extent = " + io_detail::fmt_double(g.p_grid.extent) + "\n";
    out += "# p_origin = " + io_detail::fmt_double(g.p_grid.origin) + "\n";
    out += "# columns: x, p, Re, Im\n";
    for (std::size_t i = 0; i < g.n_x(); ++i)
        for (std::size_t j = 0; j < g.n_p(); ++j) {
            const cplx& v = g.at(i, j);
            out += io_detail::fmt_double(g.x_grid.coord(i)) + "," +
                   io_detail::fmt_double(g.p_grid.coord(j)) + "," +
                   io_detail::fmt_double(v.real()) + "," + io_detail::fmt_double(v.imag()) +
                   "\n";
        }
    io_detail::write_entire(path, out);
}

namespace io_detail {

struct CsvMeta {
    std::map<std::string, std::string> kv;
    std::vector<std::vector<double>> rows;
};

inline CsvMeta read_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open '" + path.string() + "' for reading");
    CsvMeta m;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                std::string k = line.substr(1, eq - 1);
                std::string v = line.substr(eq + 1);
                auto trim = [](std::string& s) {
                    const auto b = s.find_first_not_of(" \t\r");
                    const auto e = s.find_last_not_of(" \t\r");
                    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
                };
                trim(k);
                trim(v);
                m.kv[k] = v;
            }
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError("'" + path.string() + "': bad numeric cell '" + cell + "'");
            }
        }
        if (!row.empty()) m.rows.push_back(std::move(row));
    }
    return m;
}

} // namespace io_detail

inline PhaseSpaceGrid load_grid_csv(const std::filesystem::path& path) {
    const auto m = io_detail::read_csv(path);
    auto need = [&](const char* k) -> const std::string& {
        auto it = m.kv.find(k);
        if (it == m.kv.end())
            throw MalformedHeaderError("'" + path.string() + "': missing metadata '" +
                                       std::string(k) + "'");
        return it->second;
    };
    PhaseSpaceGrid g;
    g.kind = grid_kind_from_string(need("kind"));
    const UnitMode mode =
        need("unit_mode") == "millimeters" ? UnitMode::millimeters : UnitMode::dimensionless;
    const auto nx = static_cast<std::size_t>(std::stoull(need("n_x")));
    const auto np = static_cast<std::size_t>(std::stoull(need("n_p")));
    g.x_grid = Grid1D(nx, std::stod(need("x_extent")), mode, std::stod(need("x_origin")));
    g.p_grid = Grid1D(np, std::stod(need("p_extent")), mode, std::stod(need("p_origin")));
    if (m.rows.size() != nx * np)
        throw TruncatedFileError("'" + path.string() + "': expected " +
                                     std::to_string(nx * np) + " rows, found " +
                                     std::to_string(m.rows.size()),
                                 nx * np, m.rows.size());
    g.values.resize(nx * np);
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        if (m.rows[r].size() != 4)
            throw IoError("'" + path.string() + "': grid rows need 4 columns");
        g.values[r] = cplx{m.rows[r][2], m.rows[r][3]};
    }
    return g;
}

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

inline void save_field(const SampledField& f, const std::filesystem::path& path) {
    std::string out;
    for (const cplx& a : f.amplitudes) {
        io_detail::put<double>(out, a.real());
        io_detail::put<double>(out, a.imag());
    }
    io_detail::write_entire(path, out);
    std::string meta;
    meta += "# krspace field sidecar v1\n";
    meta += "n_points = " + std::to_string(f.grid.n_points) + "\n";
    meta += "extent = " + io_detail::fmt_double(f.grid.extent) + "\n";
    meta += "origin = " + io_detail::fmt_double(f.grid.origin) + "\n";
    meta += "unit_mode = " + std::string(to_string(f.grid.unit_mode)) + "\n";
    meta += "space = " + std::string(f.space == FieldSpace::position ? "position" : "momentum") +
            "\n";
    meta += "wavenumber_k = " + io_detail::fmt_double(f.wavenumber_k) + "\n";
    meta += "value_type = complex128-le\n";
    io_detail::write_entire(path.string() + ".meta", meta);
}

inline SampledField load_field(const std::filesystem::path& path) {
    const std::filesystem::path meta_path = path.string() + ".meta";
    std::ifstream mf(meta_path);
    if (!mf) throw IoError("cannot open field sidecar '" + meta_path.string() + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(mf, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw MalformedHeaderError("'" + meta_path.string() + "': malformed line '" + line +
                                       "'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto need = [&](const char* k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end())
            throw MalformedHeaderError("'" + meta_path.string() + "': missing key '" +
                                       std::string(k) + "'");
        return it->second;
    };
    SampledField f;
    const auto n = static_cast<std::size_t>(std::stoull(need("n_points")));
    const UnitMode mode =
        need("unit_mode") == "millimeters" ? UnitMode::millimeters : UnitMode::dimensionless;
    const double origin = kv.count("origin") ? std::stod(kv["origin"]) : 0.0;
    f.grid = Grid1D(n, std::stod(need("extent")), mode, origin);
    f.space = need("space") == "momentum" ? FieldSpace::momentum : FieldSpace::position;
    f.wavenumber_k = std::stod(need("wavenumber_k"));

    const std::string in = io_detail::read_entire(path);
    const std::uint64_t expected = static_cast<std::uint64_t>(n) * 16;
    if (in.size() != expected)
        throw TruncatedFileError("field payload '" + path.string() + "': expected " +
                                     std::to_string(expected) + " bytes, found " +
                                     std::to_string(in.size()),
                                 expected, in.size());
    f.amplitudes.resize(n);
    std::size_t off = 0;
    for (cplx& a : f.amplitudes) {
        const double re = io_detail::get<double>(in, off);
        const double im = io_detail::get<double>(in, off);
        a = cplx{re, im};
    }
    return f;
}

inline void save_field_csv(const SampledField& f, const std::filesystem::path& path) {
    std::string out;
    out += "# krspace field v1\n";
    out += "# n_points = " + std::to_string(f.grid.n_points) + "\n";
    out += "# extent = " + io_detail::fmt_double(f.grid.extent) + "\n";
    out += "# origin = " + io_detail::fmt_double(f.grid.origin) + "\n";
    out += "# unit_mode = " + std::string(to_string(f.grid.unit_mode)) + "\n";
    out += "# space = " +
           std::string(f.space == FieldSpace::position ? "position" : "momentum") + "\n";
    out += "# wavenumber_k = " + io_detail::fmt_double(f.wavenumber_k) + "\n";
    out += "# norm_squared = " + io_detail::fmt_double(f.norm_squared()) + "\n";
    out += "# columns: x, Re, Im\n";
    for (std::size_t j = 0; j < f.grid.n_points; ++j)
        out += io_detail::fmt_double(f.grid.coord(j)) + "," +
               io_detail::fmt_double(f.amplitudes[j].real()) + "," +
               io_detail::fmt_double(f.amplitudes[j].imag()) + "\n";
    io_detail::write_entire(path, out);
}

inline SampledField load_field_csv(const std::filesystem::path& path) {
    const auto m = io_detail::read_csv(path);
    auto need = [&](const char* k) -> const std::string& {
        auto it = m.kv.find(k);
        if (it == m.kv.end())
            throw MalformedHeaderError("'" + path.string() + "': missing metadata '" +
                                       std::string(k) + "'");
        return it->second;
    };
    SampledField f;
    const auto n = static_cast<std::size_t>(std::stoull(need("n_points")));
    const UnitMode mode =
        need("unit_mode") == "millimeters" ? UnitMode::millimeters : UnitMode::dimensionless;
    const double origin = m.kv.count("origin") ? std::stod(m.kv.at("origin")) : 0.0;
    f.grid = Grid1D(n, std::stod(need("extent")), mode, origin);
    f.space = need("space") == "momentum" ? FieldSpace::momentum : FieldSpace::position;
    f.wavenumber_k = std::stod(need("wavenumber_k"));
    if (m.rows.size() != n)
        throw TruncatedFileError("'" + path.string() + "': expected " + std::to_string(n) +
                                     " rows, found " + std::to_string(m.rows.size()),
                                 n, m.rows.size());
    f.amplitudes.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        if (m.rows[r].size() != 3)
            throw IoError("'" + path.string() + "': field rows need 3 columns");
        f.amplitudes[r] = cplx{m.rows[r][1], m.rows[r][2]};
    }
    return f;
}

/// One-column samples over a grid (marginals, slices) for the fitter.
inline void save_samples_csv(const std::vector<double>& y, const Grid1D& grid,
                             const std::string& label, const std::filesystem::path& path) {
    if (y.size() != grid.n_points)
        throw std::invalid_argument("save_samples_csv: sample count mismatch");
    std::string out;
    out += "# krspace samples v1\n";
    out += "# label = " + label + "\n";
    out += "# n_points = " + std::to_string(grid.n_points) + "\n";
    out += "# extent = " + io_detail::fmt_double(grid.extent) + "\n";
    out += "# origin = " + io_detail::fmt_double(grid.origin) + "\n";
    out += "# unit_mode = " + std::string(to_string(grid.unit_mode)) + "\n";
    out += "# columns: x, value\n";
    for (std::size_t j = 0; j < grid.n_points; ++j)
        out += io_detail::fmt_double(grid.coord(j)) + "," + io_detail::fmt_double(y[j]) + "\n";
    io_detail::write_entire(path, out);
}

struct SampleSet {
    std::vector<double> x, y;
    std::string label;
    UnitMode unit_mode = UnitMode::dimensionless;
};

inline SampleSet load_samples_csv(const std::filesystem::path& path) {
    const auto m = io_detail::read_csv(path);
    SampleSet s;
    if (m.kv.count("label")) s.label = m.kv.at("label");
    if (m.kv.count("unit_mode") && m.kv.at("unit_mode") == "millimeters")
        s.unit_mode = UnitMode::millimeters;
    for (const auto& row : m.rows) {
        if (row.size() < 2) throw IoError("'" + path.string() + "': sample rows need 2 columns");
        s.x.push_back(row[0]);
        s.y.push_back(row[1]);
    }
    if (s.x.empty()) throw IoError("'" + path.string() + "': no samples");
    return s;
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

/// Everything a run needs; every field has a default, and manifests list all
/// of them explicitly so a run is reproducible from its manifest alone.
struct RunConfig {
    std::size_t grid_n = 512;
    double grid_extent = 0.0; // 0 = auto (16 * sigma)
    UnitMode unit_mode = UnitMode::millimeters;

    std::string scenario = "gaussian"; // gaussian | wire | custom
    double sigma = 0.85;
    double curvature_radius = std::numeric_limits<double>::infinity();
    double center = 0.0;
    double obstruction_half_width = 0.0; // wire preset forces 0.5 mm
    double wavelength_nm = 633.0;

    LOConfig lo{};
    double scan_dx_max = 0.0; // 0 = mode default
    double scan_dp_max = 0.0; // 0 = mode default
    std::size_t scan_nx = 41, scan_np = 41;
    DspSpec dsp{};
    RegSpec reg{};

    [[nodiscard]] double wavenumber() const {
        return 2.0 * std::numbers::pi / (wavelength_nm * 1e-6); // rad/mm
    }
    [[nodiscard]] double extent_or_auto() const {
        return grid_extent > 0.0 ? grid_extent : 16.0 * sigma;
    }
    [[nodiscard]] double effective_k() const {
        return unit_mode == UnitMode::millimeters ? wavenumber() : 1.0;
    }
    /// Paper ranges when unset: d_x over +-1 cm (mm) or +-4 sigma.
    [[nodiscard]] double scan_dx_max_resolved() const {
        if (scan_dx_max > 0.0) return scan_dx_max;
        return unit_mode == UnitMode::millimeters ? 10.0 : 4.0 * sigma;
    }
    /// Lens offset giving p0 = 0.3 k (mm) or 4/sigma (dimensionless).
    [[nodiscard]] double scan_dp_max_resolved() const {
        if (scan_dp_max > 0.0) return scan_dp_max;
        const double p0_max =
            unit_mode == UnitMode::millimeters ? 0.3 * effective_k() : 4.0 / sigma;
        return p0_max * lo.focal_length / effective_k();
    }
};

namespace io_detail {

inline double parse_double(const std::string& v, int line) {
    if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        while (pos < v.size() && (v[pos] == ' ' || v[pos] == '\t')) ++pos;
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": '" + v + "' is not a number",
                          line);
    }
}

inline long long parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": '" + v + "' is not an integer",
                          line);
    }
}

inline bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("line " + std::to_string(line) + ": '" + v + "' is not a boolean", line);
}

} // namespace io_detail

/// Parses `key = value` lines ('#' comments).  Unknown keys, bad values and
/// out-of-range settings are reported with their line number.
inline RunConfig parse_config_text(std::istream& is, const std::string& origin_name) {
    RunConfig c;
    std::string line;
    int ln = 0;
    auto range_error = [&](const std::string& key, const std::string& why) {
        throw ConfigError("line " + std::to_string(ln) + ": " + key + " " + why, ln);
    };
    while (std::getline(is, line)) {
        ++ln;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(ln) + ": expected 'key = value' in " +
                                  origin_name,
                              ln);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        using io_detail::parse_bool;
        using io_detail::parse_double;
        using io_detail::parse_int;

        if (key == "grid.n_points") {
            const auto v = parse_int(val, ln);
            if (v < 4) range_error(key, "must be >= 4");
            c.grid_n = static_cast<std::size_t>(v);
        } else if (key == "grid.extent") {
            const double v = parse_double(val, ln);
            if (!(v > 0.0)) range_error(key, "must be > 0");
            c.grid_extent = v;
        } else if (key == "grid.unit_mode") {
            if (val == "millimeters") c.unit_mode = UnitMode::millimeters;
            else if (val == "dimensionless") c.unit_mode = UnitMode::dimensionless;
            else range_error(key, "must be 'millimeters' or 'dimensionless'");
        } else if (key == "field.scenario") {
            if (val != "gaussian" && val != "wire" && val != "custom")
                range_error(key, "must be gaussian, wire or custom");
            c.scenario = val;
        } else if (key == "field.sigma") {
            const double v = parse_double(val, ln);
            if (!(v > 0.0)) range_error(key, "must be > 0");
            c.sigma = v;
        } else if (key == "field.curvature_radius") {
            const double v = parse_double(val, ln);
            if (v == 0.0) range_error(key, "must be nonzero (use inf for a flat beam)");
            c.curvature_radius = v;
        } else if (key == "field.center") {
            c.center = parse_double(val, ln);
        } else if (key == "field.obstruction_half_width") {
            const double v = parse_double(val, ln);
            if (v < 0.0) range_error(key, "must be >= 0");
            c.obstruction_half_width = v;
        } else if (key == "field.wavelength_nm") {
            const double v = parse_double(val, ln);
            if (!(v > 0.0)) range_error(key, "must be > 0");
            c.wavelength_nm = v;
        } else if (key == "lo.a") {
            const double v = parse_double(val, ln);
            if (!(v > 0.0)) range_error(key, "must be > 0");
            c.lo.a = v;
        } else if (key == "lo.A") {
            const double v = parse_double(val, ln);
            if (!(v > 0.0)) range_error(key, "must be > 0");
            c.lo.A = v;
        } else if (key == "lo.alpha") {
            const double v = parse_double(val, ln);
            if (v < 0.0) range_error(key, "must be >= 0");
            c.lo.alpha = v;
        } else if (key == "lo.focal_length") {
            const double v = parse_double(val, ln);
            if (!(v > 0.0)) range_error(key, "must be > 0");
            c.lo.focal_length = v;
        } else if (key == "lo.freq_signal") {
            c.lo.freq_signal = parse_double(val, ln);
        } else if (key == "lo.freq_lo1") {
            c.lo.freq_lo1 = parse_double(val, ln);
        } else if (key == "lo.freq_lo2") {
            c.lo.freq_lo2 = parse_double(val, ln);
        } else if (key == "lo.analyzer_bandwidth") {
            const double v = parse_double(val, ln);
            if (!(v > 0.0)) range_error(key, "must be > 0");
            c.lo.analyzer_bandwidth = v;
        } else if (key == "scan.dx_max") {
            const double v = parse_double(val, ln);
            if (!(v > 0.0)) range_error(key, "must be > 0");
            c.scan_dx_max = v;
        } else if (key == "scan.dp_max") {
            const double v = parse_double(val, ln);
            if (!(v > 0.0)) range_error(key, "must be > 0");
            c.scan_dp_max = v;
        } else if (key == "scan.nx") {
            const auto v = parse_int(val, ln);
            if (v < 2) range_error(key, "must be >= 2");
            c.scan_nx = static_cast<std::size_t>(v);
        } else if (key == "scan.np") {
            const auto v = parse_int(val, ln);
            if (v < 2) range_error(key, "must be >= 2");
            c.scan_np = static_cast<std::size_t>(v);
        } else if (key == "dsp.sample_rate") {
            const double v = parse_double(val, ln);
            if (!(v > 0.0)) range_error(key, "must be > 0");
            c.dsp.sample_rate = v;
        } else if (key == "dsp.demod_periods") {
            const auto v = parse_int(val, ln);
            if (v < 16) range_error(key, "must be >= 16");
            c.dsp.demod_periods = static_cast<int>(v);
        } else if (key == "dsp.warmup_periods") {
            const auto v = parse_int(val, ln);
            if (v < 0) range_error(key, "must be >= 0");
            c.dsp.warmup_periods = static_cast<int>(v);
        } else if (key == "dsp.phase_i_deg") {
            c.dsp.phase_i_deg = parse_double(val, ln);
        } else if (key == "dsp.phase_q_deg") {
            c.dsp.phase_q_deg = parse_double(val, ln);
        } else if (key == "dsp.with_spurs") {
            c.dsp.with_spurs = parse_bool(val, ln);
        } else if (key == "reg.eps_floor") {
            const double v = parse_double(val, ln);
            if (!(v > 0.0) || v >= 1.0) range_error(key, "must be in (0, 1)");
            c.reg.eps_floor = v;
        } else if (key == "reg.taper_samples") {
            const auto v = parse_int(val, ln);
            if (v < 0) range_error(key, "must be >= 0");
            c.reg.taper_samples = static_cast<int>(v);
        } else {
            throw ConfigError("line " + std::to_string(ln) + ": unknown key '" + key + "'", ln);
        }
    }
    return c;
}

inline RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config '" + path.string() + "'");
    return parse_config_text(f, path.string());
}

/// Serializes every effective setting; the output is itself a valid config
/// file, so a manifest reproduces its run.  `notes` lines are emitted as
/// comments.
inline std::string manifest_text(const RunConfig& c,
                                 const std::vector<std::string>& notes = {}) {
    using io_detail::fmt_double;
    std::string s;
    s += "# krspace run manifest (valid config; reproduces this run)\n";
    for (const auto& n : notes) s += "# " + n + "\n";
    s += "grid.n_points = " + std::to_string(c.grid_n) + "\n";
    s += "grid.extent = " + fmt_double(c.extent_or_auto()) + "\n";
    s += "grid.unit_mode = " + std::string(to_string(c.unit_mode)) + "\n";
    s += "field.scenario = " + c.scenario + "\n";
    s += "field.sigma = " + fmt_double(c.sigma) + "\n";
    s += "field.curvature_radius = " +
         (std::isinf(c.curvature_radius) ? std::string("inf") : fmt_double(c.curvature_radius)) +
         "\n";
    s += "field.center = " + fmt_double(c.center) + "\n";
    s += "field.obstruction_half_width = " + fmt_double(c.obstruction_half_width) + "\n";
    s += "field.wavelength_nm = " + fmt_double(c.wavelength_nm) + "\n";
    s += "lo.a = " + fmt_double(c.lo.a) + "\n";
    s += "lo.A = " + fmt_double(c.lo.A) + "\n";
    s += "lo.alpha = " + fmt_double(c.lo.alpha) + "\n";
    s += "lo.focal_length = " + fmt_double(c.lo.focal_length) + "\n";
    s += "lo.freq_signal = " + fmt_double(c.lo.freq_signal) + "\n";
    s += "lo.freq_lo1 = " + fmt_double(c.lo.freq_lo1) + "\n";
    s += "lo.freq_lo2 = " + fmt_double(c.lo.freq_lo2) + "\n";
    s += "lo.analyzer_bandwidth = " + fmt_double(c.lo.analyzer_bandwidth) + "\n";
    s += "scan.dx_max = " + fmt_double(c.scan_dx_max_resolved()) + "\n";
    s += "scan.dp_max = " + fmt_double(c.scan_dp_max_resolved()) + "\n";
    s += "scan.nx = " + std::to_string(c.scan_nx) + "\n";
    s += "scan.np = " + std::to_string(c.scan_np) + "\n";
    s += "dsp.sample_rate = " + fmt_double(c.dsp.sample_rate) + "\n";
    s += "dsp.demod_periods = " + std::to_string(c.dsp.demod_periods) + "\n";
    s += "dsp.warmup_periods = " + std::to_string(c.dsp.warmup_periods) + "\n";
    s += "dsp.phase_i_deg = " + fmt_double(c.dsp.phase_i_deg) + "\n";
    s += "dsp.phase_q_deg = " + fmt_double(c.dsp.phase_q_deg) + "\n";
    s += "dsp.with_spurs = " + std::string(c.dsp.with_spurs ? "true" : "false") + "\n";
    s += "reg.eps_floor = " + fmt_double(c.reg.eps_floor) + "\n";
    s += "reg.taper_samples = " + std::to_string(c.reg.taper_samples) + "\n";
    return s;
}

inline void write_manifest(const RunConfig& c, const std::filesystem::path& path,
                           const std::vector<std::string>& notes = {}) {
    io_detail::write_entire(path, manifest_text(c, notes));
}

} // namespace krspace
