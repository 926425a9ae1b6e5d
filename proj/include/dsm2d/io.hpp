#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dsm2d/errors.hpp"
#include "dsm2d/farfield.hpp"
#include "dsm2d/imaging.hpp"
#include "dsm2d/metrics.hpp"

// File formats. All floating-point fields are written with 17 significant
// digits so that parse(serialize(x)) reproduces x bit for bit.
//
// Far-field CSV:      mode,n_tx,n_rx,k0        (column header)
//                     mono,36,36,15.7...       (one metadata row)
//                     l,n,re,im                (column header)
//                     0,0,<re>,<im>            (one row per entry, row-major)
// Indicator map CSV:  ix,iy,x,y,value          (row-major pixel rows)
// Jaccard curve CSV:  kappa,score_percent
// Peak list CSV:      rank,x,y,value
// PGM:                binary P5, 8-bit, top image row = highest y row.

namespace dsm2d {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

inline double parse_field_double(const std::string& s, std::size_t line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw ParseError("trailing characters in number '" + s + "'", line);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + s + "'", line);
    }
}

inline unsigned long long parse_field_uint(const std::string& s, std::size_t line) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw ParseError("trailing characters in integer '" + s + "'", line);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + s + "'", line);
    }
}

inline void expect_header(const std::string& got, const std::string& want, std::size_t line) {
    std::string trimmed = got;
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == '\n'))
        trimmed.pop_back();
    if (trimmed != want) throw ParseError("expected header '" + want + "', got '" + trimmed + "'", line);
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    return in;
}

}  // namespace detail

// ---------------------------------------------------------------- far field

inline void write_farfield_csv(std::ostream& out, const FarFieldData& data) {
    out << "mode,n_tx,n_rx,k0\n";
    out << (data.mode == DataMode::monostatic ? "mono" : "multi") << ',' << data.n_tx << ','
        << data.n_rx << ',' << format_double(data.k0) << '\n';
    out << "l,n,re,im\n";
    for (std::size_t l = 0; l < data.n_tx; ++l) {
        const std::size_t rows = data.mode == DataMode::monostatic ? 1 : data.n_rx;
        for (std::size_t n = 0; n < rows; ++n) {
            const Complex& v =
                data.mode == DataMode::monostatic ? data.values[l] : data.at(l, n);
            const std::size_t rx = data.mode == DataMode::monostatic ? l : n;
            out << l << ',' << rx << ',' << format_double(v.real()) << ','
                << format_double(v.imag()) << '\n';
        }
    }
}

inline void write_farfield_csv(const std::string& path, const FarFieldData& data) {
    auto out = detail::open_output(path);
    write_farfield_csv(out, data);
    if (!out) throw IoError("write failed: " + path);
}

inline FarFieldData parse_farfield_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line != "\r") return true;
        }
        return false;
    };

    if (!next_line()) throw ParseError("empty far-field file", lineno);
    detail::expect_header(line, "mode,n_tx,n_rx,k0", lineno);
    if (!next_line()) throw ParseError("missing metadata row", lineno);

    const auto meta = detail::split_csv_line(line);
    if (meta.size() != 4) throw ParseError("metadata row needs 4 fields", lineno);
    FarFieldData data;
    if (meta[0] == "mono")
        data.mode = DataMode::monostatic;
    else if (meta[0] == "multi")
        data.mode = DataMode::multistatic;
    else
        throw ParseError("unknown mode '" + meta[0] + "'", lineno);
    data.n_tx = detail::parse_field_uint(meta[1], lineno);
    data.n_rx = detail::parse_field_uint(meta[2], lineno);
    data.k0 = detail::parse_field_double(meta[3], lineno);
    if (data.mode == DataMode::monostatic && data.n_tx != data.n_rx)
        throw ParseError("mono-static data must have n_tx == n_rx", lineno);

    if (!next_line()) throw ParseError("missing data header", lineno);
    detail::expect_header(line, "l,n,re,im", lineno);

    const std::size_t expected =
        data.mode == DataMode::monostatic ? data.n_rx : data.n_tx * data.n_rx;
    data.values.assign(data.mode == DataMode::monostatic ? data.n_rx : expected,
                       Complex(0.0, 0.0));
    std::size_t rows = 0;
    while (next_line()) {
        const auto f = detail::split_csv_line(line);
        if (f.size() != 4) throw ParseError("data row needs 4 fields", lineno);
        const std::size_t l = detail::parse_field_uint(f[0], lineno);
        const std::size_t n = detail::parse_field_uint(f[1], lineno);
        const Complex v(detail::parse_field_double(f[2], lineno),
                        detail::parse_field_double(f[3], lineno));
        if (data.mode == DataMode::monostatic) {
            if (l != n) throw ParseError("mono-static rows require l == n", lineno);
            if (n >= data.n_rx) throw ParseError("receiver index out of range", lineno);
            data.values[n] = v;
        } else {
            if (l >= data.n_tx || n >= data.n_rx)
                throw ParseError("entry index out of range", lineno);
            data.at(l, n) = v;
        }
        ++rows;
    }
    if (rows != expected)
        throw ParseError("expected " + std::to_string(expected) + " data rows, found " +
                             std::to_string(rows),
                         lineno);
    return data;
}

inline FarFieldData parse_farfield_csv(const std::string& path) {
    auto in = detail::open_input(path);
    try {
        return parse_farfield_csv(in);
    } catch (ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// ------------------------------------------------------------ indicator map

inline void write_map_csv(std::ostream& out, const IndicatorMap& map) {
    out << "ix,iy,x,y,value\n";
    for (std::size_t iy = 0; iy < map.grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < map.grid.nx; ++ix) {
            const Vec2 z = map.grid.center(ix, iy);
            out << ix << ',' << iy << ',' << format_double(z.x) << ',' << format_double(z.y)
                << ',' << format_double(map.values[map.grid.index(ix, iy)]) << '\n';
        }
    }
}

inline void write_map_csv(const std::string& path, const IndicatorMap& map) {
    auto out = detail::open_output(path);
    write_map_csv(out, map);
    if (!out) throw IoError("write failed: " + path);
}

/// Parses a map CSV written by write_map_csv. The grid geometry is
/// reconstructed from the coordinate columns; the caller supplies the kind.
inline IndicatorMap parse_map_csv(std::istream& in,
                                  IndicatorKind kind = IndicatorKind::dsm_single) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line)) throw ParseError("empty map file", lineno);
    detail::expect_header(line, "ix,iy,x,y,value", lineno);

    struct Row {
        std::size_t ix, iy;
        double x, y, value;
    };
    std::vector<Row> rows;
    std::size_t nx = 0, ny = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 5) throw ParseError("map row needs 5 fields", lineno);
        Row r{static_cast<std::size_t>(detail::parse_field_uint(f[0], lineno)),
              static_cast<std::size_t>(detail::parse_field_uint(f[1], lineno)),
              detail::parse_field_double(f[2], lineno), detail::parse_field_double(f[3], lineno),
              detail::parse_field_double(f[4], lineno)};
        nx = std::max(nx, r.ix + 1);
        ny = std::max(ny, r.iy + 1);
        rows.push_back(r);
    }
    if (rows.empty()) throw ParseError("map file has no data rows", lineno);
    if (rows.size() != nx * ny)
        throw ParseError("map file is not a dense nx*ny grid", lineno);

    IndicatorMap map;
    map.kind = kind;
    map.grid.nx = nx;
    map.grid.ny = ny;
    // recover pixel size and origin from the first row's coordinates
    const Row& r0 = rows.front();
    double pixel = 0.0;
    if (nx > 1) {
        for (const Row& r : rows)
            if (r.iy == r0.iy && r.ix == r0.ix + 1) {
                pixel = r.x - r0.x;
                break;
            }
    } else if (ny > 1) {
        for (const Row& r : rows)
            if (r.ix == r0.ix && r.iy == r0.iy + 1) {
                pixel = r.y - r0.y;
                break;
            }
    } else {
        pixel = 1.0;  // single pixel: size is arbitrary
    }
    if (!(pixel > 0.0)) throw ParseError("could not recover pixel size from map file");
    map.grid.pixel = pixel;
    map.grid.origin = {r0.x - (static_cast<double>(r0.ix) + 0.5) * pixel,
                       r0.y - (static_cast<double>(r0.iy) + 0.5) * pixel};
    map.values.assign(nx * ny, 0.0);
    for (const Row& r : rows) map.values[map.grid.index(r.ix, r.iy)] = r.value;
    return map;
}

inline IndicatorMap parse_map_csv(const std::string& path,
                                  IndicatorKind kind = IndicatorKind::dsm_single) {
    auto in = detail::open_input(path);
    try {
        return parse_map_csv(in, kind);
    } catch (ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// -------------------------------------------------------------------- PGM

/// 8-bit binary PGM with linear [0,1] -> [0,255] quantization. The top image
/// row corresponds to the highest-y grid row so the file views naturally.
inline void write_pgm(std::ostream& out, const IndicatorMap& map) {
    out << "P5\n" << map.grid.nx << ' ' << map.grid.ny << "\n255\n";
    for (std::size_t row = 0; row < map.grid.ny; ++row) {
        const std::size_t iy = map.grid.ny - 1 - row;
        for (std::size_t ix = 0; ix < map.grid.nx; ++ix) {
            const double v = map.values[map.grid.index(ix, iy)];
            const int q = static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
            out.put(static_cast<char>(static_cast<unsigned char>(q)));
        }
    }
}

inline void write_pgm(const std::string& path, const IndicatorMap& map) {
    auto out = detail::open_output(path);
    write_pgm(out, map);
    if (!out) throw IoError("write failed: " + path);
}

// ----------------------------------------------------------- curves, peaks

inline void write_jaccard_csv(std::ostream& out, const JaccardCurve& curve) {
    out << "kappa,score_percent\n";
    for (std::size_t i = 0; i < curve.thresholds.size(); ++i)
        out << format_double(curve.thresholds[i]) << ',' << format_double(curve.scores[i])
            << '\n';
}

inline void write_jaccard_csv(const std::string& path, const JaccardCurve& curve) {
    auto out = detail::open_output(path);
    write_jaccard_csv(out, curve);
    if (!out) throw IoError("write failed: " + path);
}

inline JaccardCurve parse_jaccard_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line)) throw ParseError("empty curve file", lineno);
    detail::expect_header(line, "kappa,score_percent", lineno);
    JaccardCurve curve;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 2) throw ParseError("curve row needs 2 fields", lineno);
        curve.thresholds.push_back(detail::parse_field_double(f[0], lineno));
        curve.scores.push_back(detail::parse_field_double(f[1], lineno));
    }
    return curve;
}

inline void write_peaks_csv(std::ostream& out, const std::vector<Peak>& peaks) {
    out << "rank,x,y,value\n";
    for (std::size_t i = 0; i < peaks.size(); ++i)
        out << (i + 1) << ',' << format_double(peaks[i].position.x) << ','
            << format_double(peaks[i].position.y) << ',' << format_double(peaks[i].value)
            << '\n';
}

inline void write_peaks_csv(const std::string& path, const std::vector<Peak>& peaks) {
    auto out = detail::open_output(path);
    write_peaks_csv(out, peaks);
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace dsm2d
