#include "spnav/field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "format.hpp"
#include "spnav/error.hpp"
#include "spnav/map_io.hpp"

namespace spnav {

std::string export_field(const Field& field, FieldFormat format) {
    const auto& geo = field.geometry;
    if (field.values.empty() || geo.size() == 0) throw ValidationError("cannot export an empty field");
    if (field.values.size() != geo.size()) throw ValidationError("field size does not match geometry");
    for (double v : field.values) {
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
            throw ValidationError("field values must be finite or -inf");
        }
    }

    if (format == FieldFormat::CSV) {
        std::string out;
        for (int r = 0; r < geo.height; ++r) {
            for (int c = 0; c < geo.width; ++c) {
                if (c) out += ',';
                out += detail::format_double(field.at({c, r}));
            }
            out += '\n';
        }
        return out;
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : field.values) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    GrayImage img{geo.width, geo.height, 255, std::vector<std::uint8_t>(geo.size())};
    for (int ir = 0; ir < geo.height; ++ir) {
        const int row = geo.height - 1 - ir;
        for (int c = 0; c < geo.width; ++c) {
            const double v = field.at({c, row});
            std::uint8_t g = 0;
            if (std::isfinite(v)) {
                g = (hi > lo) ? static_cast<std::uint8_t>(std::lround((v - lo) / (hi - lo) * 255.0)) : 255;
            }
            img.pixels[static_cast<std::size_t>(ir) * geo.width + c] = g;
        }
    }
    return format_pgm(img);
}

Field parse_field_csv(const std::string& csv, const GridGeometry& geometry) {
    Field f{geometry, {}};
    f.values.reserve(geometry.size());
    std::istringstream in(csv);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t start = 0;
        int cols = 0;
        while (start <= line.size()) {
            const std::size_t end = std::min(line.find(',', start), line.size());
            const std::string tok = line.substr(start, end - start);
            double v = 0.0;
            if (tok == "-inf") {
                v = -std::numeric_limits<double>::infinity();
            } else {
                auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
                if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) throw ParseError("field", "bad number '" + tok + "'");
            }
            f.values.push_back(v);
            ++cols;
            start = end + 1;
        }
        if (cols != geometry.width) throw ParseError("field", "row width mismatch");
        ++rows;
    }
    if (rows != geometry.height) throw ParseError("field", "row count mismatch");
    return f;
}

}  // namespace spnav
