#pragma once

#include <string>
#include <vector>

#include "spnav/grid.hpp"

namespace spnav {

/// Real value per grid cell, row-major from row 0 (bottom). −inf marks excluded cells.
struct Field {
    GridGeometry geometry;
    std::vector<double> values;

    double at(Cell c) const { return values[geometry.index(c)]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

enum class FieldFormat { PGM, CSV };

/// CSV: one line per grid row, starting at row 0, shortest round-trip decimal,
/// "-inf" for the sentinel. PGM: min-max over finite values to 0..255, −inf → 0,
/// constant field → 255; top image row is the highest grid row.
std::string export_field(const Field& field, FieldFormat format);

/// Parses the CSV written by export_field (geometry comes from the caller).
Field parse_field_csv(const std::string& csv, const GridGeometry& geometry);

}  // namespace spnav
