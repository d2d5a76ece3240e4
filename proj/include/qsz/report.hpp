#pragma once

#include "qsz/rational.hpp"

#include <string>
#include <vector>

namespace qsz {

/// 17 significant digits, locale-independent.
std::string fmt_double(double x);

/// RFC-4180-style table: UTF-8, header row, LF line endings, fields quoted
/// only when they contain a comma, quote, or newline. Byte-identical output
/// for identical content.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
    void write(const std::string& path) const;
};

struct SvgSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

/// Fixed-size polyline plot with axis ticks and a legend; deterministic bytes.
std::string svg_plot(const std::vector<SvgSeries>& series, const std::string& title,
                     const std::string& x_label, const std::string& y_label);

void write_file(const std::string& path, const std::string& content);

} // namespace qsz
