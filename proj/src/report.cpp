#include "qsz/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qsz {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

std::string fmt_tick(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string fmt_coord(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

} // namespace

std::string CsvTable::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(header[i]);
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::logic_error("CsvTable: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(row[i]);
        }
        out += '\n';
    }
    return out;
}

void CsvTable::write(const std::string& path) const {
    if (rows.empty()) throw std::invalid_argument("CsvTable: refusing to write an empty table");
    write_file(path, to_string());
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string svg_plot(const std::vector<SvgSeries>& series, const std::string& title,
                     const std::string& x_label, const std::string& y_label) {
    if (series.empty()) throw std::invalid_argument("svg_plot: no series");
    const double W = 800, H = 520;
    const double ml = 70, mr = 160, mt = 40, mb = 50;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmax > xmin)) { xmax = xmin + 1; }
    if (!(ymax > ymin)) { ymax = ymin + 1; }
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"520\" "
           "viewBox=\"0 0 800 520\">\n";
    svg += "<rect width=\"800\" height=\"520\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt_coord(W / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"monospace\" font-size=\"15\">" + title + "</text>\n";
    // axes
    svg += "<line x1=\"" + fmt_coord(ml) + "\" y1=\"" + fmt_coord(H - mb) + "\" x2=\"" +
           fmt_coord(W - mr) + "\" y2=\"" + fmt_coord(H - mb) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt_coord(ml) + "\" y1=\"" + fmt_coord(mt) + "\" x2=\"" + fmt_coord(ml) +
           "\" y2=\"" + fmt_coord(H - mb) + "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double fx = xmin + (xmax - xmin) * i / 5.0;
        double fy = ymin + (ymax - ymin) * i / 5.0;
        svg += "<line x1=\"" + fmt_coord(px(fx)) + "\" y1=\"" + fmt_coord(H - mb) + "\" x2=\"" +
               fmt_coord(px(fx)) + "\" y2=\"" + fmt_coord(H - mb + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt_coord(px(fx)) + "\" y=\"" + fmt_coord(H - mb + 18) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" +
               fmt_tick(fx) + "</text>\n";
        svg += "<line x1=\"" + fmt_coord(ml - 5) + "\" y1=\"" + fmt_coord(py(fy)) + "\" x2=\"" +
               fmt_coord(ml) + "\" y2=\"" + fmt_coord(py(fy)) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt_coord(ml - 8) + "\" y=\"" + fmt_coord(py(fy) + 4) +
               "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" + fmt_tick(fy) +
               "</text>\n";
    }
    svg += "<text x=\"" + fmt_coord((ml + W - mr) / 2) + "\" y=\"" + fmt_coord(H - 10) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">" + x_label +
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt_coord((mt + H - mb) / 2) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " + fmt_coord((mt + H - mb) / 2) + ")\">" + y_label +
           "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = palette[s % 8];
        std::string pts;
        for (auto [x, y] : series[s].points) {
            if (!pts.empty()) pts += ' ';
            pts += fmt_coord(px(x)) + "," + fmt_coord(py(y));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" "
               "points=\"" + pts + "\"/>\n";
        double ly = mt + 18.0 * static_cast<double>(s);
        svg += "<line x1=\"" + fmt_coord(W - mr + 10) + "\" y1=\"" + fmt_coord(ly) + "\" x2=\"" +
               fmt_coord(W - mr + 34) + "\" y2=\"" + fmt_coord(ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + fmt_coord(W - mr + 40) + "\" y=\"" + fmt_coord(ly + 4) +
               "\" font-family=\"monospace\" font-size=\"11\">" + series[s].name + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace qsz
