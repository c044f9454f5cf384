#include "twlab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "twlab/errors.hpp"

namespace twlab {

void RunConfig::set(const std::string& key, double value) { params[key] = format_double(value); }

void RunConfig::set(const std::string& key, const std::string& value) { params[key] = value; }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string config_preamble(const RunConfig& config) {
    std::string out;
    out += "# twlab " + std::string(kVersion) + "\n";
    out += "# command: " + config.command + "\n";
    out += "# seed: " + std::to_string(config.seed) + "\n";
    for (const auto& [k, v] : config.params) out += "# " + k + ": " + v + "\n";
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

CsvWriter::CsvWriter(const std::string& path, const RunConfig& config,
                     const std::vector<std::string>& columns)
    : path_(path), columns_(columns.size()) {
    buffer_ = config_preamble(config);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += columns[i];
    }
    buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) cells[i] = format_double(values[i]);
    row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw InvalidParameter("CsvWriter: wrong column count");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void CsvWriter::close() {
    if (closed_) return;
    write_file(path_, buffer_);
    closed_ = true;
}

void write_svg_chart(const std::string& path, const RunConfig& config, const std::string& title,
                     const std::vector<SvgSeries>& series) {
    const double width = 720.0, height = 480.0;
    const double ml = 70.0, mr = 20.0, mt = 40.0, mb = 50.0;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                first = false;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };

    // dark-to-light shades, later series lighter
    auto shade = [&](std::size_t idx) {
        double t = series.size() > 1
                       ? static_cast<double>(idx) / static_cast<double>(series.size() - 1)
                       : 0.0;
        int r = static_cast<int>(20 + t * 150);
        int g = static_cast<int>(60 + t * 140);
        int b = static_cast<int>(120 + t * 120);
        char buf[16];
        std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
        return std::string(buf);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + num(width) + " " +
           num(height) + "\">\n";
    svg += "<!--\n" + config_preamble(config) + "-->\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           title + "</text>\n";

    // axes
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(ml + pw) +
           "\" y2=\"" + num(mt + ph) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) + "\" y2=\"" +
           num(mt + ph) + "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        double fx = xmin + (xmax - xmin) * t / 4.0;
        double fy = ymin + (ymax - ymin) * t / 4.0;
        svg += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(mt + ph + 18.0) +
               "\" text-anchor=\"middle\" font-size=\"11\">" + num(fx) + "</text>\n";
        svg += "<text x=\"" + num(ml - 8.0) + "\" y=\"" + num(py(fy) + 4.0) +
               "\" text-anchor=\"end\" font-size=\"11\">" + num(fy) + "</text>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        svg += "<polyline fill=\"none\" stroke=\"" + shade(si) + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) svg += ' ';
            svg += num(px(s.x[i])) + "," + num(py(s.y[i]));
        }
        svg += "\"/>\n";
        // legend
        double ly = mt + 14.0 + 16.0 * static_cast<double>(si);
        svg += "<rect x=\"" + num(ml + pw - 130.0) + "\" y=\"" + num(ly - 9.0) +
               "\" width=\"12\" height=\"4\" fill=\"" + shade(si) + "\"/>\n";
        svg += "<text x=\"" + num(ml + pw - 112.0) + "\" y=\"" + num(ly) +
               "\" font-size=\"11\">" + s.label + "</text>\n";
    }
    svg += "</svg>\n";
    write_file(path, svg);
}

}  // namespace twlab
