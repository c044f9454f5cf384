#pragma once

#include <map>
#include <string>
#include <vector>

namespace twlab {

inline constexpr const char* kVersion = "0.1.0";

// Fully resolved run parameters; serialized into every output file so a
// result can be reproduced from the file alone.
struct RunConfig {
    std::string command;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    unsigned threads = 0;  // 0 = available parallelism
    std::map<std::string, std::string> params;

    void set(const std::string& key, double value);
    void set(const std::string& key, const std::string& value);
};

// shortest 17-significant-digit decimal; round-trips a double exactly
std::string format_double(double v);

// CSV with a '#'-prefixed config preamble, a header row, LF endings.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const RunConfig& config,
              const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& cells);
    void close();

private:
    std::string path_;
    std::string buffer_;
    std::size_t columns_ = 0;
    bool closed_ = false;
};

// Minimal polyline chart: one <polyline> per series, axes, tick labels and a
// legend; series are shaded dark to light in order.  The config is embedded
// as a leading XML comment.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

void write_svg_chart(const std::string& path, const RunConfig& config, const std::string& title,
                     const std::vector<SvgSeries>& series);

}  // namespace twlab
