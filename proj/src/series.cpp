#include "exrouter/series.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

namespace exrouter {

std::vector<double> uniform_grid(double t_max, int samples) {
    if (samples < 2 || !(t_max > 0)) throw std::invalid_argument("bad time grid");
    std::vector<double> grid(samples);
    for (int i = 0; i < samples; ++i) grid[i] = t_max * i / (samples - 1);
    return grid;
}

PeakReport first_peak(const FidelitySeries& series, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("threshold must lie in (0,1)");
    const auto& v = series.values;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] >= threshold && v[i] >= v[i - 1] && v[i] >= v[i + 1])
            return {series.times[i], v[i]};
    }
    throw NoPeak("no local maximum above threshold");
}

static std::string fmt12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string series_to_csv(const FidelitySeries& series) {
    std::string out = "t,probability\n";
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        out += fmt12(series.times[i]);
        out += ',';
        out += fmt12(series.values[i]);
        out += '\n';
    }
    return out;
}

void write_series_csv(const std::string& path, const FidelitySeries& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << series_to_csv(series);
}

std::string series_to_json(const FidelitySeries& series) {
    nlohmann::json j;
    j["engine"] = series.engine;
    j["network"] = nlohmann::json::parse(to_json(series.spec));
    j["t"] = series.times;
    j["probability"] = series.values;
    return j.dump(2);
}

}  // namespace exrouter
