#pragma once

#include <string>
#include <vector>

#include "exrouter/errors.hpp"
#include "exrouter/network.hpp"

namespace exrouter {

/// Sampled two-excitation transfer probability versus time.
struct FidelitySeries {
    std::vector<double> times;  // strictly increasing, units 1/J
    std::vector<double> values; // probabilities in [0,1]
    NetworkSpec spec;           // provenance snapshot
    std::string engine;         // "fermion" | "spin"
};

struct PeakReport {
    double t_peak = 0.0;
    double value_peak = 0.0;
};

/// Uniform grid of `samples` points on [0, t_max], endpoints included.
std::vector<double> uniform_grid(double t_max, int samples);

/// Earliest sample that is a local maximum with value >= threshold.
PeakReport first_peak(const FidelitySeries& series, double threshold = 0.5);

/// CSV with header `t,probability`, 12 significant digits.
std::string series_to_csv(const FidelitySeries& series);
void write_series_csv(const std::string& path, const FidelitySeries& series);

/// JSON dump with the spec snapshot embedded.
std::string series_to_json(const FidelitySeries& series);

}  // namespace exrouter
