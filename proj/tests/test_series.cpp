#include <doctest.h>

#include <cmath>
#include <numbers>

#include "exrouter/series.hpp"

using namespace exrouter;

namespace {

FidelitySeries sampled(double (*f)(double), double t_max, int samples) {
    FidelitySeries s;
    s.times = uniform_grid(t_max, samples);
    for (double t : s.times) s.values.push_back(f(t));
    s.engine = "fermion";
    return s;
}

}  // namespace

TEST_CASE("uniform grid endpoints and spacing") {
    const auto grid = uniform_grid(50.0, 11);
    REQUIRE(grid.size() == 11);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 50.0);
    CHECK(grid[1] == doctest::Approx(5.0));
    CHECK_THROWS(uniform_grid(0.0, 10));
    CHECK_THROWS(uniform_grid(10.0, 1));
}

TEST_CASE("first peak of a slow sinusoid") {
    const auto series = sampled([](double t) { return std::pow(std::sin(0.001 * t), 2); },
                                5000.0, 501);
    const auto peak = first_peak(series, 0.5);
    const double expected = std::numbers::pi / 0.002;
    CHECK(std::abs(peak.t_peak - expected) <= 10.0); // one grid step
    CHECK(peak.value_peak >= 0.99);
}

TEST_CASE("flat series has no peak") {
    const auto series = sampled([](double) { return 0.0; }, 100.0, 11);
    CHECK_THROWS_AS(first_peak(series, 0.5), NoPeak);
}

TEST_CASE("threshold must be a probability") {
    const auto series = sampled([](double) { return 0.0; }, 100.0, 11);
    CHECK_THROWS(first_peak(series, 0.0));
    CHECK_THROWS(first_peak(series, 1.0));
}

TEST_CASE("CSV carries the header and 12 significant digits") {
    FidelitySeries s;
    s.times = {0.0, 0.123456789012345};
    s.values = {0.0, 0.987654321098765};
    const auto csv = series_to_csv(s);
    CHECK(csv.rfind("t,probability\n", 0) == 0);
    CHECK(csv.find("0.123456789012") != std::string::npos);
    CHECK(csv.find("0.987654321099") != std::string::npos);
}

TEST_CASE("JSON embeds the network snapshot and the engine tag") {
    FidelitySeries s;
    s.times = {0.0, 1.0};
    s.values = {0.0, 0.5};
    s.engine = "spin";
    s.spec.n_w = 5;
    s.spec.receivers.push_back({5, 1.0, true});
    const auto json = series_to_json(s);
    CHECK(json.find("\"engine\": \"spin\"") != std::string::npos);
    CHECK(json.find("\"n_w\": 5") != std::string::npos);
}
