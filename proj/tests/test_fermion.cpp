#include <doctest.h>

#include <cmath>
#include <random>

#include "exrouter/fermion.hpp"
#include "exrouter/planner.hpp"
#include "exrouter/series.hpp"

using namespace exrouter;

namespace {

Eigen::MatrixXd random_graph(int N, std::mt19937& rng) {
    std::uniform_real_distribution<double> coupling(-1.0, 1.0);
    std::bernoulli_distribution keep(0.6);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (keep(rng)) m(i, j) = m(j, i) = coupling(rng);
    return m;
}

NetworkSpec switchable_spec(int n_w, int contact, double J0 = 0.01, double J_addr = 1.0) {
    NetworkSpec spec;
    spec.n_w = n_w;
    spec.J_s = J_addr;
    spec.J0 = J0;
    spec.receivers.push_back({contact, J_addr, true});
    return spec;
}

}  // namespace

TEST_CASE("two-excitation amplitude at t=0 is the identity") {
    std::mt19937 rng(1);
    const auto d = eigendecompose(random_graph(7, rng));
    CHECK(std::abs(many_body_amplitude(d, {1, 4}, {1, 4}, 0.0) - 1.0) <= 1e-12);
    CHECK(std::abs(many_body_amplitude(d, {1, 4}, {2, 5}, 0.0)) <= 1e-12);
}

TEST_CASE("determinant is the 2x2 of single amplitudes") {
    std::mt19937 rng(2);
    const auto d = eigendecompose(random_graph(6, rng));
    const double t = 2.1;
    const Complex det = many_body_amplitude(d, {0, 1}, {4, 5}, t);
    const Complex manual = single_amplitude(d, 0, 4, t) * single_amplitude(d, 1, 5, t) -
                           single_amplitude(d, 0, 5, t) * single_amplitude(d, 1, 4, t);
    CHECK(std::abs(det - manual) <= 1e-13);
}

TEST_CASE("input validation on site lists") {
    std::mt19937 rng(3);
    const auto d = eigendecompose(random_graph(5, rng));
    CHECK_THROWS_AS(many_body_amplitude(d, {0, 1}, {2}, 1.0), LengthMismatch);
    CHECK_THROWS_AS(many_body_amplitude(d, {1, 0}, {2, 3}, 1.0), UnsortedSites);
    CHECK_THROWS_AS(many_body_amplitude(d, {0, 0}, {2, 3}, 1.0), UnsortedSites);
    CHECK_THROWS_AS(many_body_amplitude(d, {0, 9}, {2, 3}, 1.0), IndexOutOfRange);
}

TEST_CASE("m=1 oracle agrees with single_amplitude") {
    std::mt19937 rng(4);
    const auto graph = random_graph(6, rng);
    const auto d = eigendecompose(graph);
    for (double t : {0.0, 1.7, 9.2}) {
        const Complex oracle = fock_oracle_amplitude(graph, {2}, {4}, t);
        CHECK(std::abs(oracle - single_amplitude(d, 2, 4, t)) <= 1e-12);
    }
}

TEST_CASE("determinant matches the Fock oracle on a random 6-site graph") {
    std::mt19937 rng(5);
    const auto graph = random_graph(6, rng);
    const auto d = eigendecompose(graph);
    const double t = 3.7;
    const Complex det = many_body_amplitude(d, {0, 2}, {3, 5}, t);
    const Complex oracle = fock_oracle_amplitude(graph, {0, 2}, {3, 5}, t);
    CHECK(std::abs(det - oracle) <= 1e-10);
}

TEST_CASE("determinant-oracle equivalence across random graphs") {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> time(0.0, 20.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int N = 4 + trial % 7;
        const auto graph = random_graph(N, rng);
        const auto d = eigendecompose(graph);
        std::uniform_int_distribution<int> site(0, N - 1);
        int s1 = site(rng), s2 = site(rng), r1 = site(rng), r2 = site(rng);
        if (s1 == s2 || r1 == r2) continue;
        if (s1 > s2) std::swap(s1, s2);
        if (r1 > r2) std::swap(r1, r2);
        const double t = time(rng);
        const Complex det = many_body_amplitude(d, {s1, s2}, {r1, r2}, t);
        const Complex oracle = fock_oracle_amplitude(graph, {s1, s2}, {r1, r2}, t);
        CHECK(std::abs(std::norm(det) - std::norm(oracle)) <= 1e-10);
    }
}

TEST_CASE("oracle rejects oversized systems") {
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(15, 15);
    CHECK_THROWS_AS(fock_oracle_amplitude(big, {0, 1}, {2, 3}, 1.0), TooLarge);
}

TEST_CASE("two-excitation unitarity") {
    std::mt19937 rng(7);
    const auto graph = random_graph(8, rng);
    const auto d = eigendecompose(graph);
    double total = 0.0;
    for (int r1 = 0; r1 < 8; ++r1)
        for (int r2 = r1 + 1; r2 < 8; ++r2)
            total += std::norm(many_body_amplitude(d, {0, 3}, {r1, r2}, 5.5));
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("swapping targets flips the sign") {
    std::mt19937 rng(8);
    const auto d = eigendecompose(random_graph(6, rng));
    const auto block = amplitude_block(d, {0, 1}, {3, 4}, 2.2);
    const auto swapped = amplitude_block(d, {0, 1}, {4, 3}, 2.2);
    CHECK(std::abs(block.amplitudes.determinant() + swapped.amplitudes.determinant()) <= 1e-14);
}

TEST_CASE("transfer fidelity starts at zero") {
    const auto series = transfer_fidelity(switchable_spec(11, 7), uniform_grid(10.0, 11));
    CHECK(series.values.front() <= 1e-12);
    CHECK(series.engine == "fermion");
}

TEST_CASE("transfer fidelity requires an active receiver") {
    auto spec = switchable_spec(11, 7);
    spec.receivers[0].active = false;
    CHECK_THROWS_AS(transfer_fidelity(spec, uniform_grid(10.0, 3)), NoActiveReceiver);
}

TEST_CASE("resonant contact reaches high fidelity, forbidden contact does not") {
    const auto grid = uniform_grid(5000.0, 2001);
    const auto resonant = transfer_fidelity(switchable_spec(11, 7), grid);
    CHECK(*std::max_element(resonant.values.begin(), resonant.values.end()) >= 0.95);

    const auto short_grid = uniform_grid(2000.0, 801);
    const auto forbidden = transfer_fidelity(switchable_spec(11, 6), short_grid);
    CHECK(*std::max_element(forbidden.values.begin(), forbidden.values.end()) <= 0.05);
}

TEST_CASE("first peak of the resonant run sits near 10/J0") {
    const auto series = transfer_fidelity(switchable_spec(11, 7), uniform_grid(5000.0, 2001));
    const auto peak = first_peak(series, 0.5);
    CHECK(peak.t_peak >= 200.0);
    CHECK(peak.t_peak <= 5000.0);
    CHECK(peak.value_peak >= 0.95);
}

TEST_CASE("planner addresses separate listed from non-listed contacts") {
    // For each routing address: listed contacts transfer nearly perfectly,
    // contacts where the resonant mode has no support are fully suppressed,
    // and every other contact stays strictly below the weakest listed one
    // (mismatched overlaps give partial Rabi transfer, not full suppression).
    const auto grid = uniform_grid(5000.0, 1001);
    for (double address : {1.0, std::sqrt(2.0), std::sqrt(3.0)}) {
        const int k = resonant_k(address, 11);
        const auto listed = allowed_contacts(k, 11, 1);
        double weakest_listed = 1.0, strongest_other = 0.0;
        for (int w = 1; w <= 11; ++w) {
            NetworkSpec spec = switchable_spec(11, w, 0.01, address);
            spec.mode = CouplingMode::Permanent;
            const auto series = transfer_fidelity(spec, grid);
            const double peak = *std::max_element(series.values.begin(), series.values.end());
            if (std::binary_search(listed.begin(), listed.end(), w)) {
                CHECK(peak >= 0.9);
                weakest_listed = std::min(weakest_listed, peak);
            } else {
                if (std::abs(resonant_mode_support(k, 11, w)) <= 1e-12) CHECK(peak <= 0.05);
                strongest_other = std::max(strongest_other, peak);
            }
        }
        CHECK(strongest_other < weakest_listed);
    }
}

TEST_CASE("idle permanently coupled receivers only perturb at O(J0)") {
    // target at 7 plus an extra permanently coupled block at 5, J0 = 1e-6
    NetworkSpec permanent = switchable_spec(11, 7, 1e-6);
    permanent.mode = CouplingMode::Permanent;
    permanent.receivers.push_back({5, 1.0, false});

    const NetworkSpec switchable = switchable_spec(11, 7, 1e-6);
    const auto grid = uniform_grid(1000.0, 101);
    const auto with_extra = transfer_fidelity(permanent, grid);
    const auto without = transfer_fidelity(switchable, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(with_extra.values[i] - without.values[i]) <= 1e-3);
}
