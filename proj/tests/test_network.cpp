#include <doctest.h>

#include <set>

#include "exrouter/network.hpp"

using namespace exrouter;

namespace {

NetworkSpec example_spec(int contact = 7, double J0 = 0.01) {
    NetworkSpec spec;
    spec.n_w = 11;
    spec.J0 = J0;
    spec.receivers.push_back({contact, 1.0, true});
    return spec;
}

}  // namespace

TEST_CASE("validate accepts the reference layout") {
    CHECK(validate(example_spec()).valid());
}

TEST_CASE("validate flags contact out of range") {
    auto spec = example_spec();
    spec.receivers.push_back({0, 1.0, false});
    const auto report = validate(spec);
    REQUIRE_FALSE(report.valid());
    CHECK(report.violations.front().find("contact out of range") != std::string::npos);
}

TEST_CASE("validate flags shared contact point") {
    auto spec = example_spec(5);
    spec.mode = CouplingMode::Permanent;
    spec.receivers.push_back({5, 1.0, false});
    const auto report = validate(spec);
    REQUIRE_FALSE(report.valid());
    CHECK(report.violations.front().find("shared contact") != std::string::npos);
}

TEST_CASE("validate flags two active receivers in switchable mode") {
    auto spec = example_spec(5);
    spec.receivers.push_back({7, 1.0, true});
    CHECK_FALSE(validate(spec).valid());
}

TEST_CASE("validate rejects short wires and bad couplings") {
    NetworkSpec spec;
    spec.n_w = 1;
    spec.J0 = 0.0;
    CHECK(validate(spec).violations.size() >= 2);
}

TEST_CASE("active_subnetwork keeps only the active receiver") {
    auto spec = example_spec();
    spec.receivers.push_back({5, 1.0, false});
    spec.receivers.push_back({9, 1.0, false});
    const auto sub = active_subnetwork(spec);
    REQUIRE(sub.receivers.size() == 1);
    CHECK(sub.receivers[0].contact == 7);
    CHECK(sub.total_sites() == spec.n_w + 4);
}

TEST_CASE("active_subnetwork is the identity for permanent mode") {
    auto spec = example_spec();
    spec.mode = CouplingMode::Permanent;
    spec.receivers.push_back({5, 1.0, false});
    const auto sub = active_subnetwork(spec);
    CHECK(sub.receivers.size() == 2);
}

TEST_CASE("active_subnetwork is idempotent") {
    auto spec = example_spec();
    spec.receivers.push_back({5, 1.0, false});
    const auto once = active_subnetwork(spec);
    const auto twice = active_subnetwork(once);
    CHECK(to_json(once) == to_json(twice));
}

TEST_CASE("active_subnetwork throws without an active receiver") {
    auto spec = example_spec();
    spec.receivers[0].active = false;
    CHECK_THROWS_AS(active_subnetwork(spec), NoActiveReceiver);
}

TEST_CASE("adjacency of the minimal layout") {
    NetworkSpec spec;
    spec.n_w = 2;
    spec.J0 = 0.01;
    spec.mode = CouplingMode::Permanent;
    const auto adj = to_adjacency(spec);
    REQUIRE(adj.rows() == 4);
    CHECK(adj(0, 1) == 1.0);   // sender pair, J_s
    CHECK(adj(1, 2) == 0.01);  // sender-to-wire link
    CHECK(adj(2, 3) == 1.0);   // wire bond
    CHECK(adj.diagonal().isZero(0.0));
}

TEST_CASE("adjacency is bitwise symmetric") {
    auto spec = example_spec();
    spec.receivers.push_back({5, 0.7, false});
    spec.mode = CouplingMode::Permanent;
    const auto adj = to_adjacency(spec);
    CHECK(adj == adj.transpose().eval());
}

TEST_CASE("only degree-3 vertex of the active layout is the contact site") {
    const auto adj = to_adjacency(example_spec(7));
    REQUIRE(adj.rows() == 15);
    const SiteIndexMap map(active_subnetwork(example_spec(7)));
    for (int i = 0; i < 15; ++i) {
        const int degree = (adj.row(i).array() != 0.0).count();
        if (i == map.global_of_wire(7))
            CHECK(degree == 3);
        else
            CHECK(degree <= 2);
    }
}

TEST_CASE("row sums respect the degree bound") {
    const auto spec = example_spec();
    const auto adj = to_adjacency(spec);
    const SiteIndexMap map(active_subnetwork(spec));
    for (int m = 1; m <= spec.n_w; ++m)
        CHECK(adj.row(map.global_of_wire(m)).cwiseAbs().sum() <= 2 * spec.J + spec.J0 + 1e-15);
    for (int s = 1; s <= 2; ++s)
        CHECK(adj.row(map.global_of_sender(s)).cwiseAbs().sum() <= spec.J_s + spec.J0 + 1e-15);
}

TEST_CASE("site index map is a bijection with the active pair last") {
    auto spec = example_spec();
    spec.mode = CouplingMode::Permanent;
    spec.receivers.push_back({5, 1.0, false});
    const SiteIndexMap map(spec);
    const int N = map.total_sites();
    CHECK(N == spec.n_w + 2 * (static_cast<int>(spec.receivers.size()) + 1));

    std::set<int> seen;
    seen.insert(map.global_of_sender(1));
    seen.insert(map.global_of_sender(2));
    for (int m = 1; m <= spec.n_w; ++m) seen.insert(map.global_of_wire(m));
    for (int b = 0; b < 2; ++b)
        for (int s = 1; s <= 2; ++s) seen.insert(map.global_of_receiver(b, s));
    CHECK(static_cast<int>(seen.size()) == N);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == N - 1);

    // the active block (index 0 in the spec) sits at the end
    CHECK(map.global_of_receiver(0, 1) == N - 2);
    CHECK(map.global_of_receiver(0, 2) == N - 1);
}

TEST_CASE("JSON round trip") {
    auto spec = example_spec();
    spec.J_s = 1.4142;
    spec.receivers.push_back({5, 0.5, false});
    const auto back = spec_from_json(to_json(spec));
    CHECK(to_json(back) == to_json(spec));
}

TEST_CASE("JSON rejects unknown keys") {
    CHECK_THROWS(spec_from_json(R"({"n_w": 11, "J0": 0.01, "receivers": [], "bogus": 1})"));
    CHECK_THROWS(spec_from_json(
        R"({"n_w": 11, "J0": 0.01, "receivers": [{"contact": 1, "extra": 2}]})"));
}
