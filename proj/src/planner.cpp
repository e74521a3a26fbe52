#include "exrouter/planner.hpp"

#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <numbers>

namespace exrouter {

namespace {

constexpr double kSineTol = 1e-9;  // tolerance on |sin| matching
constexpr double kNodeTol = 1e-12; // a mode component below this is a node

void check_wire_index(int idx, int n_w, const char* what) {
    if (idx < 1 || idx > n_w) throw IndexOutOfRange(std::string(what) + " out of range");
}

}  // namespace

int resonant_k(double J_s, int n_w, double tol) {
    if (n_w < 2) throw IndexOutOfRange("n_w must be at least 2");
    if (std::abs(J_s) >= 2.0) throw OutOfBand("sender level outside the wire band");
    const double theta = std::numbers::pi / (n_w + 1);
    for (int k = 1; k <= n_w; ++k)
        if (std::abs(J_s - 2.0 * std::cos(k * theta)) <= tol) return k;
    throw NoResonance("no wire level within tolerance of J_s");
}

std::vector<int> allowed_contacts(int k, int n_w, int s) {
    check_wire_index(k, n_w, "level index");
    check_wire_index(s, n_w, "sender contact");
    const double theta = std::numbers::pi / (n_w + 1);
    const double ref = std::abs(std::sin(k * s * theta));
    std::vector<int> contacts;
    for (int w = 1; w <= n_w; ++w) {
        const double val = std::abs(std::sin(k * w * theta));
        if (val < kNodeTol) continue; // the mode has no support here
        if (std::abs(val - ref) <= kSineTol) contacts.push_back(w);
    }
    return contacts;
}

std::vector<int> forbidden_contacts(int n_w) {
    if (n_w % 3 != 2) throw WrongWireFamily("rule applies to n_w = 3l+2 wires only");
    std::vector<int> sites;
    for (int w = 3; w <= n_w; w += 3) sites.push_back(w);
    return sites;
}

double resonant_mode_support(int k, int n_w, int m) {
    check_wire_index(k, n_w, "level index");
    if (m < 0 || m > n_w) throw IndexOutOfRange("wire site out of range");
    const double theta = std::numbers::pi / (n_w + 1);
    return std::sqrt(2.0 / (n_w + 1)) * std::sin(k * m * theta);
}

int receiver_count(int n_w) {
    if (n_w % 3 != 2) throw WrongWireFamily("rule applies to n_w = 3l+2 wires only");
    const int l = (n_w - 2) / 3;
    return 2 * (l + 1);
}

RoutingPlan routing_table(int n_w, int s) {
    if (n_w < 2) throw IndexOutOfRange("n_w must be at least 2");
    check_wire_index(s, n_w, "sender contact");
    const double theta = std::numbers::pi / (n_w + 1);
    const int k_max = n_w % 2 == 0 ? n_w / 2 : (n_w - 1) / 2;

    RoutingPlan plan;
    plan.n_w = n_w;
    plan.sender_contact = s;
    for (int k = 1; k <= k_max; ++k) {
        RoutingEntry entry;
        entry.k = k;
        entry.J_address = 2.0 * std::cos(k * theta);
        entry.contacts = allowed_contacts(k, n_w, s);
        entry.degenerate = entry.contacts == std::vector<int>{s};
        plan.entries.push_back(std::move(entry));
    }
    return plan;
}

std::string plan_to_json(const RoutingPlan& plan) {
    nlohmann::json j;
    j["n_w"] = plan.n_w;
    j["sender_contact"] = plan.sender_contact;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : plan.entries)
        j["entries"].push_back({{"k", e.k},
                                {"J_address", e.J_address},
                                {"contacts", e.contacts},
                                {"degenerate", e.degenerate}});
    return j.dump(2);
}

std::string plan_to_text(const RoutingPlan& plan) {
    char buf[64];
    std::string out = "  k    J_r        w_i\n";
    for (const auto& e : plan.entries) {
        std::snprintf(buf, sizeof(buf), "%3d  %9.6f   ", e.k, e.J_address);
        out += buf;
        for (std::size_t i = 0; i < e.contacts.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(e.contacts[i]);
        }
        if (e.degenerate) out += "  (degenerate)";
        out += '\n';
    }
    return out;
}

}  // namespace exrouter
