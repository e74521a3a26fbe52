#include "exrouter/network.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>

namespace exrouter {

namespace {

// Receiver block ordering used everywhere: inactive blocks first (in spec
// order), active/target blocks last, so the target pair sits at N-1, N.
std::vector<int> receiver_order(const NetworkSpec& spec) {
    std::vector<int> order;
    for (int b = 0; b < static_cast<int>(spec.receivers.size()); ++b)
        if (!spec.receivers[b].active) order.push_back(b);
    for (int b = 0; b < static_cast<int>(spec.receivers.size()); ++b)
        if (spec.receivers[b].active) order.push_back(b);
    return order;
}

bool coupled_to_wire(const NetworkSpec& spec, const ReceiverSpec& r) {
    return spec.mode == CouplingMode::Permanent || r.active;
}

}  // namespace

SiteIndexMap::SiteIndexMap(const NetworkSpec& spec)
    : n_w_(spec.n_w), total_(spec.total_sites()) {
    receiver_base_.assign(spec.receivers.size(), -1);
    int base = 2 + n_w_;
    for (int b : receiver_order(spec)) {
        receiver_base_[b] = base;
        base += 2;
    }
}

int SiteIndexMap::global_of_sender(int site) const {
    if (site < 1 || site > 2) throw IndexOutOfRange("sender site must be 1 or 2");
    return site - 1;
}

int SiteIndexMap::global_of_wire(int site) const {
    if (site < 1 || site > n_w_) throw IndexOutOfRange("wire site out of range");
    return 1 + site;
}

int SiteIndexMap::global_of_receiver(int block, int site) const {
    if (block < 0 || block >= static_cast<int>(receiver_base_.size()))
        throw IndexOutOfRange("receiver block out of range");
    if (site < 1 || site > 2) throw IndexOutOfRange("receiver site must be 1 or 2");
    return receiver_base_[block] + site - 1;
}

ValidationReport validate(const NetworkSpec& spec) {
    ValidationReport report;
    auto bad = [&](const std::string& msg) { report.violations.push_back(msg); };

    if (spec.n_w < 2) bad("n_w must be at least 2");
    if (!std::isfinite(spec.J) || !std::isfinite(spec.J_s) || !std::isfinite(spec.J0))
        bad("couplings must be finite");
    if (!(spec.J0 > 0)) bad("J0 must be positive");
    if (spec.sender_contact < 1 || spec.sender_contact > spec.n_w)
        bad("sender contact out of range");

    int n_active = 0;
    std::set<int> coupled_contacts;
    for (const auto& r : spec.receivers) {
        if (!std::isfinite(r.J_r)) bad("receiver coupling must be finite");
        if (r.contact < 1 || r.contact > spec.n_w) {
            bad("contact out of range");
            continue;
        }
        if (r.active) ++n_active;
        if (coupled_to_wire(spec, r) && !coupled_contacts.insert(r.contact).second)
            bad("shared contact point");
    }
    if (spec.mode == CouplingMode::Switchable && n_active > 1)
        bad("at most one receiver may be active in switchable mode");
    return report;
}

NetworkSpec active_subnetwork(const NetworkSpec& spec) {
    if (spec.mode == CouplingMode::Permanent) return spec;
    NetworkSpec sub = spec;
    sub.receivers.clear();
    for (const auto& r : spec.receivers)
        if (r.active) sub.receivers.push_back(r);
    if (sub.receivers.empty())
        throw NoActiveReceiver("switchable network has no active receiver");
    return sub;
}

Eigen::MatrixXd to_adjacency(const NetworkSpec& spec) {
    auto report = validate(spec);
    if (!report.valid()) throw std::invalid_argument("invalid spec: " + report.violations.front());

    const NetworkSpec net =
        spec.mode == CouplingMode::Switchable ? active_subnetwork(spec) : spec;
    const SiteIndexMap map(net);
    const int N = map.total_sites();
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(N, N);
    auto link = [&](int i, int j, double J) {
        adj(i, j) = J;
        adj(j, i) = J;
    };

    link(map.global_of_sender(1), map.global_of_sender(2), net.J_s);
    link(map.global_of_sender(2), map.global_of_wire(net.sender_contact), net.J0);
    for (int m = 1; m < net.n_w; ++m)
        link(map.global_of_wire(m), map.global_of_wire(m + 1), net.J);
    for (int b = 0; b < static_cast<int>(net.receivers.size()); ++b) {
        const auto& r = net.receivers[b];
        link(map.global_of_receiver(b, 1), map.global_of_receiver(b, 2), r.J_r);
        if (coupled_to_wire(net, r))
            link(map.global_of_receiver(b, 1), map.global_of_wire(r.contact), net.J0);
    }
    return adj;
}

std::string to_json(const NetworkSpec& spec) {
    nlohmann::json j;
    j["n_w"] = spec.n_w;
    j["J"] = spec.J;
    j["J_s"] = spec.J_s;
    j["J0"] = spec.J0;
    j["sender_contact"] = spec.sender_contact;
    j["mode"] = spec.mode == CouplingMode::Switchable ? "switchable" : "permanent";
    j["receivers"] = nlohmann::json::array();
    for (const auto& r : spec.receivers)
        j["receivers"].push_back({{"contact", r.contact}, {"J_r", r.J_r}, {"active", r.active}});
    return j.dump(2);
}

NetworkSpec spec_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    static const std::set<std::string> known = {"n_w", "J",    "J_s",      "J0",
                                                "sender_contact", "mode", "receivers"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw std::invalid_argument("unknown key: " + key);

    NetworkSpec spec;
    spec.n_w = j.at("n_w").get<int>();
    spec.J = j.value("J", 1.0);
    spec.J_s = j.value("J_s", 1.0);
    spec.J0 = j.at("J0").get<double>();
    spec.sender_contact = j.value("sender_contact", 1);
    const std::string mode = j.value("mode", "switchable");
    if (mode == "switchable")
        spec.mode = CouplingMode::Switchable;
    else if (mode == "permanent")
        spec.mode = CouplingMode::Permanent;
    else
        throw std::invalid_argument("unknown mode: " + mode);
    for (const auto& rj : j.value("receivers", nlohmann::json::array())) {
        static const std::set<std::string> rknown = {"contact", "J_r", "active"};
        for (const auto& [key, value] : rj.items())
            if (!rknown.count(key)) throw std::invalid_argument("unknown receiver key: " + key);
        ReceiverSpec r;
        r.contact = rj.at("contact").get<int>();
        r.J_r = rj.value("J_r", 1.0);
        r.active = rj.value("active", false);
        spec.receivers.push_back(r);
    }
    return spec;
}

}  // namespace exrouter
