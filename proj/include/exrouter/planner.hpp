#pragma once

#include <string>
#include <vector>

#include "exrouter/errors.hpp"

namespace exrouter {

/// One wire level usable as a routing address.
struct RoutingEntry {
    int k = 0;               // wire level index
    double J_address = 0.0;  // resonant intra-block coupling 2 cos(k pi/(n_w+1))
    std::vector<int> contacts; // sorted allowed contact points
    bool degenerate = false;   // contact set reaches only the sender's own site
};

struct RoutingPlan {
    int n_w = 0;
    int sender_contact = 1;
    std::vector<RoutingEntry> entries; // sorted by k
};

/// Integer wire level k with |J_s - 2 cos(k pi/(n_w+1))| <= tol.
int resonant_k(double J_s, int n_w, double tol = 1e-9);

/// All wire sites whose resonant-mode overlap matches the sender contact's in
/// absolute value (tolerance 1e-9 on the sine values), excluding nodes of the
/// mode.
std::vector<int> allowed_contacts(int k, int n_w, int s);

/// Multiples of 3 in [1, n_w]; only defined for the n_w = 3l+2 family.
std::vector<int> forbidden_contacts(int n_w);

/// sqrt(2/(n_w+1)) sin(k m pi/(n_w+1)).
double resonant_mode_support(int k, int n_w, int m);

/// Number of usable receiver points for an n_w = 3l+2 wire: 2(l+1).
int receiver_count(int n_w);

RoutingPlan routing_table(int n_w, int s = 1);

std::string plan_to_json(const RoutingPlan& plan);
std::string plan_to_text(const RoutingPlan& plan);

}  // namespace exrouter
