#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "exrouter/errors.hpp"

namespace exrouter {

enum class CouplingMode { Switchable, Permanent };

/// One two-site receiver block, weakly attached to a wire site.
struct ReceiverSpec {
    int contact = 1;     // wire-internal contact point w_i, 1..n_w
    double J_r = 1.0;    // intra-block coupling
    bool active = false; // whether its J0 link to the wire is switched on
                         // (Permanent mode: designates the routing target)
};

/// Declarative sender-wire-receivers topology.
///
/// Site numbering convention: sender pair first, then the wire, then the
/// receiver blocks with the active (target) block last, so that the
/// two-excitation transfer reads |1,2> -> |N-1,N|.
struct NetworkSpec {
    int n_w = 2;           // wire length
    double J = 1.0;        // intra-wire coupling (energy/time unit)
    double J_s = 1.0;      // sender intra-block coupling
    double J0 = 0.01;      // weak block-to-wire coupling
    int sender_contact = 1; // wire site the sender attaches to
    CouplingMode mode = CouplingMode::Switchable;
    std::vector<ReceiverSpec> receivers;

    /// Total sites of the full layout: n_w + 2*(n_r + 1).
    int total_sites() const { return n_w + 2 * (static_cast<int>(receivers.size()) + 1); }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
};

/// Maps the layout blocks onto 0-based global site indices.
///
/// Sender sites come first, then wire sites, then receiver blocks ordered so
/// that the active block occupies the last two indices.
class SiteIndexMap {
  public:
    explicit SiteIndexMap(const NetworkSpec& spec);

    int global_of_sender(int site) const;                // site in {1,2}
    int global_of_wire(int site) const;                  // site in 1..n_w
    int global_of_receiver(int block, int site) const;   // block 0-based, site in {1,2}
    int total_sites() const { return total_; }

  private:
    int n_w_;
    int total_;
    std::vector<int> receiver_base_; // global index of each block's first site
};

ValidationReport validate(const NetworkSpec& spec);

/// Drops receiver blocks whose wire coupling is off; dynamics on the result
/// equals dynamics on the full network restricted to the sender's component.
/// Permanent-mode specs are returned unchanged.
NetworkSpec active_subnetwork(const NetworkSpec& spec);

/// Single-particle coupling (adjacency) matrix of the simulated network.
/// Switchable specs are reduced through active_subnetwork first.
Eigen::MatrixXd to_adjacency(const NetworkSpec& spec);

std::string to_json(const NetworkSpec& spec);
NetworkSpec spec_from_json(const std::string& text);

}  // namespace exrouter
