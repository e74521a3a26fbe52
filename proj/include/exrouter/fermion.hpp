#pragma once

#include <vector>

#include "exrouter/network.hpp"
#include "exrouter/series.hpp"
#include "exrouter/spectral.hpp"

namespace exrouter {

/// Slater-determinant transition amplitude of m excitations between strictly
/// increasing site lists. Reduces to single_amplitude for m = 1.
Complex many_body_amplitude(const SpectralDecomposition& decomp,
                            const std::vector<int>& sources,
                            const std::vector<int>& targets, double t);

/// Two-excitation transfer probability |<N-1,N| exp(-iHt) |1,2>|^2 over the
/// grid, from one decomposition reused across all times.
FidelitySeries transfer_fidelity(const NetworkSpec& spec, const std::vector<double>& times);

/// Same, with a caller-provided decomposition of the active adjacency
/// (cache path; the decomposition must match to_adjacency(spec)).
FidelitySeries transfer_fidelity(const NetworkSpec& spec, const std::vector<double>& times,
                                 const SpectralDecomposition& decomp);

/// Full-Fock-space verification oracle: builds the 2^N many-body Hamiltonian
/// with explicit fermionic sign strings and evolves by dense diagonalization.
/// Sites are 0-based global indices on the adjacency of `spec`.
Complex fock_oracle_amplitude(const NetworkSpec& spec, const std::vector<int>& sources,
                              const std::vector<int>& targets, double t);

/// Same oracle on a raw adjacency matrix (test entry point for random graphs).
Complex fock_oracle_amplitude(const Eigen::MatrixXd& adjacency, const std::vector<int>& sources,
                              const std::vector<int>& targets, double t);

}  // namespace exrouter
