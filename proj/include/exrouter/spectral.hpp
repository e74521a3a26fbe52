#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "exrouter/errors.hpp"

namespace exrouter {

using Complex = std::complex<double>;

/// Eigenvalues (ascending) and orthonormal eigenvectors of the single-particle
/// matrix. Column k of `modes` holds the components a_{kn} of level k.
struct SpectralDecomposition {
    Eigen::VectorXd energies;
    Eigen::MatrixXd modes;

    int size() const { return static_cast<int>(energies.size()); }
};

/// Block of single-particle transition amplitudes f_{s_i}^{r_j}(t).
struct AmplitudeBlock {
    double t = 0.0;
    Eigen::MatrixXcd amplitudes; // row i = source s_i, column j = target r_j
};

/// Dense eigendecomposition with a deterministic sign convention: the
/// largest-magnitude component of every eigenvector is positive, ties broken
/// by lowest site index.
SpectralDecomposition eigendecompose(const Eigen::MatrixXd& matrix);

/// Closed-form mode k of the isolated uniform wire:
/// energy 2 J cos(k pi/(n_w+1)), component_m = sqrt(2/(n_w+1)) sin(k m pi/(n_w+1)).
std::pair<double, Eigen::VectorXd> wire_mode(int k, int n_w, double J = 1.0);

/// f_s^r(t) = sum_k a_{r,k} a_{s,k} exp(-i E_k t). Sites are 0-based.
Complex single_amplitude(const SpectralDecomposition& decomp, int s, int r, double t);

AmplitudeBlock amplitude_block(const SpectralDecomposition& decomp,
                               const std::vector<int>& sources,
                               const std::vector<int>& targets, double t);

/// FNV-1a hash over the raw matrix bytes, for cache keys.
std::string adjacency_cache_key(const Eigen::MatrixXd& matrix);

/// Binary cache of a decomposition keyed by adjacency_cache_key.
void save_decomposition(const std::string& path, const SpectralDecomposition& decomp);
std::optional<SpectralDecomposition> load_decomposition(const std::string& path);

}  // namespace exrouter
