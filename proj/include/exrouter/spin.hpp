#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <vector>

#include "exrouter/network.hpp"
#include "exrouter/series.hpp"

namespace exrouter {

/// Bijection between ordered site pairs (n1 < n2) and sector indices
/// 0 .. C(N,2)-1, lexicographic in (n1, n2). Sites are 0-based.
class TwoExcitationBasis {
  public:
    explicit TwoExcitationBasis(int N);

    int size() const { return dim_; }
    int sites() const { return N_; }
    int index_of(int n1, int n2) const;
    std::pair<int, int> pair_of(int index) const;

  private:
    int N_;
    int dim_;
};

/// Sparse symmetric two-excitation Hamiltonian in the pair basis.
struct SectorHamiltonian {
    Eigen::SparseMatrix<double> matrix;
    double norm_bound = 0.0; // Gershgorin bound on the spectral radius

    int dimension() const { return static_cast<int>(matrix.rows()); }
};

using SectorState = Eigen::VectorXcd;

/// XX hopping Hamiltonian restricted to the two-excitation sector:
/// basis pairs differing by one hop across a graph edge couple with the edge
/// amplitude (hard-core bosons, no sign strings).
SectorHamiltonian assemble(const NetworkSpec& spec);
SectorHamiltonian sector_from_sparse(Eigen::SparseMatrix<double> matrix);

/// exp(-iHt) state within `tol` (relative 2-norm), via a certified Chebyshev
/// expansion over the sparse matrix. Matrix-free: only H*v products.
SectorState evolve(const SectorHamiltonian& H, const SectorState& state, double t,
                   double tol = 1e-8);

/// Exact propagation through full dense diagonalization; dimension <= 4000.
SectorState dense_oracle_evolve(const SectorHamiltonian& H, const SectorState& state, double t);

/// |<receiver pair| psi(t)>|^2 sampled on the grid, engine tag "spin".
FidelitySeries spin_transfer_probability(const NetworkSpec& spec,
                                         const std::vector<double>& times, double tol = 1e-8);

}  // namespace exrouter
