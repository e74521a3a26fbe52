#include "exrouter/spin.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "exrouter/spectral.hpp"

namespace exrouter {

TwoExcitationBasis::TwoExcitationBasis(int N) : N_(N), dim_(N * (N - 1) / 2) {
    if (N < 2) throw IndexOutOfRange("two-excitation basis needs N >= 2");
}

int TwoExcitationBasis::index_of(int n1, int n2) const {
    if (n1 < 0 || n2 <= n1 || n2 >= N_) throw IndexOutOfRange("bad site pair");
    // lexicographic triangular indexing
    return n1 * N_ - n1 * (n1 + 1) / 2 + (n2 - n1 - 1);
}

std::pair<int, int> TwoExcitationBasis::pair_of(int index) const {
    if (index < 0 || index >= dim_) throw IndexOutOfRange("sector index out of range");
    const double q = 2 * N_ - 1;
    int n1 = static_cast<int>((q - std::sqrt(q * q - 8.0 * index)) / 2.0);
    n1 = std::clamp(n1, 0, N_ - 2);
    auto offset = [&](int a) { return a * N_ - a * (a + 1) / 2; };
    while (n1 > 0 && offset(n1) > index) --n1;
    while (n1 + 1 <= N_ - 2 && offset(n1 + 1) <= index) ++n1;
    const int n2 = index - offset(n1) + n1 + 1;
    return {n1, n2};
}

SectorHamiltonian sector_from_sparse(Eigen::SparseMatrix<double> matrix) {
    SectorHamiltonian H;
    H.matrix = std::move(matrix);
    H.matrix.makeCompressed();
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(H.matrix.rows());
    for (int col = 0; col < H.matrix.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(H.matrix, col); it; ++it)
            row_sums(it.row()) += std::abs(it.value());
    H.norm_bound = H.matrix.rows() ? row_sums.maxCoeff() : 0.0;
    return H;
}

SectorHamiltonian assemble(const NetworkSpec& spec) {
    const Eigen::MatrixXd adj = to_adjacency(spec);
    const int N = static_cast<int>(adj.rows());
    const TwoExcitationBasis basis(N);

    // Pair |n1,n2> couples to |m1,m2> when they share one site and the moved
    // excitation crosses a graph edge; hard-core bosons, so no sign strings.
    std::vector<Eigen::Triplet<double>> triplets;
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
            if (adj(i, j) == 0.0) continue;
            for (int l = 0; l < N; ++l) {
                if (l == i || l == j) continue;
                const int a = basis.index_of(std::min(i, l), std::max(i, l));
                const int b = basis.index_of(std::min(j, l), std::max(j, l));
                triplets.emplace_back(a, b, adj(i, j));
                triplets.emplace_back(b, a, adj(i, j));
            }
        }
    }
    Eigen::SparseMatrix<double> matrix(basis.size(), basis.size());
    matrix.setFromTriplets(triplets.begin(), triplets.end());
    return sector_from_sparse(std::move(matrix));
}

namespace {

// Bessel J_0..J_m(x) by Miller's downward recurrence, x > 0.
std::vector<double> bessel_j_array(double x, int m) {
    const int start = m + 15 + static_cast<int>(std::sqrt(40.0 * m));
    std::vector<double> j(start + 2, 0.0);
    j[start + 1] = 0.0;
    j[start] = 1e-30;
    for (int k = start; k >= 1; --k) {
        j[k - 1] = (2.0 * k / x) * j[k] - j[k + 1];
        if (std::abs(j[k - 1]) > 1e250) {
            for (int i = k - 1; i <= start + 1; ++i) j[i] *= 1e-250;
        }
    }
    double norm = j[0];
    for (int k = 2; k <= start; k += 2) norm += 2.0 * j[k];
    j.resize(m + 1);
    for (double& v : j) v /= norm;
    return j;
}

Complex i_pow(int k) {
    switch (k & 3) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

Eigen::VectorXcd sparse_matvec(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out(v.size());
    out.real() = A * v.real();
    out.imag() = A * v.imag();
    return out;
}

}  // namespace

SectorState evolve(const SectorHamiltonian& H, const SectorState& state, double t, double tol) {
    if (H.dimension() != state.size())
        throw LengthMismatch("state dimension does not match Hamiltonian");
    if (!(tol > 0.0 && tol <= 1e-4)) throw std::invalid_argument("tol must lie in (0, 1e-4]");

    const double a = H.norm_bound;
    const double x = std::abs(a * t);
    if (x < 0.25 * tol) return state; // exp(-iHt) = 1 + O(x)

    // Chebyshev expansion of exp(-iHt) on the Gershgorin interval [-a, a]:
    // sum_k (2 - delta_k0) (-i)^k J_k(a t) T_k(H/a). The truncation error is
    // bounded by the tail of the Bessel coefficients, which is what certifies
    // the requested tolerance.
    int order = static_cast<int>(x + 12.0 * std::cbrt(x + 1.0) + 1.5 * std::log(1.0 / tol)) + 30;
    const int order_cap = static_cast<int>(10.0 * x) + 20000;
    std::vector<double> bessel;
    int trunc = 0;
    while (true) {
        bessel = bessel_j_array(x, order);
        if (std::abs(bessel[order]) < 1e-6 * tol) {
            // smallest truncation whose dropped tail stays below tol/2
            trunc = order;
            double tail = 0.0;
            for (int k = order; k >= 1; --k) {
                tail += 2.0 * std::abs(bessel[k]);
                if (tail > 0.5 * tol) break;
                trunc = k;
            }
            break;
        }
        if (order >= order_cap)
            throw ConvergenceFailure("Chebyshev coefficient tail does not certify tolerance");
        order = std::min(order_cap, order * 2);
    }

    const double sign = (a * t) < 0 ? -1.0 : 1.0; // J_k(-x) = (-1)^k J_k(x)
    auto coeff = [&](int k) {
        const double jk = (sign < 0 && (k & 1)) ? -bessel[k] : bessel[k];
        return (k == 0 ? 1.0 : 2.0) * i_pow(-k & 3) * jk; // (-i)^k
    };

    Eigen::VectorXcd t_prev = state;                          // T_0 v
    Eigen::VectorXcd t_cur = sparse_matvec(H.matrix, state) / a; // T_1 v
    Eigen::VectorXcd result = coeff(0) * t_prev + coeff(1) * t_cur;
    for (int k = 2; k <= trunc; ++k) {
        Eigen::VectorXcd t_next = (2.0 / a) * sparse_matvec(H.matrix, t_cur) - t_prev;
        result += coeff(k) * t_next;
        t_prev = std::move(t_cur);
        t_cur = std::move(t_next);
    }
    return result;
}

SectorState dense_oracle_evolve(const SectorHamiltonian& H, const SectorState& state, double t) {
    const int dim = H.dimension();
    if (dim > 4000) throw TooLarge("dense oracle limited to dimension 4000");
    if (dim != state.size()) throw LengthMismatch("state dimension does not match Hamiltonian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(H.matrix));
    const Eigen::VectorXcd coeffs = solver.eigenvectors().transpose() * state;
    Eigen::VectorXcd rotated(dim);
    for (int k = 0; k < dim; ++k)
        rotated(k) = coeffs(k) * std::polar(1.0, -solver.eigenvalues()(k) * t);
    return solver.eigenvectors() * rotated;
}

FidelitySeries spin_transfer_probability(const NetworkSpec& spec,
                                         const std::vector<double>& times, double tol) {
    const auto report = validate(spec);
    if (!report.valid())
        throw std::invalid_argument("invalid spec: " + report.violations.front());
    const NetworkSpec net = active_subnetwork(spec);
    if (std::none_of(net.receivers.begin(), net.receivers.end(),
                     [](const ReceiverSpec& r) { return r.active; }))
        throw NoActiveReceiver("no target receiver designated");

    const SectorHamiltonian H = assemble(net);
    const TwoExcitationBasis basis(net.total_sites());
    const int N = net.total_sites();
    const int source_idx = basis.index_of(0, 1);
    const int target_idx = basis.index_of(N - 2, N - 1);

    // Step through the grid; split the requested tolerance across the steps so
    // the accumulated propagation error stays within `tol`.
    const double step_tol =
        std::max(1e-15, tol / std::max<std::size_t>(1, times.size()));
    SectorState psi = SectorState::Zero(basis.size());
    psi(source_idx) = 1.0;

    FidelitySeries series;
    series.times = times;
    series.spec = spec;
    series.engine = "spin";
    series.values.reserve(times.size());
    double t_prev = 0.0;
    for (double t : times) {
        if (t != t_prev) psi = evolve(H, psi, t - t_prev, step_tol);
        t_prev = t;
        series.values.push_back(std::norm(psi(target_idx)));
    }
    return series;
}

}  // namespace exrouter
