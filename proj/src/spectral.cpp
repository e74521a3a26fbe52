#include "exrouter/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>

namespace exrouter {

SpectralDecomposition eigendecompose(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() != matrix.cols())
        throw NotSymmetric("matrix is not square");
    const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) throw NotSymmetric("matrix asymmetry exceeds 1e-12");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
    SpectralDecomposition decomp{solver.eigenvalues(), solver.eigenvectors()};

    // Sign convention: largest-magnitude component positive, ties -> lowest index.
    const int N = decomp.size();
    for (int k = 0; k < N; ++k) {
        int lead = 0;
        double best = -1.0;
        for (int n = 0; n < N; ++n) {
            const double mag = std::abs(decomp.modes(n, k));
            if (mag > best + 1e-14) {
                best = mag;
                lead = n;
            }
        }
        if (decomp.modes(lead, k) < 0) decomp.modes.col(k) *= -1.0;
    }
    return decomp;
}

std::pair<double, Eigen::VectorXd> wire_mode(int k, int n_w, double J) {
    if (k < 1 || k > n_w) throw IndexOutOfRange("wire mode index out of range");
    const double theta = std::numbers::pi / (n_w + 1);
    const double energy = 2.0 * J * std::cos(k * theta);
    Eigen::VectorXd components(n_w);
    const double norm = std::sqrt(2.0 / (n_w + 1));
    for (int m = 1; m <= n_w; ++m) components(m - 1) = norm * std::sin(k * m * theta);
    return {energy, components};
}

Complex single_amplitude(const SpectralDecomposition& decomp, int s, int r, double t) {
    const int N = decomp.size();
    if (s < 0 || s >= N || r < 0 || r >= N)
        throw IndexOutOfRange("site index out of range");
    Complex amp = 0.0;
    for (int k = 0; k < N; ++k) {
        const double w = decomp.modes(r, k) * decomp.modes(s, k);
        amp += w * std::polar(1.0, -decomp.energies(k) * t);
    }
    return amp;
}

AmplitudeBlock amplitude_block(const SpectralDecomposition& decomp,
                               const std::vector<int>& sources,
                               const std::vector<int>& targets, double t) {
    AmplitudeBlock block;
    block.t = t;
    block.amplitudes.resize(sources.size(), targets.size());
    for (std::size_t i = 0; i < sources.size(); ++i)
        for (std::size_t j = 0; j < targets.size(); ++j)
            block.amplitudes(i, j) = single_amplitude(decomp, sources[i], targets[j], t);
    return block;
}

std::string adjacency_cache_key(const Eigen::MatrixXd& matrix) {
    std::uint64_t hash = 14695981039346656037ull;
    auto mix = [&](const void* data, std::size_t bytes) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < bytes; ++i) {
            hash ^= p[i];
            hash *= 1099511628211ull;
        }
    };
    const std::int64_t n = matrix.rows();
    mix(&n, sizeof(n));
    mix(matrix.data(), sizeof(double) * matrix.size());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

void save_decomposition(const std::string& path, const SpectralDecomposition& decomp) {
    std::ofstream out(path, std::ios::binary);
    const std::int64_t N = decomp.size();
    out.write(reinterpret_cast<const char*>(&N), sizeof(N));
    out.write(reinterpret_cast<const char*>(decomp.energies.data()), sizeof(double) * N);
    out.write(reinterpret_cast<const char*>(decomp.modes.data()), sizeof(double) * N * N);
}

std::optional<SpectralDecomposition> load_decomposition(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::int64_t N = 0;
    in.read(reinterpret_cast<char*>(&N), sizeof(N));
    if (!in || N <= 0 || N > 1'000'000) return std::nullopt;
    SpectralDecomposition decomp;
    decomp.energies.resize(N);
    decomp.modes.resize(N, N);
    in.read(reinterpret_cast<char*>(decomp.energies.data()), sizeof(double) * N);
    in.read(reinterpret_cast<char*>(decomp.modes.data()), sizeof(double) * N * N);
    if (!in) return std::nullopt;
    return decomp;
}

}  // namespace exrouter
