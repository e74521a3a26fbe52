#include "exrouter/fermion.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>

namespace exrouter {

namespace {

void check_site_lists(const std::vector<int>& sources, const std::vector<int>& targets, int N) {
    if (sources.size() != targets.size())
        throw LengthMismatch("source and target lists differ in length");
    if (sources.empty()) throw LengthMismatch("empty site lists");
    for (const auto& list : {sources, targets}) {
        if (!std::is_sorted(list.begin(), list.end()) ||
            std::adjacent_find(list.begin(), list.end()) != list.end())
            throw UnsortedSites("site lists must be strictly increasing");
        if (list.front() < 0 || list.back() >= N)
            throw IndexOutOfRange("site index out of range");
    }
}

}  // namespace

Complex many_body_amplitude(const SpectralDecomposition& decomp,
                            const std::vector<int>& sources,
                            const std::vector<int>& targets, double t) {
    check_site_lists(sources, targets, decomp.size());
    if (sources.size() == 1) return single_amplitude(decomp, sources[0], targets[0], t);
    const AmplitudeBlock block = amplitude_block(decomp, sources, targets, t);
    return block.amplitudes.determinant();
}

FidelitySeries transfer_fidelity(const NetworkSpec& spec, const std::vector<double>& times) {
    return transfer_fidelity(spec, times, eigendecompose(to_adjacency(spec)));
}

FidelitySeries transfer_fidelity(const NetworkSpec& spec, const std::vector<double>& times,
                                 const SpectralDecomposition& decomp) {
    const auto report = validate(spec);
    if (!report.valid())
        throw std::invalid_argument("invalid spec: " + report.violations.front());
    const NetworkSpec net = active_subnetwork(spec); // throws NoActiveReceiver
    if (std::none_of(net.receivers.begin(), net.receivers.end(),
                     [](const ReceiverSpec& r) { return r.active; }))
        throw NoActiveReceiver("no target receiver designated");
    if (decomp.size() != net.total_sites())
        throw LengthMismatch("decomposition does not match the active network");
    const int N = decomp.size();
    const std::vector<int> sources = {0, 1};
    const std::vector<int> targets = {N - 2, N - 1};

    FidelitySeries series;
    series.times = times;
    series.spec = spec;
    series.engine = "fermion";
    series.values.reserve(times.size());
    for (double t : times)
        series.values.push_back(std::norm(many_body_amplitude(decomp, sources, targets, t)));
    return series;
}

Complex fock_oracle_amplitude(const Eigen::MatrixXd& adjacency, const std::vector<int>& sources,
                              const std::vector<int>& targets, double t) {
    const int N = static_cast<int>(adjacency.rows());
    if (N > 14) throw TooLarge("Fock oracle limited to N <= 14 sites");
    check_site_lists(sources, targets, N);

    const unsigned dim = 1u << N;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    // c^dag_i c_j with Jordan-Wigner sign strings; operator order = global site order.
    for (unsigned mask = 0; mask < dim; ++mask) {
        for (int j = 0; j < N; ++j) {
            if (!(mask >> j & 1u)) continue;
            const int sign_j = std::popcount(mask & ((1u << j) - 1u)) % 2 ? -1 : 1;
            const unsigned cleared = mask ^ (1u << j);
            for (int i = 0; i < N; ++i) {
                if (i == j || adjacency(i, j) == 0.0 || (cleared >> i & 1u)) continue;
                const int sign_i = std::popcount(cleared & ((1u << i) - 1u)) % 2 ? -1 : 1;
                H(cleared | (1u << i), mask) += adjacency(i, j) * sign_i * sign_j;
            }
        }
    }

    unsigned src = 0, tgt = 0;
    for (int s : sources) src |= 1u << s;
    for (int r : targets) tgt |= 1u << r;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    const auto& E = solver.eigenvalues();
    const auto& V = solver.eigenvectors();
    Complex amp = 0.0;
    for (unsigned k = 0; k < dim; ++k)
        amp += V(tgt, k) * V(src, k) * std::polar(1.0, -E(k) * t);
    return amp;
}

Complex fock_oracle_amplitude(const NetworkSpec& spec, const std::vector<int>& sources,
                              const std::vector<int>& targets, double t) {
    return fock_oracle_amplitude(to_adjacency(spec), sources, targets, t);
}

}  // namespace exrouter
