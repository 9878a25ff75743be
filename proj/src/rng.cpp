#include "specphi/rng.hpp"

#include <numeric>
#include <vector>

#include "specphi/core.hpp"

namespace specphi {

Eigen::MatrixXd random_positive(Rng& rng, int n, double lo, double hi) {
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) M(i, j) = rng.uniform(lo, hi);
    return M;
}

Eigen::MatrixXd random_irreducible(Rng& rng, int n, double density) {
    for (int attempt = 0; attempt < 64; attempt++) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++)
                if (rng.uniform() < density) M(i, j) = rng.uniform(0.05, 1.0);
        // a weighted cycle keeps the support connected without drowning
        // the random sparsity pattern
        if (attempt >= 8)
            for (int j = 0; j < n; j++) M((j + 1) % n, j) += rng.uniform(0.05, 0.3);
        if (is_irreducible(M)) return M;
    }
    throw NoConvergence("random_irreducible: sampling failed");
}

namespace {

Eigen::MatrixXd permutation_combination(Rng& rng, int n, int terms, bool symmetrize) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> wts(terms);
    double total = 0;
    for (auto& w : wts) {
        w = rng.uniform(0.1, 1.0);
        total += w;
    }
    std::vector<int> perm(n);
    for (int t = 0; t < terms; t++) {
        std::iota(perm.begin(), perm.end(), 0);
        // Fisher-Yates with our own uniform for cross-platform determinism
        for (int i = n - 1; i > 0; i--) std::swap(perm[i], perm[rng.below(i + 1)]);
        for (int j = 0; j < n; j++) A(perm[j], j) += wts[t] / total;
    }
    if (symmetrize) {
        Eigen::MatrixXd At = A.transpose();
        A = 0.5 * (A + At);
    }
    return A;
}

}  // namespace

Eigen::MatrixXd random_doubly_stochastic(Rng& rng, int n, int terms) {
    for (int attempt = 0; attempt < 64; attempt++) {
        Eigen::MatrixXd A = permutation_combination(rng, n, terms, false);
        if (is_irreducible(A)) return A;
    }
    throw NoConvergence("random_doubly_stochastic: sampling failed");
}

Eigen::MatrixXd random_symmetric_doubly_stochastic(Rng& rng, int n, int terms) {
    for (int attempt = 0; attempt < 64; attempt++) {
        Eigen::MatrixXd A = permutation_combination(rng, n, terms, true);
        if (is_irreducible(A)) return A;
    }
    throw NoConvergence("random_symmetric_doubly_stochastic: sampling failed");
}

Eigen::MatrixXd random_balanced(Rng& rng, int n, bool lazy) {
    Eigen::MatrixXd R = random_irreducible(rng, n, 0.7);
    PerronData pd = perron(R);
    Eigen::MatrixXd R1 = normalize_pf(R, pd);
    pd = perron(R1);
    auto [A, w] = balance(R1, pd);
    if (lazy) A = lazify(A, 0.5);
    return A;
}

}  // namespace specphi
