#include "specphi/mixing.hpp"

#include <algorithm>
#include <deque>

#include "specphi/expansion.hpp"
#include "specphi/spectra.hpp"

namespace specphi {

namespace {

double mixing_distance(const Mat& Bt, const PerronData& pd) {
    const int n = static_cast<int>(Bt.rows());
    double worst = 0;
    for (int i = 0; i < n; i++) {
        double s = 0;
        for (int j = 0; j < n; j++) s += pd.u(j) * std::abs(Bt(j, i));
        worst = std::max(worst, s / pd.u(i));
    }
    return worst;
}

}  // namespace

long mixing_time(const Mat& R, const PerronData& pd, double eps, long cap) {
    if (!(eps > 0 && eps < 1)) throw UsageError("mixing_time: need 0 < eps < 1");
    Mat B = R - pd.v * pd.u.transpose();
    Mat Bt = B;
    for (long tau = 1; tau <= cap; tau++) {
        if (tau > 1) Bt = Bt * B;
        if (mixing_distance(Bt, pd) <= eps) return tau;
    }
    throw NoConvergence("mixing_time: cap exceeded");
}

SingularBoundPair bound_singular(const Mat& A, const PerronData& pd, double eps, double c) {
    if (c <= 0) throw UsageError("bound_singular: need c > 0");
    const int n = static_cast<int>(A.rows());
    Spectrum s = spectrum(A);
    double sigma2 = s.singular_values.at(1);
    if (sigma2 >= 1.0 - 1e-12) throw DegenerateSigma();
    double kappa = pd.kappa();
    SingularBoundPair b;
    b.loose = c * std::log(n / (kappa * eps)) / (1.0 - std::pow(sigma2, c));
    // cap the log at ~706 so sigma2 = 0 degenerates gracefully
    double log_inv = sigma2 > 1e-307 ? std::log(1.0 / sigma2) : 706.0;
    b.sharp = std::log(std::sqrt(n / kappa) / eps) / log_inv;
    return b;
}

Interval bound_phi(const Mat& R, const PerronData& pd, double eps, int limit) {
    const int n = static_cast<int>(R.rows());
    double phi = phi_exact(R, pd, limit).phi;
    double kappa = pd.kappa();
    Interval iv;
    iv.lower = std::max(0.0, (0.5 - eps) / phi);  // vacuous for eps >= 1/2
    iv.upper = 4.0 * std::log(n / (kappa * eps)) / (phi * phi);
    return iv;
}

Interval bound_reversible(const Mat& R, const PerronData& pd, double eps, double rev_tol) {
    if (reversibility_residual(R, pd) > rev_tol) throw NotReversible();
    const int n = static_cast<int>(R.rows());
    double delta = spectral_gap(R);
    double kappa = pd.kappa();
    Interval iv;
    iv.lower = (1.0 - eps) / (2.0 * delta);
    iv.upper = std::log(n / (kappa * eps)) / delta;
    return iv;
}

Interval bound_spectral(const Mat& R, const PerronData& pd, double eps) {
    const int n = static_cast<int>(R.rows());
    double delta = spectral_gap(R);
    if (delta <= 1e-12) throw DegenerateGap();
    double kappa = pd.kappa();
    Interval iv;
    iv.lower = (1.0 - delta) * (1.0 - eps) / delta;
    iv.upper = 20.0 * (n + std::log(1.0 / (kappa * eps))) / delta;
    return iv;
}

SymmetrizationBound bound_symmetrization(const Mat& A, const PerronData& pd, double eps,
                                         long cap) {
    const int n = static_cast<int>(A.rows());
    Mat M = 0.5 * (A + A.transpose());
    SymmetrizationBound out;
    out.tau_sym = mixing_time(M, pd, eps, cap);
    double kappa = pd.kappa();
    double L = std::log(n / (kappa * eps));
    out.interval.lower =
        (1.0 - 2.0 * eps) / (4.0 * std::sqrt(L)) * std::sqrt(static_cast<double>(out.tau_sym));
    out.interval.upper = 2.0 * L / std::log(1.0 / eps) * static_cast<double>(out.tau_sym);
    return out;
}

ContinuousMixing mixing_time_continuous(const Mat& R, const PerronData& pd, double eps,
                                        int phi_limit, long cap) {
    const int n = static_cast<int>(R.rows());
    Mat E = exp_operator(R, 1.0);
    ContinuousMixing out;
    out.tau = mixing_time(E, pd, eps, cap);
    double phi = phi_exact(R, pd, phi_limit).phi;
    double kappa = pd.kappa();
    out.interval.lower = std::max(0.0, (0.5 - eps) / phi);
    out.interval.upper = 100.0 * std::log(n / (kappa * eps)) / (phi * phi);
    return out;
}

PathSet shortest_paths(const Mat& M) {
    const int n = static_cast<int>(M.rows());
    PathSet paths;
    for (int s = 0; s < n; s++) {
        // BFS tree with lexicographic parent choice
        std::vector<int> parent(n, -1);
        std::vector<int> dist(n, -1);
        std::deque<int> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (int y = 0; y < n; y++) {
                if (M(x, y) > kSupportEps && dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        for (int t = s + 1; t < n; t++) {
            if (dist[t] < 0) throw MissingPair("no path between " + std::to_string(s) + " and " +
                                               std::to_string(t));
            std::vector<int> chain{t};
            for (int x = t; x != s; x = parent[x]) chain.push_back(parent[x]);
            std::reverse(chain.begin(), chain.end());
            paths[{s, t}] = chain;
        }
    }
    return paths;
}

CanonicalPathsReport canonical_paths_rho(const Mat& M, const PathSet& paths) {
    const int n = static_cast<int>(M.rows());
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-9)
        throw UsageError("canonical_paths_rho: matrix must be symmetric");
    // every unordered pair must have a path
    for (int s = 0; s < n; s++)
        for (int t = s + 1; t < n; t++)
            if (!paths.count({s, t}))
                throw MissingPair("pair (" + std::to_string(s) + "," + std::to_string(t) +
                                  ") has no path");
    // edge loads: sum over paths through the edge of the path length
    std::map<std::pair<int, int>, double> load;
    for (const auto& [pair, chain] : paths) {
        if (chain.size() < 2) throw InvalidPath("degenerate path");
        double len = static_cast<double>(chain.size() - 1);
        for (size_t i = 0; i + 1 < chain.size(); i++) {
            int x = chain[i], y = chain[i + 1];
            if (M(x, y) <= kSupportEps)
                throw InvalidPath("path uses zero-weight edge (" + std::to_string(x) + "," +
                                  std::to_string(y) + ")");
            auto key = std::minmax(x, y);
            load[{key.first, key.second}] += len;
        }
    }
    CanonicalPathsReport rep;
    for (const auto& [edge, l] : load)
        rep.rho = std::max(rep.rho, l / (n * M(edge.first, edge.second)));
    rep.one_minus_lambda2 = 1.0 - lambda2_symmetric(M);
    rep.guarantee_ok = rep.one_minus_lambda2 >= 1.0 / rep.rho - 1e-9;
    return rep;
}

bool fill_inequality_check(const Mat& A, double tol) {
    double lhs = lambda2_symmetric(A * A.transpose());
    double rhs = lambda2_symmetric(0.5 * (A + A.transpose()));
    return lhs <= rhs + tol;
}

MixingReport mixing_report(const Mat& R, const PerronData& pd, double eps, int phi_limit) {
    MixingReport rep;
    rep.eps = eps;
    rep.kappa = pd.kappa();
    rep.tau = mixing_time(R, pd, eps);

    bool balanced = (pd.u - pd.v).lpNorm<Eigen::Infinity>() < 1e-9;
    if (balanced) {
        SingularBoundPair sb = bound_singular(R, pd, eps);
        rep.bounds["singular"] = Interval{0.0, std::min(sb.loose, sb.sharp)};
    }
    rep.bounds["phi"] = bound_phi(R, pd, eps, phi_limit);
    rep.bounds["spectral"] = bound_spectral(R, pd, eps);
    if (balanced) rep.bounds["symmetrization"] = bound_symmetrization(R, pd, eps).interval;
    if (reversibility_residual(R, pd) <= 1e-9)
        rep.bounds["reversible"] = bound_reversible(R, pd, eps);
    return rep;
}

}  // namespace specphi
