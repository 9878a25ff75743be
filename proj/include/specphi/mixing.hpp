#pragma once

#include <map>
#include <string>
#include <vector>

#include "specphi/core.hpp"

namespace specphi {

struct Interval {
    double lower = 0;
    double upper = 0;
    // integer slack of 1 on both sides: bounds are real, tau is a step count
    bool brackets(long tau) const { return lower - 1 <= tau && tau <= upper + 1; }
};

struct MixingReport {
    long tau = 0;
    double eps = 0;
    double kappa = 0;
    std::map<std::string, Interval> bounds;
};

// smallest tau with max_i || Du (R^tau - v u^T) e_i / ||Du e_i||_1 ||_1 <= eps,
// found by scanning tau = 1, 2, ... (the distance need not be monotone)
long mixing_time(const Mat& R, const PerronData& pd, double eps, long cap = 100000);

struct SingularBoundPair {
    double loose = 0;  // c ln(n/(kappa eps)) / (1 - sigma2^c)
    double sharp = 0;  // ln(sqrt(n/kappa)/eps) / ln(1/sigma2)
};
SingularBoundPair bound_singular(const Mat& A, const PerronData& pd, double eps, double c = 2.0);

// ((1/2 - eps)/phi, 4 ln(n/(kappa eps)) / phi^2); phi by exact enumeration
Interval bound_phi(const Mat& R, const PerronData& pd, double eps, int limit = 24);

// ((1-eps)/(2 Delta), ln(n/(kappa eps)) / Delta) for reversible R
Interval bound_reversible(const Mat& R, const PerronData& pd, double eps, double rev_tol = 1e-9);

// ((1-Delta)(1-eps)/Delta, 20 (n + ln(1/(kappa eps))) / Delta)
Interval bound_spectral(const Mat& R, const PerronData& pd, double eps);

struct SymmetrizationBound {
    Interval interval;
    long tau_sym = 0;  // measured mixing time of (A+A^T)/2
};
SymmetrizationBound bound_symmetrization(const Mat& A, const PerronData& pd, double eps,
                                         long cap = 100000);

struct ContinuousMixing {
    long tau = 0;  // measured on exp(R - I), integer steps
    Interval interval;
};
ContinuousMixing mixing_time_continuous(const Mat& R, const PerronData& pd, double eps,
                                        int phi_limit = 24, long cap = 100000);

// canonical paths: one path per unordered pair, entries are vertex chains
using PathSet = std::map<std::pair<int, int>, std::vector<int>>;

// BFS shortest paths on the positive support, lexicographic tie-break
PathSet shortest_paths(const Mat& M);

struct CanonicalPathsReport {
    double rho = 0;
    double one_minus_lambda2 = 0;
    bool guarantee_ok = false;  // 1 - lambda_2 >= 1/rho
};
CanonicalPathsReport canonical_paths_rho(const Mat& M, const PathSet& paths);

// Fill's inequality lambda_2(A A^T) <= lambda_2((A+A^T)/2)
bool fill_inequality_check(const Mat& A, double tol = 1e-9);

// every applicable bound family evaluated against the measured tau
MixingReport mixing_report(const Mat& R, const PerronData& pd, double eps, int phi_limit = 24);

}  // namespace specphi
