#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specphi/core.hpp"
#include "specphi/decimal.hpp"
#include "specphi/rational.hpp"

namespace specphi {

struct Cut {
    std::vector<int> members;  // sorted
    double weight = 0;         // sum of u_i v_i over members
};

enum class PhiMethod { Exact, IntervalScan, WitnessOnly };

std::string to_string(PhiMethod m);

struct ExpansionReport {
    double phi = 0;
    Cut argmin;
    PhiMethod method = PhiMethod::Exact;
    long cuts_examined = 0;
};

// edge expansion of one cut: <1_S, Du R Dv 1_Sc> / <1_S, Du R Dv 1>
double phi_cut(const Mat& R, const PerronData& pd, const std::vector<int>& S);

// exact minimum over all admissible cuts by Gray-code enumeration of the
// 2^(n-1) subsets with vertex 0 fixed outside S
ExpansionReport phi_exact(const Mat& R, const PerronData& pd, int limit = 24);

// upper bound on phi from the O(n^2) cyclic index intervals
ExpansionReport phi_interval_scan(const Mat& R, const PerronData& pd);

// exact-rational route for doubly stochastic matrices (u = v uniform)
struct RExpansionReport {
    Rational phi;
    Cut argmin;
    long cuts_examined = 0;
};
Rational phi_cut(const RMat& A, const std::vector<int>& S);
RExpansionReport phi_exact(const RMat& A, int limit = 24);

// non-expansion phi(A) / (1 - Re lambda_2(A)) of a doubly stochastic A
struct GammaReport {
    double gamma = 0;
    double phi = 0;
    double delta = 0;
    PhiMethod phi_method = PhiMethod::Exact;
    bool delta_certified = false;  // exact nilpotency certificate found
};
GammaReport gamma(const Mat& A, int limit = 24);
GammaReport gamma(const RMat& A, int limit = 24);

struct SubmultiplicativityReport {
    // per k: phi(R^k), k*phi(R), slack of the cut-wise inequality
    std::vector<double> phi_k;
    double phi_1 = 0;
    double worst_power_slack = 0;    // max over k of phi(R^k) - k*phi(R)
    double worst_cutwise_slack = 0;  // max over k of phi_S(RB) - phi_S(R) - phi_S(B)
    bool ok = true;
};
SubmultiplicativityReport submultiplicativity_check(const Mat& R, const PerronData& pd, int kmax,
                                                    double tol = 1e-9);

struct MuReport {
    double mu = 0;
    Cut argmax;
    long cuts_examined = 0;
};
// mu(A) = max_{|S| <= n/2} (1/2) || A 1'_S - A 1'_Sc ||_1
MuReport mu_expansion(const Mat& A, int limit = 20);

struct MainTheoremReport {
    double delta = 0;
    double phi = 0;
    double lower = 0;  // Delta / (15 n)
    double upper = 0;  // sqrt(2 Delta)
    bool ok = false;
};
// the quantitative Perron-Frobenius sandwich Delta/(15n) <= phi <= sqrt(2 Delta)
MainTheoremReport verify_main_theorem(const Mat& R, double slack = 1e-9, int limit = 24);

// weight-admissibility slack at the half-total boundary
inline constexpr double kHalfSlack = 1e-12;

}  // namespace specphi
