#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specphi/core.hpp"
#include "specphi/decimal.hpp"
#include "specphi/expansion.hpp"
#include "specphi/rational.hpp"

namespace specphi {

// ---- Rootn: all nontrivial eigenvalues 0, phi <= 1/sqrt(n) -----------------

struct RootnData {
    int n = 0;
    int m = 0;  // sqrt(n)
    Rational a, b, c, d, e, f;
    Rational r;      // Schur superdiagonal value 1 - 1/(m+2)
    Rational alpha;  // unitary diagonal  -1 + 1/(m(m+1))
    Rational beta;   // unitary off-diagonal  1/(m(m+1))
};

RootnData rootn_data(int n);
RMat rootn(int n);
// the explicit exact Schur factors (U, T) with U T U^T = A_n as an identity
std::pair<RMat, RMat> rootn_schur(int n);
// the paper's A'_n mass shift that collapses the spectral gap
RMat rootn_shifted(int n);

// ---- Chet: trace-pinned Hessenberg-Toeplitz family -------------------------

struct ChetData {
    int n = 0;
    int digits = 0;
    Dec r;                  // n^(-1/(n-1))
    std::vector<Dec> c;     // c_0 .. c_{n-3}
    std::vector<Dec> b;     // b_0 .. b_{n-1} (last entry is the closed corner)
    double min_entry = 0;
    int min_c_index = -1;   // argmin over the c_i
    int min_b_index = -1;   // argmin over the b_i
    bool nonnegative = false;
    std::vector<double> trace_residuals;  // |tr(C^k) - 1| for k = 1..n-1
    double max_trace_residual = 0;
    double corner_crosscheck = 0;  // |column closure - (1 - sum b_i)|
};

std::pair<DMat, ChetData> chet(int n, const PrecisionConfig& cfg);

// closed-form c_0, c_1, c_2 at the same precision
Dec chet_analytic(int n, int i, const PrecisionConfig& cfg);

struct ChetScanRow {
    int n = 0;
    double min_c = 0;
    double min_b = 0;
    int min_c_index = -1;
    int min_b_index = -1;
    double min_entry = 0;
    bool nonnegative = false;
    double max_trace_residual = 0;
    bool precision_ok = true;
    double phi_upper = 0;  // interval-scan witness
};
std::vector<ChetScanRow> chet_scan(int n_lo, int n_hi, const PrecisionConfig& cfg, int jobs = 1);

// permanent(C_n) == det(C_n with superdiagonal negated)
bool chet_permanent_check(int n, const PrecisionConfig& cfg, double* deviation = nullptr);

// ---- de Bruijn --------------------------------------------------------------

RMat debruijn(int k);

struct DebruijnSetReport {
    Cut cut;
    long size = 0;
    long count_formula = 0;  // (k-r) 2^(k-r-1) + 2^(k-r), r = ceil(k/2)
    double phi_S = 0;
    double bound = 0;  // 8/k
};
DebruijnSetReport debruijn_nonexpanding_set(int k);

// number of Jordan blocks of each size for the nilpotent part, by exact
// rank sequence of (A - J)^r
std::vector<long> debruijn_jordan_census(int k);

// ---- other families ---------------------------------------------------------

RMat klawe_vazirani(int p);
RMat beyond_half();

struct ApproxTraceReport {
    Mat A;
    double alpha = 0;
    std::vector<double> trace_residuals;  // |tr(A^k) - 1| for k <= n-2
    double trace_last = 0;                // tr(A^(n-1))
    double lambda2 = 0;
};
// A = alpha J + (1-alpha) (isolated vertex + directed (n-1)-cycle):
// near-unit traces but spectral gap ~ 2 ln n / n
ApproxTraceReport approx_trace_counterexample(int n);

// ---- trace conjecture scanner ------------------------------------------------

struct TraceSearchReport {
    long trials = 0;
    long accepted = 0;   // premise tr(A^l) <= 1 for l <= k+1 held
    long violations = 0; // conclusion tr(A^l) <= 1 + tol failed
    double worst_excess = 0;
    std::vector<Mat> counterexamples;
};
TraceSearchReport trace_conjecture_search(int k, int n, long trials, uint64_t seed,
                                          bool symmetric = false, double tol = 1e-9);

}  // namespace specphi
