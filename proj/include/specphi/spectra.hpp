#pragma once

#include <complex>
#include <vector>

#include "specphi/core.hpp"

namespace specphi {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;

// Full eigenvalue list (descending real part, then descending imaginary
// part) plus singular values (nonincreasing).
struct Spectrum {
    std::vector<Complex> eigenvalues;
    std::vector<double> singular_values;
    double residual = 0;  // worst relative eigenpair residual

    Complex lambda2() const { return eigenvalues.at(1); }
};

struct SchurForm {
    CMat U;  // unitary
    CMat T;  // upper triangular, eigenvalues on the diagonal
    double residual = 0;
};

Spectrum spectrum(const Mat& M);

// Delta = 1 - Re(lambda_2)/lambda_1 for irreducible nonnegative M
double spectral_gap(const Mat& M);
double spectral_gap(const Spectrum& s);

SchurForm schur_form(const Mat& M);

// (1 - lambda_2((A+A^T)/2)) / 2, a lower bound on phi(A) for balanced A
double buser_lower_bound(const Mat& A, const Vec& w);

// (1 - sigma_2(A)) / 2, also a lower bound on phi(A) for balanced A
double singular_lower_bound(const Mat& A);

// n * sigma^n * C(k+n, n) * alpha^(k-n), evaluated in log space
double power_norm_bound(int n, double sigma, double alpha, long k);

// smallest k guaranteeing ||T^k|| <= eps for upper triangular T with
// ||T|| <= 1 and diagonal magnitudes <= alpha; proof constants
// 3.51/1.385 by default, statement constants 4/2 on request
long power_norm_threshold(int n, double alpha, double eps, bool statement_constants = false);

struct BaurFikeEntry {
    Complex mu;       // eigenvalue of A+E
    Complex lambda;   // nearest eigenvalue of A
    double gap;       // |lambda - mu|
    double log_rhs;   // log of the bound expression; >= 0 means satisfied
    bool satisfied;
};
struct BaurFikeReport {
    std::vector<BaurFikeEntry> entries;
    bool all_satisfied = true;
    double min_log_rhs = 0;  // worst slack
};

// for every eigenvalue mu of A+E, the nearest eigenvalue lambda of A obeys
// 1 <= (1/g) (1 + ||A||_2/g)^(n-1) ||E||_2 with g = |lambda - mu|
BaurFikeReport baur_fike_schur_check(const Mat& A, const Mat& E);

// spectral operator norm (largest singular value)
double operator_norm(const Mat& M);

// second largest eigenvalue of a symmetric matrix
double lambda2_symmetric(const Mat& S);

}  // namespace specphi
