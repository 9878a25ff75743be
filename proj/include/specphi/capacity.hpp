#pragma once

#include <vector>

#include "specphi/core.hpp"

namespace specphi {

// L = I - R for irreducible nonnegative R with PF eigenvalue 1; the
// attached eigenvector data identifies the one-dimensional kernels.
struct Laplacian {
    Mat L;
    PerronData pd;
};
Laplacian laplacian(const Mat& R, const PerronData& pd);

struct BoundaryCondition {
    std::vector<int> U;  // sorted index subset
    Vec a;               // one value per element of U
};

struct DirichletSolution {
    Vec q;
    double residual_interior = 0;  // ||(Lq)_interior||_inf
    Vec boundary_flux;             // (Lq)_U
};

enum class DirichletForm { AForm, RForm };

// Schur complement L|_U = L_U - L_{U,Uc} L_Uc^-1 L_{Uc,U}
Mat schur(const Mat& L, const std::vector<int>& U);
// R|_U = I - (I - R)|_U, the nonnegative closure
Mat schur_nonneg(const Mat& R, const std::vector<int>& U);

// A-form: q_U = a, (Lq)_Uc = 0.  R-form: q_U = a, (L Dv q)_Uc = 0.
DirichletSolution dirichlet_solve(const Laplacian& lap, const BoundaryCondition& bc,
                                  DirichletForm form = DirichletForm::AForm);

// pseudo-inverse of a balanced Laplacian by kernel deflation:
// (L + w w^T)^-1 - w w^T  (w the unit PF vector on both sides)
Mat laplacian_pinv(const Mat& L, const Vec& w);

struct CapacityReport {
    double value = 0;       // <q, Lq> at the Dirichlet vector
    double via_schur = 0;   // <Dw a, L|_U Dw a>
    double via_pinv = 0;    // <r, L+ r>
    double via_pinv_restricted = 0;  // <r_U, (L+)_U r_U>
    double max_deviation = 0;
    Vec q;
};
// cap_{U,a}(A) in the paper's a-bar convention: q_U = (Dw)_U a
CapacityReport capacity(const Mat& A, const Vec& w, const BoundaryCondition& bc);

// vertex clumping: T = [[a*Aa, a*B],[Ca, D]]; <x,Qx> = 1/<e1, T^-1 e1>
std::pair<Mat, double> vertex_clump(const Mat& Q, const std::vector<int>& U, const Vec& a);

struct MonotonicityReport {
    std::vector<double> alphas;
    std::vector<double> caps;
    bool monotone = true;
    double worst_violation = 0;
};
// cap(A_alpha) with A_alpha = sym(A) + alpha skew(A) must be nondecreasing in |alpha|
MonotonicityReport capacity_monotonicity_check(const Mat& A, const Vec& w,
                                               const BoundaryCondition& bc,
                                               const std::vector<double>& alphas,
                                               double tol = 1e-9);

struct MatrixInequalityReport {
    bool invertible = false;
    bool part2 = false;  // (R^-1 + R^-T)/2 positive definite
    bool part3 = false;  // ((R+R^T)/2)^-1 >= (R^-1 + R^-T)/2
    bool part4 = false;  // (R+R^T)/2 >= (R^T R^-1 R^T + R R^-T R)/2
    bool part5 = false;  // W_alpha inverse family monotone in |alpha|
    double worst_min_eig = 0;
    bool all() const { return invertible && part2 && part3 && part4 && part5; }
};
MatrixInequalityReport matrix_inequality_suite(const Mat& R);

struct NonsymDirichletReport {
    double cap = 0;
    double quadratic_at_x = 0;  // <x, H x>, H = L Lsym+ L^T
    bool bound_ok = false;      // cap <= <x,Hx> + tol
    double witness_gap = 0;     // |<x*,Hx*> - cap| at x* = (p+q)/2 (s-t boundaries)
    double strengthening_gap = 0;  // |<p,Hp> - cap^2/cap_sym|
};
// the H-form Dirichlet bound for nonreversible chains, with the s-t
// tightness witness and the cap^2/cap_sym strengthening
NonsymDirichletReport dirichlet_nonsym_bound(const Mat& A, const Vec& w,
                                             const BoundaryCondition& bc,
                                             const Vec* test_vector = nullptr);

struct NormalizedCapacityReport {
    double sigma = 0;
    std::vector<int> S, T;
    long candidates = 0;
};
// min over disjoint S, T (weight(S) <= weight(T)) of cap_{S,T} / weight(S)
NormalizedCapacityReport normalized_capacity(const Mat& A, const Vec& w, int limit = 12);
// the same number through min_U phi(A|_U) over Schur complements
double normalized_capacity_schur_route(const Mat& A, const Vec& w, int limit = 12);

// Pr[walk from i hits S before T] for doubly stochastic A
Vec hitting_probability(const Mat& A, const std::vector<int>& S, const std::vector<int>& T);

// q solving Lq = 1_s - 1_t with q_t = 0; q_i = expected visits to i
// before hitting t when started at s; q_s = 1/cap_{s,t}
std::pair<Vec, double> expected_visits(const Mat& A, int s, int t);

}  // namespace specphi
