#pragma once

#include <Eigen/Core>

#include "specphi/common.hpp"
#include "specphi/rational.hpp"

namespace specphi {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// PF eigenvalue r with positive left eigenvector u and right
// eigenvector v, normalized so <u,v> = 1.
struct PerronData {
    double r = 0;
    Vec u;
    Vec v;
    double residual = 0;

    // kappa = min_i u_i v_i
    double kappa() const {
        double k = u(0) * v(0);
        for (int i = 1; i < u.size(); i++) k = std::min(k, u(i) * v(i));
        return k;
    }
    Vec w() const {  // w_i = sqrt(u_i v_i)
        Vec r_(u.size());
        for (int i = 0; i < u.size(); i++) r_(i) = std::sqrt(u(i) * v(i));
        return r_;
    }
};

// true iff the support digraph (edge j -> i when M(i,j) > threshold) is
// strongly connected; forward+backward BFS from vertex 0
bool is_irreducible(const Mat& M, double support_eps = kSupportEps);
bool is_irreducible(const RMat& M);

// simultaneous power iteration on (M+I)/2 and its transpose, rescaled back
PerronData perron(const Mat& M, const PrecisionConfig& cfg = PrecisionConfig::machine());

// M / r, so the PF eigenvalue of the result is 1
Mat normalize_pf(const Mat& M, const PerronData& pd);

// A = Du^1/2 Dv^-1/2 R Du^-1/2 Dv^1/2 and w_i = sqrt(u_i v_i);
// Aw = A^T w = w, <w,w> = 1, ||A||_2 = 1, same spectrum as R
std::pair<Mat, Vec> balance(const Mat& R, const PerronData& pd);

// alpha*I + (1-alpha)*M
Mat lazify(const Mat& M, double alpha);

// exp(t(R-I)) by the truncated series e^-t sum t^i R^i / i!
Mat exp_operator(const Mat& R, double t, const PrecisionConfig& cfg = PrecisionConfig::machine());

// || Du R Dv 1 - Dv R^T Du 1 ||_inf : how far Du R Dv is from Eulerian
double eulerian_residual(const Mat& R, const PerronData& pd);

// row/col sums all 1 within tol and entries >= -tol
bool is_doubly_stochastic(const Mat& M, double tol = 1e-12);

// every diagonal entry >= 1/2 - tol
bool is_half_lazy(const Mat& M, double tol = 1e-12);

// reversibility defect || Du R Dv - Dv R^T Du ||_inf
double reversibility_residual(const Mat& R, const PerronData& pd);

// convenience: perron data for a matrix already known doubly stochastic
// (u = v = 1/sqrt(n) exactly)
PerronData uniform_perron(int n);

}  // namespace specphi
