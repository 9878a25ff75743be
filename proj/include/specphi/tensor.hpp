#pragma once

#include <optional>
#include <vector>

#include "specphi/core.hpp"
#include "specphi/rng.hpp"

namespace specphi {

// Order-k nonnegative tensor on n states, entries in row-major
// multi-index order with the output index first: T[i, j_1, ..., j_{k-1}].
class Tensor {
  public:
    Tensor() = default;
    Tensor(int order, int dim);

    int order() const { return k_; }
    int dim() const { return n_; }
    size_t size() const { return entries_.size(); }
    double& at(const std::vector<int>& idx);
    double at(const std::vector<int>& idx) const;
    double& flat(size_t pos) { return entries_[pos]; }
    double flat(size_t pos) const { return entries_[pos]; }
    std::vector<double>& data() { return entries_; }
    const std::vector<double>& data() const { return entries_; }

    // sum over the output index is 1 for every fixed tail
    bool is_one_line_stochastic(double tol = 1e-12) const;

  private:
    int k_ = 0, n_ = 0;
    std::vector<double> entries_;
};

// one lagged step: p(i) = sum_tail T[i, tail] * prod_m history[m](j_m)
Vec step(const Tensor& T, const std::vector<Vec>& history);

// first input index (1-based over the k-1 inputs) along which the tensor
// is also stochastic, if any
std::optional<int> is_two_line_stochastic(const Tensor& T, double tol = 1e-12);

struct FixedPointReport {
    Vec p;
    double residual = 0;  // || p - T(p,...,p) ||_1
    long iterations = 0;
    bool converged = false;
};
// synchronous self-composition p <- T(p,...,p)
FixedPointReport fixed_point_iterate(const Tensor& T, const Vec& p0, double tol = 1e-12,
                                     long max_iter = 100000);

// A_q[i][j] = sum_tail T[i, j, tail] prod q; doubly stochastic for
// 2-line stochastic T (stochastic input moved to slot 1)
Mat induced_matrix(const Tensor& T, const Vec& q);

// || p - T(p,...,p) ||_1
double fixed_point_residual(const Tensor& T, const Vec& p);

// the printed positive 4-tensor on 2 states with two distinct positive
// fixed points (0.2, 0.8) and (0.6, 0.4)
Tensor counterexample_tensor();

// positive entries, then alternating axis normalization over the output
// and first input index until both residuals drop below tol
Tensor random_two_line_stochastic(Rng& rng, int order, int dim, double tol = 1e-12,
                                  int max_rounds = 1000);

}  // namespace specphi
