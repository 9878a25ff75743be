#include "specphi/tensor.hpp"

#include <cmath>

namespace specphi {

Tensor::Tensor(int order, int dim) : k_(order), n_(dim) {
    if (order < 3) throw UsageError("tensor: order must be >= 3");
    if (dim < 2) throw UsageError("tensor: dimension must be >= 2");
    size_t sz = 1;
    for (int i = 0; i < order; i++) sz *= static_cast<size_t>(dim);
    entries_.assign(sz, 0.0);
}

double& Tensor::at(const std::vector<int>& idx) {
    if (static_cast<int>(idx.size()) != k_) throw ShapeMismatch("tensor index arity");
    size_t pos = 0;
    for (int d = 0; d < k_; d++) pos = pos * n_ + static_cast<size_t>(idx[d]);
    return entries_[pos];
}

double Tensor::at(const std::vector<int>& idx) const {
    return const_cast<Tensor*>(this)->at(idx);
}

bool Tensor::is_one_line_stochastic(double tol) const {
    size_t tails = entries_.size() / n_;
    size_t stride = tails;  // output index is the slowest axis
    for (size_t t = 0; t < tails; t++) {
        double s = 0;
        for (int i = 0; i < n_; i++) s += entries_[t + i * stride];
        if (std::abs(s - 1.0) > tol) return false;
    }
    return true;
}

Vec step(const Tensor& T, const std::vector<Vec>& history) {
    const int k = T.order(), n = T.dim();
    if (static_cast<int>(history.size()) != k - 1)
        throw ShapeMismatch("step: need k-1 history distributions");
    for (const Vec& h : history)
        if (h.size() != n) throw ShapeMismatch("step: history dimension mismatch");

    Vec p = Vec::Zero(n);
    size_t tails = T.size() / n;
    std::vector<int> tail(k - 1, 0);
    for (size_t t = 0; t < tails; t++) {
        double wt = 1.0;
        for (int m = 0; m < k - 1; m++) wt *= history[m](tail[m]);
        if (wt != 0) {
            size_t base = t;
            for (int i = 0; i < n; i++) p(i) += T.flat(i * tails + base) * wt;
        }
        // advance the row-major tail odometer (last index fastest)
        for (int d = k - 2; d >= 0; d--) {
            if (++tail[d] < n) break;
            tail[d] = 0;
        }
    }
    return p;
}

std::optional<int> is_two_line_stochastic(const Tensor& T, double tol) {
    const int k = T.order(), n = T.dim();
    for (int input = 1; input <= k - 1; input++) {
        // stride of input axis `input` (1-based among the k-1 inputs)
        size_t stride = 1;
        for (int d = k - 1; d > input; d--) stride *= static_cast<size_t>(n);
        bool ok = true;
        // sum over that axis for every (output, other-tail) combination
        for (size_t pos = 0; pos < T.size() && ok; pos++) {
            if ((pos / stride) % n != 0) continue;  // visit each line once
            double s = 0;
            for (int j = 0; j < n; j++) s += T.flat(pos + j * stride);
            if (std::abs(s - 1.0) > tol) ok = false;
        }
        if (ok) return input;
    }
    return std::nullopt;
}

double fixed_point_residual(const Tensor& T, const Vec& p) {
    std::vector<Vec> hist(T.order() - 1, p);
    return (p - step(T, hist)).lpNorm<1>();
}

FixedPointReport fixed_point_iterate(const Tensor& T, const Vec& p0, double tol, long max_iter) {
    if (!T.is_one_line_stochastic(1e-9))
        throw UsageError("fixed_point_iterate: tensor is not 1-line stochastic");
    FixedPointReport rep;
    rep.p = p0 / p0.sum();
    std::vector<Vec> hist(T.order() - 1, rep.p);
    for (long it = 0; it < max_iter; it++) {
        for (auto& h : hist) h = rep.p;
        Vec next = step(T, hist);
        // keep the iterate on the simplex: the tensor is stochastic only
        // to tolerance and self-composition amplifies the defect
        next /= next.sum();
        double delta = (next - rep.p).lpNorm<1>();
        rep.p = next;
        rep.iterations = it + 1;
        if (delta <= tol) {
            rep.converged = true;
            break;
        }
    }
    rep.residual = fixed_point_residual(T, rep.p);
    return rep;
}

Mat induced_matrix(const Tensor& T, const Vec& q) {
    const int k = T.order(), n = T.dim();
    if (q.size() != n) throw ShapeMismatch("induced_matrix: distribution dimension");
    Mat A = Mat::Zero(n, n);
    size_t tails = T.size() / n;          // all inputs
    size_t rest = tails / n;              // inputs after the first
    std::vector<int> tail(k - 2, 0);
    for (size_t t = 0; t < rest; t++) {
        double wt = 1.0;
        for (int m = 0; m < k - 2; m++) wt *= q(tail[m]);
        if (wt != 0)
            for (int i = 0; i < n; i++)
                for (int j = 0; j < n; j++)
                    A(i, j) += T.flat((static_cast<size_t>(i) * n + j) * rest + t) * wt;
        for (int d = k - 3; d >= 0; d--) {
            if (++tail[d] < n) break;
            tail[d] = 0;
        }
    }
    return A;
}

Tensor counterexample_tensor() {
    Tensor T(4, 2);
    auto set = [&](int i, int j, int k, int l, double v) {
        T.at({i - 1, j - 1, k - 1, l - 1}) = v;
    };
    set(1, 1, 1, 1, 0.872);
    set(1, 1, 1, 2, 2.416 / 3);
    set(1, 1, 2, 1, 2.416 / 3);
    set(1, 1, 2, 2, 0.616 / 3);
    set(1, 2, 1, 1, 2.416 / 3);
    set(1, 2, 1, 2, 0.616 / 3);
    set(1, 2, 2, 1, 0.616 / 3);
    set(1, 2, 2, 2, 0.072);
    set(2, 1, 1, 1, 0.128);
    set(2, 1, 1, 2, 0.584 / 3);
    set(2, 1, 2, 1, 0.584 / 3);
    set(2, 1, 2, 2, 2.384 / 3);
    set(2, 2, 1, 1, 0.584 / 3);
    set(2, 2, 1, 2, 2.384 / 3);
    set(2, 2, 2, 1, 2.384 / 3);
    set(2, 2, 2, 2, 0.928);
    return T;
}

Tensor random_two_line_stochastic(Rng& rng, int order, int dim, double tol, int max_rounds) {
    Tensor T(order, dim);
    for (size_t p = 0; p < T.size(); p++) T.flat(p) = rng.uniform(0.05, 1.0);
    const int n = dim;
    size_t tails = T.size() / n;
    size_t rest = tails / n;  // strides: output = tails, first input = rest

    auto normalize_axis = [&](size_t stride) {
        for (size_t pos = 0; pos < T.size(); pos++) {
            if ((pos / stride) % n != 0) continue;
            double s = 0;
            for (int j = 0; j < n; j++) s += T.flat(pos + j * stride);
            for (int j = 0; j < n; j++) T.flat(pos + j * stride) /= s;
        }
    };
    auto axis_residual = [&](size_t stride) {
        double worst = 0;
        for (size_t pos = 0; pos < T.size(); pos++) {
            if ((pos / stride) % n != 0) continue;
            double s = 0;
            for (int j = 0; j < n; j++) s += T.flat(pos + j * stride);
            worst = std::max(worst, std::abs(s - 1.0));
        }
        return worst;
    };

    for (int round = 0; round < max_rounds; round++) {
        normalize_axis(tails);  // output axis
        normalize_axis(rest);   // first input axis
        if (axis_residual(tails) < tol && axis_residual(rest) < tol) return T;
    }
    throw NoConvergence("random_two_line_stochastic: axis normalization did not converge");
}

}  // namespace specphi
