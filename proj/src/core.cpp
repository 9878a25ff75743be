#include "specphi/core.hpp"

#include <algorithm>
#include <vector>

namespace specphi {

namespace {

// reachability over the support digraph; transpose_edges flips direction
bool all_reachable(const Mat& M, double eps, bool transpose_edges) {
    const int n = static_cast<int>(M.rows());
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y = 0; y < n; y++) {
            if (seen[y]) continue;
            // edge x -> y exists iff M(y,x) > eps (right multiplication)
            double w = transpose_edges ? M(x, y) : M(y, x);
            if (w > eps) {
                seen[y] = 1;
                count++;
                stack.push_back(y);
            }
        }
    }
    return count == n;
}

}  // namespace

bool is_irreducible(const Mat& M, double support_eps) {
    if (M.rows() != M.cols() || M.rows() == 0) throw ShapeMismatch("is_irreducible: not square");
    return all_reachable(M, support_eps, false) && all_reachable(M, support_eps, true);
}

bool is_irreducible(const RMat& M) { return is_irreducible(M.to_double(), 0.0); }

PerronData perron(const Mat& M, const PrecisionConfig& cfg) {
    const int n = static_cast<int>(M.rows());
    if (!is_irreducible(M)) throw NotIrreducible();

    // laziness shift kills periodicity; eigenvectors are unchanged
    Mat S = 0.5 * (M + Mat::Identity(n, n));
    Vec v = Vec::Constant(n, 1.0);
    Vec u = Vec::Constant(n, 1.0);
    double rho = 1.0;
    bool converged = false;
    for (long it = 0; it < cfg.max_iter; it++) {
        Vec v2 = S * v;
        Vec u2 = S.transpose() * u;
        double nv = v2.lpNorm<Eigen::Infinity>();
        double nu = u2.lpNorm<Eigen::Infinity>();
        if (nv <= 0 || nu <= 0) throw NoConvergence("power iteration collapsed to zero");
        v2 /= nv;
        u2 /= nu;
        double dv = (v2 - v).lpNorm<Eigen::Infinity>();
        double du = (u2 - u).lpNorm<Eigen::Infinity>();
        v = v2;
        u = u2;
        rho = nv;
        if (dv < cfg.tol && du < cfg.tol) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NoConvergence("perron: power iteration did not converge");

    // Rayleigh value on the original matrix is more accurate than 2*rho-1
    double r = u.dot(M * v) / u.dot(v);
    if (!(r > 0)) throw NoConvergence("perron: nonpositive PF value");

    // normalize <u,v> = 1
    double s = u.dot(v);
    u /= s;

    PerronData pd;
    pd.r = r;
    pd.u = u;
    pd.v = v;
    double normM = M.cwiseAbs().rowwise().sum().maxCoeff();
    double res_v = (M * v - r * v).lpNorm<Eigen::Infinity>();
    double res_u = (M.transpose() * u - r * u).lpNorm<Eigen::Infinity>();
    pd.residual = std::max(res_v, res_u) / std::max(normM, 1e-300);
    for (int i = 0; i < n; i++)
        if (!(u(i) > 0) || !(v(i) > 0)) throw NoConvergence("perron: eigenvector not positive");
    return pd;
}

Mat normalize_pf(const Mat& M, const PerronData& pd) { return M / pd.r; }

std::pair<Mat, Vec> balance(const Mat& R, const PerronData& pd) {
    const int n = static_cast<int>(R.rows());
    Vec w(n), du(n), dv(n);
    for (int i = 0; i < n; i++) {
        du(i) = std::sqrt(pd.u(i));
        dv(i) = std::sqrt(pd.v(i));
        w(i) = du(i) * dv(i);
    }
    Mat A(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) A(i, j) = (du(i) / dv(i)) * R(i, j) * (dv(j) / du(j));
    return {A, w};
}

Mat lazify(const Mat& M, double alpha) {
    if (alpha < 0 || alpha > 1) throw UsageError("lazify: alpha out of [0,1]");
    return alpha * Mat::Identity(M.rows(), M.cols()) + (1 - alpha) * M;
}

Mat exp_operator(const Mat& R, double t, const PrecisionConfig& cfg) {
    const int n = static_cast<int>(R.rows());
    if (t < 0) throw UsageError("exp_operator: t must be nonnegative");
    Mat sum = Mat::Identity(n, n);
    Mat term = Mat::Identity(n, n);
    const double scale = std::exp(-t);
    for (int i = 1; i <= 10000; i++) {
        term = (term * R) * (t / i);
        sum += term;
        double tn = term.cwiseAbs().maxCoeff() * scale;
        if (tn < cfg.tol) break;
    }
    return scale * sum;
}

double eulerian_residual(const Mat& R, const PerronData& pd) {
    Vec lhs = pd.u.asDiagonal() * (R * pd.v);             // Du R Dv 1
    Vec rhs = pd.v.asDiagonal() * (R.transpose() * pd.u); // Dv R^T Du 1
    return (lhs - rhs).lpNorm<Eigen::Infinity>();
}

bool is_doubly_stochastic(const Mat& M, double tol) {
    const int n = static_cast<int>(M.rows());
    if (M.minCoeff() < -tol) return false;
    for (int i = 0; i < n; i++) {
        if (std::abs(M.row(i).sum() - 1.0) > tol) return false;
        if (std::abs(M.col(i).sum() - 1.0) > tol) return false;
    }
    return true;
}

bool is_half_lazy(const Mat& M, double tol) {
    for (int i = 0; i < M.rows(); i++)
        if (M(i, i) < 0.5 - tol) return false;
    return true;
}

double reversibility_residual(const Mat& R, const PerronData& pd) {
    Mat E = pd.u.asDiagonal() * R * pd.v.asDiagonal();
    Mat F = pd.v.asDiagonal() * R.transpose() * pd.u.asDiagonal();
    return (E - F).cwiseAbs().maxCoeff();
}

PerronData uniform_perron(int n) {
    PerronData pd;
    pd.r = 1.0;
    pd.u = Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    pd.v = pd.u;
    pd.residual = 0.0;
    return pd;
}

}  // namespace specphi
