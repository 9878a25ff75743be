#include "specphi/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>

namespace specphi {

Spectrum spectrum(const Mat& M) {
    const int n = static_cast<int>(M.rows());
    if (M.rows() != M.cols()) throw ShapeMismatch("spectrum: not square");
    Eigen::EigenSolver<Mat> es(M, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success) throw NoConvergence("spectrum: QR iteration failed");

    Spectrum s;
    s.eigenvalues.resize(n);
    const double normM = std::max(M.cwiseAbs().maxCoeff() * n, 1e-300);
    double worst = 0;
    for (int i = 0; i < n; i++) {
        Complex lam = es.eigenvalues()(i);
        Eigen::VectorXcd x = es.eigenvectors().col(i);
        double res = (M.cast<Complex>() * x - lam * x).lpNorm<Eigen::Infinity>();
        worst = std::max(worst, res / normM);
        s.eigenvalues[i] = lam;
    }
    s.residual = worst;
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });

    // singular values through the symmetric eigenproblem on M^T M
    Eigen::SelfAdjointEigenSolver<Mat> sa(M.transpose() * M);
    if (sa.info() != Eigen::Success) throw NoConvergence("spectrum: M^T M eigensolve failed");
    s.singular_values.resize(n);
    for (int i = 0; i < n; i++) {
        double ev = sa.eigenvalues()(n - 1 - i);
        s.singular_values[i] = std::sqrt(std::max(ev, 0.0));
    }
    return s;
}

double spectral_gap(const Spectrum& s) {
    double l1 = s.eigenvalues.at(0).real();
    double l2 = s.eigenvalues.at(1).real();
    return 1.0 - l2 / l1;
}

double spectral_gap(const Mat& M) {
    if (!is_irreducible(M)) throw NotIrreducible();
    return spectral_gap(spectrum(M));
}

SchurForm schur_form(const Mat& M) {
    if (M.rows() != M.cols()) throw ShapeMismatch("schur_form: not square");
    Eigen::ComplexSchur<CMat> cs(M.cast<Complex>(), /*computeU=*/true);
    if (cs.info() != Eigen::Success) throw NoConvergence("schur_form failed");
    SchurForm f;
    f.U = cs.matrixU();
    f.T = cs.matrixT();
    double normM = std::max(M.norm(), 1e-300);
    double r1 = (f.U * f.U.adjoint() - CMat::Identity(M.rows(), M.cols())).norm();
    double r2 = (f.U * f.T * f.U.adjoint() - M.cast<Complex>()).norm() / normM;
    f.residual = std::max(r1, r2);
    return f;
}

double lambda2_symmetric(const Mat& S) {
    Eigen::SelfAdjointEigenSolver<Mat> sa(S);
    if (sa.info() != Eigen::Success) throw NoConvergence("symmetric eigensolve failed");
    const int n = static_cast<int>(S.rows());
    return sa.eigenvalues()(n - 2);
}

double buser_lower_bound(const Mat& A, const Vec& /*w*/) {
    double gamma = lambda2_symmetric(0.5 * (A + A.transpose()));
    return (1.0 - gamma) / 2.0;
}

double singular_lower_bound(const Mat& A) {
    Spectrum s = spectrum(A);
    return (1.0 - s.singular_values.at(1)) / 2.0;
}

double power_norm_bound(int n, double sigma, double alpha, long k) {
    if (!(alpha >= 0 && alpha < 1)) throw UsageError("power_norm_bound: need 0 <= alpha < 1");
    if (sigma < 1) throw UsageError("power_norm_bound: need sigma >= 1");
    if (k < n) throw UsageError("power_norm_bound: need k >= n");
    if (alpha == 0) return k > n ? 0.0 : std::exp(std::log(static_cast<double>(n)) +
                                                  n * std::log(sigma) + std::lgamma(2.0 * n + 1) -
                                                  2 * std::lgamma(n + 1.0));
    double lg = std::log(static_cast<double>(n)) + n * std::log(sigma) +
                std::lgamma(static_cast<double>(k + n + 1)) -
                std::lgamma(static_cast<double>(k + 1)) - std::lgamma(static_cast<double>(n + 1)) +
                (k - n) * std::log(alpha);
    return std::exp(lg);
}

long power_norm_threshold(int n, double alpha, double eps, bool statement_constants) {
    if (!(alpha > 0 && alpha < 1)) throw UsageError("power_norm_threshold: need 0 < alpha < 1");
    if (!(eps > 0 && eps < 1)) throw UsageError("power_norm_threshold: need 0 < eps < 1");
    double c1 = statement_constants ? 4.0 : 3.51;
    double c2 = statement_constants ? 2.0 : 1.385;
    double num = c1 * n + c2 * std::log(n / eps);
    return static_cast<long>(std::ceil(num / std::log(1.0 / alpha)));
}

double operator_norm(const Mat& M) {
    Eigen::JacobiSVD<Mat> svd(M);
    return svd.singularValues()(0);
}

BaurFikeReport baur_fike_schur_check(const Mat& A, const Mat& E) {
    if (A.rows() != E.rows() || A.cols() != E.cols())
        throw ShapeMismatch("baur_fike_schur_check: dimension mismatch");
    const int n = static_cast<int>(A.rows());
    Spectrum sa = spectrum(A);
    Spectrum sae = spectrum(A + E);
    double sigma = operator_norm(A);
    double normE = operator_norm(E);

    BaurFikeReport rep;
    rep.min_log_rhs = std::numeric_limits<double>::infinity();
    for (const Complex& mu : sae.eigenvalues) {
        BaurFikeEntry e;
        e.mu = mu;
        double best = std::numeric_limits<double>::infinity();
        for (const Complex& lam : sa.eigenvalues) {
            double d = std::abs(lam - mu);
            if (d < best) {
                best = d;
                e.lambda = lam;
            }
        }
        e.gap = best;
        if (best == 0 || normE == 0) {
            // zero gap satisfies the bound vacuously
            e.log_rhs = std::numeric_limits<double>::infinity();
            e.satisfied = true;
        } else {
            e.log_rhs = -std::log(best) + (n - 1) * std::log1p(sigma / best) + std::log(normE);
            e.satisfied = e.log_rhs >= 0.0;
            rep.min_log_rhs = std::min(rep.min_log_rhs, e.log_rhs);
        }
        rep.all_satisfied = rep.all_satisfied && e.satisfied;
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace specphi
