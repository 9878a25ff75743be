#include "specphi/capacity.hpp"

#include <Eigen/Dense>
#include <algorithm>

#include "specphi/expansion.hpp"
#include "specphi/spectra.hpp"

namespace specphi {

namespace {

std::vector<int> complement(int n, const std::vector<int>& U) {
    std::vector<char> in(n, 0);
    for (int i : U) in[i] = 1;
    std::vector<int> out;
    for (int i = 0; i < n; i++)
        if (!in[i]) out.push_back(i);
    return out;
}

Mat submatrix(const Mat& M, const std::vector<int>& rows, const std::vector<int>& cols) {
    Mat S(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); i++)
        for (size_t j = 0; j < cols.size(); j++) S(i, j) = M(rows[i], cols[j]);
    return S;
}

// min eigenvalue of the symmetric part; the scale-aware PSD test
bool psd_with_slack(const Mat& D, double* worst = nullptr) {
    Mat S = 0.5 * (D + D.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(S);
    double mn = es.eigenvalues().minCoeff();
    if (worst) *worst = std::min(*worst, mn);
    return mn >= -1e-9 * (1.0 + S.norm());
}

}  // namespace

Laplacian laplacian(const Mat& R, const PerronData& pd) {
    if (std::abs(pd.r - 1.0) > 1e-9)
        throw UsageError("laplacian: PF eigenvalue must be 1 (normalize first)");
    Laplacian lap;
    lap.L = Mat::Identity(R.rows(), R.cols()) - R;
    lap.pd = pd;
    return lap;
}

Mat schur(const Mat& L, const std::vector<int>& U) {
    const int n = static_cast<int>(L.rows());
    if (U.empty() || static_cast<int>(U.size()) >= n)
        throw UsageError("schur: U must be a nonempty proper subset");
    std::vector<int> Uc = complement(n, U);
    Mat LU = submatrix(L, U, U);
    Mat LUc = submatrix(L, Uc, Uc);
    Mat Luc = submatrix(L, U, Uc);
    Mat Lcu = submatrix(L, Uc, U);
    Eigen::FullPivLU<Mat> lu(LUc);
    if (!lu.isInvertible()) throw SingularBlock();
    return LU - Luc * lu.solve(Lcu);
}

Mat schur_nonneg(const Mat& R, const std::vector<int>& U) {
    Mat L = Mat::Identity(R.rows(), R.cols()) - R;
    Mat S = schur(L, U);
    return Mat::Identity(S.rows(), S.cols()) - S;
}

DirichletSolution dirichlet_solve(const Laplacian& lap, const BoundaryCondition& bc,
                                  DirichletForm form) {
    const int n = static_cast<int>(lap.L.rows());
    if (bc.U.empty() || static_cast<int>(bc.U.size()) >= n + 1)
        throw UsageError("dirichlet_solve: invalid boundary set");
    if (static_cast<int>(bc.U.size()) != bc.a.size())
        throw ShapeMismatch("dirichlet_solve: boundary size mismatch");
    std::vector<int> Uc = complement(n, bc.U);

    DirichletSolution sol;
    sol.q = Vec::Zero(n);
    for (size_t i = 0; i < bc.U.size(); i++) sol.q(bc.U[i]) = bc.a(i);

    if (!Uc.empty()) {
        // A-form: (L q)_Uc = 0; R-form: (L Dv q)_Uc = 0
        Mat LUc = submatrix(lap.L, Uc, Uc);
        Mat Lcu = submatrix(lap.L, Uc, bc.U);
        Vec rhs = Vec::Zero(Uc.size());
        Vec aa = bc.a;
        if (form == DirichletForm::RForm)
            for (size_t i = 0; i < bc.U.size(); i++) aa(i) *= lap.pd.v(bc.U[i]);
        rhs = -(Lcu * aa);
        Eigen::FullPivLU<Mat> lu(LUc);
        if (!lu.isInvertible()) throw SingularBlock();
        Vec z = lu.solve(rhs);
        if (form == DirichletForm::RForm)
            for (size_t i = 0; i < Uc.size(); i++) z(i) /= lap.pd.v(Uc[i]);
        for (size_t i = 0; i < Uc.size(); i++) sol.q(Uc[i]) = z(i);
    }

    Vec Lq = form == DirichletForm::AForm
                 ? Vec(lap.L * sol.q)
                 : Vec(lap.L * (lap.pd.v.asDiagonal() * sol.q));
    sol.residual_interior = 0;
    for (int i : Uc) sol.residual_interior = std::max(sol.residual_interior, std::abs(Lq(i)));
    sol.boundary_flux = Vec(bc.U.size());
    for (size_t i = 0; i < bc.U.size(); i++) sol.boundary_flux(i) = Lq(bc.U[i]);
    return sol;
}

Mat laplacian_pinv(const Mat& L, const Vec& w) {
    Mat M = L + w * w.transpose();
    Eigen::FullPivLU<Mat> lu(M);
    if (!lu.isInvertible()) throw SingularBlock();
    return lu.inverse() - w * w.transpose();
}

CapacityReport capacity(const Mat& A, const Vec& w, const BoundaryCondition& bc) {
    const int n = static_cast<int>(A.rows());
    Mat L = Mat::Identity(n, n) - A;

    // reject a proportional to w_U: capacity degenerates to 0
    Vec wU(bc.U.size());
    for (size_t i = 0; i < bc.U.size(); i++) wU(i) = w(bc.U[i]);
    double na = bc.a.norm(), nw = wU.norm();
    if (na == 0 || std::abs(std::abs(bc.a.dot(wU)) - na * nw) < 1e-12 * na * nw)
        throw DegenerateBoundary();

    // Dirichlet vector with q_U = (Dw)_U a
    BoundaryCondition scaled;
    scaled.U = bc.U;
    scaled.a = bc.a.cwiseProduct(wU);
    PerronData pd;
    pd.r = 1.0;
    pd.u = w;
    pd.v = w;
    Laplacian lap{L, pd};
    DirichletSolution sol = dirichlet_solve(lap, scaled);

    CapacityReport rep;
    rep.q = sol.q;
    rep.value = sol.q.dot(L * sol.q);

    // with an empty interior there is nothing to eliminate
    Mat LU = static_cast<int>(bc.U.size()) == n ? L : schur(L, bc.U);
    rep.via_schur = scaled.a.dot(LU * scaled.a);

    Vec r = L * sol.q;
    Mat Lp = laplacian_pinv(L, w / w.norm());
    rep.via_pinv = r.dot(Lp * r);

    Mat LpU = submatrix(Lp, bc.U, bc.U);
    Vec rU(bc.U.size());
    for (size_t i = 0; i < bc.U.size(); i++) rU(i) = r(bc.U[i]);
    rep.via_pinv_restricted = rU.dot(LpU * rU);

    double vals[4] = {rep.value, rep.via_schur, rep.via_pinv, rep.via_pinv_restricted};
    for (int i = 0; i < 4; i++)
        for (int j = i + 1; j < 4; j++)
            rep.max_deviation = std::max(rep.max_deviation, std::abs(vals[i] - vals[j]));
    return rep;
}

std::pair<Mat, double> vertex_clump(const Mat& Q, const std::vector<int>& U, const Vec& a) {
    const int n = static_cast<int>(Q.rows());
    std::vector<int> Uc = complement(n, U);
    const int m = static_cast<int>(Uc.size());
    Mat T(m + 1, m + 1);
    Mat QU = submatrix(Q, U, U);
    Mat B = submatrix(Q, U, Uc);
    Mat C = submatrix(Q, Uc, U);
    Mat D = submatrix(Q, Uc, Uc);
    T(0, 0) = a.dot(QU * a);
    if (m > 0) {
        T.block(0, 1, 1, m) = (a.transpose() * B);
        T.block(1, 0, m, 1) = C * a;
        T.block(1, 1, m, m) = D;
    }
    Eigen::FullPivLU<Mat> lu(T);
    if (!lu.isInvertible()) throw SingularClump();
    Vec e1 = Vec::Zero(m + 1);
    e1(0) = 1.0;
    double val = 1.0 / e1.dot(lu.solve(e1));
    return {T, val};
}

MonotonicityReport capacity_monotonicity_check(const Mat& A, const Vec& w,
                                               const BoundaryCondition& bc,
                                               const std::vector<double>& alphas, double tol) {
    Mat sym = 0.5 * (A + A.transpose());
    Mat skew = 0.5 * (A - A.transpose());
    MonotonicityReport rep;
    std::vector<std::pair<double, double>> by_abs;  // (|alpha|, cap)
    for (double al : alphas) {
        Mat Aa = sym + al * skew;
        CapacityReport c = capacity(Aa, w, bc);
        rep.alphas.push_back(al);
        rep.caps.push_back(c.value);
        by_abs.push_back({std::abs(al), c.value});
    }
    std::sort(by_abs.begin(), by_abs.end());
    for (size_t i = 0; i + 1 < by_abs.size(); i++) {
        double viol = by_abs[i].second - by_abs[i + 1].second;
        rep.worst_violation = std::max(rep.worst_violation, viol);
        if (viol > tol) rep.monotone = false;
    }
    return rep;
}

MatrixInequalityReport matrix_inequality_suite(const Mat& R) {
    const int n = static_cast<int>(R.rows());
    MatrixInequalityReport rep;
    rep.worst_min_eig = std::numeric_limits<double>::infinity();
    {
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (R + R.transpose()));
        if (es.eigenvalues().minCoeff() <= 0) throw NotPDSymPart();
    }
    Eigen::FullPivLU<Mat> lu(R);
    rep.invertible = lu.isInvertible();
    if (!rep.invertible) return rep;
    Mat Ri = lu.inverse();
    Mat Rit = Ri.transpose();

    Mat half_inv = 0.5 * (Ri + Rit);
    rep.part2 = psd_with_slack(half_inv, &rep.worst_min_eig) &&
                Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (half_inv + half_inv.transpose()))
                        .eigenvalues()
                        .minCoeff() > 0;

    Mat sym = 0.5 * (R + R.transpose());
    Mat sym_inv = sym.inverse();
    rep.part3 = psd_with_slack(sym_inv - half_inv, &rep.worst_min_eig);

    Mat part4_rhs = 0.5 * (R.transpose() * Ri * R.transpose() + R * Rit * R);
    rep.part4 = psd_with_slack(sym - part4_rhs, &rep.worst_min_eig);

    Mat skew = 0.5 * (R - R.transpose());
    std::vector<double> grid = {0.0, 0.25, -0.25, 0.5, -0.5, 0.75, -0.75, 1.0, -1.0};
    rep.part5 = true;
    auto halfinv_of = [&](double al) {
        Mat W = sym + al * skew;
        Mat Wi = W.inverse();
        return Mat(0.5 * (Wi + Wi.transpose()));
    };
    for (double al : grid)
        for (double be : grid) {
            if (std::abs(al) > std::abs(be)) continue;
            if (!psd_with_slack(halfinv_of(al) - halfinv_of(be), &rep.worst_min_eig))
                rep.part5 = false;
        }
    (void)n;
    return rep;
}

NonsymDirichletReport dirichlet_nonsym_bound(const Mat& A, const Vec& w,
                                             const BoundaryCondition& bc,
                                             const Vec* test_vector) {
    const int n = static_cast<int>(A.rows());
    Mat L = Mat::Identity(n, n) - A;
    Mat Lsym = 0.5 * (L + L.transpose());
    Vec wn = w / w.norm();
    Mat Lsp = laplacian_pinv(Lsym, wn);
    Mat H = L * Lsp * L.transpose();

    NonsymDirichletReport rep;
    CapacityReport cap = capacity(A, w, bc);
    rep.cap = cap.value;

    Vec wU(bc.U.size());
    for (size_t i = 0; i < bc.U.size(); i++) wU(i) = w(bc.U[i]);
    Vec qU = bc.a.cwiseProduct(wU);

    if (test_vector) {
        for (size_t i = 0; i < bc.U.size(); i++)
            if (std::abs((*test_vector)(bc.U[i]) - qU(i)) > 1e-12)
                throw UsageError("dirichlet_nonsym_bound: test vector violates the boundary");
        rep.quadratic_at_x = test_vector->dot(H * *test_vector);
        rep.bound_ok = rep.cap <= rep.quadratic_at_x + 1e-9;
    }

    if (bc.U.size() == 2) {
        // tightness witness (p+q)/2 with p the Dirichlet vector of L^T
        PerronData pd;
        pd.r = 1.0;
        pd.u = w;
        pd.v = w;
        BoundaryCondition scaled{bc.U, qU};
        Laplacian lap{L, pd};
        Laplacian lapT{Mat(L.transpose()), pd};
        Vec q = dirichlet_solve(lap, scaled).q;
        Vec p = dirichlet_solve(lapT, scaled).q;
        Vec x = 0.5 * (p + q);
        rep.witness_gap = std::abs(x.dot(H * x) - rep.cap);

        // strengthening: <p, Hp> = cap(A)^2 / cap(sym A)
        Mat Asym = 0.5 * (A + A.transpose());
        CapacityReport cs = capacity(Asym, w, bc);
        rep.strengthening_gap = std::abs(p.dot(H * p) - rep.cap * rep.cap / cs.value);
    }
    return rep;
}

namespace {

double weight_of(const std::vector<int>& S, const Vec& w) {
    double s = 0;
    for (int i : S) s += w(i) * w(i);
    return s;
}

}  // namespace

NormalizedCapacityReport normalized_capacity(const Mat& A, const Vec& w, int limit) {
    const int n = static_cast<int>(A.rows());
    if (n > limit) throw TooLarge("normalized_capacity: n exceeds the enumeration limit");
    NormalizedCapacityReport rep;
    rep.sigma = std::numeric_limits<double>::infinity();
    size_t best_usize = 0;

    std::vector<int> label(n, 0);  // 0 = neither, 1 = S, 2 = T
    long total = 1;
    for (int i = 0; i < n; i++) total *= 3;
    for (long code = 0; code < total; code++) {
        long c = code;
        std::vector<int> S, T;
        for (int i = 0; i < n; i++) {
            label[i] = static_cast<int>(c % 3);
            c /= 3;
            if (label[i] == 1) S.push_back(i);
            if (label[i] == 2) T.push_back(i);
        }
        if (S.empty() || T.empty()) continue;
        double wS = weight_of(S, w), wT = weight_of(T, w);
        if (wS > wT + kHalfSlack) continue;
        rep.candidates++;

        BoundaryCondition bc;
        bc.U = S;
        bc.U.insert(bc.U.end(), T.begin(), T.end());
        std::sort(bc.U.begin(), bc.U.end());
        bc.a = Vec::Zero(bc.U.size());
        for (size_t i = 0; i < bc.U.size(); i++)
            if (std::find(S.begin(), S.end(), bc.U[i]) != S.end()) bc.a(i) = 1.0;
        double cap = capacity(A, w, bc).value;
        double sigma = cap / wS;
        size_t usize = S.size() + T.size();
        bool better = sigma < rep.sigma - 1e-12;
        if (!better && sigma < rep.sigma + 1e-12) {
            // ties toward smaller |S u T|, then lexicographic S then T
            if (usize < best_usize)
                better = true;
            else if (usize == best_usize &&
                     (std::lexicographical_compare(S.begin(), S.end(), rep.S.begin(), rep.S.end()) ||
                      (S == rep.S &&
                       std::lexicographical_compare(T.begin(), T.end(), rep.T.begin(), rep.T.end()))))
                better = true;
        }
        if (better) {
            rep.sigma = sigma;
            rep.S = S;
            rep.T = T;
            best_usize = usize;
        }
    }
    return rep;
}

double normalized_capacity_schur_route(const Mat& A, const Vec& w, int limit) {
    const int n = static_cast<int>(A.rows());
    if (n > limit) throw TooLarge("normalized_capacity_schur_route: n too large");
    double best = std::numeric_limits<double>::infinity();
    // U runs over all subsets with |U| >= 2, including the full set
    for (uint64_t mask = 0; mask < (1ULL << n); mask++) {
        std::vector<int> U;
        for (int i = 0; i < n; i++)
            if ((mask >> i) & 1) U.push_back(i);
        if (U.size() < 2) continue;
        Mat AU = U.size() == static_cast<size_t>(n) ? A : schur_nonneg(A, U);
        // phi over cuts of the complement-eliminated chain, weighted by w_U
        PerronData pd;
        pd.r = 1.0;
        pd.u = Vec(U.size());
        for (size_t i = 0; i < U.size(); i++) pd.u(i) = w(U[i]);
        pd.v = pd.u;
        best = std::min(best, phi_exact(AU, pd, n).phi);
    }
    return best;
}

Vec hitting_probability(const Mat& A, const std::vector<int>& S, const std::vector<int>& T) {
    const int n = static_cast<int>(A.rows());
    if (!is_doubly_stochastic(A, 1e-9))
        throw UsageError("hitting_probability: matrix not doubly stochastic");
    for (int i : S)
        for (int j : T)
            if (i == j) throw UsageError("hitting_probability: S and T intersect");
    BoundaryCondition bc;
    bc.U = S;
    bc.U.insert(bc.U.end(), T.begin(), T.end());
    std::sort(bc.U.begin(), bc.U.end());
    bc.a = Vec::Zero(bc.U.size());
    for (size_t i = 0; i < bc.U.size(); i++)
        if (std::find(S.begin(), S.end(), bc.U[i]) != S.end()) bc.a(i) = 1.0;
    PerronData pd = uniform_perron(n);
    // walks use the column convention Pr[i -> j] = A(j, i); first-step
    // analysis v_i = sum_j Pr[i -> j] v_j then reads (I - A^T) v = 0 on
    // the interior
    Laplacian lap{Mat(Mat::Identity(n, n) - A.transpose()), pd};
    return dirichlet_solve(lap, bc).q;
}

std::pair<Vec, double> expected_visits(const Mat& A, int s, int t) {
    const int n = static_cast<int>(A.rows());
    if (s == t) throw UsageError("expected_visits: s and t must differ");
    if (!is_doubly_stochastic(A, 1e-9))
        throw UsageError("expected_visits: matrix not doubly stochastic");
    Mat L = Mat::Identity(n, n) - A;
    Vec chi = Vec::Zero(n);
    chi(s) = 1.0;
    chi(t) = -1.0;
    Vec wn = Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    Vec q = laplacian_pinv(L, wn) * chi;
    q.array() -= q(t);
    return {q, q(s)};
}

}  // namespace specphi
