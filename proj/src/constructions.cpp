#include "specphi/constructions.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <thread>

#include "specphi/rng.hpp"
#include "specphi/spectra.hpp"

namespace specphi {

// ---- Rootn ------------------------------------------------------------------

RootnData rootn_data(int n) {
    int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (n < 4 || m * m != n) throw NotPerfectSquare();
    RootnData d;
    d.n = n;
    d.m = m;
    d.a = ratio(static_cast<long>(m) * m + m - 1, static_cast<long>(m) * (m + 2));
    d.b = ratio(m + 1, static_cast<long>(m) * (m + 2));
    d.c = ratio(1, static_cast<long>(m) * (m + 1));
    d.d = ratio(static_cast<long>(m) * m * m + 2L * m * m + m + 1,
                   static_cast<long>(m) * (m + 1) * (m + 2));
    d.e = ratio(1, static_cast<long>(m) * (m + 1) * (m + 2));
    d.f = ratio(2L * m + 3, static_cast<long>(m) * (m + 1) * (m + 2));
    d.r = ratio(m + 1, m + 2);  // 1 - 1/(m+2)
    d.alpha = Rational(-1) + ratio(1, static_cast<long>(m) * (m + 1));
    d.beta = ratio(1, static_cast<long>(m) * (m + 1));
    return d;
}

RMat rootn(int n) {
    RootnData d = rootn_data(n);
    RMat A(n);
    A(0, 0) = d.a;
    A(0, 1) = d.b;
    for (int i = 1; i < n - 1; i++) {
        A(i, 1) = d.c;
        for (int j = 2; j < n; j++) A(i, j) = (j == i + 1) ? d.d : d.e;
    }
    A(n - 1, 0) = d.b;
    A(n - 1, 1) = d.f;
    for (int j = 2; j < n; j++) A(n - 1, j) = d.c;
    return A;
}

std::pair<RMat, RMat> rootn_schur(int n) {
    RootnData d = rootn_data(n);
    RMat U(n), T(n);
    Rational inv_m(1, d.m);  // 1/sqrt(n) is rational because n = m^2
    for (int i = 0; i < n; i++) {
        U(i, 0) = inv_m;
        U(0, i) = inv_m;
    }
    for (int i = 1; i < n; i++)
        for (int j = 1; j < n; j++) U(i, j) = (i == j) ? d.alpha : d.beta;
    T(0, 0) = 1;
    for (int i = 1; i < n - 1; i++) T(i, i + 1) = d.r;
    return {U, T};
}

RMat rootn_shifted(int n) {
    RootnData d = rootn_data(n);
    RMat A = rootn(n);
    A(0, 0) = d.a + d.b;
    A(0, 1) = 0;
    A(n - 1, 0) = 0;
    A(n - 1, 1) = d.f + d.b;
    return A;
}

// ---- Chet -------------------------------------------------------------------

std::pair<DMat, ChetData> chet(int n, const PrecisionConfig& cfg) {
    if (n < 4) throw UsageError("chet: need n >= 4");
    if (cfg.mode != PrecisionMode::Decimal || cfg.digits < 20)
        throw UsageError("chet: decimal precision >= 20 digits required");
    const mpfr_prec_t prec = bits_for_digits(cfg.digits);
    const Dec one(1.0, prec);

    ChetData data;
    data.n = n;
    data.digits = cfg.digits;
    data.r = Dec::rootn(one / Dec(static_cast<long>(n), prec), n - 1);
    const Dec& r = data.r;

    DMat C(n, prec);
    for (int i = 0; i + 1 < n; i++) C(i, i + 1) = r;
    Dec bval = one - r;
    C(0, 0) = bval;
    C(n - 1, n - 1) = bval;
    data.b.push_back(bval);

    // diagonal-by-diagonal assignment from tr(C^k) = 1, as in the
    // appendix pseudocode; the matrix stays symmetric about the
    // anti-diagonal throughout, which mul_persym exploits
    for (int k = 1; k <= n - 2; k++) {
        Dec tr = dmat_trace_pow(C, k);
        Dec denom = Dec(static_cast<long>(k) * (n - k - 1), prec) * Dec::pow_si(r, k - 1);
        Dec cval = (one - tr) / denom;
        data.c.push_back(cval);
        bval -= cval;
        data.b.push_back(bval);
        for (int j = 1; j <= n - 1 - k; j++) C(j + k - 1, j) = cval;
        C(k, 0) = bval;
        C(n - 1, n - 1 - k) = bval;
    }

    // corner closure: column 0 must sum to 1
    Dec corner = one;
    for (int i = 0; i + 1 < n; i++) corner -= C(i, 0);
    C(n - 1, 0) = corner;
    Dec alt = one;
    for (const Dec& bi : data.b) alt -= bi;
    data.corner_crosscheck = (corner - alt).abs().to_double();
    data.b.push_back(corner);

    // verdicts
    Dec mn = C.min_entry();
    data.min_entry = mn.to_double();
    data.nonnegative = !mn.is_negative();
    data.min_c_index = 0;
    for (size_t i = 1; i < data.c.size(); i++)
        if (data.c[i] < data.c[data.min_c_index]) data.min_c_index = static_cast<int>(i);
    data.min_b_index = 0;
    for (size_t i = 1; i < data.b.size(); i++)
        if (data.b[i] < data.b[data.min_b_index]) data.min_b_index = static_cast<int>(i);

    // final trace certificate on the closed matrix
    DMat P = C;
    data.trace_residuals.resize(n - 1);
    for (int k = 1; k <= n - 1; k++) {
        if (k > 1) P = P.mul_persym(C);
        data.trace_residuals[k - 1] = (P.trace() - one).abs().to_double();
    }
    data.max_trace_residual =
        *std::max_element(data.trace_residuals.begin(), data.trace_residuals.end());
    if (data.max_trace_residual > cfg.decimal_tol())
        throw PrecisionExhausted("chet: trace residuals exceed tolerance at " +
                                 std::to_string(cfg.digits) + " digits");
    return {std::move(C), std::move(data)};
}

Dec chet_analytic(int n, int i, const PrecisionConfig& cfg) {
    if (n < 6) throw UsageError("chet_analytic: need n >= 6");
    const mpfr_prec_t prec = bits_for_digits(cfg.digits);
    const Dec one(1.0, prec);
    Dec nn(static_cast<long>(n), prec);
    Dec r = Dec::rootn(one / nn, n - 1);
    Dec two(2.0, prec), three(3.0, prec), four(4.0, prec);
    switch (i) {
        case 0:
            return (two * r - one) / Dec(static_cast<long>(n - 2), prec);
        case 1: {
            Dec num = (two * r * r - one) * nn + one;
            Dec den = two * Dec(static_cast<long>(n - 3) * (n - 2), prec) * r;
            return num / den;
        }
        case 2: {
            Dec r3 = r * r * r;
            Dec num = (two * r3 - one) * nn * nn * nn +
                      (-Dec(8.0, prec) * r3 + three * r + four) * nn * nn +
                      (Dec(12.0, prec) * r3 - Dec(15.0, prec) * r - three) * nn +
                      Dec(12.0, prec) * r;
            Dec den = three * Dec(static_cast<long>(n - 4) * (n - 3), prec) *
                      Dec(static_cast<long>(n - 2) * (n - 2), prec) * r * r;
            return num / den;
        }
        default:
            throw UsageError("chet_analytic: i must be 0, 1 or 2");
    }
}

std::vector<ChetScanRow> chet_scan(int n_lo, int n_hi, const PrecisionConfig& cfg, int jobs) {
    if (n_lo < 4 || n_lo > n_hi) throw UsageError("chet_scan: invalid range");
    const int count = n_hi - n_lo + 1;
    std::vector<ChetScanRow> rows(count);
    std::atomic<int> next{0};
    jobs = std::max(1, jobs);

    auto worker = [&]() {
        for (;;) {
            int idx = next.fetch_add(1);
            if (idx >= count) return;
            int n = n_lo + idx;
            ChetScanRow row;
            row.n = n;
            try {
                auto [C, d] = chet(n, cfg);
                row.min_c = d.c.at(d.min_c_index).to_double();
                row.min_b = d.b.at(d.min_b_index).to_double();
                row.min_c_index = d.min_c_index;
                row.min_b_index = d.min_b_index;
                row.min_entry = d.min_entry;
                row.nonnegative = d.nonnegative;
                row.max_trace_residual = d.max_trace_residual;
                PerronData pd = uniform_perron(n);
                row.phi_upper = phi_interval_scan(C.to_double(), pd).phi;
            } catch (const PrecisionExhausted&) {
                row.precision_ok = false;
            }
            rows[idx] = row;
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; t++) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    return rows;
}

bool chet_permanent_check(int n, const PrecisionConfig& cfg, double* deviation) {
    if (n > 10) throw TooLarge("chet_permanent_check: permanent is exponential, need n <= 10");
    auto [C, d] = chet(n, cfg);
    const mpfr_prec_t prec = bits_for_digits(cfg.digits);
    const Dec one(1.0, prec);

    // permanent by Ryser's formula over column subsets (Gray code)
    std::vector<Dec> rowsum(n, Dec(0.0, prec));
    std::vector<char> in(n, 0);
    Dec perm(0.0, prec);
    uint64_t total = 1ULL << n;
    int cursize = 0;
    for (uint64_t g = 1; g < total; g++) {
        int bit = std::countr_zero(g);
        // flip column `bit` in the running row sums
        if (!in[bit]) {
            in[bit] = 1;
            cursize++;
            for (int i = 0; i < n; i++) rowsum[i] += C(i, bit);
        } else {
            in[bit] = 0;
            cursize--;
            for (int i = 0; i < n; i++) rowsum[i] -= C(i, bit);
        }
        Dec prod = one;
        for (int i = 0; i < n; i++) prod *= rowsum[i];
        if ((n - cursize) % 2 == 1) prod = -prod;
        perm += prod;
    }

    // determinant of the sign-flipped matrix by Gaussian elimination
    DMat Z = C;
    for (int i = 0; i + 1 < n; i++) Z(i, i + 1) = -Z(i, i + 1);
    Dec det = one;
    for (int col = 0; col < n; col++) {
        int piv = col;
        for (int i = col + 1; i < n; i++)
            if (Z(i, col).abs() > Z(piv, col).abs()) piv = i;
        if (Z(piv, col).is_zero()) return false;
        if (piv != col) {
            for (int j = 0; j < n; j++) std::swap(Z(piv, j), Z(col, j));
            det = -det;
        }
        det *= Z(col, col);
        for (int i = col + 1; i < n; i++) {
            Dec f = Z(i, col) / Z(col, col);
            for (int j = col; j < n; j++) Z(i, j) -= f * Z(col, j);
        }
    }

    double dev = (perm - det).abs().to_double();
    if (deviation) *deviation = dev;
    return dev <= std::pow(10.0, -(cfg.digits - 20));
}

// ---- de Bruijn ---------------------------------------------------------------

RMat debruijn(int k) {
    if (k < 2) throw UsageError("debruijn: need k >= 2");
    const int n = 1 << k;
    RMat A(n);
    Rational half = ratio(1, 2);
    for (int x = 0; x < n; x++) {
        int base = (x << 1) & (n - 1);
        A(base, x) += half;
        A(base | 1, x) += half;
    }
    return A;
}

namespace {

bool has_contiguous_ones(int x, int k, int r) {
    int run = 0;
    for (int pos = k - 1; pos >= 0; pos--) {
        if ((x >> pos) & 1) {
            if (++run >= r) return true;
        } else {
            run = 0;
        }
    }
    return false;
}

}  // namespace

DebruijnSetReport debruijn_nonexpanding_set(int k) {
    if (k < 3) throw UsageError("debruijn_nonexpanding_set: need k >= 3");
    const int n = 1 << k;
    const int r = (k + 1) / 2;
    DebruijnSetReport rep;
    for (int x = 0; x < n; x++)
        if (has_contiguous_ones(x, k, r)) rep.cut.members.push_back(x);
    rep.size = static_cast<long>(rep.cut.members.size());
    rep.cut.weight = static_cast<double>(rep.size);
    rep.count_formula = static_cast<long>(k - r) * (1L << (k - r - 1)) + (1L << (k - r));
    RMat A = debruijn(k);
    rep.phi_S = phi_cut(A, rep.cut.members).get_d();
    rep.bound = 8.0 / k;
    return rep;
}

std::vector<long> debruijn_jordan_census(int k) {
    const int n = 1 << k;
    RMat B = debruijn(k) - RMat::uniform(n);
    // ranks of B^0 .. B^k; block counts from second differences
    std::vector<int> ranks;
    ranks.push_back(n);
    RMat P = RMat::identity(n);
    for (int r = 1; r <= k + 1; r++) {
        P = P * B;
        ranks.push_back(P.rank());
    }
    std::vector<long> counts(k + 1, 0);  // counts[r] = blocks of size r, r >= 1
    for (int r = 1; r <= k; r++)
        counts[r] = ranks[r - 1] - 2L * ranks[r] + ranks[r + 1];
    // B kills the all-ones direction outright, which shows up as one extra
    // 1x1 zero block on top of the nilpotent part of A
    counts[1] -= 1;
    return counts;
}

// ---- Klawe-Vazirani / beyond-half ---------------------------------------------

namespace {

bool is_odd_prime(int p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int d = 3; static_cast<long>(d) * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

RMat klawe_vazirani(int p) {
    if (!is_odd_prime(p)) throw NotPrime();
    RMat A(p);
    Rational half = ratio(1, 2);
    for (int v = 0; v < p; v++) {
        A((v + 1) % p, v) += half;
        A((2 * v) % p, v) += half;
    }
    return A;
}

RMat beyond_half() {
    RMat A(4);
    Rational third = ratio(1, 3);
    for (int i = 0; i < 3; i++)
        for (int j = 1; j < 4; j++) A(i, j) = third;
    A(3, 0) = 1;
    return A;
}

ApproxTraceReport approx_trace_counterexample(int n) {
    if (n < 8) throw UsageError("approx_trace_counterexample: need n >= 8");
    ApproxTraceReport rep;
    rep.alpha = 2.0 * std::log(static_cast<double>(n)) / (n - 1);
    Mat C = Mat::Zero(n, n);
    C(0, 0) = 1.0;
    for (int i = 1; i + 1 < n; i++) C(i + 1, i) = 1.0;
    C(1, n - 1) = 1.0;
    Mat J = Mat::Constant(n, n, 1.0 / n);
    rep.A = rep.alpha * J + (1.0 - rep.alpha) * C;

    Mat P = rep.A;
    for (int k = 1; k <= n - 1; k++) {
        if (k > 1) P = P * rep.A;
        if (k <= n - 2)
            rep.trace_residuals.push_back(std::abs(P.trace() - 1.0));
        else
            rep.trace_last = P.trace();
    }
    Spectrum s = spectrum(rep.A);
    rep.lambda2 = s.eigenvalues.at(1).real();
    return rep;
}

// ---- trace conjecture scanner ---------------------------------------------------

TraceSearchReport trace_conjecture_search(int k, int n, long trials, uint64_t seed, bool symmetric,
                                          double tol) {
    if (k < 1 || k >= n) throw UsageError("trace_conjecture_search: need 1 <= k < n");
    TraceSearchReport rep;
    rep.trials = trials;
    Rng rng(seed);
    for (long t = 0; t < trials; t++) {
        Rng local = rng.fork(static_cast<uint64_t>(t));
        Mat A = Mat::Zero(n, n);
        if (symmetric) {
            for (int i = 0; i < n; i++) {
                A(i, i) = local.uniform();
                if (i + 1 < n) {
                    double x = local.uniform();
                    A(i, i + 1) = x;
                    A(i + 1, i) = x;
                }
            }
        } else {
            for (int i = 0; i < n; i++)
                for (int j = 0; j < n; j++)
                    if ((j == i + 1) || (i >= j && i - j <= k)) A(i, j) = local.uniform();
        }
        double mx = 0;
        for (int i = 0; i < n; i++)
            mx = std::max({mx, A.row(i).sum(), A.col(i).sum()});
        if (mx > 0) A /= mx;

        // premise: tr(A^l) <= 1 for l <= k+1
        Mat P = A;
        bool premise = true;
        for (int l = 1; l <= k + 1 && premise; l++) {
            if (l > 1) P = P * A;
            if (P.trace() > 1.0 + 1e-15) premise = false;
        }
        if (!premise) continue;
        rep.accepted++;

        for (int l = k + 2; l <= 4 * n; l++) {
            P = P * A;
            double excess = P.trace() - 1.0;
            rep.worst_excess = std::max(rep.worst_excess, excess);
            if (excess > tol) {
                rep.violations++;
                rep.counterexamples.push_back(A);
                break;
            }
        }
    }
    return rep;
}

}  // namespace specphi
