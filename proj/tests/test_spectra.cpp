#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specphi/constructions.hpp"
#include "specphi/rng.hpp"
#include "specphi/spectra.hpp"

using namespace specphi;

namespace {

Mat directed_cycle(int n) {
    Mat C = Mat::Zero(n, n);
    for (int j = 0; j < n; j++) C((j + 1) % n, j) = 1.0;
    return C;
}

Mat undirected_cycle(int n) {
    Mat C = Mat::Zero(n, n);
    for (int j = 0; j < n; j++) {
        C((j + 1) % n, j) += 0.5;
        C((j + n - 1) % n, j) += 0.5;
    }
    return C;
}

}  // namespace

TEST_CASE("spectrum of J and the directed cycle") {
    int n = 5;
    Spectrum s = spectrum(Mat(Mat::Constant(n, n, 1.0 / n)));
    CHECK(s.eigenvalues[0].real() == doctest::Approx(1.0));
    for (int i = 1; i < n; i++) CHECK(std::abs(s.eigenvalues[i]) < 1e-10);

    Spectrum c = spectrum(directed_cycle(4));
    // fourth roots of unity
    CHECK(std::abs(c.eigenvalues[0] - Complex(1, 0)) < 1e-9);
    CHECK(std::abs(c.eigenvalues[1] - Complex(0, 1)) < 1e-9);
    CHECK(std::abs(c.eigenvalues[2] - Complex(0, -1)) < 1e-9);
    CHECK(std::abs(c.eigenvalues[3] - Complex(-1, 0)) < 1e-9);
}

TEST_CASE("klawe-vazirani spectrum") {
    // The half-circle description needs 2 to be a primitive root mod p:
    // the nontrivial spectrum solves prod_{i in O}(2 lambda - w^i) = 1 per
    // orbit O of the doubling map, which is the full circle product only
    // when the doubling map is a single cycle.
    SUBCASE("p = 11, 13: 2 is a primitive root, half-circle holds") {
        for (int p : {11, 13}) {
            Spectrum s = spectrum(klawe_vazirani(p).to_double());
            CHECK(std::abs(s.eigenvalues[0] - Complex(1, 0)) < 1e-8);
            int zeros = 0, half = 0;
            for (int i = 1; i < p; i++) {
                double m = std::abs(s.eigenvalues[i]);
                if (m < 1e-8) zeros++;
                if (std::abs(m - 0.5) < 1e-8) half++;
            }
            CHECK(zeros == 1);
            CHECK(half == p - 2);
        }
    }
    SUBCASE("p = 7: doubling splits into two orbits; per-orbit products hold") {
        Spectrum s = spectrum(klawe_vazirani(7).to_double());
        CHECK(std::abs(s.eigenvalues[0] - Complex(1, 0)) < 1e-8);
        std::vector<std::vector<int>> orbits = {{1, 2, 4}, {3, 6, 5}};
        int matched = 0;
        for (int i = 1; i < 7; i++) {
            Complex lam = s.eigenvalues[i];
            if (std::abs(lam) < 1e-8) continue;  // the zero eigenvalue
            for (const auto& orbit : orbits) {
                Complex prod = 1;
                for (int e : orbit)
                    prod *= 2.0 * lam - std::exp(Complex(0, 2 * M_PI * e / 7.0));
                if (std::abs(prod - 1.0) < 1e-8) {
                    matched++;
                    break;
                }
            }
        }
        CHECK(matched == 5);
        // the gamma bound survives: Re lambda_2 stays below 1/2
        CHECK(s.eigenvalues[1].real() <= 0.5 + 1e-8);
    }
}

TEST_CASE("spectral gap on the stated examples") {
    CHECK(spectral_gap(Mat(Mat::Constant(6, 6, 1.0 / 6))) == doctest::Approx(1.0));
    CHECK(spectral_gap(undirected_cycle(8)) ==
          doctest::Approx(1.0 - std::cos(2.0 * M_PI / 8)).epsilon(1e-10));
    CHECK_THROWS_AS(spectral_gap(Mat(Mat::Identity(3, 3))), NotIrreducible);
}

TEST_CASE("spectrum invariants: transpose, trace powers") {
    Rng rng(23);
    for (int t = 0; t < 25; t++) {
        int n = 3 + static_cast<int>(rng.below(8));
        Mat M = random_positive(rng, n);
        Spectrum s = spectrum(M);
        Spectrum st = spectrum(Mat(M.transpose()));
        for (int i = 0; i < n; i++)
            CHECK(std::abs(s.eigenvalues[i] - st.eigenvalues[i]) < 1e-8 * (1 + M.norm()));

        Mat P = Mat::Identity(n, n);
        for (int k = 1; k <= 5; k++) {
            P = P * M;
            Complex sum = 0;
            for (const auto& l : s.eigenvalues) sum += std::pow(l, k);
            CHECK(std::abs(sum.real() - P.trace()) < 1e-7 * (1 + std::abs(P.trace())));
            CHECK(std::abs(sum.imag()) < 1e-7 * (1 + std::abs(P.trace())));
        }
    }
}

TEST_CASE("schur form on diagonal, symmetric, and de Bruijn minus J") {
    Mat D = Vec::LinSpaced(4, 1.0, 4.0).asDiagonal();
    SchurForm f = schur_form(D);
    CHECK(f.residual < 1e-12);

    Rng rng(3);
    Mat S = random_symmetric_doubly_stochastic(rng, 5);
    SchurForm fs = schur_form(S);
    for (int i = 0; i < 5; i++)
        for (int j = i + 1; j < 5; j++) CHECK(std::abs(fs.T(i, j)) < 1e-8);

    // de Bruijn minus J is nilpotent; a backward-stable QR can only pin
    // its eigenvalues to ~eps^(1/index), so the machine check is loose
    // and the exact statement is certified in rational arithmetic
    Mat B = debruijn(3).to_double() - Mat::Constant(8, 8, 1.0 / 8);
    SchurForm fb = schur_form(B);
    CHECK(fb.residual < 1e-10);
    for (int i = 0; i < 8; i++) CHECK(std::abs(fb.T(i, i)) < 1e-4);
    RMat BR = debruijn(3) - RMat::uniform(8);
    CHECK(BR.pow(3).is_zero());
}

TEST_CASE("buser and singular lower bounds on the stated examples") {
    int n = 6;
    Mat J = Mat::Constant(n, n, 1.0 / n);
    Vec w = Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    CHECK(buser_lower_bound(J, w) == doctest::Approx(0.5).epsilon(1e-10));
    // sigma_2 comes through sqrt of an O(eps) eigenvalue of J^T J
    CHECK(singular_lower_bound(J) == doctest::Approx(0.5).epsilon(1e-7));

    // directed cycle: sigma_2 = 1 makes the singular bound vacuous
    CHECK(singular_lower_bound(directed_cycle(8)) == doctest::Approx(0.0).epsilon(1e-9));

    // rootn A9: sigma_2 = 4/5 so the bound is 1/10
    Mat A9 = rootn(9).to_double();
    CHECK(singular_lower_bound(A9) == doctest::Approx(0.1).epsilon(1e-8));
}

TEST_CASE("power norm bound formula and matrix powering") {
    CHECK(power_norm_bound(2, 1.0, 0.0, 4) == doctest::Approx(0.0));
    // n=2, sigma=1, alpha=1/2, k=4: 2 C(6,2) (1/2)^2 = 7.5
    CHECK(power_norm_bound(2, 1.0, 0.5, 4) == doctest::Approx(7.5).epsilon(1e-12));

    Rng rng(40);
    for (int t = 0; t < 5; t++) {
        int n = 6;
        Mat T = Mat::Zero(n, n);
        for (int i = 0; i < n; i++) {
            T(i, i) = rng.uniform(-0.4, 0.4);
            for (int j = i + 1; j < n; j++) T(i, j) = rng.uniform(-1.0, 1.0);
        }
        double sigma = std::max(1.0, operator_norm(T));
        double alpha = 0;
        for (int i = 0; i < n; i++) alpha = std::max(alpha, std::abs(T(i, i)));
        Mat P = Mat::Identity(n, n);
        for (long k = 1; k <= 50; k++) {
            P = P * T;
            if (k < n) continue;
            CHECK(operator_norm(P) <= power_norm_bound(n, sigma, alpha, k) * (1 + 1e-9) + 1e-12);
        }
    }
}

TEST_CASE("power norm threshold: formula value and guarantee") {
    // n=5, alpha=e^-1, eps=0.1: 3.51*5 + 1.385 ln 50 = 22.97, so ceil is 23
    CHECK(power_norm_threshold(5, std::exp(-1.0), 0.1) == 23);
    // statement constants are looser
    CHECK(power_norm_threshold(5, std::exp(-1.0), 0.1, true) >=
          power_norm_threshold(5, std::exp(-1.0), 0.1));

    // nilpotent T: any k works
    Mat B = debruijn(3).to_double() - Mat::Constant(8, 8, 1.0 / 8);
    long k = power_norm_threshold(8, 0.5, 0.1);
    Mat P = Mat::Identity(8, 8);
    for (long i = 0; i < k; i++) P = P * B;
    CHECK(operator_norm(P) <= 0.1);

    Rng rng(55);
    for (int t = 0; t < 20; t++) {
        int n = 8;
        Mat T = Mat::Zero(n, n);
        double alpha = rng.uniform(0.2, 0.8);
        for (int i = 0; i < n; i++) {
            T(i, i) = rng.uniform(-alpha, alpha);
            for (int j = i + 1; j < n; j++) T(i, j) = rng.uniform(-1.0, 1.0);
        }
        T /= std::max(1.0, operator_norm(T));  // ||T|| <= 1
        double eps = 0.05;
        long kk = power_norm_threshold(n, alpha, eps);
        Mat P = Mat::Identity(n, n);
        for (long i = 0; i < kk; i++) P = P * T;
        CHECK(operator_norm(P) <= eps * (1 + 1e-9));
    }
}

TEST_CASE("baur-fike via schur decomposition") {
    Rng rng(60);
    Mat A = random_positive(rng, 6);
    SUBCASE("zero perturbation") {
        BaurFikeReport r = baur_fike_schur_check(A, Mat(Mat::Zero(6, 6)));
        CHECK(r.all_satisfied);
        for (const auto& e : r.entries) CHECK(e.gap < 1e-9);
    }
    SUBCASE("diagonal perturbation of a diagonal matrix") {
        Mat D = Vec::LinSpaced(5, 1.0, 5.0).asDiagonal();
        Mat E = 0.01 * Mat::Identity(5, 5);
        BaurFikeReport r = baur_fike_schur_check(D, E);
        CHECK(r.all_satisfied);
        for (const auto& e : r.entries) CHECK(e.gap == doctest::Approx(0.01).epsilon(1e-6));
    }
    SUBCASE("random perturbation with ||E|| = 0.01") {
        Mat E = random_positive(rng, 6, -1.0, 1.0);
        E *= 0.01 / operator_norm(E);
        BaurFikeReport r = baur_fike_schur_check(A, E);
        CHECK(r.all_satisfied);
    }
}

TEST_CASE("singular bound is weaker than buser bound on lazy balanced matrices") {
    Rng rng(77);
    for (int t = 0; t < 200; t++) {
        Rng local = rng.fork(t);
        int n = 4 + static_cast<int>(local.below(7));
        Mat A = random_balanced(local, n, true);
        PerronData pd = perron(A);
        CHECK(singular_lower_bound(A) <= buser_lower_bound(A, pd.w()) + 1e-9);
    }
}
