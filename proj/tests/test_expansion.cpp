#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specphi/constructions.hpp"
#include "specphi/expansion.hpp"
#include "specphi/rng.hpp"
#include "specphi/spectra.hpp"

using namespace specphi;

namespace {

Mat directed_cycle(int n) {
    Mat C = Mat::Zero(n, n);
    for (int j = 0; j < n; j++) C((j + 1) % n, j) = 1.0;
    return C;
}

RMat directed_cycle_rational(int n) {
    RMat C(n);
    for (int j = 0; j < n; j++) C((j + 1) % n, j) = 1;
    return C;
}

// independent oracle: minimum over all cuts by direct summation
double phi_brute(const Mat& R, const PerronData& pd) {
    const int n = static_cast<int>(R.rows());
    double total = 0;
    for (int i = 0; i < n; i++) total += pd.u(i) * pd.v(i);
    double best = std::numeric_limits<double>::infinity();
    for (uint64_t mask = 1; mask + 1 < (1ULL << n); mask++) {
        double w = 0;
        for (int i = 0; i < n; i++)
            if ((mask >> i) & 1) w += pd.u(i) * pd.v(i);
        if (w > 0.5 * total + kHalfSlack) continue;
        std::vector<int> S;
        for (int i = 0; i < n; i++)
            if ((mask >> i) & 1) S.push_back(i);
        best = std::min(best, phi_cut(R, pd, S));
    }
    return best;
}

}  // namespace

TEST_CASE("phi_cut on the stated examples") {
    int n = 8;
    PerronData pd = uniform_perron(n);
    Mat J = Mat::Constant(n, n, 1.0 / n);
    // J with |S| = k: (n-k)/n
    CHECK(phi_cut(J, pd, {0, 1, 2}) == doctest::Approx(5.0 / 8));
    CHECK(phi_cut(directed_cycle(8), pd, {0, 1, 2, 3}) == doctest::Approx(0.25));

    RMat A9 = rootn(9);
    CHECK(phi_cut(A9, {0}) == ratio(16, 60));

    CHECK_THROWS_AS(phi_cut(J, pd, {}), EmptyCut);
    CHECK_THROWS_AS(phi_cut(J, pd, {0, 1, 2, 3, 4, 5, 6, 7}), FullCut);
}

TEST_CASE("phi_exact equals brute force on random irreducible matrices") {
    Rng rng(101);
    for (int t = 0; t < 40; t++) {
        Rng local = rng.fork(t);
        int n = 3 + static_cast<int>(local.below(6));
        Mat R0 = random_irreducible(local, n);
        PerronData pd0 = perron(R0);
        Mat R = normalize_pf(R0, pd0);
        PerronData pd = perron(R);
        ExpansionReport er = phi_exact(R, pd);
        CHECK(er.phi == doctest::Approx(phi_brute(R, pd)).epsilon(1e-10));
        CHECK(er.phi > 1e-12);  // irreducible => phi > 0
    }
}

TEST_CASE("phi_exact on J picks the half cut") {
    PerronData pd = uniform_perron(6);
    ExpansionReport er = phi_exact(Mat(Mat::Constant(6, 6, 1.0 / 6)), pd);
    CHECK(er.phi == doctest::Approx(0.5));
    CHECK(er.argmin.members.size() == 3);
    CHECK(er.cuts_examined > 0);
    CHECK_THROWS_AS(phi_exact(Mat(Mat::Constant(30, 30, 1.0 / 30)), uniform_perron(30)),
                    TooLarge);
}

TEST_CASE("rational phi_exact on A9") {
    // the singleton cut gives b9 = 16/60, but the contiguous cut
    // {1,2,3,4} does better: one d plus ten e crossings over weight 4
    RExpansionReport er = phi_exact(rootn(9));
    CHECK(er.phi == ratio(21, 80));
    CHECK(er.argmin.members == std::vector<int>{0, 1, 2, 3});
    CHECK(phi_cut(rootn(9), {0}) == ratio(16, 60));
}

TEST_CASE("hypercube: phi = delta/2 exactly (Buser tight)") {
    // 3-cube, normalized
    int n = 8;
    Mat H = Mat::Zero(n, n);
    for (int x = 0; x < n; x++)
        for (int b = 0; b < 3; b++) H(x ^ (1 << b), x) = 1.0 / 3;
    PerronData pd = uniform_perron(n);
    double phi = phi_exact(H, pd).phi;
    double delta = spectral_gap(H);
    CHECK(phi == doctest::Approx(delta / 2).epsilon(1e-10));
    CHECK(phi == doctest::Approx(1.0 / 3).epsilon(1e-10));
}

TEST_CASE("interval scan on cycles and rootn") {
    PerronData pd = uniform_perron(100);
    ExpansionReport er = phi_interval_scan(directed_cycle(100), pd);
    CHECK(er.phi == doctest::Approx(2.0 / 100).epsilon(1e-10));
    CHECK(er.method == PhiMethod::WitnessOnly);

    // every admissible interval of A25 has expansion O(1/sqrt(25))
    Mat A25 = rootn(25).to_double();
    PerronData pd25 = uniform_perron(25);
    ExpansionReport e25 = phi_interval_scan(A25, pd25);
    CHECK(e25.phi <= 3.0 / 5);
    // direct sums: check a few intervals stay below c/sqrt(n)
    for (int s = 0; s < 25; s += 5) {
        std::vector<int> S;
        for (int l = 0; l < 12; l++) S.push_back((s + l) % 25);
        CHECK(phi_cut(A25, pd25, S) <= 3.0 / 5);
    }
}

TEST_CASE("gamma ladder entries") {
    // hypercube: 1/2
    int n = 8;
    Mat H = Mat::Zero(n, n);
    for (int x = 0; x < n; x++)
        for (int b = 0; b < 3; b++) H(x ^ (1 << b), x) = 1.0 / 3;
    GammaReport gh = gamma(H);
    CHECK(gh.gamma == doctest::Approx(0.5).epsilon(1e-9));

    // beyond-half: 1/3; the gap comes from the dense solver because the
    // spectrum is {1, 0, 0, -1/3} (0 semisimple), not nilpotent
    GammaReport gb = gamma(beyond_half());
    CHECK_FALSE(gb.delta_certified);
    CHECK(gb.delta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gb.gamma == doctest::Approx(1.0 / 3).epsilon(1e-10));

    // rootn A9: phi/Delta = (21/80)/1 <= 1/3
    GammaReport g9 = gamma(rootn(9));
    CHECK(g9.delta_certified);
    CHECK(g9.gamma == doctest::Approx(21.0 / 80).epsilon(1e-12));
    CHECK(g9.gamma <= 1.0 / 3);
}

TEST_CASE("submultiplicativity of phi under powers") {
    SUBCASE("directed cycle") {
        Mat C = directed_cycle(8);
        PerronData pd = uniform_perron(8);
        SubmultiplicativityReport rep = submultiplicativity_check(C, pd, 4);
        CHECK(rep.ok);
        CHECK(rep.phi_k[0] == doctest::Approx(rep.phi_1));
    }
    SUBCASE("de bruijn k=3 cubed is J") {
        RMat A = debruijn(3);
        RMat A3 = A.pow(3);
        CHECK(A3 == RMat::uniform(8));
        PerronData pd = uniform_perron(8);
        double phi3 = phi_exact(A3.to_double(), pd).phi;
        double phi1 = phi_exact(A.to_double(), pd).phi;
        CHECK(phi3 == doctest::Approx(0.5));
        CHECK(phi3 <= 3 * phi1 + 1e-9);
    }
    SUBCASE("random") {
        Rng rng(321);
        for (int t = 0; t < 10; t++) {
            Rng local = rng.fork(t);
            Mat R0 = random_irreducible(local, 6);
            PerronData pd0 = perron(R0);
            Mat R = normalize_pf(R0, pd0);
            PerronData pd = perron(R);
            CHECK(submultiplicativity_check(R, pd, 5).ok);
        }
    }
}

TEST_CASE("eulerian cut symmetry") {
    Rng rng(33);
    for (int t = 0; t < 20; t++) {
        Rng local = rng.fork(t);
        int n = 4 + static_cast<int>(local.below(5));
        Mat R0 = random_irreducible(local, n);
        PerronData pd0 = perron(R0);
        Mat R = normalize_pf(R0, pd0);
        PerronData pd = perron(R);
        Mat E = pd.u.asDiagonal() * R * pd.v.asDiagonal();
        for (uint64_t mask = 1; mask + 1 < (1ULL << n); mask++) {
            double fwd = 0, bwd = 0;
            for (int i = 0; i < n; i++)
                for (int j = 0; j < n; j++) {
                    bool iS = (mask >> i) & 1, jS = (mask >> j) & 1;
                    if (iS && !jS) fwd += E(i, j);
                    if (!iS && jS) bwd += E(i, j);
                }
            CHECK(std::abs(fwd - bwd) < 1e-10);
        }
    }
}

TEST_CASE("phi of the additive symmetrization matches for balanced matrices") {
    Rng rng(44);
    for (int t = 0; t < 15; t++) {
        Rng local = rng.fork(t);
        Mat A = random_balanced(local, 6, false);
        PerronData pd = perron(A);
        Mat M = 0.5 * (A + A.transpose());
        CHECK(std::abs(phi_exact(A, pd).phi - phi_exact(M, pd).phi) < 1e-10);
    }
}

TEST_CASE("mu expansion: uniform, near-disconnected, and lemma bounds") {
    int n = 6;
    CHECK(mu_expansion(Mat(Mat::Constant(n, n, 1.0 / n))).mu == doctest::Approx(0.0));

    // two blocks glued by epsilon mass
    double eps = 1e-3;
    Mat B = Mat::Zero(6, 6);
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            B(i, j) = (1.0 - eps) / 3;
            B(i + 3, j + 3) = (1.0 - eps) / 3;
        }
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            B(i + 3, j) = eps / 3;
            B(i, j + 3) = eps / 3;
        }
    }
    MuReport mr = mu_expansion(B);
    CHECK(mr.mu > 0.99);

    Rng rng(50);
    PerronData pd = uniform_perron(8);
    for (int t = 0; t < 30; t++) {
        Rng local = rng.fork(t);
        Mat A = random_doubly_stochastic(local, 8);
        double mu = mu_expansion(A).mu;
        double phi = phi_exact(A, pd).phi;
        CHECK(mu >= 1.0 - 2.0 * phi - 1e-9);
    }
    for (int t = 0; t < 100; t++) {
        Rng local = rng.fork(1000 + t);
        Mat A = random_doubly_stochastic(local, 6);
        Mat B2 = random_doubly_stochastic(local, 6);
        double bound = std::min(mu_expansion(A).mu, mu_expansion(B2).mu);
        CHECK(mu_expansion(Mat(A * B2)).mu <= bound + 1e-9);
    }
}

TEST_CASE("main theorem sandwich on J and rootn") {
    MainTheoremReport r1 = verify_main_theorem(Mat(Mat::Constant(8, 8, 1.0 / 8)));
    CHECK(r1.ok);
    CHECK(r1.lower == doctest::Approx(1.0 / 120));
    CHECK(r1.phi == doctest::Approx(0.5));

    MainTheoremReport r2 = verify_main_theorem(rootn(9).to_double());
    CHECK(r2.ok);
    CHECK(r2.phi == doctest::Approx(21.0 / 80).epsilon(1e-9));
}
