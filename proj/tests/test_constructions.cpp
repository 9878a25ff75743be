#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specphi/constructions.hpp"
#include "specphi/expansion.hpp"
#include "specphi/rng.hpp"
#include "specphi/spectra.hpp"

using namespace specphi;

TEST_CASE("rootn A9 matches the printed matrix exactly") {
    RMat A = rootn(9);
    // 1/60 * {44,16,5,49,1,9} placement
    CHECK(A(0, 0) == ratio(44, 60));
    CHECK(A(0, 1) == ratio(16, 60));
    CHECK(A(1, 1) == ratio(5, 60));
    CHECK(A(1, 2) == ratio(49, 60));
    CHECK(A(1, 3) == ratio(1, 60));
    CHECK(A(8, 0) == ratio(16, 60));
    CHECK(A(8, 1) == ratio(9, 60));
    CHECK(A(8, 2) == ratio(5, 60));
    CHECK(A.is_doubly_stochastic());
    CHECK_THROWS_AS(rootn(8), NotPerfectSquare);
}

TEST_CASE("rootn(16): exact double stochasticity and invariants") {
    RMat A = rootn(16);
    CHECK(A.is_doubly_stochastic());
    RootnData d = rootn_data(16);
    CHECK(d.a + d.b == 1);
    CHECK(d.c + d.d + Rational(13) * d.e == 1);
    CHECK(d.b + d.f + Rational(14) * d.c == 1);
}

TEST_CASE("rootn schur factors are an exact identity") {
    for (int n : {4, 9, 16, 25}) {
        auto [U, T] = rootn_schur(n);
        RMat A = rootn(n);
        // U is orthogonal and U T U^T = A, all in exact rationals
        CHECK(U * U.transpose() == RMat::identity(n));
        CHECK(U * T * U.transpose() == A);
        RootnData d = rootn_data(n);
        // unitarity identities from the proof
        CHECK(ratio(1, n) + d.alpha * d.alpha + Rational(n - 2) * d.beta * d.beta == 1);
        CHECK(ratio(1, d.m) + d.alpha + Rational(n - 2) * d.beta == 0);
        CHECK(ratio(1, n) + 2 * d.alpha * d.beta + Rational(n - 3) * d.beta * d.beta == 0);
    }
    RootnData d9 = rootn_data(9);
    CHECK(d9.r == ratio(4, 5));
    CHECK(d9.beta == ratio(1, 12));
}

TEST_CASE("rootn singular values are {1, r_n x (n-2), 0}") {
    for (int n : {9, 16}) {
        Spectrum s = spectrum(rootn(n).to_double());
        RootnData d = rootn_data(n);
        double r = d.r.get_d();
        CHECK(s.singular_values.front() == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(s.singular_values.back() == doctest::Approx(0.0).epsilon(1e-8));
        for (int i = 1; i < n - 1; i++)
            CHECK(s.singular_values[i] == doctest::Approx(r).epsilon(1e-8));
    }
}

TEST_CASE("rootn quadratic constraint from the search-space lemma") {
    // (n^2-6n+8) r^2 + (-2n^2+8n-8) r + n^2-3n+2 >= 0 at r = r_n
    for (int n : {9, 16, 25, 36}) {
        Rational r = rootn_data(n).r;
        Rational q = Rational(static_cast<long>(n) * n - 6 * n + 8) * r * r +
                     Rational(-2L * n * n + 8 * n - 8) * r +
                     Rational(static_cast<long>(n) * n - 3 * n + 2);
        CHECK(q >= 0);
    }
}

TEST_CASE("rootn sensitivity: the shifted variant loses the gap") {
    RMat A = rootn_shifted(16);
    // still doubly stochastic, but lambda_2 = 1
    for (int i = 0; i < 16; i++) {
        CHECK(A.row_sum(i) == 1);
        CHECK(A.col_sum(i) == 1);
    }
    Spectrum s = spectrum(A.to_double());
    CHECK(s.eigenvalues[1].real() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("chet C5 against the closed-form coefficients") {
    // oracle: the closed forms c0 = (2r-1)/3, c1 = (5/6)r - 1/(3r),
    // c2 = (55/27)r + (2/9)/r - (20/27)/r^2 at r = 5^(-1/4), with the b
    // column forced by row sums; every matrix entry is one of these
    auto [C, d] = chet(5, PrecisionConfig::decimal(60));
    mpfr_prec_t prec = bits_for_digits(60);
    Dec one(1.0, prec);
    Dec r = Dec::rootn(one / Dec(5L, prec), 4);
    Dec c0 = (Dec(2.0, prec) * r - one) / Dec(3.0, prec);
    Dec c1 = Dec(5.0, prec) / Dec(6.0, prec) * r - one / (Dec(3.0, prec) * r);
    Dec c2 = Dec(55.0, prec) / Dec(27.0, prec) * r + Dec(2.0, prec) / (Dec(9.0, prec) * r) -
             Dec(20.0, prec) / (Dec(27.0, prec) * r * r);
    CHECK((d.c[0] - c0).abs().to_double() < 1e-45);
    CHECK((d.c[1] - c1).abs().to_double() < 1e-45);
    CHECK((d.c[2] - c2).abs().to_double() < 1e-45);
    Dec b0 = one - r;
    Dec b1 = b0 - c0, b2 = b1 - c1, b3 = b2 - c2;
    Dec b4 = one - b0 - b1 - b2 - b3;
    CHECK((C(1, 0) - b1).abs().to_double() < 1e-45);
    CHECK((C(3, 0) - b3).abs().to_double() < 1e-45);
    CHECK((C(4, 0) - b4).abs().to_double() < 1e-45);

    // the self-consistent five-decimal reference entries; the remaining
    // b-column digits in circulation disagree with the defining row sums
    CHECK(std::abs(C(0, 0).to_double() - 0.33126) < 5e-6);
    CHECK(std::abs(C(0, 1).to_double() - 0.66874) < 5e-6);
    CHECK(std::abs(C(1, 1).to_double() - 0.11249) < 5e-6);
    CHECK(std::abs(C(2, 0).to_double() - 0.15993) < 5e-6);
    CHECK(std::abs(C(3, 1).to_double() - 0.03820) < 5e-6);
    CHECK(d.nonnegative);
    CHECK(C.is_persym());
}

TEST_CASE("chet C8 reference entries") {
    auto [C, d] = chet(8, PrecisionConfig::decimal(60));
    CHECK(std::abs(C(1, 1).to_double() - 0.08100) < 5e-6);
    CHECK(std::abs(C(0, 0).to_double() - 0.25700) < 5e-6);
    CHECK(std::abs(C(0, 1).to_double() - 0.74300) < 5e-6);
    CHECK(std::abs(C(2, 0).to_double() - 0.13489) < 5e-6);
    CHECK(std::abs(C(2, 1).to_double() - 0.04112) < 5e-6);
    CHECK(std::abs(C(6, 0).to_double() - 0.06261) < 5e-6);
    // b1 and the corner are pinned by row sums instead; five-decimal
    // values 0.17601 / 0.09800 are off by 6e-6 and 3e-5
    mpfr_prec_t prec = bits_for_digits(60);
    Dec one(1.0, prec);
    Dec rowsum(0.0, prec);
    for (int j = 0; j < 8; j++) rowsum += C(1, j);
    CHECK((rowsum - one).abs().to_double() < 1e-45);
    CHECK(std::abs(C(1, 0).to_double() - 0.1760037) < 5e-7);
    CHECK(std::abs(C(7, 0).to_double() - 0.0980312) < 5e-7);
    CHECK(d.max_trace_residual < 1e-45);
    CHECK(d.corner_crosscheck < 1e-45);
}

TEST_CASE("chet analytic closed forms agree with the construction") {
    PrecisionConfig cfg = PrecisionConfig::decimal(60);
    for (int n : {6, 8, 16, 30}) {
        auto [C, d] = chet(n, cfg);
        for (int i = 0; i < 3; i++) {
            Dec an = chet_analytic(n, i, cfg);
            CHECK((an - d.c[i]).abs().to_double() < 1e-44);
        }
    }
    // appendix C16 identities: 14 c0 = 2r - 1 and 13 r c1 = (8/7) r^2 - 15/28
    mpfr_prec_t prec = bits_for_digits(60);
    Dec one(1.0, prec);
    Dec r = Dec::rootn(one / Dec(16L, prec), 15);
    Dec c0 = chet_analytic(16, 0, PrecisionConfig::decimal(60));
    CHECK((Dec(14.0, prec) * c0 - (Dec(2.0, prec) * r - one)).abs().to_double() < 1e-45);
    Dec c1 = chet_analytic(16, 1, PrecisionConfig::decimal(60));
    Dec lhs = Dec(13.0, prec) * r * c1;
    Dec rhs = Dec(8.0, prec) / Dec(7.0, prec) * r * r - Dec(15.0, prec) / Dec(28.0, prec);
    CHECK((lhs - rhs).abs().to_double() < 1e-45);
}

TEST_CASE("chet row and column sums are 1 to working precision") {
    auto [C, d] = chet(12, PrecisionConfig::decimal(50));
    for (int i = 0; i < 12; i++) {
        Dec rs(0.0, bits_for_digits(50)), cs(0.0, bits_for_digits(50));
        for (int j = 0; j < 12; j++) {
            rs += C(i, j);
            cs += C(j, i);
        }
        CHECK(std::abs(rs.to_double() - 1.0) < 1e-40);
        CHECK(std::abs(cs.to_double() - 1.0) < 1e-40);
    }
}

TEST_CASE("chet scan over a small range") {
    auto rows = chet_scan(5, 21, PrecisionConfig::decimal(60), 2);
    for (const auto& row : rows) {
        CHECK(row.precision_ok);
        CHECK(row.nonnegative);
        CHECK(row.phi_upper <= 2.0 / row.n + 1e-12);
    }
}

TEST_CASE("chet permanent identity") {
    double dev = 0;
    CHECK(chet_permanent_check(4, PrecisionConfig::decimal(40), &dev));
    CHECK(chet_permanent_check(6, PrecisionConfig::decimal(40), &dev));
    // upper-triangular sanity: permanent == det == product of diagonal is
    // covered by the n=4 case where the lower part nearly vanishes; the
    // real check is the identity above
}

TEST_CASE("debruijn k=3 matches the printed matrix and mixes in k steps") {
    RMat A = debruijn(3);
    CHECK(A.is_doubly_stochastic());
    Rational half(1, 2);
    // printed columns: column x feeds rows (2x mod 8) and (2x mod 8)+1
    for (int x = 0; x < 8; x++) {
        int y = (2 * x) % 8;
        CHECK(A(y, x) == half);
        CHECK(A(y + 1, x) == half);
    }
    CHECK(A.pow(3) == RMat::uniform(8));
    RMat B = A - RMat::uniform(8);
    // exact nilpotency certifies that every nontrivial eigenvalue is 0;
    // the dense solver can only localize a defective zero to ~eps^(1/3)
    CHECK(B.pow(3).is_zero());
    Spectrum s = spectrum(A.to_double());
    for (int i = 1; i < 8; i++) CHECK(std::abs(s.eigenvalues[i]) < 1e-4);
    int ones = 0, zeros = 0;
    for (double sv : s.singular_values) {
        if (std::abs(sv - 1) < 1e-8) ones++;
        if (std::abs(sv) < 1e-8) zeros++;
    }
    CHECK(ones == 4);
    CHECK(zeros == 4);
}

TEST_CASE("debruijn k=4 jordan census") {
    auto counts = debruijn_jordan_census(4);
    // 2^(k-1-r) blocks of size r for r in [k-1], one of size k
    CHECK(counts[1] == 4);
    CHECK(counts[2] == 2);
    CHECK(counts[3] == 1);
    CHECK(counts[4] == 1);
}

TEST_CASE("debruijn nonexpanding set") {
    for (int k : {3, 4, 5, 6}) {
        DebruijnSetReport rep = debruijn_nonexpanding_set(k);
        CHECK(rep.size == rep.count_formula);
        CHECK(rep.size <= (1L << (k - 1)));
        CHECK(rep.phi_S <= rep.bound + 1e-12);
    }
    // k=4: the bound is vacuous (2) but the actual value is <= 1
    CHECK(debruijn_nonexpanding_set(4).phi_S <= 1.0);
}

TEST_CASE("debruijn brute-force phi within the lemma bounds") {
    for (int k : {3, 4}) {
        RMat A = debruijn(k);
        RExpansionReport er = phi_exact(A, 16);
        double phi = er.phi.get_d();
        CHECK(phi >= 1.0 / (2 * k) - 1e-12);
        CHECK(phi <= 8.0 / k + 1e-12);
    }
}

TEST_CASE("klawe-vazirani matches the printed p=7 matrix") {
    RMat A = klawe_vazirani(7);
    CHECK(A.is_doubly_stochastic());
    Rational half(1, 2);
    // first column: vertex 0 -> 1 and 0 (2*0 = 0)
    CHECK(A(1, 0) == half);
    CHECK(A(0, 0) == half);
    // vertex 1 -> 2 twice (1+1 = 2 = 2*1): a weight-1 entry
    CHECK(A(2, 1) == 1);
    CHECK(A(0, 6) == half);  // 6+1 = 0 mod 7
    CHECK(A(5, 6) == half);  // 2*6 = 5 mod 7
    CHECK_THROWS_AS(klawe_vazirani(9), NotPrime);
    CHECK_THROWS_AS(klawe_vazirani(2), NotPrime);
}

TEST_CASE("klawe-vazirani p=11: gamma bounded via the half-circle spectrum") {
    RMat A = klawe_vazirani(11);
    RExpansionReport er = phi_exact(A, 16);
    Spectrum s = spectrum(A.to_double());
    double re2 = s.eigenvalues[1].real();
    CHECK(re2 <= 0.5 + 1e-8);
    double g = er.phi.get_d() / (1.0 - re2);
    CHECK(g <= er.phi.get_d() / 0.5 + 1e-8);
}

TEST_CASE("beyond-half: the printed 4x4 with gamma = 1/3") {
    RMat A = beyond_half();
    CHECK(A.is_doubly_stochastic());
    CHECK(phi_cut(A, {1, 2}) == ratio(1, 3));
    RExpansionReport er = phi_exact(A);
    CHECK(er.phi == ratio(1, 3));
    // trace is 2/3, so the spectrum is {1, 0, 0, -1/3}; Re lambda_2 = 0
    // still gives Delta = 1 and Gamma = 1/3
    CHECK(A.trace() == ratio(2, 3));
    Spectrum s = spectrum(A.to_double());
    CHECK(std::abs(s.eigenvalues[1]) < 1e-10);
    CHECK(std::abs(s.eigenvalues[2]) < 1e-10);
    CHECK(std::abs(s.eigenvalues[3] - Complex(-1.0 / 3, 0)) < 1e-10);
    // anti-diagonal symmetry A[i][j] = A[n+1-j][n+1-i]
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++) CHECK(A(i, j) == A(3 - j, 3 - i));
}

TEST_CASE("approximate-trace counterexample at n=16") {
    ApproxTraceReport rep = approx_trace_counterexample(16);
    CHECK(is_doubly_stochastic(rep.A, 1e-12));
    for (double r : rep.trace_residuals) CHECK(r < 1e-10);
    CHECK(rep.trace_last <= 1.0 + 1.0 / 16 + 1e-10);
    CHECK(rep.lambda2 ==
          doctest::Approx(1.0 - 2.0 * std::log(16.0) / 15.0).epsilon(1e-8));
}

TEST_CASE("trace conjecture search finds no violations") {
    TraceSearchReport rep = trace_conjecture_search(2, 10, 2000, 7);
    CHECK(rep.violations == 0);
    CHECK(rep.accepted > 0);

    TraceSearchReport sym = trace_conjecture_search(1, 8, 500, 7, true);
    CHECK(sym.violations == 0);

    // the zero matrix passes premise and conclusion trivially: covered by
    // construction since scaling keeps entries finite; here we just check
    // the reporting is consistent
    CHECK(rep.worst_excess <= 1e-9);
}
