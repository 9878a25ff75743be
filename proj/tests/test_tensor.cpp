#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specphi/tensor.hpp"

using namespace specphi;

TEST_CASE("counterexample tensor: the printed values behave as stated") {
    Tensor T = counterexample_tensor();
    CHECK(T.is_one_line_stochastic(1e-12));
    CHECK_FALSE(is_two_line_stochastic(T).has_value());

    Vec p(2), q(2);
    p << 0.2, 0.8;
    q << 0.6, 0.4;
    CHECK(fixed_point_residual(T, p) <= 1e-9);
    CHECK(fixed_point_residual(T, q) <= 1e-9);

    // iteration started near (0.2, 0.8) stays in that basin or reports
    // a residual-certified point; both printed points are genuine
    Vec p0(2);
    p0 << 0.19, 0.81;
    FixedPointReport rep = fixed_point_iterate(T, p0, 1e-12, 100000);
    CHECK(rep.residual <= 1e-8);
}

TEST_CASE("step: uniform history, point masses, counterexample history") {
    Tensor T = counterexample_tensor();
    SUBCASE("point-mass history picks out a fiber") {
        Vec d1(2), d2(2), d3(2);
        d1 << 1, 0;
        d2 << 0, 1;
        d3 << 1, 0;
        Vec out = step(T, {d1, d2, d3});
        CHECK(out(0) == doctest::Approx(T.at({0, 0, 1, 0})));
        CHECK(out(1) == doctest::Approx(T.at({1, 0, 1, 0})));
    }
    SUBCASE("fixed point history reproduces the distribution") {
        Vec p(2);
        p << 0.2, 0.8;
        Vec out = step(T, {p, p, p});
        CHECK(out(0) == doctest::Approx(0.2).epsilon(1e-10));
        CHECK(out(1) == doctest::Approx(0.8).epsilon(1e-10));
    }
    SUBCASE("2-line stochastic with uniform history stays uniform") {
        Rng rng(91);
        Tensor R = random_two_line_stochastic(rng, 3, 4);
        Vec u = Vec::Constant(4, 0.25);
        Vec out = step(R, {u, u});
        for (int i = 0; i < 4; i++) CHECK(out(i) == doctest::Approx(0.25).epsilon(1e-9));
    }
    SUBCASE("shape errors") {
        Vec u = Vec::Constant(2, 0.5);
        CHECK_THROWS_AS(step(T, {u, u}), ShapeMismatch);
    }
}

TEST_CASE("two-line detection") {
    Rng rng(92);
    SUBCASE("uniform tensor: every input qualifies, first returned") {
        Tensor T(3, 3);
        for (size_t p = 0; p < T.size(); p++) T.flat(p) = 1.0 / 3;
        auto idx = is_two_line_stochastic(T);
        REQUIRE(idx.has_value());
        CHECK(*idx == 1);
    }
    SUBCASE("broadcast doubly stochastic matrix qualifies") {
        // T[i,j,k] = A(i,j) / 1 broadcast over k is 2-line stochastic: the
        // version normalized over k keeps axis sums
        Tensor T(3, 2);
        Mat A(2, 2);
        A << 0.3, 0.7, 0.7, 0.3;
        for (int i = 0; i < 2; i++)
            for (int j = 0; j < 2; j++)
                for (int k = 0; k < 2; k++) T.at({i, j, k}) = A(i, j);
        auto idx = is_two_line_stochastic(T);
        REQUIRE(idx.has_value());
        CHECK(*idx == 1);
    }
    SUBCASE("random sinkhorn tensors qualify on input 1") {
        for (int t = 0; t < 10; t++) {
            Tensor T = random_two_line_stochastic(rng, 3, 4);
            CHECK(T.is_one_line_stochastic(1e-10));
            auto idx = is_two_line_stochastic(T, 1e-10);
            REQUIRE(idx.has_value());
        }
    }
}

TEST_CASE("probability closure and positivity propagation") {
    Rng rng(93);
    for (int t = 0; t < 1000; t++) {
        Rng local = rng.fork(t);
        int k = 3 + static_cast<int>(local.below(2));
        int n = 2 + static_cast<int>(local.below(4));
        // random 1-line stochastic tensor
        Tensor T(k, n);
        size_t tails = T.size() / n;
        for (size_t tail = 0; tail < tails; tail++) {
            double s = 0;
            std::vector<double> col(n);
            for (int i = 0; i < n; i++) {
                col[i] = local.uniform(0.01, 1.0);
                s += col[i];
            }
            for (int i = 0; i < n; i++) T.flat(tail + i * tails) = col[i] / s;
        }
        std::vector<Vec> hist;
        for (int m = 0; m < k - 1; m++) {
            Vec h = Vec::Zero(n);
            double s = 0;
            for (int i = 0; i < n; i++) {
                h(i) = local.uniform();
                s += h(i);
            }
            hist.push_back(h / s);
        }
        Vec out = step(T, hist);
        CHECK(std::abs(out.sum() - 1.0) <= 1e-12);
        for (int i = 0; i < n; i++) CHECK(out(i) >= 0.0);
        // positive tensor, nonzero history => strictly positive output
        for (int i = 0; i < n; i++) CHECK(out(i) > 0.0);
    }
}

TEST_CASE("induced matrix is doubly stochastic and certifies fixed points") {
    Rng rng(94);
    for (int t = 0; t < 20; t++) {
        Rng local = rng.fork(t);
        Tensor T = random_two_line_stochastic(local, 3, 4);
        Vec q(4);
        double s = 0;
        for (int i = 0; i < 4; i++) {
            q(i) = local.uniform(0.05, 1.0);
            s += q(i);
        }
        q /= s;
        Mat A = induced_matrix(T, q);
        for (int i = 0; i < 4; i++) {
            CHECK(A.row(i).sum() == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(A.col(i).sum() == doctest::Approx(1.0).epsilon(1e-10));
        }
        CHECK(A.minCoeff() > 0.0);

        FixedPointReport rep = fixed_point_iterate(T, q, 1e-13, 100000);
        Mat Afix = induced_matrix(T, rep.p);
        CHECK((Afix * rep.p - rep.p).lpNorm<1>() <= 1e-9);
    }
}

TEST_CASE("positive 2-line stochastic tensors converge to uniform") {
    Rng rng(95);
    for (int t = 0; t < 25; t++) {
        Rng local = rng.fork(t);
        Tensor T = random_two_line_stochastic(local, 3, 4);
        for (int s = 0; s < 4; s++) {
            Vec p0 = Vec::Zero(4);
            double tot = 0;
            for (int i = 0; i < 4; i++) {
                p0(i) = local.uniform(0.05, 1.0);
                tot += p0(i);
            }
            p0 /= tot;
            FixedPointReport rep = fixed_point_iterate(T, p0, 1e-12, 200000);
            CHECK(rep.converged);
            CHECK((rep.p - Vec::Constant(4, 0.25)).lpNorm<1>() <= 1e-8);
        }
    }
}

TEST_CASE("grid search finds no second fixed point for positive 2-line 3-tensors") {
    Rng rng(96);
    for (int t = 0; t < 10; t++) {
        Rng local = rng.fork(t);
        Tensor T = random_two_line_stochastic(local, 3, 2);
        for (int g = 0; g <= 1000; g++) {
            double x = g / 1000.0;
            Vec p(2);
            p << x, 1.0 - x;
            if (fixed_point_residual(T, p) <= 1e-6) CHECK(std::abs(x - 0.5) <= 1e-2);
        }
    }
}

TEST_CASE("uniform start on a 2-line tensor needs no iterations") {
    Rng rng(97);
    Tensor T = random_two_line_stochastic(rng, 4, 3);
    Vec u = Vec::Constant(3, 1.0 / 3);
    FixedPointReport rep = fixed_point_iterate(T, u, 1e-12, 10);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    CHECK(rep.residual <= 1e-12);
}
