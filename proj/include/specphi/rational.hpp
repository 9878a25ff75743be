#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <string>
#include <vector>

#include "specphi/common.hpp"

namespace specphi {

using Rational = mpq_class;

// mpq_class(a, b) keeps the raw pair; equality needs the canonical form
inline Rational ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Dense square matrix over exact rationals. Used by the constructions
// whose certificates (double stochasticity, A^k = J, nilpotency, the
// explicit Schur factors) hold as identities rather than to tolerance.
class RMat {
  public:
    RMat() = default;
    explicit RMat(int n) : n_(n), e_(static_cast<size_t>(n) * n, Rational(0)) {}

    int n() const { return n_; }
    Rational& operator()(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
    const Rational& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

    static RMat identity(int n) {
        RMat I(n);
        for (int i = 0; i < n; i++) I(i, i) = 1;
        return I;
    }
    // all-ones matrix divided by n
    static RMat uniform(int n) {
        RMat J(n);
        Rational v(1, n);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) J(i, j) = v;
        return J;
    }

    RMat operator*(const RMat& o) const;
    RMat operator-(const RMat& o) const;
    RMat operator+(const RMat& o) const;
    RMat transpose() const;
    RMat pow(long k) const;
    bool operator==(const RMat& o) const { return n_ == o.n_ && e_ == o.e_; }

    bool is_zero() const;
    bool is_nonnegative() const;
    Rational row_sum(int i) const;
    Rational col_sum(int j) const;
    bool is_doubly_stochastic() const;  // exact
    Rational trace() const;
    Rational min_entry() const;

    // exact rank over Q by Gaussian elimination
    int rank() const;

    Eigen::MatrixXd to_double() const;

  private:
    int n_ = 0;
    std::vector<Rational> e_;
};

std::string to_string(const Rational& q);

}  // namespace specphi
