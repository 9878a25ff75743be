#include "specphi/rational.hpp"

namespace specphi {

RMat RMat::operator*(const RMat& o) const {
    if (n_ != o.n_) throw ShapeMismatch("rational matrix product: size mismatch");
    RMat r(n_);
    Rational t;
    for (int i = 0; i < n_; i++) {
        for (int k = 0; k < n_; k++) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < n_; j++) {
                const Rational& b = o(k, j);
                if (b == 0) continue;
                t = a * b;
                r(i, j) += t;
            }
        }
    }
    return r;
}

RMat RMat::operator-(const RMat& o) const {
    RMat r(n_);
    for (int i = 0; i < n_; i++)
        for (int j = 0; j < n_; j++) r(i, j) = (*this)(i, j) - o(i, j);
    return r;
}

RMat RMat::operator+(const RMat& o) const {
    RMat r(n_);
    for (int i = 0; i < n_; i++)
        for (int j = 0; j < n_; j++) r(i, j) = (*this)(i, j) + o(i, j);
    return r;
}

RMat RMat::transpose() const {
    RMat r(n_);
    for (int i = 0; i < n_; i++)
        for (int j = 0; j < n_; j++) r(j, i) = (*this)(i, j);
    return r;
}

RMat RMat::pow(long k) const {
    RMat result = RMat::identity(n_);
    RMat base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

bool RMat::is_zero() const {
    for (const auto& x : e_)
        if (x != 0) return false;
    return true;
}

bool RMat::is_nonnegative() const {
    for (const auto& x : e_)
        if (x < 0) return false;
    return true;
}

Rational RMat::row_sum(int i) const {
    Rational s(0);
    for (int j = 0; j < n_; j++) s += (*this)(i, j);
    return s;
}

Rational RMat::col_sum(int j) const {
    Rational s(0);
    for (int i = 0; i < n_; i++) s += (*this)(i, j);
    return s;
}

bool RMat::is_doubly_stochastic() const {
    if (!is_nonnegative()) return false;
    for (int i = 0; i < n_; i++)
        if (row_sum(i) != 1 || col_sum(i) != 1) return false;
    return true;
}

Rational RMat::trace() const {
    Rational s(0);
    for (int i = 0; i < n_; i++) s += (*this)(i, i);
    return s;
}

Rational RMat::min_entry() const {
    Rational m = e_.at(0);
    for (const auto& x : e_)
        if (x < m) m = x;
    return m;
}

int RMat::rank() const {
    std::vector<Rational> a = e_;
    auto at = [&](int i, int j) -> Rational& { return a[static_cast<size_t>(i) * n_ + j]; };
    int rank = 0;
    for (int col = 0; col < n_ && rank < n_; col++) {
        int piv = -1;
        for (int i = rank; i < n_; i++)
            if (at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < n_; j++) std::swap(at(piv, j), at(rank, j));
        Rational inv = 1 / at(rank, col);
        for (int i = rank + 1; i < n_; i++) {
            if (at(i, col) == 0) continue;
            Rational f = at(i, col) * inv;
            for (int j = col; j < n_; j++) at(i, j) -= f * at(rank, j);
        }
        rank++;
    }
    return rank;
}

Eigen::MatrixXd RMat::to_double() const {
    Eigen::MatrixXd m(n_, n_);
    for (int i = 0; i < n_; i++)
        for (int j = 0; j < n_; j++) m(i, j) = (*this)(i, j).get_d();
    return m;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace specphi
