#include "specphi/decimal.hpp"

#include <cstdlib>

namespace specphi {

std::string Dec::str(int digits) const {
    if (digits <= 0) digits = static_cast<int>(prec() / 3.32) - 2;
    char* s = nullptr;
    // %.*Rg keeps the output round-trippable at the requested digits
    if (mpfr_asprintf(&s, "%.*Rg", digits, v_) < 0) throw SpecphiError("mpfr_asprintf failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

DMat::DMat(int n, mpfr_prec_t prec) : n_(n), prec_(prec) {
    e_.reserve(static_cast<size_t>(n) * n);
    for (size_t i = 0; i < static_cast<size_t>(n) * n; i++) e_.emplace_back(0.0, prec);
}

DMat DMat::identity(int n, mpfr_prec_t prec) {
    DMat I(n, prec);
    for (int i = 0; i < n; i++) mpfr_set_si(I(i, i).raw(), 1, MPFR_RNDN);
    return I;
}

DMat DMat::mul(const DMat& o) const {
    if (n_ != o.n_) throw ShapeMismatch("decimal matrix product: size mismatch");
    DMat r(n_, prec_);
    for (int i = 0; i < n_; i++)
        for (int j = 0; j < n_; j++) {
            mpfr_ptr acc = r(i, j).raw();
            for (int k = 0; k < n_; k++)
                mpfr_fma(acc, (*this)(i, k).raw(), o(k, j).raw(), acc, MPFR_RNDN);
        }
    return r;
}

DMat DMat::mul_persym(const DMat& o) const {
    if (n_ != o.n_) throw ShapeMismatch("decimal matrix product: size mismatch");
    DMat r(n_, prec_);
    // entry (i,j) with i + j <= n-1 (0-based) is in the closed half;
    // the mirror of (i,j) is (n-1-j, n-1-i)
    for (int i = 0; i < n_; i++)
        for (int j = 0; j + i <= n_ - 1; j++) {
            mpfr_ptr acc = r(i, j).raw();
            for (int k = 0; k < n_; k++)
                mpfr_fma(acc, (*this)(i, k).raw(), o(k, j).raw(), acc, MPFR_RNDN);
            if (i + j < n_ - 1) r(n_ - 1 - j, n_ - 1 - i) = r(i, j);
        }
    return r;
}

Dec DMat::trace_product(const DMat& a, const DMat& b) {
    Dec t(0.0, a.prec_);
    for (int i = 0; i < a.n_; i++)
        for (int j = 0; j < a.n_; j++)
            mpfr_fma(t.raw(), a(i, j).raw(), b(j, i).raw(), t.raw(), MPFR_RNDN);
    return t;
}

Dec DMat::trace() const {
    Dec t(0.0, prec_);
    for (int i = 0; i < n_; i++) t += (*this)(i, i);
    return t;
}

Dec DMat::min_entry() const {
    Dec m = e_.at(0);
    for (const auto& x : e_)
        if (x < m) m = x;
    return m;
}

bool DMat::is_persym() const {
    for (int i = 0; i < n_; i++)
        for (int j = 0; j + i < n_ - 1; j++)
            if (!((*this)(i, j) == (*this)(n_ - 1 - j, n_ - 1 - i))) return false;
    return true;
}

Eigen::MatrixXd DMat::to_double() const {
    Eigen::MatrixXd m(n_, n_);
    for (int i = 0; i < n_; i++)
        for (int j = 0; j < n_; j++) m(i, j) = (*this)(i, j).to_double();
    return m;
}

DMat dmat_pow_persym(const DMat& base, long k) {
    if (k <= 0) return DMat::identity(base.n(), base.prec());
    DMat result = base;
    long msb = 63;
    while (!((k >> msb) & 1)) msb--;
    for (long b = msb - 1; b >= 0; b--) {
        result = result.mul_persym(result);
        if ((k >> b) & 1) result = result.mul_persym(base);
    }
    return result;
}

Dec dmat_trace_pow(const DMat& base, long k) {
    if (k == 1) return base.trace();
    long b = k / 2;
    DMat pb = dmat_pow_persym(base, b);
    if (k % 2 == 0) return DMat::trace_product(pb, pb);
    DMat pa = pb.mul_persym(base);
    return DMat::trace_product(pa, pb);
}

}  // namespace specphi
