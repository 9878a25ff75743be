#pragma once

#include <mpfr.h>

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "specphi/common.hpp"

namespace specphi {

inline mpfr_prec_t bits_for_digits(int digits) {
    return static_cast<mpfr_prec_t>(digits * 3.3219280948873623) + 24;
}

// RAII wrapper over mpfr_t. Precision is fixed at construction; all
// operations round to the precision of the destination.
class Dec {
  public:
    Dec() { mpfr_init2(v_, 64); }
    explicit Dec(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    Dec(double x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    Dec(long x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Dec(const std::string& s, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw UsageError("unparseable decimal literal: " + s);
    }
    Dec(const Dec& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Dec(Dec&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }
    Dec& operator=(const Dec& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Dec& operator=(Dec&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Dec() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string str(int digits = 0) const;

    friend Dec operator+(const Dec& a, const Dec& b) {
        Dec r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Dec operator-(const Dec& a, const Dec& b) {
        Dec r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Dec operator*(const Dec& a, const Dec& b) {
        Dec r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Dec operator/(const Dec& a, const Dec& b) {
        Dec r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    Dec operator-() const {
        Dec r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Dec& operator+=(const Dec& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Dec& operator-=(const Dec& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Dec& operator*=(const Dec& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    friend bool operator<(const Dec& a, const Dec& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Dec& a, const Dec& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Dec& a, const Dec& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Dec& a, const Dec& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Dec& a, const Dec& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    bool is_negative() const { return mpfr_sgn(v_) < 0; }
    bool is_zero() const { return mpfr_zero_p(v_); }

    Dec abs() const {
        Dec r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    static Dec exp(const Dec& x) {
        Dec r(x.prec());
        mpfr_exp(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    static Dec log(const Dec& x) {
        Dec r(x.prec());
        mpfr_log(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    // x^(1/k), x > 0
    static Dec rootn(const Dec& x, unsigned long k) {
        Dec r(x.prec());
#if MPFR_VERSION_MAJOR >= 4
        mpfr_rootn_ui(r.v_, x.v_, k, MPFR_RNDN);
#else
        mpfr_root(r.v_, x.v_, k, MPFR_RNDN);
#endif
        return r;
    }
    static Dec pow_si(const Dec& x, long k) {
        Dec r(x.prec());
        mpfr_pow_si(r.v_, x.v_, k, MPFR_RNDN);
        return r;
    }

  private:
    mpfr_t v_;
};

// Dense square decimal matrix. Only what the Chet pipeline needs.
class DMat {
  public:
    DMat() = default;
    DMat(int n, mpfr_prec_t prec);

    int n() const { return n_; }
    mpfr_prec_t prec() const { return prec_; }
    Dec& operator()(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
    const Dec& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

    static DMat identity(int n, mpfr_prec_t prec);

    // Plain dense product.
    DMat mul(const DMat& o) const;
    // Product of two commuting matrices that are symmetric about the
    // anti-diagonal (all powers of one such matrix are); computes only
    // the closed half and mirrors the rest.
    DMat mul_persym(const DMat& o) const;
    // tr(a*b) without forming the product
    static Dec trace_product(const DMat& a, const DMat& b);

    Dec trace() const;
    Dec min_entry() const;
    bool is_persym() const;
    Eigen::MatrixXd to_double() const;

  private:
    int n_ = 0;
    mpfr_prec_t prec_ = 64;
    std::vector<Dec> e_;
};

// k-th power by binary powering with the persymmetric kernel.
DMat dmat_pow_persym(const DMat& base, long k);

// tr(base^k) splitting the power as ceil(k/2) + floor(k/2).
Dec dmat_trace_pow(const DMat& base, long k);

}  // namespace specphi
