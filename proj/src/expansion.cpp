#include "specphi/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "specphi/spectra.hpp"

namespace specphi {

std::string to_string(PhiMethod m) {
    switch (m) {
        case PhiMethod::Exact: return "exact";
        case PhiMethod::IntervalScan: return "interval-scan";
        case PhiMethod::WitnessOnly: return "witness-only";
    }
    return "?";
}

namespace {

void check_cut(int n, const std::vector<int>& S) {
    if (S.empty()) throw EmptyCut();
    if (static_cast<int>(S.size()) >= n) throw FullCut();
}

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Gray-code walk over all subsets of {1..n-1}; visit(S) is called after
// every single-vertex flip with S kept current in inS/members bookkeeping.
template <typename Flip, typename Visit>
void gray_walk(int n, Flip&& flip, Visit&& visit) {
    const uint64_t total = 1ULL << (n - 1);
    for (uint64_t c = 1; c < total; c++) {
        int bit = std::countr_zero(c);
        flip(bit + 1);  // vertices 1..n-1
        visit();
    }
}

}  // namespace

double phi_cut(const Mat& R, const PerronData& pd, const std::vector<int>& S) {
    const int n = static_cast<int>(R.rows());
    check_cut(n, S);
    std::vector<char> inS(n, 0);
    for (int i : S) inS[i] = 1;
    double num = 0, den = 0;
    for (int i : S) {
        double rowmass = 0, rowall = 0;
        for (int j = 0; j < n; j++) {
            double e = pd.u(i) * R(i, j) * pd.v(j);
            rowall += e;
            if (!inS[j]) rowmass += e;
        }
        num += rowmass;
        den += rowall;
    }
    return num / den;
}

Rational phi_cut(const RMat& A, const std::vector<int>& S) {
    const int n = A.n();
    check_cut(n, S);
    std::vector<char> inS(n, 0);
    for (int i : S) inS[i] = 1;
    Rational num(0), den(0);
    for (int i : S) {
        for (int j = 0; j < n; j++) {
            den += A(i, j);
            if (!inS[j]) num += A(i, j);
        }
    }
    return num / den;
}

namespace {

// shared enumeration engine; W = double or Rational
template <typename W, typename MassFn, typename WeightFn>
struct GrayState {
    int n;
    std::vector<char> inS;
    W mass;   // sum over (i in S, j notin S) of E(i,j)
    W wS;     // weight of S
    MassFn E;
    WeightFn wt;

    GrayState(int n_, MassFn e, WeightFn w) : n(n_), inS(n_, 0), mass(0), wS(0), E(e), wt(w) {}

    void flip(int x) {
        if (!inS[x]) {
            for (int j = 0; j < n; j++) {
                if (j == x) continue;
                if (!inS[j])
                    mass += E(x, j);
                else
                    mass -= E(j, x);
            }
            inS[x] = 1;
            wS += wt(x);
        } else {
            inS[x] = 0;
            for (int j = 0; j < n; j++) {
                if (j == x) continue;
                if (!inS[j])
                    mass -= E(x, j);
                else
                    mass += E(j, x);
            }
            wS -= wt(x);
        }
    }

    std::vector<int> members(bool complement) const {
        std::vector<int> m;
        for (int i = 0; i < n; i++)
            if (static_cast<bool>(inS[i]) != complement) m.push_back(i);
        return m;
    }
};

}  // namespace

ExpansionReport phi_exact(const Mat& R, const PerronData& pd, int limit) {
    const int n = static_cast<int>(R.rows());
    if (n > limit) throw TooLarge("phi_exact: n exceeds the enumeration limit");
    // Eulerian weights E = Du R Dv
    Mat E(n, n);
    Vec w(n);
    double total = 0;
    for (int i = 0; i < n; i++) {
        w(i) = pd.u(i) * pd.v(i);
        total += w(i);
        for (int j = 0; j < n; j++) E(i, j) = pd.u(i) * R(i, j) * pd.v(j);
    }
    const double half = 0.5 * total + kHalfSlack;

    auto mass_at = [&](int i, int j) { return E(i, j); };
    auto weight_at = [&](int i) { return w(i); };
    GrayState<double, decltype(mass_at), decltype(weight_at)> st(n, mass_at, weight_at);

    double best = std::numeric_limits<double>::infinity();
    double best_weight = 0;
    std::vector<int> best_members;
    long examined = 0;
    const double tie_eps = 1e-14;

    auto consider = [&](double phi, double weight, bool complement) {
        examined++;
        if (phi > best + tie_eps) return;
        std::vector<int> m = st.members(complement);
        if (phi < best - tie_eps ||
            (weight < best_weight - kHalfSlack) ||
            (std::abs(weight - best_weight) <= kHalfSlack && lex_less(m, best_members))) {
            best = std::min(best, phi);
            best_weight = weight;
            best_members = std::move(m);
        }
    };

    gray_walk(
        n, [&](int x) { st.flip(x); },
        [&]() {
            double wC = total - st.wS;
            if (st.wS <= half) consider(st.mass / st.wS, st.wS, false);
            if (wC <= half) consider(st.mass / wC, wC, true);
        });

    ExpansionReport rep;
    rep.method = PhiMethod::Exact;
    rep.cuts_examined = examined;
    rep.argmin.members = best_members;
    rep.argmin.weight = best_weight;
    // recompute from scratch on the winner so the reported value does not
    // carry Gray-walk accumulation error
    rep.phi = phi_cut(R, pd, best_members);
    return rep;
}

RExpansionReport phi_exact(const RMat& A, int limit) {
    const int n = A.n();
    if (n > limit) throw TooLarge("phi_exact: n exceeds the enumeration limit");
    if (!A.is_doubly_stochastic())
        throw UsageError("rational phi_exact requires a doubly stochastic matrix");
    Rational half = ratio(n, 2);  // weights are 1 each

    auto mass_at = [&](int i, int j) -> const Rational& { return A(i, j); };
    auto weight_at = [&](int) { return Rational(1); };
    GrayState<Rational, decltype(mass_at), decltype(weight_at)> st(n, mass_at, weight_at);

    Rational best(-1);
    Rational best_weight(0);
    std::vector<int> best_members;
    long examined = 0;

    auto consider = [&](const Rational& mass, const Rational& weight, bool complement) {
        examined++;
        Rational phi = mass / weight;
        if (best >= 0 && phi > best) return;
        std::vector<int> m = st.members(complement);
        if (best < 0 || phi < best || weight < best_weight ||
            (weight == best_weight && lex_less(m, best_members))) {
            best = phi;
            best_weight = weight;
            best_members = std::move(m);
        }
    };

    gray_walk(
        n, [&](int x) { st.flip(x); },
        [&]() {
            Rational wC = Rational(n) - st.wS;
            if (st.wS <= half) consider(st.mass, st.wS, false);
            if (wC <= half) consider(st.mass, wC, true);
        });

    RExpansionReport rep;
    rep.phi = best;
    rep.cuts_examined = examined;
    rep.argmin.members = best_members;
    rep.argmin.weight = best_weight.get_d();
    return rep;
}

ExpansionReport phi_interval_scan(const Mat& R, const PerronData& pd) {
    const int n = static_cast<int>(R.rows());
    Mat E(n, n);
    Vec w(n);
    double total = 0;
    for (int i = 0; i < n; i++) {
        w(i) = pd.u(i) * pd.v(i);
        total += w(i);
        for (int j = 0; j < n; j++) E(i, j) = pd.u(i) * R(i, j) * pd.v(j);
    }
    const double half = 0.5 * total + kHalfSlack;

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_members;
    double best_weight = 0;
    long examined = 0;

    std::vector<char> inS(n, 0);
    for (int start = 0; start < n; start++) {
        std::fill(inS.begin(), inS.end(), 0);
        double mass = 0, wS = 0;
        for (int len = 1; len < n; len++) {
            int x = (start + len - 1) % n;
            for (int j = 0; j < n; j++) {
                if (j == x) continue;
                if (!inS[j])
                    mass += E(x, j);
                else
                    mass -= E(j, x);
            }
            inS[x] = 1;
            wS += w(x);
            if (wS > half) continue;
            examined++;
            double phi = mass / wS;
            if (phi < best) {
                best = phi;
                best_weight = wS;
                best_members.clear();
                for (int i = 0; i < n; i++)
                    if (inS[i]) best_members.push_back(i);
            }
        }
    }

    if (best_members.empty()) throw SpecphiError("phi_interval_scan: no admissible interval");
    ExpansionReport rep;
    rep.method = PhiMethod::WitnessOnly;
    rep.cuts_examined = examined;
    rep.argmin.members = best_members;
    rep.argmin.weight = best_weight;
    rep.phi = phi_cut(R, pd, best_members);
    return rep;
}

namespace {

// exact certificate for rational doubly stochastic A: all nontrivial
// eigenvalues are 0 iff (A - J)^n = 0
bool nilpotent_certificate(const RMat& A) {
    const int n = A.n();
    RMat B = A - RMat::uniform(n);
    int k = 1;
    while (k < n) {
        B = B * B;
        k *= 2;
        if (B.is_zero()) return true;
    }
    return B.is_zero();
}

}  // namespace

GammaReport gamma(const Mat& A, int limit) {
    const int n = static_cast<int>(A.rows());
    if (!is_doubly_stochastic(A, 1e-9)) throw UsageError("gamma: matrix not doubly stochastic");
    if (!is_irreducible(A)) throw NotIrreducible();
    GammaReport g;
    Spectrum s = spectrum(A);
    double re2 = s.eigenvalues.at(1).real() / s.eigenvalues.at(0).real();
    if (re2 >= 1.0 - 1e-12) throw DegenerateGap();
    g.delta = 1.0 - re2;
    PerronData pd = uniform_perron(n);
    if (n <= limit) {
        ExpansionReport er = phi_exact(A, pd, limit);
        g.phi = er.phi;
        g.phi_method = PhiMethod::Exact;
    } else {
        ExpansionReport er = phi_interval_scan(A, pd);
        g.phi = er.phi;
        g.phi_method = PhiMethod::WitnessOnly;
    }
    g.gamma = g.phi / g.delta;
    return g;
}

GammaReport gamma(const RMat& A, int limit) {
    const int n = A.n();
    if (!A.is_doubly_stochastic()) throw UsageError("gamma: matrix not doubly stochastic");
    if (!is_irreducible(A)) throw NotIrreducible();
    GammaReport g;
    if (nilpotent_certificate(A)) {
        g.delta = 1.0;
        g.delta_certified = true;
    } else {
        Spectrum s = spectrum(A.to_double());
        double re2 = s.eigenvalues.at(1).real() / s.eigenvalues.at(0).real();
        if (re2 >= 1.0 - 1e-12) throw DegenerateGap();
        g.delta = 1.0 - re2;
    }
    if (n <= limit) {
        RExpansionReport er = phi_exact(A, limit);
        g.phi = er.phi.get_d();
        g.phi_method = PhiMethod::Exact;
    } else {
        PerronData pd = uniform_perron(n);
        ExpansionReport er = phi_interval_scan(A.to_double(), pd);
        g.phi = er.phi;
        g.phi_method = PhiMethod::WitnessOnly;
    }
    g.gamma = g.phi / g.delta;
    return g;
}

SubmultiplicativityReport submultiplicativity_check(const Mat& R, const PerronData& pd, int kmax,
                                                    double tol) {
    SubmultiplicativityReport rep;
    ExpansionReport base = phi_exact(R, pd);
    rep.phi_1 = base.phi;
    Mat acc = R;
    for (int k = 1; k <= kmax; k++) {
        if (k > 1) acc = acc * R;
        ExpansionReport ek = phi_exact(acc, pd);
        rep.phi_k.push_back(ek.phi);
        double slack = ek.phi - k * base.phi;
        rep.worst_power_slack = std::max(rep.worst_power_slack, slack);
        if (slack > tol) rep.ok = false;
        if (k > 1) {
            // cut-wise inequality phi_S(R B) <= phi_S(R) + phi_S(B) with
            // B = R^(k-1), on the argmin cut of R^k
            Mat B = Mat::Identity(R.rows(), R.cols());
            for (int j = 0; j < k - 1; j++) B = B * R;
            const auto& S = ek.argmin.members;
            double cw = phi_cut(acc, pd, S) - phi_cut(R, pd, S) - phi_cut(B, pd, S);
            rep.worst_cutwise_slack = std::max(rep.worst_cutwise_slack, cw);
            if (cw > tol) rep.ok = false;
        }
    }
    return rep;
}

MuReport mu_expansion(const Mat& A, int limit) {
    const int n = static_cast<int>(A.rows());
    if (n > limit) throw TooLarge("mu_expansion: n exceeds the enumeration limit");
    if (!is_doubly_stochastic(A, 1e-9))
        throw UsageError("mu_expansion: matrix not doubly stochastic");

    std::vector<double> colsum(n, 0.0);  // (A 1_S)_i
    std::vector<char> inS(n, 0);
    int k = 0;
    double best = -1;
    std::vector<int> best_members;
    long examined = 0;

    auto mu_of = [&](int kk) {
        double s = 0;
        for (int i = 0; i < n; i++)
            s += std::abs(colsum[i] / kk - (1.0 - colsum[i]) / (n - kk));
        return 0.5 * s;
    };

    gray_walk(
        n,
        [&](int x) {
            if (!inS[x]) {
                inS[x] = 1;
                k++;
                for (int i = 0; i < n; i++) colsum[i] += A(i, x);
            } else {
                inS[x] = 0;
                k--;
                for (int i = 0; i < n; i++) colsum[i] -= A(i, x);
            }
        },
        [&]() {
            // mu_S = mu_Sc, so reporting the side of size <= n/2 covers all
            bool complement = 2 * k > n;
            examined++;
            double m = mu_of(k);  // value is side-independent
            if (m > best + 1e-14) {
                best = m;
                best_members.clear();
                for (int i = 0; i < n; i++)
                    if (static_cast<bool>(inS[i]) != complement) best_members.push_back(i);
            } else if (m > best - 1e-14) {
                std::vector<int> mm;
                for (int i = 0; i < n; i++)
                    if (static_cast<bool>(inS[i]) != complement) mm.push_back(i);
                if (lex_less(mm, best_members)) best_members = std::move(mm);
            }
        });

    MuReport rep;
    rep.mu = best;
    rep.argmax.members = best_members;
    rep.argmax.weight = static_cast<double>(best_members.size());
    rep.cuts_examined = examined;
    return rep;
}

MainTheoremReport verify_main_theorem(const Mat& R, double slack, int limit) {
    const int n = static_cast<int>(R.rows());
    PerronData pd = perron(R);
    Mat R1 = normalize_pf(R, pd);
    PerronData pd1 = perron(R1);
    MainTheoremReport rep;
    rep.delta = spectral_gap(R);
    rep.phi = phi_exact(R1, pd1, limit).phi;
    rep.lower = rep.delta / (15.0 * n);
    rep.upper = std::sqrt(2.0 * rep.delta);
    rep.ok = (rep.lower <= rep.phi + slack) && (rep.phi <= rep.upper + slack);
    return rep;
}

}  // namespace specphi
