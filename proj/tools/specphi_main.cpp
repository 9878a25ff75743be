#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "specphi/io.hpp"

using namespace specphi;

namespace {

int default_digits() {
    if (const char* env = std::getenv("SPECTRA_PRECISION_DIGITS")) {
        int d = std::atoi(env);
        if (d >= 20) return d;
    }
    return 100;
}

struct SummaryLine {
    int n = 0;
    bool doubly_stochastic = false;
    double lambda2 = 0;
    bool lambda2_exact_zero = false;
    double phi_witness = 0;
    std::string witness_kind;
};

void print_summary(const SummaryLine& s) {
    std::cout << "n=" << s.n << "  doubly-stochastic " << (s.doubly_stochastic ? "yes" : "NO")
              << "  lambda2=";
    if (s.lambda2_exact_zero)
        std::cout << "0 (certified)";
    else
        std::cout << s.lambda2;
    std::cout << "  phi<=" << s.phi_witness << " (" << s.witness_kind << ")\n";
}

int cmd_construct(const std::string& family, int param, int digits, const std::string& out,
                  std::string format) {
    SummaryLine sum;
    if (family == "rootn" || family == "debruijn" || family == "kv" || family == "beyond-half") {
        RMat A = family == "rootn"        ? rootn(param)
                 : family == "debruijn"   ? debruijn(param)
                 : family == "kv"         ? klawe_vazirani(param)
                                          : beyond_half();
        sum.n = A.n();
        sum.doubly_stochastic = A.is_doubly_stochastic();
        GammaReport g = gamma(A, 16);
        sum.lambda2 = 1.0 - g.delta;
        sum.lambda2_exact_zero = g.delta_certified;
        sum.phi_witness = g.phi;
        sum.witness_kind = to_string(g.phi_method);
        if (format.empty()) format = "rational-json";
        if (!out.empty()) {
            if (format == "rational-json")
                io::write_matrix_json(out, A);
            else if (format == "json")
                io::write_matrix_json(out, A.to_double());
            else if (format == "csv")
                io::write_matrix_csv(out, A.to_double());
            else
                throw UsageError("unsupported format for exact families: " + format);
        }
    } else if (family == "chet") {
        auto [C, data] = chet(param, PrecisionConfig::decimal(digits));
        sum.n = param;
        sum.doubly_stochastic = data.nonnegative;  // sums are 1 by construction
        sum.lambda2_exact_zero = false;
        sum.lambda2 = data.max_trace_residual;  // trace certificate scale
        PerronData pd = uniform_perron(param);
        sum.phi_witness = phi_interval_scan(C.to_double(), pd).phi;
        sum.witness_kind = "interval-scan";
        std::cout << "trace residual max = " << data.max_trace_residual
                  << "  min entry = " << data.min_entry
                  << (data.nonnegative ? "  (nonnegative)" : "  (NEGATIVE ENTRY)") << "\n";
        if (format.empty()) format = "decimal-json";
        if (!out.empty()) {
            if (format == "decimal-json" || format == "json")
                io::write_matrix_json(out, C, digits);
            else if (format == "csv")
                io::write_matrix_csv(out, C.to_double());
            else
                throw UsageError("unsupported format for chet: " + format);
        }
    } else if (family == "approx-trace") {
        ApproxTraceReport rep = approx_trace_counterexample(param);
        sum.n = param;
        sum.doubly_stochastic = is_doubly_stochastic(rep.A, 1e-9);
        sum.lambda2 = rep.lambda2;
        PerronData pd = uniform_perron(param);
        sum.phi_witness = phi_interval_scan(rep.A, pd).phi;
        sum.witness_kind = "interval-scan";
        if (format.empty()) format = "json";
        if (!out.empty()) {
            if (format == "json")
                io::write_matrix_json(out, rep.A);
            else if (format == "csv")
                io::write_matrix_csv(out, rep.A);
            else
                throw UsageError("unsupported format for approx-trace: " + format);
        }
    } else {
        throw UsageError("unknown family " + family);
    }
    print_summary(sum);
    return 0;
}

int cmd_analyze(const std::string& file, bool want_phi, bool want_delta, bool want_gamma,
                double mixing_eps, bool want_sigma, bool want_mu, const std::string& out) {
    io::AnyMatrix any = io::read_matrix(file);
    Mat M = any.as_double();
    const int n = any.n();
    if (!is_irreducible(M)) {
        std::cerr << "error: matrix is not irreducible\n";
        return 1;
    }
    std::ostringstream rep;
    rep.precision(12);
    rep << "{\n  \"n\": " << n;

    bool ds_exact = any.is_rational() && std::get<RMat>(any.m).is_doubly_stochastic();
    bool ds = ds_exact || is_doubly_stochastic(M, 1e-9);

    PerronData pd = ds ? uniform_perron(n) : perron(M);
    Mat R = ds ? M : normalize_pf(M, pd);
    if (!ds) pd = perron(R);

    double delta = 0, phi = 0;
    bool have_delta = false, have_phi = false;
    bool delta_certified = false;
    if (want_delta || want_gamma) {
        if (ds_exact) {
            GammaReport g = gamma(std::get<RMat>(any.m), 24);
            delta = g.delta;
            delta_certified = g.delta_certified;
        } else {
            delta = spectral_gap(R);
        }
        have_delta = true;
        rep << ",\n  \"delta\": " << delta
            << ",\n  \"delta_method\": \"" << (delta_certified ? "exact-certificate" : "dense-qr")
            << "\"";
    }
    if (want_phi || want_gamma) {
        std::string method;
        if (ds_exact && n <= 24) {
            RExpansionReport er = phi_exact(std::get<RMat>(any.m), 24);
            phi = er.phi.get_d();
            method = "exact";
            rep << ",\n  \"phi\": " << phi << ",\n  \"phi_rational\": \""
                << er.phi.get_str() << "\"";
        } else if (n <= 24) {
            ExpansionReport er = phi_exact(R, pd, 24);
            phi = er.phi;
            method = "exact";
            rep << ",\n  \"phi\": " << phi;
        } else {
            ExpansionReport er = phi_interval_scan(R, pd);
            phi = er.phi;
            method = "witness-only";
            rep << ",\n  \"phi\": " << phi;
        }
        have_phi = true;
        rep << ",\n  \"phi_method\": \"" << method << "\"";
    }
    if (want_gamma) {
        if (!have_delta || !have_phi) throw UsageError("gamma needs phi and delta");
        rep << ",\n  \"gamma\": " << phi / delta;
    }
    if (mixing_eps > 0) {
        MixingReport mr = mixing_report(R, pd, mixing_eps, 24);
        rep << ",\n  \"mixing\": " << io::mixing_report_to_json(mr);
    }
    if (want_sigma) {
        if (n > 12) throw TooLarge("sigma enumeration limited to n <= 12");
        auto [A, w] = balance(R, pd);
        NormalizedCapacityReport nc = normalized_capacity(A, w, 12);
        rep << ",\n  \"sigma\": " << nc.sigma;
    }
    if (want_mu) {
        MuReport mu = mu_expansion(M, 20);
        rep << ",\n  \"mu\": " << mu.mu;
    }
    rep << "\n}\n";
    if (!out.empty())
        io::write_file(out, rep.str());
    else
        std::cout << rep.str();
    return 0;
}

// ---- verification suites -----------------------------------------------------

struct CheckPrinter {
    int failures = 0;
    void report(const std::string& name, bool ok, double worst_slack) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "  worst-slack=" << worst_slack
                  << "\n";
        if (!ok) failures++;
    }
};

int verify_main_theorem_suite(long trials, uint64_t seed) {
    CheckPrinter out;
    Rng rng(seed);
    double worst = 0;
    bool ok = true;
    for (long t = 0; t < trials; t++) {
        Rng local = rng.fork(t);
        int n = 3 + static_cast<int>(local.below(8));
        Mat R = random_irreducible(local, n);
        MainTheoremReport r = verify_main_theorem(R);
        worst = std::max({worst, r.lower - r.phi, r.phi - r.upper});
        ok = ok && r.ok;
    }
    out.report("main-theorem sandwich (" + std::to_string(trials) + " random matrices)", ok,
               worst);
    return out.failures ? 1 : 0;
}

int verify_cheeger_buser_suite(long trials, uint64_t seed) {
    CheckPrinter out;
    Rng rng(seed);
    double worst = 0;
    bool ok = true;
    for (long t = 0; t < trials; t++) {
        Rng local = rng.fork(t);
        int n = 4 + static_cast<int>(local.below(9));
        Mat A = random_symmetric_doubly_stochastic(local, n);
        PerronData pd = uniform_perron(n);
        double phi = phi_exact(A, pd).phi;
        double delta = spectral_gap(A);
        worst = std::max({worst, delta / 2 - phi, phi - std::sqrt(2 * delta)});
        ok = ok && delta / 2 <= phi + 1e-9 && phi <= std::sqrt(2 * delta) + 1e-9;
    }
    out.report("cheeger-buser on reversible matrices", ok, worst);
    return out.failures ? 1 : 0;
}

int verify_capacity_monotone_suite(long trials, uint64_t seed) {
    CheckPrinter out;
    Rng rng(seed);
    double worst_mono = 0, worst_dev = 0;
    bool ok = true;
    for (long t = 0; t < trials; t++) {
        Rng local = rng.fork(t);
        int n = 4 + static_cast<int>(local.below(5));
        Mat A = random_balanced(local, n, false);
        PerronData pd = perron(A);
        Vec w = pd.w();
        BoundaryCondition bc;
        int usz = 2 + static_cast<int>(local.below(n - 2));
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        for (int i = n - 1; i > 0; i--) std::swap(idx[i], idx[local.below(i + 1)]);
        bc.U.assign(idx.begin(), idx.begin() + usz);
        std::sort(bc.U.begin(), bc.U.end());
        bc.a = Vec(usz);
        for (int i = 0; i < usz; i++) bc.a(i) = local.uniform();
        MonotonicityReport mr =
            capacity_monotonicity_check(A, w, bc, {0.0, 0.2, 0.4, 0.6, 0.8, 1.0});
        CapacityReport cr = capacity(A, w, bc);
        worst_mono = std::max(worst_mono, mr.worst_violation);
        worst_dev = std::max(worst_dev, cr.max_deviation);
        ok = ok && mr.monotone && cr.max_deviation <= 1e-9;
    }
    out.report("capacity monotone in |alpha|", ok, worst_mono);
    out.report("four capacity routes agree", worst_dev <= 1e-9, worst_dev);
    return out.failures ? 1 : 0;
}

int verify_mixing_brackets_suite(long trials, uint64_t seed) {
    CheckPrinter out;
    Rng rng(seed);
    bool ok = true;
    bool fill_ok = true;
    double worst = 0;
    for (long t = 0; t < trials; t++) {
        Rng local = rng.fork(t);
        int n = 4 + static_cast<int>(local.below(5));
        Mat A = random_balanced(local, n, true);
        PerronData pd = perron(A);
        double eps = 0.1;
        MixingReport mr = mixing_report(A, pd, eps);
        for (const auto& [name, iv] : mr.bounds) {
            if (!iv.brackets(mr.tau)) ok = false;
            worst = std::max({worst, iv.lower - 1 - mr.tau,
                              static_cast<double>(mr.tau) - iv.upper - 1});
        }
        ContinuousMixing cm = mixing_time_continuous(A, pd, eps);
        if (!cm.interval.brackets(cm.tau)) ok = false;
        fill_ok = fill_ok && fill_inequality_check(A);
    }
    out.report("mixing bound families bracket tau", ok, worst);
    out.report("fill inequality", fill_ok, 0.0);
    return out.failures ? 1 : 0;
}

int verify_mu_lemmas_suite(long trials, uint64_t seed) {
    CheckPrinter out;
    Rng rng(seed);
    double worst1 = 0, worst2 = 0;
    bool ok1 = true, ok2 = true;
    for (long t = 0; t < trials; t++) {
        Rng local = rng.fork(t);
        int n = 4 + static_cast<int>(local.below(5));
        Mat A = random_doubly_stochastic(local, n);
        Mat B = random_doubly_stochastic(local, n);
        PerronData pd = uniform_perron(n);
        double muA = mu_expansion(A).mu;
        double muB = mu_expansion(B).mu;
        double muAB = mu_expansion(Mat(A * B)).mu;
        double phiA = phi_exact(A, pd).phi;
        double s1 = (1.0 - 2.0 * phiA) - muA;
        double s2 = muAB - std::min(muA, muB);
        worst1 = std::max(worst1, s1);
        worst2 = std::max(worst2, s2);
        ok1 = ok1 && s1 <= 1e-9;
        ok2 = ok2 && s2 <= 1e-9;
    }
    out.report("mu >= 1 - 2 phi", ok1, worst1);
    out.report("mu(AB) <= min(mu(A), mu(B))", ok2, worst2);
    return out.failures ? 1 : 0;
}

int verify_tensor_unique_suite(long trials, uint64_t seed) {
    CheckPrinter out;
    Tensor T = counterexample_tensor();
    Vec p(2), q(2);
    p << 0.2, 0.8;
    q << 0.6, 0.4;
    double r1 = fixed_point_residual(T, p);
    double r2 = fixed_point_residual(T, q);
    out.report("counterexample fixed points", T.is_one_line_stochastic() && r1 <= 1e-9 &&
               r2 <= 1e-9, std::max(r1, r2));

    Rng rng(seed);
    bool ok = true;
    double worst = 0;
    for (long t = 0; t < trials; t++) {
        Rng local = rng.fork(t);
        Tensor R = random_two_line_stochastic(local, 3, 4);
        for (int s = 0; s < 5; s++) {
            Vec p0(4);
            double tot = 0;
            for (int i = 0; i < 4; i++) {
                p0(i) = local.uniform(0.05, 1.0);
                tot += p0(i);
            }
            p0 /= tot;
            FixedPointReport fr = fixed_point_iterate(R, p0, 1e-12, 200000);
            double d = (fr.p - Vec::Constant(4, 0.25)).lpNorm<1>();
            worst = std::max(worst, d);
            ok = ok && d <= 1e-8;
        }
    }
    out.report("random 2-line tensors converge to uniform", ok, worst);
    return out.failures ? 1 : 0;
}

int cmd_verify(const std::string& suite, long trials, uint64_t seed) {
    if (suite == "main-theorem") return verify_main_theorem_suite(trials, seed);
    if (suite == "cheeger-buser") return verify_cheeger_buser_suite(trials, seed);
    if (suite == "capacity-monotone") return verify_capacity_monotone_suite(trials, seed);
    if (suite == "mixing-brackets") return verify_mixing_brackets_suite(trials, seed);
    if (suite == "mu-lemmas") return verify_mu_lemmas_suite(trials, seed);
    if (suite == "tensor-unique") return verify_tensor_unique_suite(trials, seed);
    throw UsageError("unknown suite " + suite);
}

int cmd_scan_chet(int lo, int hi, int digits, const std::string& out, int jobs) {
    std::vector<ChetScanRow> rows = chet_scan(lo, hi, PrecisionConfig::decimal(digits), jobs);
    std::string csv = io::chet_scan_to_csv(rows);
    if (!out.empty())
        io::write_file(out, csv);
    else
        std::cout << csv;
    bool all_ok = true;
    for (const auto& r : rows) {
        if (!r.precision_ok)
            std::cerr << "n=" << r.n << ": precision exhausted\n";
        all_ok = all_ok && r.nonnegative && r.precision_ok;
    }
    std::cerr << (all_ok ? "all rows nonnegative\n" : "nonnegativity or precision failure\n");
    return all_ok ? 0 : 1;
}

int cmd_scan_trace(int k, int n, long trials, uint64_t seed, const std::string& out) {
    TraceSearchReport rep = trace_conjecture_search(k, n, trials, seed);
    std::ostringstream csv;
    csv << "trials,accepted,violations,worst_excess\n"
        << rep.trials << "," << rep.accepted << "," << rep.violations << "," << rep.worst_excess
        << "\n";
    if (!out.empty())
        io::write_file(out, csv.str());
    else
        std::cout << csv.str();
    return rep.violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edge expansion, spectral gaps, and non-expanding constructions"};
    app.require_subcommand(1);

    // construct
    auto* c = app.add_subcommand("construct", "generate a named matrix family");
    std::string family, out, format;
    int param = 0, digits = default_digits();
    c->add_option("family", family, "rootn|chet|debruijn|kv|beyond-half|approx-trace")
        ->required();
    c->add_option("param", param, "n (rootn/chet/approx-trace), k (debruijn), p (kv)");
    c->add_option("--digits", digits, "decimal digits for chet");
    c->add_option("--out", out, "output file");
    c->add_option("--format", format, "json|rational-json|decimal-json|csv");

    // analyze
    auto* a = app.add_subcommand("analyze", "compute quantities for a matrix file");
    std::string afile, aout;
    bool want_phi = false, want_delta = false, want_gamma = false, want_sigma = false,
         want_mu = false;
    double mixing_eps = 0;
    a->add_option("file", afile)->required();
    a->add_flag("--phi", want_phi);
    a->add_flag("--delta", want_delta);
    a->add_flag("--gamma", want_gamma);
    a->add_option("--mixing", mixing_eps, "epsilon for mixing time");
    a->add_flag("--sigma", want_sigma);
    a->add_flag("--mu", want_mu);
    a->add_option("--out", aout);

    // verify
    auto* v = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    long trials = 100;
    uint64_t seed = 7;
    v->add_option("suite", suite,
                   "main-theorem|cheeger-buser|capacity-monotone|mixing-brackets|mu-lemmas|"
                   "tensor-unique")
        ->required();
    v->add_option("--trials", trials);
    v->add_option("--seed", seed);

    // scan
    auto* s = app.add_subcommand("scan", "chet nonnegativity / trace-conjecture scans");
    std::string target, sout;
    int lo = 5, hi = 21, sk = 2, sn = 10;
    long strials = 10000;
    uint64_t sseed = 7;
    int sdigits = default_digits(), jobs = 1;
    s->add_option("target", target, "chet|trace-conjecture")->required();
    s->add_option("lo", lo, "chet: first n");
    s->add_option("hi", hi, "chet: last n");
    s->add_option("--digits", sdigits);
    s->add_option("--k", sk);
    s->add_option("--n", sn);
    s->add_option("--trials", strials);
    s->add_option("--seed", sseed);
    s->add_option("--out", sout);
    s->add_option("--jobs", jobs);

    // export
    auto* e = app.add_subcommand("export", "convert a matrix file between formats");
    std::string efile, eout, eformat = "csv";
    e->add_option("file", efile)->required();
    e->add_option("--format", eformat, "json|csv");
    e->add_option("--out", eout)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c->parsed()) return cmd_construct(family, param, digits, out, format);
        if (a->parsed())
            return cmd_analyze(afile, want_phi, want_delta, want_gamma, mixing_eps, want_sigma,
                               want_mu, aout);
        if (v->parsed()) return cmd_verify(suite, trials, seed);
        if (s->parsed()) {
            if (target == "chet") return cmd_scan_chet(lo, hi, sdigits, sout, jobs);
            if (target == "trace-conjecture")
                return cmd_scan_trace(sk, sn, strials, sseed, sout);
            throw UsageError("unknown scan target " + target);
        }
        if (e->parsed()) {
            io::AnyMatrix m = io::read_matrix(efile);
            if (eformat == "csv")
                io::write_matrix_csv(eout, m.as_double());
            else if (eformat == "json") {
                if (m.is_rational())
                    io::write_matrix_json(eout, std::get<RMat>(m.m));
                else if (m.is_decimal())
                    io::write_matrix_json(eout, std::get<DMat>(m.m), m.decimal_digits);
                else
                    io::write_matrix_json(eout, m.as_double());
            } else
                throw UsageError("unknown export format " + eformat);
            return 0;
        }
    } catch (const UsageError& err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return 2;
    } catch (const SpecphiError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}
