#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specphi/io.hpp"

namespace py = pybind11;
using namespace specphi;

namespace {

// python-facing entry points work on dense double matrices; the exact
// constructions are exposed both as doubles and as (num, den) pairs
py::object rmat_to_fractions(const RMat& A) {
    py::list rows;
    for (int i = 0; i < A.n(); i++) {
        py::list row;
        for (int j = 0; j < A.n(); j++) {
            const Rational& q = A(i, j);
            row.append(py::make_tuple(q.get_num().get_str(), q.get_den().get_str()));
        }
        rows.append(row);
    }
    return rows;
}

PerronData perron_of(const Mat& M) { return perron(M); }

}  // namespace

PYBIND11_MODULE(_specphi, m) {
    m.doc() = "edge expansion, spectral gaps, mixing, capacity, and tensor walks";

    py::register_exception<NotIrreducible>(m, "NotIrreducibleError");
    py::register_exception<SpecphiError>(m, "SpecphiError");

    py::class_<PerronData>(m, "PerronData")
        .def_readonly("r", &PerronData::r)
        .def_readonly("u", &PerronData::u)
        .def_readonly("v", &PerronData::v)
        .def_readonly("residual", &PerronData::residual)
        .def("kappa", &PerronData::kappa)
        .def("w", &PerronData::w);

    py::class_<Cut>(m, "Cut")
        .def_readonly("members", &Cut::members)
        .def_readonly("weight", &Cut::weight);

    py::class_<ExpansionReport>(m, "ExpansionReport")
        .def_readonly("phi", &ExpansionReport::phi)
        .def_readonly("argmin", &ExpansionReport::argmin)
        .def_readonly("cuts_examined", &ExpansionReport::cuts_examined)
        .def_property_readonly("method",
                               [](const ExpansionReport& r) { return to_string(r.method); });

    py::class_<GammaReport>(m, "GammaReport")
        .def_readonly("gamma", &GammaReport::gamma)
        .def_readonly("phi", &GammaReport::phi)
        .def_readonly("delta", &GammaReport::delta)
        .def_readonly("delta_certified", &GammaReport::delta_certified);

    py::class_<MainTheoremReport>(m, "MainTheoremReport")
        .def_readonly("delta", &MainTheoremReport::delta)
        .def_readonly("phi", &MainTheoremReport::phi)
        .def_readonly("lower", &MainTheoremReport::lower)
        .def_readonly("upper", &MainTheoremReport::upper)
        .def_readonly("ok", &MainTheoremReport::ok);

    py::class_<Interval>(m, "Interval")
        .def_readonly("lower", &Interval::lower)
        .def_readonly("upper", &Interval::upper)
        .def("brackets", &Interval::brackets);

    py::class_<MixingReport>(m, "MixingReport")
        .def_readonly("tau", &MixingReport::tau)
        .def_readonly("eps", &MixingReport::eps)
        .def_readonly("kappa", &MixingReport::kappa)
        .def_readonly("bounds", &MixingReport::bounds);

    py::class_<CapacityReport>(m, "CapacityReport")
        .def_readonly("value", &CapacityReport::value)
        .def_readonly("via_schur", &CapacityReport::via_schur)
        .def_readonly("via_pinv", &CapacityReport::via_pinv)
        .def_readonly("via_pinv_restricted", &CapacityReport::via_pinv_restricted)
        .def_readonly("max_deviation", &CapacityReport::max_deviation)
        .def_readonly("q", &CapacityReport::q);

    py::class_<Tensor>(m, "Tensor")
        .def(py::init<int, int>())
        .def_property_readonly("order", &Tensor::order)
        .def_property_readonly("dim", &Tensor::dim)
        .def("entries", [](const Tensor& t) { return t.data(); })
        .def("set_entries",
             [](Tensor& t, const std::vector<double>& e) {
                 if (e.size() != t.size()) throw ShapeMismatch("tensor entries length");
                 t.data() = e;
             })
        .def("is_one_line_stochastic", &Tensor::is_one_line_stochastic,
             py::arg("tol") = 1e-12);

    py::class_<FixedPointReport>(m, "FixedPointReport")
        .def_readonly("p", &FixedPointReport::p)
        .def_readonly("residual", &FixedPointReport::residual)
        .def_readonly("iterations", &FixedPointReport::iterations)
        .def_readonly("converged", &FixedPointReport::converged);

    // core
    m.def("is_irreducible", [](const Mat& M) { return is_irreducible(M); });
    m.def("perron", &perron_of);
    m.def("balance", [](const Mat& R) {
        PerronData pd = perron(R);
        Mat R1 = normalize_pf(R, pd);
        PerronData pd1 = perron(R1);
        return balance(R1, pd1);
    });
    m.def("lazify", &lazify);
    m.def("exp_operator",
          [](const Mat& R, double t) { return exp_operator(R, t); });

    // spectra
    m.def("eigenvalues", [](const Mat& M) {
        Spectrum s = spectrum(M);
        return s.eigenvalues;
    });
    m.def("singular_values", [](const Mat& M) {
        Spectrum s = spectrum(M);
        return s.singular_values;
    });
    m.def("spectral_gap", [](const Mat& M) { return spectral_gap(M); });

    // expansion
    m.def(
        "phi_exact",
        [](const Mat& R, int limit) {
            PerronData pd = perron(R);
            Mat R1 = normalize_pf(R, pd);
            PerronData pd1 = perron(R1);
            return phi_exact(R1, pd1, limit);
        },
        py::arg("R"), py::arg("limit") = 24);
    m.def(
        "phi_interval_scan",
        [](const Mat& R) {
            PerronData pd = perron(R);
            Mat R1 = normalize_pf(R, pd);
            PerronData pd1 = perron(R1);
            return phi_interval_scan(R1, pd1);
        },
        py::arg("R"));
    m.def(
        "gamma", [](const Mat& A, int limit) { return gamma(A, limit); }, py::arg("A"),
        py::arg("limit") = 24);
    m.def(
        "mu_expansion", [](const Mat& A, int limit) { return mu_expansion(A, limit); },
        py::arg("A"), py::arg("limit") = 20);
    m.def("verify_main_theorem",
          [](const Mat& R) { return verify_main_theorem(R); });

    // constructions (doubles plus exact fractions)
    m.def("rootn", [](int n) { return rootn(n).to_double(); });
    m.def("rootn_fractions", [](int n) { return rmat_to_fractions(rootn(n)); });
    m.def("debruijn", [](int k) { return debruijn(k).to_double(); });
    m.def("klawe_vazirani", [](int p) { return klawe_vazirani(p).to_double(); });
    m.def("beyond_half", []() { return beyond_half().to_double(); });
    m.def(
        "chet",
        [](int n, int digits) {
            auto [C, d] = chet(n, PrecisionConfig::decimal(digits));
            py::dict info;
            info["r"] = d.r.to_double();
            info["min_entry"] = d.min_entry;
            info["nonnegative"] = d.nonnegative;
            info["max_trace_residual"] = d.max_trace_residual;
            return py::make_tuple(C.to_double(), info);
        },
        py::arg("n"), py::arg("digits") = 100);

    // mixing
    m.def(
        "mixing_time",
        [](const Mat& R, double eps) {
            PerronData pd = perron(R);
            return mixing_time(R, pd, eps);
        },
        py::arg("R"), py::arg("eps") = 0.25);
    m.def(
        "mixing_report",
        [](const Mat& R, double eps) {
            PerronData pd = perron(R);
            return mixing_report(R, pd, eps);
        },
        py::arg("R"), py::arg("eps") = 0.25);

    // capacity
    m.def("capacity",
          [](const Mat& A, const std::vector<int>& U, const Vec& a) {
              PerronData pd = perron(A);
              BoundaryCondition bc{U, a};
              return capacity(A, pd.w(), bc);
          });
    m.def("hitting_probability", &hitting_probability);
    m.def("expected_visits", &expected_visits);
    m.def("normalized_capacity", [](const Mat& A) {
        PerronData pd = perron(A);
        NormalizedCapacityReport r = normalized_capacity(A, pd.w());
        return py::make_tuple(r.sigma, r.S, r.T);
    });

    // tensors
    m.def("tensor_step", &step);
    m.def("fixed_point_iterate", &fixed_point_iterate, py::arg("T"), py::arg("p0"),
          py::arg("tol") = 1e-12, py::arg("max_iter") = 100000);
    m.def("fixed_point_residual", &fixed_point_residual);
    m.def("counterexample_tensor", &counterexample_tensor);
    m.def("induced_matrix", &induced_matrix);
    m.def("is_two_line_stochastic", [](const Tensor& t) {
        auto r = is_two_line_stochastic(t);
        return r ? py::cast(*r) : py::none().cast<py::object>();
    });
}
