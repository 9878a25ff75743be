#pragma once

#include <string>
#include <variant>

#include "specphi/capacity.hpp"
#include "specphi/constructions.hpp"
#include "specphi/core.hpp"
#include "specphi/decimal.hpp"
#include "specphi/expansion.hpp"
#include "specphi/mixing.hpp"
#include "specphi/rational.hpp"
#include "specphi/spectra.hpp"
#include "specphi/tensor.hpp"

namespace specphi {
namespace io {

// On-disk matrix: {"n": int, "mode": "machine"|"decimal"|"rational",
// "rows": [[entry,...],...]}.  Decimal entries are strings; rational
// entries are {"num": "...", "den": "..."} objects, accepted in any
// mode.  CSV alternative: a header line with n, then n rows.
struct AnyMatrix {
    std::variant<Mat, RMat, DMat> m;
    int decimal_digits = 0;

    int n() const;
    bool is_rational() const { return std::holds_alternative<RMat>(m); }
    bool is_decimal() const { return std::holds_alternative<DMat>(m); }
    Mat as_double() const;
};

AnyMatrix read_matrix(const std::string& path);
void write_matrix_json(const std::string& path, const Mat& m);
void write_matrix_json(const std::string& path, const RMat& m);
void write_matrix_json(const std::string& path, const DMat& m, int digits);
void write_matrix_csv(const std::string& path, const Mat& m);

std::string matrix_to_json(const Mat& m);
std::string matrix_to_json(const RMat& m);
std::string matrix_to_json(const DMat& m, int digits);
AnyMatrix matrix_from_json(const std::string& text);

// {"eigs": [[re,im],...], "svals": [...], "delta": x}
std::string spectrum_to_json(const Spectrum& s, double delta);

// {"phi": x, "argmin": [...], "method": "...", "delta": x, "gamma": x}
std::string expansion_report_to_json(const ExpansionReport& r, double delta, double gamma);

// {"U": [...], "a": [...]}
BoundaryCondition boundary_from_json(const std::string& text);
std::string boundary_to_json(const BoundaryCondition& bc);

// capacity report with the four equivalent values and max pairwise deviation
std::string capacity_report_to_json(const CapacityReport& r);

// mixing report with every computed bound interval
std::string mixing_report_to_json(const MixingReport& r);

// {"k": int, "n": int, "entries": [...], "axes": {"output": 0, ...}}
Tensor tensor_from_json(const std::string& text);
std::string tensor_to_json(const Tensor& t);
Tensor read_tensor(const std::string& path);

// path file: one line per pair "u v: v0 v1 ... vk"
PathSet paths_from_file(const std::string& path);

// chet scan rows as CSV: n, min_c, min_b, min_c_index, min_b_index,
// min_entry, nonnegative, max_trace_residual, precision_ok, phi_upper
std::string chet_scan_to_csv(const std::vector<ChetScanRow>& rows);
// per-n coefficient dump: columns (i, c_i, b_i)
std::string chet_coeffs_to_csv(const ChetData& d);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace io
}  // namespace specphi
