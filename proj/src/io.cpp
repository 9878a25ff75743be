#include "specphi/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace specphi {
namespace io {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

int AnyMatrix::n() const {
    if (auto* d = std::get_if<Mat>(&m)) return static_cast<int>(d->rows());
    if (auto* r = std::get_if<RMat>(&m)) return r->n();
    return std::get<DMat>(m).n();
}

Mat AnyMatrix::as_double() const {
    if (auto* d = std::get_if<Mat>(&m)) return *d;
    if (auto* r = std::get_if<RMat>(&m)) return r->to_double();
    return std::get<DMat>(m).to_double();
}

std::string matrix_to_json(const Mat& m) {
    json j;
    j["n"] = m.rows();
    j["mode"] = "machine";
    json rows = json::array();
    for (int i = 0; i < m.rows(); i++) {
        json row = json::array();
        for (int jj = 0; jj < m.cols(); jj++) row.push_back(m(i, jj));
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump(1);
}

std::string matrix_to_json(const RMat& m) {
    json j;
    j["n"] = m.n();
    j["mode"] = "rational";
    json rows = json::array();
    for (int i = 0; i < m.n(); i++) {
        json row = json::array();
        for (int jj = 0; jj < m.n(); jj++) {
            const Rational& q = m(i, jj);
            row.push_back(json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}});
        }
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump(1);
}

std::string matrix_to_json(const DMat& m, int digits) {
    json j;
    j["n"] = m.n();
    j["mode"] = "decimal";
    j["digits"] = digits;
    json rows = json::array();
    int print_digits = digits > 10 ? digits - 10 : digits;
    for (int i = 0; i < m.n(); i++) {
        json row = json::array();
        for (int jj = 0; jj < m.n(); jj++) row.push_back(m(i, jj).str(print_digits));
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump(1);
}

namespace {

Rational rational_from_json(const json& e) {
    if (e.is_object()) {
        Rational q(mpz_class(e.at("num").get<std::string>()),
                   mpz_class(e.at("den").get<std::string>()));
        q.canonicalize();
        return q;
    }
    if (e.is_number_integer()) return Rational(e.get<long>());
    throw UsageError("rational matrix entries must be integers or {num,den} objects");
}

}  // namespace

AnyMatrix matrix_from_json(const std::string& text) {
    json j = json::parse(text);
    int n = j.at("n").get<int>();
    std::string mode = j.value("mode", "machine");
    const json& rows = j.at("rows");
    if (static_cast<int>(rows.size()) != n) throw UsageError("matrix rows do not match n");

    AnyMatrix out;
    if (mode == "machine") {
        Mat m(n, n);
        for (int i = 0; i < n; i++)
            for (int jj = 0; jj < n; jj++) {
                const json& e = rows[i][jj];
                if (e.is_object())
                    m(i, jj) = rational_from_json(e).get_d();
                else if (e.is_string())
                    m(i, jj) = std::stod(e.get<std::string>());
                else
                    m(i, jj) = e.get<double>();
            }
        out.m = m;
    } else if (mode == "decimal") {
        int digits = j.value("digits", 100);
        mpfr_prec_t prec = bits_for_digits(digits);
        DMat m(n, prec);
        for (int i = 0; i < n; i++)
            for (int jj = 0; jj < n; jj++) {
                const json& e = rows[i][jj];
                if (e.is_string())
                    m(i, jj) = Dec(e.get<std::string>(), prec);
                else if (e.is_object()) {
                    Rational q = rational_from_json(e);
                    Dec num(q.get_num().get_str(), prec), den(q.get_den().get_str(), prec);
                    m(i, jj) = num / den;
                } else
                    m(i, jj) = Dec(e.get<double>(), prec);
            }
        out.m = m;
        out.decimal_digits = digits;
    } else if (mode == "rational") {
        RMat m(n);
        for (int i = 0; i < n; i++)
            for (int jj = 0; jj < n; jj++) m(i, jj) = rational_from_json(rows[i][jj]);
        out.m = m;
    } else {
        throw UsageError("unknown matrix mode: " + mode);
    }
    return out;
}

AnyMatrix read_matrix(const std::string& path) {
    std::string text = read_file(path);
    // CSV: a bare integer header line instead of a JSON object
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] != '{') {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line)) throw UsageError("matrix CSV: empty file");
        int n = std::stoi(line);
        Mat m(n, n);
        for (int i = 0; i < n; i++) {
            if (!std::getline(in, line)) throw UsageError("matrix CSV: too few rows");
            std::istringstream cells(line);
            std::string cell;
            for (int j = 0; j < n; j++) {
                if (!std::getline(cells, cell, ','))
                    throw UsageError("matrix CSV: too few entries in row " + std::to_string(i));
                m(i, j) = std::stod(cell);
            }
        }
        AnyMatrix out;
        out.m = m;
        return out;
    }
    return matrix_from_json(text);
}

void write_matrix_json(const std::string& path, const Mat& m) {
    write_file(path, matrix_to_json(m));
}
void write_matrix_json(const std::string& path, const RMat& m) {
    write_file(path, matrix_to_json(m));
}
void write_matrix_json(const std::string& path, const DMat& m, int digits) {
    write_file(path, matrix_to_json(m, digits));
}

void write_matrix_csv(const std::string& path, const Mat& m) {
    std::ostringstream out;
    out << m.rows() << "\n";
    out.precision(17);
    for (int i = 0; i < m.rows(); i++) {
        for (int j = 0; j < m.cols(); j++) out << (j ? "," : "") << m(i, j);
        out << "\n";
    }
    write_file(path, out.str());
}

std::string spectrum_to_json(const Spectrum& s, double delta) {
    json j;
    json eigs = json::array();
    for (const auto& l : s.eigenvalues) eigs.push_back(json::array({l.real(), l.imag()}));
    j["eigs"] = eigs;
    j["svals"] = s.singular_values;
    j["delta"] = delta;
    return j.dump(1);
}

std::string expansion_report_to_json(const ExpansionReport& r, double delta, double gamma) {
    json j;
    j["phi"] = r.phi;
    j["argmin"] = r.argmin.members;
    j["method"] = to_string(r.method);
    j["delta"] = delta;
    j["gamma"] = gamma;
    return j.dump(1);
}

BoundaryCondition boundary_from_json(const std::string& text) {
    json j = json::parse(text);
    BoundaryCondition bc;
    bc.U = j.at("U").get<std::vector<int>>();
    std::vector<double> a = j.at("a").get<std::vector<double>>();
    bc.a = Eigen::Map<Vec>(a.data(), a.size());
    return bc;
}

std::string boundary_to_json(const BoundaryCondition& bc) {
    json j;
    j["U"] = bc.U;
    j["a"] = std::vector<double>(bc.a.data(), bc.a.data() + bc.a.size());
    return j.dump(1);
}

std::string capacity_report_to_json(const CapacityReport& r) {
    json j;
    j["value"] = r.value;
    j["via_schur"] = r.via_schur;
    j["via_pinv"] = r.via_pinv;
    j["via_pinv_restricted"] = r.via_pinv_restricted;
    j["max_deviation"] = r.max_deviation;
    return j.dump(1);
}

std::string mixing_report_to_json(const MixingReport& r) {
    json j;
    j["tau"] = r.tau;
    j["eps"] = r.eps;
    j["kappa"] = r.kappa;
    json b;
    for (const auto& [name, iv] : r.bounds)
        b[name] = json{{"lower", iv.lower}, {"upper", iv.upper}, {"brackets", iv.brackets(r.tau)}};
    j["bounds"] = b;
    return j.dump(1);
}

Tensor tensor_from_json(const std::string& text) {
    json j = json::parse(text);
    int k = j.at("k").get<int>();
    int n = j.at("n").get<int>();
    std::vector<double> entries = j.at("entries").get<std::vector<double>>();
    Tensor t(k, n);
    if (entries.size() != t.size()) throw UsageError("tensor entries length mismatch");
    t.data() = entries;
    return t;
}

std::string tensor_to_json(const Tensor& t) {
    json j;
    j["k"] = t.order();
    j["n"] = t.dim();
    j["entries"] = t.data();
    json axes;
    axes["output"] = 0;
    if (auto idx = is_two_line_stochastic(t)) axes["stochastic_input"] = *idx;
    j["axes"] = axes;
    return j.dump(1);
}

Tensor read_tensor(const std::string& path) { return tensor_from_json(read_file(path)); }

PathSet paths_from_file(const std::string& path) {
    std::istringstream in(read_file(path));
    PathSet out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos) throw UsageError("path file: missing ':' in line " + line);
        std::istringstream head(line.substr(0, colon)), tail(line.substr(colon + 1));
        int u, v;
        if (!(head >> u >> v)) throw UsageError("path file: bad pair in line " + line);
        std::vector<int> chain;
        int x;
        while (tail >> x) chain.push_back(x);
        out[std::minmax(u, v)] = chain;
    }
    return out;
}

std::string chet_scan_to_csv(const std::vector<ChetScanRow>& rows) {
    std::ostringstream out;
    out << "n,min_c,min_b,min_c_index,min_b_index,min_entry,nonnegative,"
           "max_trace_residual,precision_ok,phi_upper\n";
    out.precision(17);
    for (const auto& r : rows)
        out << r.n << "," << r.min_c << "," << r.min_b << "," << r.min_c_index << ","
            << r.min_b_index << "," << r.min_entry << "," << (r.nonnegative ? 1 : 0) << ","
            << r.max_trace_residual << "," << (r.precision_ok ? 1 : 0) << "," << r.phi_upper
            << "\n";
    return out.str();
}

std::string chet_coeffs_to_csv(const ChetData& d) {
    std::ostringstream out;
    out << "i,c_i,b_i\n";
    int print_digits = d.digits > 10 ? d.digits - 10 : d.digits;
    for (size_t i = 0; i < d.b.size(); i++) {
        out << i << ",";
        if (i < d.c.size()) out << d.c[i].str(print_digits);
        out << "," << d.b[i].str(print_digits) << "\n";
    }
    return out.str();
}

}  // namespace io
}  // namespace specphi
