#include "rmatrixlab/serialize.hpp"

#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace rml {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string matrix_to_json(const RMatrix& R) {
    ordered_json j;
    j["family"] = R.family;
    j["n_dim"] = R.n_dim;
    j["normalized"] = R.normalized;
    j["params"] = R.params;
    json rows = json::array();
    for (Eigen::Index i = 0; i < R.entries.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < R.entries.cols(); ++k) {
            row.push_back({R.entries(i, k).real(), R.entries(i, k).imag()});
        }
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j.dump(2);
}

RMatrix matrix_from_json(const std::string& text) {
    json j = json::parse(text);
    RMatrix R;
    R.family = j.at("family");
    R.n_dim = j.at("n_dim");
    R.normalized = j.at("normalized");
    R.params = j.value("params", "");
    const auto& rows = j.at("entries");
    const int dim = R.n_dim * R.n_dim;
    R.entries = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k)
            R.entries(i, k) = cplx(rows.at(i).at(k).at(0), rows.at(i).at(k).at(1));
    return R;
}

namespace {

template <class T>
void put(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

} // namespace

void matrix_to_binary(const RMatrix& R, std::ostream& out) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(R.n_dim));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(R.family.size()));
    out.write(R.family.data(), static_cast<std::streamsize>(R.family.size()));
    for (Eigen::Index i = 0; i < R.entries.rows(); ++i)
        for (Eigen::Index k = 0; k < R.entries.cols(); ++k) {
            put<double>(out, R.entries(i, k).real());
            put<double>(out, R.entries(i, k).imag());
        }
}

RMatrix matrix_from_binary(std::istream& in) {
    RMatrix R;
    R.n_dim = static_cast<int>(get<std::uint32_t>(in));
    auto len = get<std::uint32_t>(in);
    R.family.resize(len);
    in.read(R.family.data(), len);
    const int dim = R.n_dim * R.n_dim;
    R.entries = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            double re = get<double>(in);
            double im = get<double>(in);
            R.entries(i, k) = cplx(re, im);
        }
    if (!in) throw shape_error("truncated binary matrix stream");
    return R;
}

} // namespace rml
