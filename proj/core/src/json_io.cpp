// SPDX-License-Identifier: Apache-2.0
#include "tripc/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tripc {

namespace {

using nlohmann::json;

json matrix_json(const CMatrix& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
        !j.contains("data"))
        throw InputError("SchemaError", "CMatrix needs rows/cols/data");
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const auto& data = j.at("data");
    if (rows < 0 || cols < 0 ||
        data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
        throw InputError("SchemaError", "data length must be rows*cols");
    CMatrix m(rows, cols);
    std::size_t k = 0;
    for (int i = 0; i < rows; ++i)
        for (int jj = 0; jj < cols; ++jj) {
            const auto& e = data.at(k++);
            if (!e.is_array() || e.size() != 2)
                throw InputError("SchemaError", "entries must be [re, im] pairs");
            m(i, jj) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    return m;
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("JsonParse", "malformed JSON document");
    return j;
}

json tro_json(const TroSpace& z) {
    json basis = json::array();
    for (const auto& b : z.basis) basis.push_back(matrix_json(b));
    return json{{"p", z.p},
                {"q", z.q},
                {"square_mode", z.square_mode},
                {"basis", std::move(basis)}};
}

TroSpacePtr tro_from(const json& j, const TolerancePolicy& tol) {
    if (!j.is_object() || !j.contains("p") || !j.contains("q") || !j.contains("basis"))
        throw InputError("SchemaError", "TroSpace needs p/q/basis");
    std::vector<CMatrix> basis;
    for (const auto& b : j.at("basis")) basis.push_back(matrix_from(b));
    const bool square = j.value("square_mode", false);
    return make_tro_space(j.at("p").get<int>(), j.at("q").get<int>(), std::move(basis),
                          square, tol);
}

} // namespace

std::string cmatrix_to_json(const CMatrix& m) { return matrix_json(m).dump(); }

CMatrix cmatrix_from_json(const std::string& text) { return matrix_from(parse(text)); }

std::string tro_to_json(const TroSpace& z) { return tro_json(z).dump(); }

TroSpacePtr tro_from_json(const std::string& text, const TolerancePolicy& tol) {
    return tro_from(parse(text), tol);
}

std::string tripotent_to_json(const Tripotent& t) {
    return json{{"space", tro_json(*t.space)}, {"u", matrix_json(t.u)}}.dump();
}

Tripotent tripotent_from_json(const std::string& text, const TolerancePolicy& tol) {
    const json j = parse(text);
    if (!j.contains("space") || !j.contains("u"))
        throw InputError("SchemaError", "Tripotent needs space/u");
    return make_tripotent(tro_from(j.at("space"), tol), matrix_from(j.at("u")), tol);
}

std::string morphism_to_json(const TernaryMorphism& t) {
    return json{{"domain", tro_json(*t.domain)},
                {"codomain", tro_json(*t.codomain)},
                {"action", matrix_json(t.action)}}
        .dump();
}

std::string ordered_to_json(const OrderedSpace& x) {
    json basis = json::array();
    for (const auto& b : x.space_basis) basis.push_back(matrix_json(b));
    json gens = json::array();
    for (const auto& g : x.cone_generators) gens.push_back(matrix_json(g));
    return json{{"p", x.p},
                {"q", x.q},
                {"square_mode", x.square_mode},
                {"space_basis", std::move(basis)},
                {"cone_generators", std::move(gens)}}
        .dump();
}

OrderedSpace ordered_from_json(const std::string& text, const TolerancePolicy& tol) {
    const json j = parse(text);
    if (!j.contains("p") || !j.contains("q") || !j.contains("space_basis") ||
        !j.contains("cone_generators"))
        throw InputError("SchemaError",
                         "OrderedSpace needs p/q/space_basis/cone_generators");
    OrderedSpace x;
    x.p = j.at("p").get<int>();
    x.q = j.at("q").get<int>();
    x.square_mode = j.value("square_mode", false);
    for (const auto& b : j.at("space_basis")) x.space_basis.push_back(matrix_from(b));
    for (const auto& g : j.at("cone_generators"))
        x.cone_generators.push_back(matrix_from(g));
    validate_ordered_space(x, tol);
    return x;
}

std::string report_to_json(const ConeReport& r) {
    json res = json::object();
    for (const auto& [k, v] : r.residuals) res[k] = v;
    json wits = json::array();
    for (const auto& w : r.witnesses) wits.push_back(matrix_json(w));
    return json{{"verdict", r.verdict},
                {"decided", r.decided},
                {"residuals", std::move(res)},
                {"witnesses", std::move(wits)}}
        .dump();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("FileError", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace tripc
