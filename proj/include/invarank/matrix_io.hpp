#pragma once

// Matrix text format: {"field": "q" | "p:<prime>", "rows": [["1", "-2/3"], ...]}.

#include "invarank/matrix.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace invarank {

inline nlohmann::json matrix_to_json(const Matrix& m) {
    return {{"field", m.field().to_string()}, {"rows", m.to_strings()}};
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("rows"))
        throw std::invalid_argument("matrix JSON needs \"field\" and \"rows\"");
    if (!j["field"].is_string()) throw std::invalid_argument("matrix \"field\" must be a string");
    FieldSpec field = FieldSpec::parse(j["field"].get<std::string>());
    const auto& rows = j["rows"];
    if (!rows.is_array() || rows.empty()) throw std::invalid_argument("matrix \"rows\" must be a non-empty array");
    std::vector<Vector> parsed;
    for (const auto& row : rows) {
        if (!row.is_array() || row.empty()) throw std::invalid_argument("matrix row must be a non-empty array");
        Vector v;
        for (const auto& e : row) {
            if (e.is_string())
                v.push_back(Scalar::parse(field, e.get<std::string>()));
            else if (e.is_number_integer())
                v.push_back(Scalar::parse(field, std::to_string(e.get<long long>())));
            else
                throw std::invalid_argument("matrix entries must be strings \"a\" or \"a/b\"");
        }
        parsed.push_back(std::move(v));
    }
    return Matrix::from_rows(field, parsed);
}

inline Matrix parse_matrix_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed matrix JSON: ") + e.what());
    }
    return matrix_from_json(j);
}

inline Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_matrix_json(buf.str());
}

}  // namespace invarank
