#pragma once

// MatrixFile: JSON object {"rows", "cols", optional "block_k", "data"} with
// data a row-major array of [re, im] pairs. Doubles are written in shortest
// round-trip form, so load(save(M)) == M bit for bit.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "opeq/kernel.hpp"

namespace opeq {

struct MatrixFile {
    ComplexMatrix matrix;
    std::optional<std::size_t> block_k;
};

namespace detail {

inline std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset; ++i)
        if (text[i] == '\n') ++line;
    return line;
}

/// Line of the first occurrence of "key", or 0 when absent.
inline std::size_t line_of_key(std::string_view text, std::string_view key) {
    const std::string quoted = "\"" + std::string(key) + "\"";
    const auto pos = text.find(quoted);
    return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

inline std::size_t read_count(const nlohmann::json& doc, std::string_view text, const char* key) {
    if (!doc.contains(key)) throw ParseError(key, 0, std::string("missing field '") + key + "'");
    const auto& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ParseError(key, line_of_key(text, key), std::string("field '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

inline std::string number_text(double v) { return nlohmann::json(v).dump(); }

}  // namespace detail

inline MatrixFile parse_matrix_file(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("", detail::line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
    if (!doc.is_object()) throw ParseError("", 1, "matrix file must hold a JSON object");

    const std::size_t rows = detail::read_count(doc, text, "rows");
    const std::size_t cols = detail::read_count(doc, text, "cols");
    MatrixFile out;
    if (doc.contains("block_k")) {
        const std::size_t k = detail::read_count(doc, text, "block_k");
        if (k == 0 || rows % k != 0 || cols % k != 0) {
            throw ShapeError("block_k = " + std::to_string(k) + " does not divide " + std::to_string(rows) + "x" +
                             std::to_string(cols));
        }
        out.block_k = k;
    }
    if (!doc.contains("data")) throw ParseError("data", 0, "missing field 'data'");
    const auto& data = doc.at("data");
    const std::size_t data_line = detail::line_of_key(text, "data");
    if (!data.is_array()) throw ParseError("data", data_line, "field 'data' must be an array");
    if (data.size() != rows * cols) {
        throw ShapeError("data holds " + std::to_string(data.size()) + " entries, expected " +
                         std::to_string(rows * cols) + " for " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    out.matrix.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t idx = 0; idx < data.size(); ++idx) {
        const auto& e = data[idx];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw ParseError("data", data_line, "entry " + std::to_string(idx) + " is not a [re, im] pair");
        }
        const Complex z(e[0].get<double>(), e[1].get<double>());
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ParseError("data", data_line, "entry " + std::to_string(idx) + " is not finite");
        }
        out.matrix(static_cast<Eigen::Index>(idx / cols), static_cast<Eigen::Index>(idx % cols)) = z;
    }
    return out;
}

inline std::string format_matrix_file(const ComplexMatrix& m, std::optional<std::size_t> block_k = std::nullopt) {
    require_finite(m, "matrix");
    if (block_k && (*block_k == 0 || m.rows() % static_cast<Eigen::Index>(*block_k) != 0 ||
                    m.cols() % static_cast<Eigen::Index>(*block_k) != 0)) {
        throw ShapeError("block_k does not divide the matrix shape");
    }
    std::ostringstream os;
    os << "{\n  \"rows\": " << m.rows() << ",\n  \"cols\": " << m.cols() << ",\n";
    if (block_k) os << "  \"block_k\": " << *block_k << ",\n";
    os << "  \"data\": [";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            os << ((i == 0 && j == 0) ? "\n    [" : ",\n    [") << detail::number_text(m(i, j).real()) << ", "
               << detail::number_text(m(i, j).imag()) << "]";
        }
    }
    os << (m.size() == 0 ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

inline MatrixFile load_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("", 0, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_file(buf.str());
}

inline ComplexMatrix load_matrix(const std::filesystem::path& path) { return load_matrix_file(path).matrix; }

inline void save_matrix(const std::filesystem::path& path, const ComplexMatrix& m,
                        std::optional<std::size_t> block_k = std::nullopt) {
    const std::string text = format_matrix_file(m, block_k);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << text;
    if (!out) throw InvalidArgument("write failed for " + path.string());
}

}  // namespace opeq
