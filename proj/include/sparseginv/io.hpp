#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace sparseginv::io {

enum class MatrixFormat { matrix_market, csv };

inline MatrixFormat format_from_name(std::string_view name)
{
    if (name == "mtx" || name == "mm" || name == "matrix_market") {
        return MatrixFormat::matrix_market;
    }
    if (name == "csv") {
        return MatrixFormat::csv;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown matrix format '" + std::string(name) + "'");
}

/// Guesses the format from a file extension; Matrix Market unless ".csv".
inline MatrixFormat format_from_path(std::string_view path)
{
    const auto dot = path.rfind('.');
    if (dot != std::string_view::npos) {
        std::string ext(path.substr(dot + 1));
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == "csv") {
            return MatrixFormat::csv;
        }
    }
    return MatrixFormat::matrix_market;
}

namespace detail {

struct Token {
    std::string_view text;
    std::size_t line;
    std::size_t column; // 1-based
};

inline std::vector<Token> split_whitespace(std::string_view line, std::size_t line_no)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i > start) {
            out.push_back({line.substr(start, i - start), line_no, start + 1});
        }
    }
    return out;
}

inline double parse_real(const Token& t)
{
    std::string_view s = t.text;
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ParseError(t.line, t.column, "expected a real number, got '" + std::string(t.text) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(t.line, t.column, "non-finite value");
    }
    return value;
}

inline std::size_t parse_index(const Token& t)
{
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
        throw ParseError(t.line, t.column, "expected a nonnegative integer, got '" + std::string(t.text) + "'");
    }
    return value;
}

inline std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

inline void strip_cr(std::string& line)
{
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
}

} // namespace detail

/// Matrix Market "matrix array|coordinate real|integer general" reader.
inline Matrix read_matrix_market(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError(1, 1, "empty input");
    }
    ++line_no;
    detail::strip_cr(line);
    const auto header = detail::split_whitespace(line, line_no);
    if (header.size() != 5 || header[0].text != "%%MatrixMarket") {
        throw ParseError(1, 1, "missing '%%MatrixMarket matrix <layout> <field> general' header");
    }
    const std::string object = detail::lower(header[1].text);
    const std::string layout = detail::lower(header[2].text);
    const std::string field = detail::lower(header[3].text);
    const std::string symmetry = detail::lower(header[4].text);
    if (object != "matrix") {
        throw ParseError(1, header[1].column, "unsupported object '" + object + "'");
    }
    if (layout != "array" && layout != "coordinate") {
        throw ParseError(1, header[2].column, "unsupported layout '" + layout + "'");
    }
    if (field != "real" && field != "integer") {
        throw ParseError(1, header[3].column, "unsupported field '" + field + "'");
    }
    if (symmetry != "general") {
        throw ParseError(1, header[4].column, "unsupported symmetry '" + symmetry + "'");
    }

    // Remaining content tokens, comments and blank lines skipped.
    std::vector<std::string> lines;
    std::vector<std::size_t> line_numbers;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '%') {
            continue;
        }
        lines.push_back(line);
        line_numbers.push_back(line_no);
    }
    std::vector<detail::Token> tokens;
    std::vector<std::size_t> token_line_index;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        for (auto& t : detail::split_whitespace(lines[k], line_numbers[k])) {
            tokens.push_back(t);
            token_line_index.push_back(k);
        }
    }
    const bool coordinate = layout == "coordinate";
    const std::size_t size_fields = coordinate ? 3 : 2;
    if (tokens.size() < size_fields) {
        throw ParseError(line_no, 0, "missing size line");
    }
    for (std::size_t k = 1; k < size_fields; ++k) {
        if (token_line_index[k] != token_line_index[0]) {
            throw ParseError(tokens[0].line, tokens[0].column, "size line must hold all dimensions");
        }
    }
    const std::size_t m = detail::parse_index(tokens[0]);
    const std::size_t n = detail::parse_index(tokens[1]);
    if (m == 0 || n == 0) {
        throw Error(ErrorCode::DimensionError, "matrix dimensions must be positive");
    }
    if (m > std::numeric_limits<std::size_t>::max() / n) {
        throw Error(ErrorCode::DimensionError, "matrix dimensions overflow");
    }

    Matrix out(m, n);
    if (!coordinate) {
        const std::size_t expected = m * n;
        const std::size_t available = tokens.size() - size_fields;
        if (available != expected) {
            throw Error(ErrorCode::DimensionError, "array layout expects " + std::to_string(expected) +
                                                       " values, found " + std::to_string(available));
        }
        for (std::size_t k = 0; k < expected; ++k) {
            const double v = detail::parse_real(tokens[size_fields + k]);
            out(k % m, k / m) = v; // column-major
        }
        return out;
    }

    const std::size_t nnz = detail::parse_index(tokens[2]);
    if (tokens.size() - size_fields != 3 * nnz) {
        throw Error(ErrorCode::DimensionError, "coordinate layout expects " + std::to_string(nnz) + " entries");
    }
    std::vector<bool> seen(m * n, false);
    for (std::size_t e = 0; e < nnz; ++e) {
        const auto& ti = tokens[size_fields + 3 * e];
        const auto& tj = tokens[size_fields + 3 * e + 1];
        const auto& tv = tokens[size_fields + 3 * e + 2];
        if (ti.line != tj.line || ti.line != tv.line) {
            throw ParseError(ti.line, ti.column, "coordinate entry must be 'row col value' on one line");
        }
        const std::size_t i = detail::parse_index(ti);
        const std::size_t j = detail::parse_index(tj);
        if (i < 1 || i > m || j < 1 || j > n) {
            throw Error(ErrorCode::DimensionError, "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                                       ") outside " + std::to_string(m) + " x " + std::to_string(n));
        }
        if (seen[(i - 1) * n + (j - 1)]) {
            throw ParseError(ti.line, ti.column, "duplicate coordinate entry");
        }
        seen[(i - 1) * n + (j - 1)] = true;
        out(i - 1, j - 1) = detail::parse_real(tv);
    }
    return out;
}

/// One row per line, comma-separated decimals; blank lines are skipped.
inline Matrix read_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t cols = 0;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        std::size_t count = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::size_t stop = comma == std::string::npos ? line.size() : comma;
            std::size_t b = start;
            std::size_t e = stop;
            while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) {
                ++b;
            }
            while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) {
                --e;
            }
            const detail::Token tok{std::string_view(line).substr(b, e - b), line_no, b + 1};
            if (tok.text.empty()) {
                throw ParseError(line_no, start + 1, "empty field");
            }
            values.push_back(detail::parse_real(tok));
            ++count;
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (rows == 0) {
            cols = count;
        } else if (count != cols) {
            throw Error(ErrorCode::DimensionError, "line " + std::to_string(line_no) + " has " +
                                                       std::to_string(count) + " fields, expected " +
                                                       std::to_string(cols));
        }
        ++rows;
    }
    if (rows == 0) {
        throw Error(ErrorCode::DimensionError, "no rows in CSV input");
    }
    return Matrix(rows, cols, std::move(values));
}

inline Matrix read_matrix(std::istream& in, MatrixFormat format)
{
    return format == MatrixFormat::csv ? read_csv(in) : read_matrix_market(in);
}

inline Matrix parse_matrix(const std::string& path, MatrixFormat format)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    }
    return read_matrix(in, format);
}

inline Matrix parse_matrix(const std::string& path) { return parse_matrix(path, format_from_path(path)); }

/// Array-layout Matrix Market with round-trip precision.
inline void write_matrix_market(std::ostream& out, const Matrix& m)
{
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << ' ' << m.cols() << '\n';
    out << std::setprecision(17);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out << m(i, j) << '\n';
        }
    }
}

inline void write_csv(std::ostream& out, const Matrix& m)
{
    out << std::setprecision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out << (j ? "," : "") << m(i, j);
        }
        out << '\n';
    }
}

} // namespace sparseginv::io
