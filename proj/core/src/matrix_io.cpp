#include "efinv/matrix_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace efinv {

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_double(std::string_view tok)
{
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && tok.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ParseError("matrix market: bad number '" + std::string(tok) + "'");
    if (!std::isfinite(v))
        throw NonFiniteEntry("matrix market: non-finite value '" + std::string(tok) + "'");
    return v;
}

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream& in, std::string& line)
{
    while (std::getline(in, line)) {
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '%')
            continue;
        return true;
    }
    return false;
}

std::vector<std::string> split(const std::string& line)
{
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok)
        out.push_back(tok);
    return out;
}

Index parse_extent(const std::string& tok, const char* what)
{
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0)
        throw ParseError(std::string("matrix market: bad ") + what + " '" + tok + "'");
    return static_cast<Index>(v);
}

enum class Field { Real, Integer, Complex, Pattern };
enum class Symmetry { General, Symmetric, SkewSymmetric, Hermitian };

Complex mirror(Complex v, Symmetry s)
{
    switch (s) {
    case Symmetry::Symmetric:
        return v;
    case Symmetry::SkewSymmetric:
        return -v;
    case Symmetry::Hermitian:
        return std::conj(v);
    case Symmetry::General:
        break;
    }
    return v;
}

Complex read_value(const std::vector<std::string>& toks, std::size_t at, Field field)
{
    switch (field) {
    case Field::Pattern:
        return {1.0, 0.0};
    case Field::Real:
    case Field::Integer:
        if (toks.size() < at + 1)
            throw ParseError("matrix market: missing value");
        return {parse_double(toks[at]), 0.0};
    case Field::Complex:
        if (toks.size() < at + 2)
            throw ParseError("matrix market: missing imaginary part");
        return {parse_double(toks[at]), parse_double(toks[at + 1])};
    }
    return {};
}

} // namespace

ComplexMatrix read_matrix_market(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("matrix market: empty input");
    auto header = split(line);
    if (header.size() != 5 || header[0] != "%%MatrixMarket" || lower(header[1]) != "matrix")
        throw ParseError("matrix market: bad banner '" + line + "'");

    const std::string layout = lower(header[2]);
    const std::string field_s = lower(header[3]);
    const std::string sym_s = lower(header[4]);

    Field field;
    if (field_s == "real")
        field = Field::Real;
    else if (field_s == "integer")
        field = Field::Integer;
    else if (field_s == "complex")
        field = Field::Complex;
    else if (field_s == "pattern")
        field = Field::Pattern;
    else
        throw ParseError("matrix market: unsupported field '" + field_s + "'");

    Symmetry sym;
    if (sym_s == "general")
        sym = Symmetry::General;
    else if (sym_s == "symmetric")
        sym = Symmetry::Symmetric;
    else if (sym_s == "skew-symmetric")
        sym = Symmetry::SkewSymmetric;
    else if (sym_s == "hermitian")
        sym = Symmetry::Hermitian;
    else
        throw ParseError("matrix market: unsupported symmetry '" + sym_s + "'");

    if (!next_data_line(in, line))
        throw ParseError("matrix market: missing size line");
    auto size = split(line);

    if (layout == "array") {
        if (field == Field::Pattern)
            throw ParseError("matrix market: pattern field requires coordinate layout");
        if (size.size() != 2)
            throw ParseError("matrix market: array size line needs 2 entries");
        const Index m = parse_extent(size[0], "row count");
        const Index n = parse_extent(size[1], "column count");
        if (m == 0 || n == 0)
            throw ParseError("matrix market: empty matrix");
        if (sym != Symmetry::General && m != n)
            throw ParseError("matrix market: symmetric storage needs a square matrix");
        ComplexMatrix a = ComplexMatrix::Zero(m, n);
        // Column-major; symmetric variants store the lower triangle only.
        for (Index j = 0; j < n; ++j) {
            const Index start = sym == Symmetry::General ? 0 : (sym == Symmetry::SkewSymmetric ? j + 1 : j);
            for (Index i = start; i < m; ++i) {
                if (!next_data_line(in, line))
                    throw ParseError("matrix market: truncated array data");
                const Complex v = read_value(split(line), 0, field);
                a(i, j) = v;
                if (sym != Symmetry::General && i != j)
                    a(j, i) = mirror(v, sym);
            }
        }
        return a;
    }

    if (layout == "coordinate") {
        if (size.size() != 3)
            throw ParseError("matrix market: coordinate size line needs 3 entries");
        const Index m = parse_extent(size[0], "row count");
        const Index n = parse_extent(size[1], "column count");
        const Index nnz = parse_extent(size[2], "entry count");
        if (m == 0 || n == 0)
            throw ParseError("matrix market: empty matrix");
        ComplexMatrix a = ComplexMatrix::Zero(m, n);
        for (Index k = 0; k < nnz; ++k) {
            if (!next_data_line(in, line))
                throw ParseError("matrix market: truncated coordinate data");
            auto toks = split(line);
            if (toks.size() < 2)
                throw ParseError("matrix market: bad coordinate entry '" + line + "'");
            const Index i = parse_extent(toks[0], "row index");
            const Index j = parse_extent(toks[1], "column index");
            if (i < 1 || i > m || j < 1 || j > n)
                throw ParseError("matrix market: index out of range in '" + line + "'");
            const Complex v = read_value(toks, 2, field);
            a(i - 1, j - 1) = v;
            if (sym != Symmetry::General && i != j)
                a(j - 1, i - 1) = mirror(v, sym);
        }
        return a;
    }

    throw ParseError("matrix market: unsupported layout '" + layout + "'");
}

void write_matrix_market(std::ostream& out, const ComplexMatrix& a, MatrixMarketLayout layout)
{
    require_finite(a, "write_matrix_market");
    if (layout == MatrixMarketLayout::Array) {
        out << "%%MatrixMarket matrix array complex general\n";
        out << a.rows() << ' ' << a.cols() << '\n';
        for (Index j = 0; j < a.cols(); ++j)
            for (Index i = 0; i < a.rows(); ++i)
                out << format_double(a(i, j).real()) << ' ' << format_double(a(i, j).imag()) << '\n';
        return;
    }
    Index nnz = 0;
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (a(i, j) != Complex{})
                ++nnz;
    out << "%%MatrixMarket matrix coordinate complex general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << nnz << '\n';
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (a(i, j) != Complex{})
                out << i + 1 << ' ' << j + 1 << ' ' << format_double(a(i, j).real()) << ' '
                    << format_double(a(i, j).imag()) << '\n';
}

ComplexMatrix parse_json_matrix(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("json matrix: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") || !doc.contains("data"))
        throw ParseError("json matrix: expected an object with rows, cols and data");
    const auto& rows = doc["rows"];
    const auto& cols = doc["cols"];
    if (!rows.is_number_integer() || !cols.is_number_integer() || rows.get<long long>() <= 0 ||
        cols.get<long long>() <= 0)
        throw ParseError("json matrix: rows and cols must be positive integers");
    const auto m = static_cast<Index>(rows.get<long long>());
    const auto n = static_cast<Index>(cols.get<long long>());
    const auto& data = doc["data"];
    if (!data.is_array() || static_cast<Index>(data.size()) != m * n)
        throw ParseError("json matrix: data must hold rows*cols entries");

    ComplexMatrix a(m, n);
    Index k = 0;
    for (const auto& entry : data) {
        double re = 0.0;
        double im = 0.0;
        if (entry.is_number()) {
            re = entry.get<double>();
        } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() && entry[1].is_number()) {
            re = entry[0].get<double>();
            im = entry[1].get<double>();
        } else {
            throw ParseError("json matrix: entry " + std::to_string(k) + " is not [re, im]");
        }
        a(k / n, k % n) = Complex(re, im);
        ++k;
    }
    require_finite(a, "json matrix");
    return a;
}

std::string to_json_matrix(const ComplexMatrix& a)
{
    require_finite(a, "to_json_matrix");
    nlohmann::json data = nlohmann::json::array();
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            data.push_back({a(i, j).real(), a(i, j).imag()});
    nlohmann::json doc;
    doc["rows"] = a.rows();
    doc["cols"] = a.cols();
    doc["data"] = std::move(data);
    return doc.dump();
}

ComplexMatrix load_matrix(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    bool json = lower(path.extension().string()) == ".json";
    if (!json) {
        auto pos = text.find_first_not_of(" \t\r\n");
        json = pos != std::string::npos && text[pos] == '{';
    }
    if (json)
        return parse_json_matrix(text);
    std::istringstream ss(text);
    return read_matrix_market(ss);
}

void save_matrix(const std::filesystem::path& path, const ComplexMatrix& a, MatrixFormat format)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write " + path.string());
    if (format == MatrixFormat::Json)
        out << to_json_matrix(a) << '\n';
    else
        write_matrix_market(out, a);
    if (!out)
        throw ParseError("write failed for " + path.string());
}

void save_matrix(const std::filesystem::path& path, const ComplexMatrix& a)
{
    const bool json = lower(path.extension().string()) == ".json";
    save_matrix(path, a, json ? MatrixFormat::Json : MatrixFormat::MatrixMarket);
}

std::uint64_t matrix_checksum(const ComplexMatrix& a)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t word) {
        for (int b = 0; b < 8; ++b) {
            h ^= (word >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(static_cast<std::uint64_t>(a.rows()));
    mix(static_cast<std::uint64_t>(a.cols()));
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) {
            mix(std::bit_cast<std::uint64_t>(a(i, j).real()));
            mix(std::bit_cast<std::uint64_t>(a(i, j).imag()));
        }
    return h;
}

} // namespace efinv
