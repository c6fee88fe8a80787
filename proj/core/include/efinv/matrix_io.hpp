#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "efinv/dense_core.hpp"

namespace efinv {

enum class MatrixFormat { MatrixMarket, Json };

enum class MatrixMarketLayout { Array, Coordinate };

/// Reads "%%MatrixMarket matrix {array|coordinate} {real|integer|complex|pattern}
/// {general|symmetric|skew-symmetric|hermitian}".
ComplexMatrix read_matrix_market(std::istream& in);

/// Writes a complex general matrix. Values use the shortest representation
/// that parses back to the identical double.
void write_matrix_market(std::ostream& out, const ComplexMatrix& a,
                         MatrixMarketLayout layout = MatrixMarketLayout::Array);

/// {"rows":m,"cols":n,"data":[[re,im],...]} with data in row-major order.
ComplexMatrix parse_json_matrix(std::string_view text);
std::string to_json_matrix(const ComplexMatrix& a);

/// Chooses the format from the extension (.json, otherwise Matrix Market),
/// falling back to sniffing the first non-blank character.
ComplexMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const ComplexMatrix& a);
void save_matrix(const std::filesystem::path& path, const ComplexMatrix& a, MatrixFormat format);

/// FNV-1a over the row-major IEEE-754 bit patterns of all entries.
std::uint64_t matrix_checksum(const ComplexMatrix& a);

} // namespace efinv
