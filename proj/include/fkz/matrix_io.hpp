#pragma once

// Plain-text matrix/vector files.
//
//   matrix:  "rows cols\n" followed by `rows` lines of `cols` values
//   vector:  "len\n" followed by one value per line
//
// Values are written with 17 significant digits, which round-trips every
// finite double exactly.

#include <filesystem>
#include <iosfwd>

#include "fkz/dense.hpp"

namespace fkz {

void write_matrix(std::ostream& out, const DenseMatrix& a);
void write_vector(std::ostream& out, std::span<const double> v);

DenseMatrix read_matrix(std::istream& in);
Vector read_vector(std::istream& in);

void save_matrix(const std::filesystem::path& path, const DenseMatrix& a);
void save_vector(const std::filesystem::path& path, std::span<const double> v);

/// Throws std::runtime_error on missing file or parse failure.
DenseMatrix load_matrix(const std::filesystem::path& path);
Vector load_vector(const std::filesystem::path& path);

}  // namespace fkz
