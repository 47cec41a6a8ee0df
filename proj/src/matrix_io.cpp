#include "fkz/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fmt/core.h>
#include <fmt/ostream.h>

namespace fkz {

namespace {

// Whitespace-separated token reader that parses doubles with from_chars so
// the 17-digit text form maps back to the identical bit pattern.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  std::string next(const char* what) {
    std::string tok;
    if (!(in_ >> tok)) {
      throw std::runtime_error(fmt::format("parse error: expected {}", what));
    }
    return tok;
  }

  std::size_t next_count(const char* what) {
    const std::string tok = next(what);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || value == 0) {
      throw std::runtime_error(
          fmt::format("parse error: bad {} '{}'", what, tok));
    }
    return value;
  }

  double next_value() {
    const std::string tok = next("value");
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw std::runtime_error(fmt::format("parse error: bad value '{}'", tok));
    }
    return value;
  }

  void expect_end() {
    std::string tok;
    if (in_ >> tok) {
      throw std::runtime_error(
          fmt::format("parse error: trailing token '{}'", tok));
    }
  }

 private:
  std::istream& in_;
};

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  }
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error(
        fmt::format("cannot open '{}' for writing", path.string()));
  }
  return out;
}

}  // namespace

void write_matrix(std::ostream& out, const DenseMatrix& a) {
  fmt::print(out, "{} {}\n", a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      fmt::print(out, j == 0 ? "{:.17g}" : " {:.17g}", r[j]);
    }
    out << '\n';
  }
}

void write_vector(std::ostream& out, std::span<const double> v) {
  fmt::print(out, "{}\n", v.size());
  for (double x : v) fmt::print(out, "{:.17g}\n", x);
}

DenseMatrix read_matrix(std::istream& in) {
  TokenReader reader(in);
  const std::size_t rows = reader.next_count("row count");
  const std::size_t cols = reader.next_count("column count");
  std::vector<double> values(rows * cols);
  for (double& v : values) v = reader.next_value();
  reader.expect_end();
  return DenseMatrix(rows, cols, std::move(values));
}

Vector read_vector(std::istream& in) {
  TokenReader reader(in);
  const std::size_t len = reader.next_count("length");
  Vector values(len);
  for (double& v : values) v = reader.next_value();
  reader.expect_end();
  require_finite(values, "read_vector");
  return values;
}

void save_matrix(const std::filesystem::path& path, const DenseMatrix& a) {
  auto out = open_out(path);
  write_matrix(out, a);
}

void save_vector(const std::filesystem::path& path, std::span<const double> v) {
  auto out = open_out(path);
  write_vector(out, v);
}

DenseMatrix load_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_matrix(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(fmt::format("{}: {}", path.string(), e.what()));
  }
}

Vector load_vector(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_vector(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace fkz
