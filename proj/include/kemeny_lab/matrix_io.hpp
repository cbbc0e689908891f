#pragma once

#include <string>
#include <vector>

#include "kemeny_lab/matrix.hpp"
#include "kemeny_lab/scalar.hpp"

namespace kemeny_lab::io {

/// A parsed matrix file: entry literals are kept verbatim so each mode can
/// materialize them faithfully (exact parse vs IEEE nearest).
struct MatrixFile {
  std::size_t n = 0;
  std::vector<std::vector<std::string>> tokens;  // n×n entry literals
  bool has_rational_literal = false;             // any "a/b" form seen
};

enum class NumberMode { kRational, kFloat };

/// Loads CSV (n lines of n comma-separated entries) or JSON
/// ({"n": int, "rows": [[entry, ...], ...]}); the format is sniffed from the
/// first non-whitespace byte. Raises ParseError with position diagnostics.
MatrixFile load_matrix_file(const std::string& path);

/// Same, from an in-memory document (used by tests).
MatrixFile parse_matrix_text(const std::string& text, const std::string& origin);

/// Mode selection: rational literals pull the file into exact mode unless
/// --float is passed; decimal-only files run in float mode unless --exact.
NumberMode select_mode(const MatrixFile& file, bool force_exact, bool force_float);

/// Exact value of one literal: "a/b" with integer a, b, or a decimal literal
/// (every finite decimal string is exactly a rational).
Rational parse_rational_literal(const std::string& token, const std::string& context);

Matrix<Rational> to_rational(const MatrixFile& file);
Matrix<double> to_float(const MatrixFile& file);

}  // namespace kemeny_lab::io
