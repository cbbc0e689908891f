#include "kemeny_lab/matrix_io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kemeny_lab/error.hpp"

namespace kemeny_lab::io {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

boost::multiprecision::cpp_int parse_integer(const std::string& digits, const std::string& context) {
  if (digits.empty()) raise(ErrorKind::ParseError, context + ": empty integer");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      raise(ErrorKind::ParseError, context + ": invalid integer '" + digits + "'");
  // A leading zero would make cpp_int read the string as octal.
  const std::size_t first = digits.find_first_not_of('0');
  if (first == std::string::npos) return boost::multiprecision::cpp_int(0);
  return boost::multiprecision::cpp_int(digits.substr(first));
}

MatrixFile from_csv(const std::string& text, const std::string& origin) {
  MatrixFile file;
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) {
      if (!file.tokens.empty()) continue;  // allow trailing blank lines
      raise(ErrorKind::ParseError, origin + ":" + std::to_string(line_number) + ": blank line before data");
    }
    std::vector<std::string> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::string token = trim(cell);
      if (token.empty())
        raise(ErrorKind::ParseError, origin + ":" + std::to_string(line_number) + ": empty entry at column " +
                                         std::to_string(row.size() + 1));
      if (token.find('/') != std::string::npos) file.has_rational_literal = true;
      row.push_back(std::move(token));
    }
    if (!file.tokens.empty() && row.size() != file.tokens.front().size())
      raise(ErrorKind::ParseError, origin + ":" + std::to_string(line_number) + ": row has " +
                                       std::to_string(row.size()) + " entries, expected " +
                                       std::to_string(file.tokens.front().size()));
    file.tokens.push_back(std::move(row));
  }
  if (file.tokens.empty()) raise(ErrorKind::ParseError, origin + ": no data");
  file.n = file.tokens.size();
  if (file.tokens.front().size() != file.n)
    raise(ErrorKind::ParseError, origin + ": matrix is " + std::to_string(file.n) + "x" +
                                     std::to_string(file.tokens.front().size()) + ", expected square");
  return file;
}

MatrixFile from_json(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorKind::ParseError, origin + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("rows"))
    raise(ErrorKind::ParseError, origin + ": expected an object with \"n\" and \"rows\"");
  if (!doc["n"].is_number_integer())
    raise(ErrorKind::ParseError, origin + ": \"n\" must be an integer");
  const auto n = doc["n"].get<std::int64_t>();
  if (n < 1) raise(ErrorKind::ParseError, origin + ": \"n\" must be >= 1");
  const auto& rows = doc["rows"];
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
    raise(ErrorKind::ParseError, origin + ": \"rows\" must hold " + std::to_string(n) + " rows");

  MatrixFile file;
  file.n = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < file.n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != file.n)
      raise(ErrorKind::ParseError, origin + ": row " + std::to_string(i + 1) + " must hold " +
                                       std::to_string(n) + " entries");
    std::vector<std::string> tokens;
    tokens.reserve(file.n);
    for (std::size_t j = 0; j < file.n; ++j) {
      const auto& cell = row[j];
      std::string token;
      if (cell.is_string()) {
        token = trim(cell.get<std::string>());
      } else if (cell.is_number_integer()) {
        token = std::to_string(cell.get<std::int64_t>());
      } else if (cell.is_number_float()) {
        token = ScalarTraits<double>::to_string(cell.get<double>());
      } else {
        raise(ErrorKind::ParseError, origin + ": row " + std::to_string(i + 1) + " column " +
                                         std::to_string(j + 1) + " must be a number or string");
      }
      if (token.find('/') != std::string::npos) file.has_rational_literal = true;
      tokens.push_back(std::move(token));
    }
    file.tokens.push_back(std::move(tokens));
  }
  return file;
}

}  // namespace

MatrixFile parse_matrix_text(const std::string& text, const std::string& origin) {
  return looks_like_json(text) ? from_json(text, origin) : from_csv(text, origin);
}

MatrixFile load_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::ParseError, path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix_text(buffer.str(), path);
}

NumberMode select_mode(const MatrixFile& file, bool force_exact, bool force_float) {
  if (force_exact && force_float)
    raise(ErrorKind::ParseError, "--exact and --float are mutually exclusive");
  if (force_exact) return NumberMode::kRational;
  if (force_float) return NumberMode::kFloat;
  return file.has_rational_literal ? NumberMode::kRational : NumberMode::kFloat;
}

Rational parse_rational_literal(const std::string& token, const std::string& context) {
  using boost::multiprecision::cpp_int;
  if (token.empty()) raise(ErrorKind::ParseError, context + ": empty entry");

  const std::size_t slash = token.find('/');
  if (slash != std::string::npos) {
    std::string num = token.substr(0, slash);
    std::string den = token.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num[0] == '+' || num[0] == '-')) {
      negative = num[0] == '-';
      num = num.substr(1);
    }
    cpp_int numerator = parse_integer(num, context);
    cpp_int denominator = parse_integer(den, context);
    if (denominator == 0) raise(ErrorKind::ParseError, context + ": zero denominator");
    Rational value(numerator, denominator);
    return negative ? Rational(-value) : value;
  }

  // Decimal literal: [sign] digits [. digits] [e [sign] digits]
  std::size_t pos = 0;
  bool negative = false;
  if (pos < token.size() && (token[pos] == '+' || token[pos] == '-')) {
    negative = token[pos] == '-';
    ++pos;
  }
  std::string int_digits;
  while (pos < token.size() && std::isdigit(static_cast<unsigned char>(token[pos]))) int_digits += token[pos++];
  std::string frac_digits;
  if (pos < token.size() && token[pos] == '.') {
    ++pos;
    while (pos < token.size() && std::isdigit(static_cast<unsigned char>(token[pos]))) frac_digits += token[pos++];
  }
  if (int_digits.empty() && frac_digits.empty())
    raise(ErrorKind::ParseError, context + ": invalid number '" + token + "'");
  long exponent = 0;
  if (pos < token.size() && (token[pos] == 'e' || token[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < token.size() && (token[pos] == '+' || token[pos] == '-')) {
      exp_negative = token[pos] == '-';
      ++pos;
    }
    std::string exp_digits;
    while (pos < token.size() && std::isdigit(static_cast<unsigned char>(token[pos]))) exp_digits += token[pos++];
    if (exp_digits.empty() || exp_digits.size() > 6)
      raise(ErrorKind::ParseError, context + ": invalid exponent in '" + token + "'");
    exponent = std::strtol(exp_digits.c_str(), nullptr, 10);
    if (exp_negative) exponent = -exponent;
  }
  if (pos != token.size())
    raise(ErrorKind::ParseError, context + ": invalid number '" + token + "'");

  cpp_int digits = parse_integer(int_digits.empty() ? frac_digits : int_digits + frac_digits, context);
  long scale = exponent - static_cast<long>(frac_digits.size());
  Rational value(digits, 1);
  if (scale > 0) value *= Rational(boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(scale)), 1);
  if (scale < 0) value /= Rational(boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(-scale)), 1);
  return negative ? Rational(-value) : value;
}

Matrix<Rational> to_rational(const MatrixFile& file) {
  Matrix<Rational> out(file.n, file.n);
  for (std::size_t i = 0; i < file.n; ++i)
    for (std::size_t j = 0; j < file.n; ++j) {
      const std::string context = "row " + std::to_string(i + 1) + " column " + std::to_string(j + 1);
      out(i, j) = parse_rational_literal(file.tokens[i][j], context);
    }
  return out;
}

Matrix<double> to_float(const MatrixFile& file) {
  Matrix<double> out(file.n, file.n);
  for (std::size_t i = 0; i < file.n; ++i)
    for (std::size_t j = 0; j < file.n; ++j) {
      const std::string& token = file.tokens[i][j];
      const std::string context = "row " + std::to_string(i + 1) + " column " + std::to_string(j + 1);
      const std::size_t slash = token.find('/');
      if (slash != std::string::npos) {
        const Rational exact = parse_rational_literal(token, context);
        out(i, j) = ScalarTraits<Rational>::to_double(exact);
        continue;
      }
      char* end = nullptr;
      const double value = std::strtod(token.c_str(), &end);
      if (end == nullptr || *end != '\0')
        raise(ErrorKind::ParseError, context + ": invalid number '" + token + "'");
      out(i, j) = value;
    }
  return out;
}

}  // namespace kemeny_lab::io
