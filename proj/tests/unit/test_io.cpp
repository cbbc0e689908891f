#include <doctest.h>

#include <string>

#include "kemeny_lab/matrix_io.hpp"
#include "test_chains.hpp"

using kemeny_lab::ErrorKind;
using kemeny_lab::Matrix;
using kemeny_lab::Rational;
namespace io = kemeny_lab::io;
using test_support::thrown_kind;

namespace {

const std::string kOzCsv = "1/2,1/4,1/4\n1/2,0,1/2\n1/4,1/4,1/2\n";
const std::string kOzJson =
    "{\"n\": 3, \"rows\": [[\"1/2\", \"1/4\", \"1/4\"], [\"1/2\", \"0\", \"1/2\"], "
    "[\"1/4\", \"1/4\", \"1/2\"]]}";

}  // namespace

TEST_CASE("CSV and JSON forms of the same matrix parse identically") {
  io::MatrixFile csv = io::parse_matrix_text(kOzCsv, "oz.csv");
  io::MatrixFile json = io::parse_matrix_text(kOzJson, "oz.json");
  CHECK(csv.n == 3);
  CHECK(json.n == 3);
  CHECK(csv.has_rational_literal);
  CHECK(json.has_rational_literal);
  CHECK(io::to_rational(csv) == io::to_rational(json));
  CHECK(io::to_rational(csv) == test_support::oz_matrix());
}

TEST_CASE("rational literal parsing") {
  CHECK(io::parse_rational_literal("1/2", "t") == Rational(1, 2));
  CHECK(io::parse_rational_literal("-3/4", "t") == Rational(-3, 4));
  CHECK(io::parse_rational_literal("+3/4", "t") == Rational(3, 4));
  CHECK(io::parse_rational_literal("6/8", "t") == Rational(3, 4));
  CHECK(io::parse_rational_literal("7", "t") == Rational(7));
  CHECK(io::parse_rational_literal("0.125", "t") == Rational(1, 8));
  CHECK(io::parse_rational_literal("-0.5", "t") == Rational(-1, 2));
  CHECK(io::parse_rational_literal("2.5e-1", "t") == Rational(1, 4));
  CHECK(io::parse_rational_literal("1e2", "t") == Rational(100));
  CHECK(io::parse_rational_literal("1.5E+1", "t") == Rational(15));
  CHECK(io::parse_rational_literal(".5", "t") == Rational(1, 2));
  CHECK(io::parse_rational_literal("5.", "t") == Rational(5));

  for (const char* bad : {"", "1/0", "a", "1.2.3", "1e", "--1", "1/2/3", "0x10", "1e9999999"})
    CHECK(thrown_kind([&] { io::parse_rational_literal(bad, "t"); }) == ErrorKind::ParseError);
}

TEST_CASE("mode selection") {
  io::MatrixFile rational = io::parse_matrix_text(kOzCsv, "t");
  io::MatrixFile decimal = io::parse_matrix_text("0.5,0.5\n0.25,0.75\n", "t");

  CHECK(io::select_mode(rational, false, false) == io::NumberMode::kRational);
  CHECK(io::select_mode(rational, false, true) == io::NumberMode::kFloat);
  CHECK(io::select_mode(decimal, false, false) == io::NumberMode::kFloat);
  CHECK(io::select_mode(decimal, true, false) == io::NumberMode::kRational);
  CHECK(thrown_kind([&] { io::select_mode(decimal, true, true); }) == ErrorKind::ParseError);
}

TEST_CASE("decimal literals convert exactly in rational mode") {
  io::MatrixFile decimal = io::parse_matrix_text("0.5,0.5\n0.25,0.75\n", "t");
  Matrix<Rational> m = io::to_rational(decimal);
  CHECK(m(0, 0) == Rational(1, 2));
  CHECK(m(1, 0) == Rational(1, 4));
  CHECK(m(1, 1) == Rational(3, 4));
}

TEST_CASE("float conversion uses the verbatim literal") {
  io::MatrixFile file = io::parse_matrix_text("0.1,0.9\n1/3,2/3\n", "t");
  Matrix<double> m = io::to_float(file);
  CHECK(m(0, 0) == 0.1);
  CHECK(m(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("CSV shape errors carry the offending line") {
  auto kind_and_message = [](const std::string& text) {
    try {
      io::parse_matrix_text(text, "bad.csv");
    } catch (const kemeny_lab::Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };

  CHECK(kind_and_message("1/2,1/2\n1\n").find("bad.csv:2") != std::string::npos);
  CHECK(kind_and_message("1,0\n0,1\n0,1\n").find("expected square") != std::string::npos);
  CHECK(kind_and_message("1/2,,1/2\n").find("column 2") != std::string::npos);
  CHECK(thrown_kind([&] { io::parse_matrix_text("", "bad.csv"); }) == ErrorKind::ParseError);
}

TEST_CASE("JSON validation errors") {
  CHECK(thrown_kind([&] { io::parse_matrix_text("{\"rows\": []}", "t"); }) == ErrorKind::ParseError);
  CHECK(thrown_kind([&] { io::parse_matrix_text("{\"n\": 2, \"rows\": [[1, 0]]}", "t"); }) ==
        ErrorKind::ParseError);
  CHECK(thrown_kind([&] {
          io::parse_matrix_text("{\"n\": 1, \"rows\": [[true]]}", "t");
        }) == ErrorKind::ParseError);
  CHECK(thrown_kind([&] { io::parse_matrix_text("{\"n\": 0, \"rows\": []}", "t"); }) ==
        ErrorKind::ParseError);
  CHECK(thrown_kind([&] { io::parse_matrix_text("{not json", "t"); }) == ErrorKind::ParseError);
}

TEST_CASE("JSON numeric cells are accepted") {
  io::MatrixFile file = io::parse_matrix_text("{\"n\": 2, \"rows\": [[0.5, 0.5], [1, 0]]}", "t");
  CHECK_FALSE(file.has_rational_literal);
  Matrix<double> m = io::to_float(file);
  CHECK(m(0, 0) == 0.5);
  CHECK(m(1, 0) == 1.0);
}

TEST_CASE("rational serialization round-trips") {
  CHECK(kemeny_lab::ScalarTraits<Rational>::to_string(io::parse_rational_literal("7/3", "t")) == "7/3");
  CHECK(kemeny_lab::ScalarTraits<Rational>::to_string(Rational(-5, 10)) == "-1/2");
  CHECK(kemeny_lab::ScalarTraits<Rational>::to_string(Rational(4)) == "4");
}

TEST_CASE("unreadable path raises a parse error") {
  CHECK(thrown_kind([&] { io::load_matrix_file("/nonexistent/file.csv"); }) == ErrorKind::ParseError);
}
