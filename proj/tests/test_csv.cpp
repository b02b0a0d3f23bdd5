#include <doctest.h>

#include <filesystem>

#include "citespectro/csv.hpp"
#include "citespectro/error.hpp"
#include "citespectro/text.hpp"
#include "fixtures.hpp"

using namespace citespectro;

TEST_SUITE("csv") {
  TEST_CASE("quoting follows RFC 4180") {
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a, b") == "\"a, b\"");
    CHECK(csv::escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv::join({"x", "y,z", ""}) == "x,\"y,z\",");
  }

  TEST_CASE("reader handles quoted commas, quotes, newlines and CRLF") {
    auto rows = csv::parse("a,b\r\n\"1, 2\",\"he said \"\"x\"\"\"\n\"multi\nline\",z\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == csv::Row{"a", "b"});
    CHECK(rows[1] == csv::Row{"1, 2", "he said \"x\""});
    CHECK(rows[2] == csv::Row{"multi\nline", "z"});
  }

  TEST_CASE("escape and parse are inverse") {
    csv::Row fields{"lotka a. j., 1926, j washington acad sc", "\"quoted\"", "", "tab\there", "new\nline"};
    auto back = csv::parse(csv::join(fields) + "\n");
    REQUIRE(back.size() == 1);
    CHECK(back[0] == fields);
  }

  TEST_CASE("atomic write replaces the file and leaves no temp file") {
    auto dir = fixtures::temp_dir("csv-atomic");
    auto path = dir / "out.csv";
    csv::write_file_atomic(path, "first\n");
    csv::write_file_atomic(path, "second\n");
    CHECK(csv::read_file(path) == "second\n");
    CHECK_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
    CHECK_THROWS_AS(csv::write_file_atomic(dir / "missing" / "x.csv", "x"), IoError);
  }

  TEST_CASE("utf-8 sanitizer replaces only invalid bytes") {
    bool replaced = false;
    CHECK(text::sanitize_utf8("K\xC3\xB6ln", replaced) == "K\xC3\xB6ln");
    CHECK_FALSE(replaced);
    CHECK(text::sanitize_utf8("bad\xFFz", replaced) == "bad\xEF\xBF\xBDz");
    CHECK(replaced);
    CHECK(text::sanitize_utf8("\xC3", replaced) == "\xEF\xBF\xBD");
  }

  TEST_CASE("name normalization") {
    CHECK(text::normalize_name("sambrook j.") == "sambrook j");
    CHECK(text::normalize_name("  Merton,   RK ") == "merton rk");
    CHECK(text::normalize_name("de solla price d. j.") == "de solla price d. j");
  }
}
