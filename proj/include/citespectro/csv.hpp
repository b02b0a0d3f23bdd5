#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace citespectro::csv {

using Row = std::vector<std::string>;

// Quotes a field when it contains a comma, quote, CR or LF (RFC 4180).
std::string escape(std::string_view field);

// Joins fields into one CSV line without the trailing newline.
std::string join(const Row& fields);

// Streaming RFC 4180 reader. Quoted fields may span lines; both LF and CRLF
// terminate records.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Reads the next record. Returns nullopt at end of input.
  std::optional<Row> next();

  // 1-based line on which the last returned record started.
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

// Parses a whole in-memory CSV document.
std::vector<Row> parse(std::string_view text);

// Writes `contents` to `path` through a sibling temporary file and a rename,
// so readers never observe a partially written file. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace citespectro::csv
