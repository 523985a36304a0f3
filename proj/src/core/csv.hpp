#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace socio::csv {

// One parsed record plus the 1-based line number where it started.
struct Record {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

struct Document {
    std::vector<std::string> header;
    std::vector<Record> records;          // data rows, header excluded
    std::vector<std::pair<std::size_t, std::string>> errors;
};

// RFC-4180 reader: quoted fields with "" escapes, embedded commas and
// newlines, LF or CRLF record separators, UTF-8 passthrough, BOM stripped.
// The first record is taken as the header. Structural problems inside a row
// (stray quote, unterminated quote at EOF) are reported per row in `errors`
// and the row is dropped; an empty input or missing header is reported by
// the caller, not here.
Document parse(std::string_view input);

// Quotes a field iff it contains a comma, quote, CR or LF.
std::string quote_field(std::string_view field);

// Joins fields into one CSV line (no trailing newline).
std::string join_row(const std::vector<std::string>& fields);

} // namespace socio::csv
