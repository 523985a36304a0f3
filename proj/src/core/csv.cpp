#include "core/csv.hpp"

namespace socio::csv {

namespace {

bool needs_quoting(std::string_view f) {
    for (char c : f) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') return true;
    }
    return false;
}

} // namespace

Document parse(std::string_view input) {
    Document doc;
    std::size_t i = 0;
    const std::size_t n = input.size();
    if (n >= 3 && static_cast<unsigned char>(input[0]) == 0xEF &&
        static_cast<unsigned char>(input[1]) == 0xBB &&
        static_cast<unsigned char>(input[2]) == 0xBF) {
        i = 3;
    }

    std::size_t line = 1;
    bool have_header = false;

    while (i < n) {
        Record rec;
        rec.line = line;
        std::string field;
        bool row_ok = true;
        bool done = false;

        while (!done) {
            if (i < n && input[i] == '"') {
                // quoted field
                ++i;
                bool closed = false;
                while (i < n) {
                    char c = input[i];
                    if (c == '"') {
                        if (i + 1 < n && input[i + 1] == '"') {
                            field.push_back('"');
                            i += 2;
                        } else {
                            ++i;
                            closed = true;
                            break;
                        }
                    } else {
                        if (c == '\n') ++line;
                        field.push_back(c);
                        ++i;
                    }
                }
                if (!closed) {
                    doc.errors.emplace_back(rec.line, "unterminated quoted field");
                    row_ok = false;
                    done = true;
                    break;
                }
                // after the closing quote only , or end-of-record may follow
                if (i < n && input[i] != ',' && input[i] != '\n' && input[i] != '\r') {
                    doc.errors.emplace_back(rec.line, "unexpected character after closing quote");
                    // skip to end of record
                    while (i < n && input[i] != '\n') ++i;
                    row_ok = false;
                }
            } else {
                while (i < n && input[i] != ',' && input[i] != '\n' && input[i] != '\r') {
                    if (input[i] == '"') {
                        // bare quote inside unquoted field: tolerate as data
                        field.push_back('"');
                        ++i;
                        continue;
                    }
                    field.push_back(input[i]);
                    ++i;
                }
            }

            if (i >= n) {
                rec.fields.push_back(std::move(field));
                done = true;
            } else if (input[i] == ',') {
                rec.fields.push_back(std::move(field));
                field.clear();
                ++i;
            } else { // \r or \n
                rec.fields.push_back(std::move(field));
                if (input[i] == '\r') {
                    ++i;
                    if (i < n && input[i] == '\n') ++i;
                } else {
                    ++i;
                }
                ++line;
                done = true;
            }
        }

        if (!row_ok) continue;
        // skip records that are entirely empty (blank line)
        if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;

        if (!have_header) {
            doc.header = std::move(rec.fields);
            have_header = true;
        } else {
            doc.records.push_back(std::move(rec));
        }
    }

    return doc;
}

std::string quote_field(std::string_view field) {
    if (!needs_quoting(field)) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += quote_field(fields[i]);
    }
    return out;
}

} // namespace socio::csv
