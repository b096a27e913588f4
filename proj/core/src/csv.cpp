#include "csv.hpp"

#include <array>
#include <charconv>

#include "wearprompt/error.hpp"

namespace wearprompt::detail {

std::vector<CsvRow> parse_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        if (!(row.size() == 1 && row.front().empty())) {
            rows.push_back(std::move(row));
        }
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') ++line;
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
        case '"':
            if (field_started) {
                throw Error(ErrorKind::Parse, "CSV line " + std::to_string(line) + ": stray quote inside field");
            }
            quoted = true;
            field_started = true;
            break;
        case ',': end_field(); break;
        case '\r': break;
        case '\n':
            end_row();
            ++line;
            break;
        default:
            field.push_back(ch);
            field_started = true;
        }
    }
    if (quoted) {
        throw Error(ErrorKind::Parse, "CSV: unterminated quoted field");
    }
    if (field_started || !row.empty()) {
        end_row();
    }
    return rows;
}

std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(value);
    }
    std::string out = "\"";
    for (char ch : value) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

std::string csv_line(const CsvRow& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out.push_back(',');
        out += csv_field(row[i]);
    }
    out.push_back('\n');
    return out;
}

std::string format_double(double value) {
    std::array<char, 64> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), result.ptr);
}

}  // namespace wearprompt::detail
