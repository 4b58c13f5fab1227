#include "tclt/table_io.hpp"

#include <stdexcept>

namespace tclt {

std::string csv_quote(const std::string& field) {
    bool needs = false;
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs = true;
            break;
        }
    }
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string csv_field(const std::string& s) { return csv_quote(s); }
std::string csv_field(const char* s) { return csv_quote(s); }
std::string csv_field(int v) { return std::to_string(v); }
std::string csv_field(std::int64_t v) { return std::to_string(v); }
std::string csv_field(std::uint64_t v) { return std::to_string(v); }

std::string csv_field(double v) {
    // nlohmann's double serialization is shortest-round-trip
    return nlohmann::json(v).dump();
}

std::string csv_field(const Rational& v) { return csv_quote(format_rational(v)); }

CsvWriter::CsvWriter(std::vector<std::string> header) : arity_(header.size()) {
    std::vector<std::string> quoted;
    quoted.reserve(header.size());
    for (const auto& h : header) quoted.push_back(csv_quote(h));
    row(quoted);
}

// fields must already be escaped (use csv_field)
void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != arity_) throw std::logic_error("csv row arity mismatch");
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ += ',';
        out_ += fields[i];
    }
    out_ += '\n';
}

nlohmann::json rational_json(const Rational& x) {
    return nlohmann::json{{"exact", format_rational(x)}, {"decimal", to_double(x)}};
}

nlohmann::json approx_json(double x) { return nlohmann::json{{"approx", x}}; }

} // namespace tclt
