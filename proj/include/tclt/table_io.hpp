#pragma once

#include "tclt/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tclt {

inline constexpr const char* kFormatVersion = "1";

// RFC 4180: quote fields containing separators, quotes or newlines.
std::string csv_quote(const std::string& field);

std::string csv_field(const std::string& s);
std::string csv_field(const char* s);
std::string csv_field(int v);
std::string csv_field(std::int64_t v);
std::string csv_field(std::uint64_t v);
std::string csv_field(double v); // shortest round-trip form
std::string csv_field(const Rational& v); // exact "n/d"

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void row(const std::vector<std::string>& fields); // arity must match header
    std::string str() const { return out_; }

private:
    size_t arity_;
    std::string out_;
};

// Exact values carry both representations; the decimal is display-only.
nlohmann::json rational_json(const Rational& x);
// Plain doubles are wrapped so their inexactness is visible in the schema.
nlohmann::json approx_json(double x);

} // namespace tclt
