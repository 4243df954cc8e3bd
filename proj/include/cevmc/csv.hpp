#pragma once

#include <cstdint>
#include <string>

namespace cevmc {

// Shortest representation that round-trips the exact double (never more than
// 17 significant digits).
std::string format_double(double v);

// Assembles one CSV line from already-formatted fields; all fields in this
// project are plain numerics or bare identifiers, so quoting is never needed.
class CsvBuilder {
public:
    explicit CsvBuilder(std::string header) { body_ = std::move(header) + "\n"; }

    CsvBuilder& field(const std::string& s);
    CsvBuilder& field(double v) { return field(format_double(v)); }
    CsvBuilder& field(std::uint64_t v) { return field(std::to_string(v)); }
    CsvBuilder& field(std::int64_t v) { return field(std::to_string(v)); }
    CsvBuilder& end_row();

    const std::string& str() const { return body_; }

private:
    std::string body_;
    bool row_open_ = false;
};

// Writes the full contents in one shot; throws IoFailure. Nothing is written
// until the text is completely assembled, so a failed run leaves no partial
// file behind.
void write_file(const std::string& path, const std::string& contents);

} // namespace cevmc
