#include "cevmc/csv.hpp"

#include "cevmc/errors.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

namespace cevmc {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvBuilder& CsvBuilder::field(const std::string& s) {
    if (row_open_) body_ += ',';
    body_ += s;
    row_open_ = true;
    return *this;
}

CsvBuilder& CsvBuilder::end_row() {
    body_ += '\n';
    row_open_ = false;
    return *this;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open '" + path + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoFailure("failed writing '" + path + "'");
}

} // namespace cevmc
