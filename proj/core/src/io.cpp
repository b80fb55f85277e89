#include "lhp/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace lhp {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> columns) : os_(os), columns_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i > 0) os_ << ',';
        os_ << columns[i];
    }
    os_ << '\n';
}

void CsvWriter::field(std::string_view text) {
    if (in_row_ > 0) os_ << ',';
    os_ << text;
    ++in_row_;
}

CsvWriter& CsvWriter::operator<<(double v) {
    field(format_double(v));
    return *this;
}

CsvWriter& CsvWriter::operator<<(int v) {
    field(std::to_string(v));
    return *this;
}

CsvWriter& CsvWriter::operator<<(std::int64_t v) {
    field(std::to_string(v));
    return *this;
}

CsvWriter& CsvWriter::operator<<(std::uint64_t v) {
    field(std::to_string(v));
    return *this;
}

CsvWriter& CsvWriter::operator<<(std::string_view v) {
    field(v);
    return *this;
}

void CsvWriter::end_row() {
    if (in_row_ != columns_) {
        throw std::logic_error("CSV row has " + std::to_string(in_row_) + " fields, header has " +
                               std::to_string(columns_));
    }
    os_ << '\n';
    in_row_ = 0;
}

}  // namespace lhp
