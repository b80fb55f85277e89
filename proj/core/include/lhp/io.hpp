#pragma once

// CSV emission with shortest round-trip formatting of floating-point values.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace lhp {

/// Shortest decimal string that parses back to the same double; "nan",
/// "inf" and "-inf" for non-finite values.
std::string format_double(double v);

class CsvWriter {
  public:
    /// Writes the header line immediately.
    CsvWriter(std::ostream& os, std::vector<std::string> columns);

    CsvWriter& operator<<(double v);
    CsvWriter& operator<<(int v);
    CsvWriter& operator<<(std::int64_t v);
    CsvWriter& operator<<(std::uint64_t v);
    CsvWriter& operator<<(std::string_view v);

    /// Terminates the current row; throws std::logic_error when the number of
    /// fields does not match the header.
    void end_row();

  private:
    void field(std::string_view text);

    std::ostream& os_;
    std::size_t columns_;
    std::size_t in_row_ = 0;
};

}  // namespace lhp
