#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fpt::cli {

/// Shortest round-trip decimal form, locale independent.
std::string format_number(double v);

/// Comment-prefixed header lines followed by RFC 4180 rows.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void comment(std::string_view text);
    void columns(const std::vector<std::string>& names);

    CsvWriter& cell(double v);
    CsvWriter& cell(std::optional<double> v);  ///< empty field when absent
    CsvWriter& cell(std::string_view text);
    CsvWriter& cell(long long v);
    void end_row();

private:
    void separator();

    std::ostream& os_;
    bool row_started_ = false;
};

}  // namespace fpt::cli
