#include "fpt/csv.hpp"

#include <charconv>
#include <cmath>

namespace fpt::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void CsvWriter::comment(std::string_view text) { os_ << "# " << text << '\n'; }

void CsvWriter::columns(const std::vector<std::string>& names) {
    for (const auto& n : names) cell(n);
    end_row();
}

void CsvWriter::separator() {
    if (row_started_) os_ << ',';
    row_started_ = true;
}

CsvWriter& CsvWriter::cell(double v) {
    separator();
    os_ << format_number(v);
    return *this;
}

CsvWriter& CsvWriter::cell(std::optional<double> v) {
    separator();
    if (v) os_ << format_number(*v);
    return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
    separator();
    os_ << v;
    return *this;
}

CsvWriter& CsvWriter::cell(std::string_view text) {
    separator();
    if (text.find_first_of(",\"\n") == std::string_view::npos) {
        os_ << text;
        return *this;
    }
    os_ << '"';
    for (char c : text) {
        if (c == '"') os_ << '"';
        os_ << c;
    }
    os_ << '"';
    return *this;
}

void CsvWriter::end_row() {
    os_ << '\n';
    row_started_ = false;
}

}  // namespace fpt::cli
