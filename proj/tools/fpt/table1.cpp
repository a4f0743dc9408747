#include "fpt/table1.hpp"

#include "fpt/oupcf.hpp"
#include "fpt/parallel.hpp"

namespace fpt::cli {

namespace {

struct Entry {
    const char* printed;
    unsigned hermite;  ///< nonzero: barrier is the leftmost zero of He_n
    double y_plus;
    const char* lambda;
};

constexpr Entry kEntries[] = {
    {"-2.86", 5, 0.0, "5"},      {"-2.33", 4, 0.0, "4"},      {"-sqrt3", 3, 0.0, "3"},
    {"-1", 2, 0.0, "2"},         {"-0.5", 0, -0.5, "1.449"},  {"0", 0, 0.0, "1"},
    {"0.5", 0, 0.5, "0.649"},    {"1", 0, 1.0, "0.388"},      {"1.5", 0, 1.5, "0.209"},
    {"2", 0, 2.0, "0.0973"},     {"2.5", 0, 2.5, "0.0377"},   {"3", 0, 3.0, "0.0116"},
};

}  // namespace

std::vector<Table1Row> table1_rows(const EstimateOptions& options) {
    const Model ou = builtin(BuiltinParams{.kind = BuiltinKind::kOu});
    constexpr std::size_t n = std::size(kEntries);
    return parallel_map(n, [&](std::size_t i) {
        const Entry& e = kEntries[i];
        Table1Row row;
        row.y_plus_printed = e.printed;
        row.y_plus = e.hermite ? hermite_leftmost_zero(e.hermite) : e.y_plus;
        row.lambda_exact = rightmost_zero(row.y_plus);
        row.lambda_algorithm1 = estimate_lambda(ou.field, ou.measure, row.y_plus, options).lambda;
        row.lambda_printed = e.lambda;
        return row;
    });
}

}  // namespace fpt::cli
