#pragma once

#include "fpt/decay.hpp"

#include <string>
#include <vector>

namespace fpt::cli {

/// One row of the OU decay-rate table: the barrier as printed, the barrier
/// actually used (integer rows sit on the leftmost Hermite zero), the exact
/// rate, the Algorithm-1 estimate and the printed rate.
struct Table1Row {
    std::string y_plus_printed;
    double y_plus = 0.0;
    double lambda_exact = 0.0;
    double lambda_algorithm1 = 0.0;
    std::string lambda_printed;
};

std::vector<Table1Row> table1_rows(const EstimateOptions& options = {});

}  // namespace fpt::cli
