#pragma once

#include "fpt/run_config.hpp"

#include <ostream>

namespace fpt::cli {

/// Each command writes CSV to `out`. `report` receives the JSON report of
/// `validate`; the other commands ignore it.
void cmd_lambda(const RunConfig& config, std::ostream& out);
void cmd_hseries(const RunConfig& config, std::ostream& out);
void cmd_cumulants(const RunConfig& config, std::ostream& out);
void cmd_density(const RunConfig& config, std::ostream& out);
void cmd_oracle(const RunConfig& config, std::ostream& out);
void cmd_table1(const RunConfig& config, std::ostream& out);
void cmd_fig1(const RunConfig& config, std::ostream& out);
void cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& report);
void cmd_pcf(const RunConfig& config, std::ostream& out);

}  // namespace fpt::cli
