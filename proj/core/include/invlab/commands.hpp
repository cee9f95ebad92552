#pragma once

#include "invlab/config.hpp"

namespace invlab {

// Exit-code contract: 0 all identities pass / 1 identity failure / 2 usage or
// configuration error. Implementations return the report that the CLI prints
// and optionally writes to cfg.out_json / cfg.out_csv.
struct CommandResult {
    int exit_code = 0;
    nlohmann::json report;
    std::string csv;   // cmd_integrate only
};

CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_solve(const RunConfig& cfg);
CommandResult cmd_integrate(const RunConfig& cfg);
CommandResult cmd_report(const RunConfig& cfg);

// Dispatch + file output; used by the CLI main.
CommandResult run_command(const RunConfig& cfg);

} // namespace invlab
