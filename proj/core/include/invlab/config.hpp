#pragma once

#include "invlab/errors.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace invlab {

// Batch run description; fully serializable, unknown JSON keys rejected.
struct RunConfig {
    std::string command;                          // verify | solve | integrate | report
    std::string system;
    std::map<std::string, std::string> params;

    int qdeg = -1;                                // -1: system default menu
    std::string pin12;                            // optional pinned (1,2) component

    std::string method = "stormer_verlet";
    double h = 1e-2;
    long steps = 1000;
    double tol = 1e-14;
    int max_iters = 50;
    std::array<double, 4> y0{0, 0, 0, 0};
    long cadence = 1;

    std::string out_csv;
    std::string out_json;
    std::vector<std::string> inputs;              // report command
    std::uint64_t seed = 1;
    std::map<std::string, double> tolerances;     // overrides (e.g. "jacobi")

    bool operator==(const RunConfig&) const = default;
};

nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

} // namespace invlab
