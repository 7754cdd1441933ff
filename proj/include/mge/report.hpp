#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace mge {

// Machine-readable result of one verification suite.
struct CheckReport {
    std::string check;
    nlohmann::json parameters = nlohmann::json::object();
    std::vector<nlohmann::json> violations;
    std::vector<nlohmann::json> tight_cases;
    double runtime_ms = 0;
    bool certified = true;  // false when a budget cut the search short

    bool ok() const { return violations.empty() && certified; }
    nlohmann::json to_json() const;
};

}  // namespace mge
