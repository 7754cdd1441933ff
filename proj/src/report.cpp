#include "mge/report.hpp"

namespace mge {

nlohmann::json CheckReport::to_json() const {
    return {{"check", check},
            {"parameters", parameters},
            {"violations", violations},
            {"tight_cases", tight_cases},
            {"certified", certified},
            {"runtime_ms", runtime_ms}};
}

}  // namespace mge
