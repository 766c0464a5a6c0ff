#include "hjfa/config.hpp"

#include <cstdlib>
#include <string>

#include "hjfa/error.hpp"

namespace hjfa {

namespace {

void override_from(const char* name, std::uint64_t& slot) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return;
    try {
        std::size_t used = 0;
        auto value = std::stoull(raw, &used);
        if (used != std::string(raw).size() || value == 0) throw std::invalid_argument(raw);
        slot = value;
    } catch (const std::exception&) {
        throw Error(ErrorCode::parse, std::string(name) + " must be a positive integer");
    }
}

}  // namespace

Limits Limits::from_env() {
    Limits limits;
    override_from("HP_MAX_CELLS", limits.max_cells);
    override_from("HP_TRIAL_DIVISION_BOUND", limits.trial_division_bound);
    return limits;
}

}  // namespace hjfa
