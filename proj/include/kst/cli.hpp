#pragma once

// Command-line front end shared by the kstgen binary and the tests.
// Exit codes: 0 certified pass, 1 usage or validation error, 2 uncertified
// (budget exhausted, no seed certified, or a K_{s,t} found by verify).

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "kst/io.hpp"

namespace kst {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUncertified = 2;

struct CommandConfig {
    std::string subcommand;
    std::map<std::string, std::string> params;  // flag name (no dashes) -> value
    std::optional<std::uint64_t> seed;
    std::string out;
    std::uint64_t budget_subsets = 5'000'000;
    std::uint64_t budget_points = 1ull << 22;
    std::uint32_t trials = 20;
    unsigned workers = 1;

    friend bool operator==(const CommandConfig&, const CommandConfig&) = default;
};

json to_json(const CommandConfig& c);
CommandConfig config_from_json(const json& j);

/// Flags accepted in `params` for a subcommand; config_from_json rejects others.
const std::vector<std::string>& allowed_params(const std::string& subcommand);

/// Plan overrides taken from a config's parameter map.
ConstructionPlan plan_from_config(const CommandConfig& c);

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kst
