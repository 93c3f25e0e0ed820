#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "hasse/coeffield.hpp"

namespace hasse {

// Independent stream per module, so adding draws in one module does not
// shift another's.
std::mt19937_64 module_rng(std::uint64_t seed, std::string_view module);

// Seeded property suites over every module, at desk scale.
std::vector<CheckResult> run_selftest(std::uint64_t seed);

}  // namespace hasse
