#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stonework/report.hpp"

namespace stonework {

// Named property suites behind the `suite` command and the acceptance run.
// Deterministic: identical (name, seed, count) give identical reports.
// Throws UnknownSuite for unrecognized names.
Report run_suite(const std::string& name, uint64_t seed, int count, size_t cap = 1000000);

std::vector<std::string> suite_names();

// Default case counts per suite (the documented acceptance configuration).
int suite_default_count(const std::string& name);

}  // namespace stonework
