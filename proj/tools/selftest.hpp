#pragma once

#include <cstdint>
#include <ostream>

namespace hessmin::tool {

/// Randomized property checks over the library; prints one line per
/// property and returns the number of failures.
int run_selftest(std::uint64_t seed, int cases, std::ostream& out);

}  // namespace hessmin::tool
