// Fast end-to-end sanity checks, one report line per invariant.
#pragma once

#include <functional>
#include <string>

namespace dlab {

// Runs the quick invariant suite on small grids, emitting one "ok ..." or
// "FAIL ..." line per check; returns the number of failures (0 = healthy).
int run_selftest(const std::function<void(const std::string&)>& emit);

}  // namespace dlab
