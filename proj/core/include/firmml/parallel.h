#pragma once

#include <cstddef>

namespace firmml {

// Worker count: FIRMML_THREADS when set to a positive integer, else the
// hardware concurrency (at least 1).
std::size_t thread_budget();

}  // namespace firmml
