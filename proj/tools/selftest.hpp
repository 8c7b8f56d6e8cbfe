#pragma once

#include <ostream>

namespace prelie {

// Reduced-order self-check of the engine: expansion fixtures, quotient and
// group laws, flow round trips, counting identities, and the printed-display
// comparison at order 5 (including the corolla-5 report). Returns true when
// every check passes.
bool run_selftest(int order, std::ostream& out);

}  // namespace prelie
