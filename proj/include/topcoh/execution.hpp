#pragma once

namespace topcoh {

// Selects the OpenMP kernel or the serial reference path. Both must produce
// identical results; tests and the bench target compare them.
enum class Execution { Serial, Parallel };

}  // namespace topcoh
