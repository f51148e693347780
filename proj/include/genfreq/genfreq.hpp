#pragma once

// Convenience header pulling in the whole library.

#include "csv_io.hpp"     // IWYU pragma: export
#include "curve.hpp"      // IWYU pragma: export
#include "errors.hpp"     // IWYU pragma: export
#include "estimators.hpp" // IWYU pragma: export
#include "frequency.hpp"  // IWYU pragma: export
#include "ga.hpp"         // IWYU pragma: export
#include "signals.hpp"    // IWYU pragma: export
