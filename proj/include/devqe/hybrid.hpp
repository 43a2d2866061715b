#pragma once

#include "devqe/de.hpp"
#include "devqe/lbfgs.hpp"

namespace devqe {

// Global DE phase followed by an L-BFGS polish started from the best DE
// individual. Returns the polished result with evaluation, iteration and
// trace bookkeeping spanning both phases.
OptResult hybrid_minimize(const Objective& objective, const GradientFn& gradient,
                          const DEConfig& de_config, const LbfgsConfig& lbfgs_config);

}  // namespace devqe
