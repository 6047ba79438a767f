#pragma once

#include <cstdint>
#include <vector>

namespace ltlrl::rl {

/* Generalized advantage estimation over one contiguous stream of steps.
 *
 *   delta_t = x_t + gamma (1 - done_t) values_{t+1} - values_t
 *   A_t     = delta_t + gamma lambda_gae (1 - done_t) A_{t+1}
 *
 * x holds the per-step signal (reward or cost), length T.  values holds the
 * critic's estimates for s_0..s_T (length T + 1); the final entry is the
 * bootstrap past the end of the buffer and is ignored when the last step
 * terminates.  done marks episode ends: no value flows across a set flag, so
 * a truncated episode's bootstrap must be folded into x by the caller.
 * Throws LengthMismatch when the arrays disagree. */
std::vector<double> gae(const std::vector<double>& x, const std::vector<double>& values,
                        const std::vector<std::uint8_t>& done, double gamma,
                        double lambda_gae);

}  // namespace ltlrl::rl
