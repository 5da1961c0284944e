#pragma once

namespace ergolab::pilot {

// Envelope constant for the pair correlation bound value <= C * N^(b+1-2a).
// Fitted once on calibration runs (20 seeds, N in {1e3, 1e4, 1e5}, a = 0.1,
// b = 0.5, max observed value/N^(b+1-2a) = 1.281) and frozen. The data file
// data/pilot_constants.txt carries the same value for external tooling; a
// test keeps the two in sync.
inline constexpr double pair_sum_envelope = 3.0;

}  // namespace ergolab::pilot
