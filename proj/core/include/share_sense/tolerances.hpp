#pragma once

namespace share_sense {

// Feasibility residual on row-scaled data.
inline constexpr double kTolFeas = 1e-8;
// Bound classification (at zero / at upper limit / interior). Shared by the
// primal and dual active-agent counts so both classify identically.
inline constexpr double kTolAct = 1e-7;
// Reduced-cost sign tests.
inline constexpr double kTolRc = 1e-9;

}  // namespace share_sense
