#pragma once

#include <random>

#include "edgesched/core.hpp"
#include "edgesched/sim.hpp"

namespace edgesched {

struct PolicyDecision {
  int sub_action = 0;  // 0 = void, k > 0 = queue slot k
};

/// Shortest Job First: among schedulable queued jobs, pick the least base
/// time; ties go to the lowest slot index. Void when none is schedulable.
PolicyDecision sjf_pick(const Simulator& sim);

/// Least Bytes First: same filter, keyed by total bytes.
PolicyDecision lbf_pick(const Simulator& sim);

/// Uniform over currently schedulable queued jobs; void when none.
PolicyDecision random_pick(const Simulator& sim, std::mt19937_64& rng);

}  // namespace edgesched
