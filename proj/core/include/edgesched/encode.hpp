#pragma once

#include <cstddef>
#include <vector>

#include "edgesched/core.hpp"
#include "edgesched/sim.hpp"

namespace edgesched {

struct EncodingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dimensions of the flattened state representation.
struct EncodingSpec {
  int node_width = 20;     // resource slots per node image row
  int node_horizon = 100;  // node image height in slots
  int link_horizon = 100;  // link image height in slots
  int queue_slots = 5;     // K
  int max_components = 3;  // C_max
  int backlog_cap = 60;
  int node_count = 3;
  int link_count = 6;  // ordered pairs of distinct nodes

  /// Per-component feature width: duration, resource, order, node one-hot.
  int component_features() const { return 3 + node_count; }

  std::size_t vector_length() const {
    return static_cast<std::size_t>(node_count) * node_horizon * node_width +
           static_cast<std::size_t>(link_count) * link_horizon +
           static_cast<std::size_t>(queue_slots) * max_components *
               component_features() +
           1;
  }

  void validate() const;
};

/// Flat feature vector in [0,1]: binary node/link occupancy images, numeric
/// per-component queue blocks, and a normalized backlog count.
using EncodedState = std::vector<float>;

EncodingSpec encoding_spec_for(const Simulator& sim, int max_components);

EncodedState encode_state(const Simulator& sim, const EncodingSpec& spec);

}  // namespace edgesched
