#include "edgesched/encode.hpp"

#include <string>

namespace edgesched {

void EncodingSpec::validate() const {
  auto positive = [](int v, const char* name) {
    if (v <= 0) {
      throw EncodingError(std::string(name) + " must be positive");
    }
  };
  positive(node_width, "node_width");
  positive(node_horizon, "node_horizon");
  positive(link_horizon, "link_horizon");
  positive(queue_slots, "queue_slots");
  positive(max_components, "max_components");
  positive(backlog_cap, "backlog_cap");
  positive(node_count, "node_count");
  if (link_count != node_count * (node_count - 1)) {
    throw EncodingError("link_count must equal node_count*(node_count-1)");
  }
}

EncodingSpec encoding_spec_for(const Simulator& sim, int max_components) {
  EncodingSpec spec;
  spec.node_count = sim.topology().node_count();
  spec.link_count = spec.node_count * (spec.node_count - 1);
  spec.node_horizon = sim.config().node_horizon;
  spec.link_horizon = sim.config().link_horizon;
  spec.queue_slots = sim.config().queue_slots;
  spec.backlog_cap = sim.config().backlog_cap;
  spec.max_components = max_components;
  int width = 0;
  for (const NodeInfo& n : sim.topology().nodes) {
    width = std::max(width, n.capacity);
  }
  spec.node_width = width;
  spec.validate();
  return spec;
}

EncodedState encode_state(const Simulator& sim, const EncodingSpec& spec) {
  spec.validate();
  if (sim.topology().node_count() != spec.node_count ||
      static_cast<int>(sim.link_grids().size()) != spec.link_count ||
      sim.config().queue_slots != spec.queue_slots ||
      sim.config().node_horizon != spec.node_horizon ||
      sim.config().link_horizon != spec.link_horizon) {
    throw EncodingError("simulator dimensions do not match encoding spec");
  }

  EncodedState out(spec.vector_length(), 0.0f);
  std::size_t pos = 0;

  // Node images: one binary cell per (node, slot, resource column).
  for (NodeId v = 0; v < spec.node_count; ++v) {
    const NodeGrid& grid = sim.node_grid(v);
    for (int r = 0; r < spec.node_horizon; ++r) {
      for (int c = 0; c < spec.node_width; ++c) {
        const bool occupied =
            c < grid.capacity() && grid.cell(r, c).occupied();
        out[pos++] = occupied ? 1.0f : 0.0f;
      }
    }
  }

  // Link images: one binary cell per (link, slot).
  for (const LinkGrid& lg : sim.link_grids()) {
    for (int r = 0; r < spec.link_horizon; ++r) {
      out[pos++] = lg.cell(r).occupied() ? 1.0f : 0.0f;
    }
  }

  // Waiting queue: K slots of C_max component blocks.
  for (int k = 0; k < spec.queue_slots; ++k) {
    const auto& slot = sim.queue_slot(k);
    if (slot.has_value() && static_cast<int>(slot->job.components.size()) >
                                spec.max_components) {
      throw EncodingError("job exceeds max_components");
    }
    for (int j = 0; j < spec.max_components; ++j) {
      if (slot.has_value() &&
          j < static_cast<int>(slot->job.components.size())) {
        const ComponentSpec& comp = slot->job.components[j];
        if (comp.duration > spec.node_horizon ||
            comp.resource > spec.node_width) {
          throw EncodingError("component exceeds image dimensions");
        }
        out[pos++] =
            static_cast<float>(comp.duration) / spec.node_horizon;
        out[pos++] = static_cast<float>(comp.resource) / spec.node_width;
        out[pos++] =
            static_cast<float>(comp.index) / spec.max_components;
        for (NodeId v = 0; v < spec.node_count; ++v) {
          out[pos++] = (comp.assigned_node == v) ? 1.0f : 0.0f;
        }
      } else {
        pos += spec.component_features();  // zero padding
      }
    }
  }

  // Backlog: a single normalized count.
  out[pos++] = static_cast<float>(sim.backlog_count()) / spec.backlog_cap;

  if (pos != out.size()) {
    throw InternalConsistencyError("encoding length mismatch");
  }
  return out;
}

}  // namespace edgesched
