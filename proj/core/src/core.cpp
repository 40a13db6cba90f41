#include "edgesched/core.hpp"

namespace edgesched {

Topology Topology::full_mesh(int node_count, int capacity, long long bandwidth) {
  Topology topo;
  topo.nodes.reserve(node_count);
  for (NodeId v = 0; v < node_count; ++v) {
    topo.nodes.push_back({v, capacity});
  }
  for (NodeId u = 0; u < node_count; ++u) {
    for (NodeId v = 0; v < node_count; ++v) {
      if (u != v) topo.links[{u, v}] = bandwidth;
    }
  }
  return topo;
}

int Topology::capacity_of(NodeId v) const {
  if (v < 0 || v >= node_count()) {
    throw InvalidTopologyError("unknown node id " + std::to_string(v));
  }
  return nodes[v].capacity;
}

long long Topology::bandwidth(NodeId u, NodeId v) const {
  auto it = links.find({u, v});
  if (it == links.end()) {
    throw InvalidTopologyError("no link between nodes " + std::to_string(u) +
                               " and " + std::to_string(v));
  }
  return it->second;
}

void Topology::validate() const {
  if (nodes.empty()) throw InvalidTopologyError("topology has no nodes");
  for (int i = 0; i < node_count(); ++i) {
    if (nodes[i].id != i) {
      throw InvalidTopologyError("node ids must be dense 0..n-1");
    }
    if (nodes[i].capacity <= 0) {
      throw InvalidTopologyError("node " + std::to_string(i) +
                                 " has nonpositive capacity");
    }
  }
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v = 0; v < node_count(); ++v) {
      if (u == v) continue;
      auto it = links.find({u, v});
      if (it == links.end()) {
        throw InvalidTopologyError("missing link " + std::to_string(u) + "->" +
                                   std::to_string(v));
      }
      if (it->second <= 0) {
        throw InvalidTopologyError("link " + std::to_string(u) + "->" +
                                   std::to_string(v) +
                                   " has nonpositive bandwidth");
      }
    }
  }
}

int Schedule::finish_slot(const JobSpec& job) const {
  if (component_starts.size() != job.components.size() ||
      component_starts.empty()) {
    throw InternalConsistencyError("schedule does not match job");
  }
  return component_starts.back() + job.components.back().duration;
}

int transfer_delay(long long bytes, long long bandwidth) {
  if (bandwidth <= 0) {
    throw InvalidTopologyError("nonpositive bandwidth " +
                               std::to_string(bandwidth));
  }
  if (bytes < 0) {
    throw InvalidJobError("negative transfer size " + std::to_string(bytes));
  }
  if (bytes == 0) return 0;
  return static_cast<int>((bytes + bandwidth - 1) / bandwidth);
}

int job_base_time(const JobSpec& job, const Topology& topo) {
  validate_job(job, topo);
  int total = 0;
  for (std::size_t i = 0; i < job.components.size(); ++i) {
    const ComponentSpec& comp = job.components[i];
    total += comp.duration;
    if (i + 1 < job.components.size()) {
      NodeId from = comp.assigned_node;
      NodeId to = job.components[i + 1].assigned_node;
      if (from != to) {
        total += transfer_delay(comp.output_bytes, topo.bandwidth(from, to));
      }
    }
  }
  return total;
}

double job_slowdown(int t_in_system, int base_time) {
  if (base_time < 1) {
    throw InternalConsistencyError("base time must be >= 1, got " +
                                   std::to_string(base_time));
  }
  if (t_in_system < base_time) {
    throw InternalConsistencyError(
        "job finished faster than its base time: T=" +
        std::to_string(t_in_system) + " base=" + std::to_string(base_time));
  }
  return static_cast<double>(t_in_system) / static_cast<double>(base_time);
}

long long job_total_bytes(const JobSpec& job) {
  long long total = 0;
  for (const ComponentSpec& comp : job.components) {
    total += static_cast<long long>(comp.resource) * comp.duration;
    total += comp.output_bytes;
  }
  return total;
}

void validate_job(const JobSpec& job, const Topology& topo) {
  if (job.components.empty()) {
    throw InvalidJobError("job " + std::to_string(job.job_id) +
                          " has no components");
  }
  if (job.arrival_slot < 0) {
    throw InvalidJobError("job " + std::to_string(job.job_id) +
                          " has negative arrival slot");
  }
  const int n = static_cast<int>(job.components.size());
  for (int i = 0; i < n; ++i) {
    const ComponentSpec& comp = job.components[i];
    if (comp.index != i + 1) {
      throw InvalidJobError("job " + std::to_string(job.job_id) +
                            ": component indices must be 1..n in order");
    }
    if (comp.duration < 1) {
      throw InvalidJobError("job " + std::to_string(job.job_id) +
                            ": component duration must be >= 1");
    }
    if (comp.resource < 1) {
      throw InvalidJobError("job " + std::to_string(job.job_id) +
                            ": component resource must be >= 1");
    }
    if (comp.assigned_node < 0 || comp.assigned_node >= topo.node_count()) {
      throw InvalidJobError("job " + std::to_string(job.job_id) +
                            ": component assigned to unknown node " +
                            std::to_string(comp.assigned_node));
    }
    if (comp.resource > topo.capacity_of(comp.assigned_node)) {
      throw InvalidJobError("job " + std::to_string(job.job_id) +
                            ": component resource exceeds node capacity");
    }
    const bool last = (i == n - 1);
    if (last && comp.output_bytes != 0) {
      throw InvalidJobError("job " + std::to_string(job.job_id) +
                            ": last component must have zero output bytes");
    }
    if (!last && comp.output_bytes <= 0) {
      throw InvalidJobError("job " + std::to_string(job.job_id) +
                            ": non-final component must have positive output "
                            "bytes");
    }
  }
}

}  // namespace edgesched
