#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace edgesched {

/// Index into Topology::nodes. Node ids are dense, 0-based.
using NodeId = int;

struct InvalidTopologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidJobError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Raised when simulator bookkeeping contradicts itself (a bug, not bad input).
struct InternalConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

/// One stage of a job: fixed duration, per-slot resource demand, fixed node.
struct ComponentSpec {
  int job_id = 0;
  int index = 0;  // 1-based order position within the job
  int duration = 0;
  int resource = 0;
  NodeId assigned_node = -1;
  long long output_bytes = 0;  // data sent to the next component; 0 for the last
};

struct JobSpec {
  int job_id = 0;
  int arrival_slot = 0;
  std::vector<ComponentSpec> components;  // ordered, indices 1..n
};

struct NodeInfo {
  NodeId id = -1;
  int capacity = 0;  // resource slots per time slot
};

/// Full mesh of edge nodes; links are directed (u,v) pairs with a bandwidth
/// in data units per slot.
struct Topology {
  std::vector<NodeInfo> nodes;
  std::map<std::pair<NodeId, NodeId>, long long> links;

  static Topology full_mesh(int node_count, int capacity, long long bandwidth);

  int node_count() const { return static_cast<int>(nodes.size()); }
  int capacity_of(NodeId v) const;
  long long bandwidth(NodeId u, NodeId v) const;

  /// Throws InvalidTopologyError unless ids are dense 0..n-1, capacities and
  /// bandwidths are positive, and links cover every ordered pair.
  void validate() const;
};

struct TransferPlan {
  bool needed = false;  // false for same-node hand-offs and the last component
  NodeId from = -1;
  NodeId to = -1;
  int start_slot = -1;  // absolute
  int delay = 0;        // occupied link slots
};

/// Concrete start slots for one job, absolute in episode time.
struct Schedule {
  std::vector<int> component_starts;
  std::vector<TransferPlan> transfers;  // one per consecutive component pair

  int finish_slot(const JobSpec& job) const;  // exclusive end of last component
};

/// Slots needed to move `bytes` over a link of `bandwidth` units/slot,
/// rounded up to whole slots. Zero bytes cost zero slots.
int transfer_delay(long long bytes, long long bandwidth);

/// Ideal time in system: component durations plus cross-node transfer delays,
/// assuming no contention.
int job_base_time(const JobSpec& job, const Topology& topo);

/// phi = T_g / T_base, always >= 1 for a correctly simulated job.
double job_slowdown(int t_in_system, int base_time);

/// LBF key: sum of per-component compute sizes (resource x duration) plus all
/// transferred data sizes.
long long job_total_bytes(const JobSpec& job);

/// Throws InvalidJobError if the job breaks any structural invariant against
/// the given topology.
void validate_job(const JobSpec& job, const Topology& topo);

}  // namespace edgesched
