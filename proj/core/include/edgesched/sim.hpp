#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "edgesched/core.hpp"

namespace edgesched {

struct UndefinedMetricsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BacklogOverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CellOwner {
  int job_id = -1;
  int component_index = 0;
  bool occupied() const { return job_id >= 0; }
};

/// Occupancy of one node over the scheduling horizon. Row 0 is the current
/// slot; rows shift up as time advances.
class NodeGrid {
 public:
  NodeGrid(NodeId node, int capacity, int horizon);

  NodeId node() const { return node_; }
  int capacity() const { return capacity_; }
  int horizon() const { return horizon_; }
  const CellOwner& cell(int row, int col) const { return rows_[row][col]; }
  int used(int row) const;
  bool fits(int row, int amount) const;
  void place(int row, int amount, int job_id, int component_index);
  void shift();

 private:
  NodeId node_;
  int capacity_;
  int horizon_;
  std::vector<std::vector<CellOwner>> rows_;
};

/// One directed link; carries at most one transfer per slot.
class LinkGrid {
 public:
  LinkGrid(NodeId from, NodeId to, int horizon);

  NodeId from() const { return from_; }
  NodeId to() const { return to_; }
  int horizon() const { return horizon_; }
  const CellOwner& cell(int row) const { return rows_[row]; }
  bool free_span(int row, int length) const;
  void place(int row, int length, int job_id, int component_index);
  void shift();

 private:
  NodeId from_;
  NodeId to_;
  int horizon_;
  std::vector<CellOwner> rows_;
};

struct QueuedJob {
  JobSpec job;
  int base_time = 0;
};

struct ActiveJob {
  JobSpec job;
  Schedule schedule;
  int base_time = 0;
};

struct CompletionRecord {
  JobSpec job;
  Schedule schedule;
  int t_in_system = 0;
  int base_time = 0;
};

struct EpisodeMetrics {
  double mean_completion_time = 0.0;  // over completed jobs only
  double mean_slowdown = 0.0;         // over completed jobs only
  int completed = 0;
  int censored = 0;  // still in system at cutoff; reported, never mixed in
  int dropped = 0;
  double censored_mean_time = 0.0;  // T = cutoff - arrival for censored jobs
};

struct SimConfig {
  int queue_slots = 5;  // K addressable positions visible to the policy
  int backlog_cap = 60;
  int node_horizon = 100;  // how far ahead node resources can be reserved
  int link_horizon = 100;  // same for link slots
  bool strict_node_exclusive = false;  // sender may serve one link per slot
  bool drop_on_backlog_overflow = false;  // default: overflow is an error
  int max_slots = 100000;                 // episode cutoff
};

/// Time-slotted scheduling environment. Jobs enter the waiting queue (or
/// backlog) on arrival; a sub-action picks a queue slot and, if feasible,
/// commits that job's components at their earliest feasible slots. Time
/// advances only when a sub-action is invalid.
class Simulator {
 public:
  enum class SubactionResult { Scheduled, Invalid };

  Simulator(Topology topo, SimConfig cfg, std::vector<JobSpec> jobs);

  int clock() const { return clock_; }
  const Topology& topology() const { return topo_; }
  const SimConfig& config() const { return cfg_; }

  int queue_size() const { return cfg_.queue_slots; }
  const std::optional<QueuedJob>& queue_slot(int index) const;
  int backlog_count() const { return static_cast<int>(backlog_.size()); }
  const NodeGrid& node_grid(NodeId v) const { return node_grids_[v]; }
  const std::vector<LinkGrid>& link_grids() const { return link_grids_; }
  const std::vector<ActiveJob>& active_jobs() const { return active_; }
  const std::vector<CompletionRecord>& completed() const { return completed_; }
  int dropped_count() const { return dropped_; }
  int arrived_count() const { return arrived_; }

  /// Side-effect-free feasibility probe of the job in a queue slot.
  std::optional<Schedule> probe_schedule(int queue_index) const;

  /// Earliest-feasible commit of the job in a queue slot. Returns the
  /// schedule on success; nullopt if the slot is empty or no placement fits
  /// within the horizons (state unchanged in both cases).
  std::optional<Schedule> try_schedule_job(int queue_index);

  /// a = 0 is the void action; a = k > 0 targets queue slot k (1-based).
  SubactionResult apply_subaction(int a);

  /// Reward over remaining jobs, then one slot of time: grids shift,
  /// finished jobs complete, new arrivals are admitted.
  double advance_time();

  bool episode_done() const;
  EpisodeMetrics episode_metrics() const;

  /// Queue slots whose jobs are currently schedulable (1-based sub-actions).
  std::vector<int> feasible_subactions() const;

  /// Internal bookkeeping audit used by tests; throws on violation.
  void check_invariants() const;

 private:
  void admit_arrivals();
  double remaining_reward() const;
  std::optional<Schedule> plan(const JobSpec& job) const;
  void commit(const JobSpec& job, const Schedule& sched);
  bool link_span_free(int link_index, int row, int length) const;
  int link_index(NodeId u, NodeId v) const;

  Topology topo_;
  SimConfig cfg_;
  int clock_ = 0;
  std::vector<NodeGrid> node_grids_;
  std::vector<LinkGrid> link_grids_;
  std::vector<std::vector<int>> link_index_;  // [u][v] -> index, -1 on diag
  std::vector<std::optional<QueuedJob>> queue_;
  std::deque<QueuedJob> backlog_;
  std::vector<ActiveJob> active_;
  std::vector<CompletionRecord> completed_;
  std::vector<JobSpec> pending_;  // arrival-ordered
  std::size_t next_pending_ = 0;
  int arrived_ = 0;
  int dropped_ = 0;
};

}  // namespace edgesched
