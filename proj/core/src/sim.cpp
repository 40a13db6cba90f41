#include "edgesched/sim.hpp"

#include <algorithm>

namespace edgesched {

NodeGrid::NodeGrid(NodeId node, int capacity, int horizon)
    : node_(node), capacity_(capacity), horizon_(horizon),
      rows_(horizon, std::vector<CellOwner>(capacity)) {}

int NodeGrid::used(int row) const {
  int count = 0;
  for (const CellOwner& c : rows_[row]) {
    if (c.occupied()) ++count;
  }
  return count;
}

bool NodeGrid::fits(int row, int amount) const {
  return used(row) + amount <= capacity_;
}

void NodeGrid::place(int row, int amount, int job_id, int component_index) {
  int placed = 0;
  for (CellOwner& c : rows_[row]) {
    if (placed == amount) break;
    if (!c.occupied()) {
      c = {job_id, component_index};
      ++placed;
    }
  }
  if (placed != amount) {
    throw InternalConsistencyError("node grid overflow on placement");
  }
}

void NodeGrid::shift() {
  rows_.erase(rows_.begin());
  rows_.emplace_back(capacity_);
}

LinkGrid::LinkGrid(NodeId from, NodeId to, int horizon)
    : from_(from), to_(to), horizon_(horizon), rows_(horizon) {}

bool LinkGrid::free_span(int row, int length) const {
  if (row < 0 || row + length > horizon_) return false;
  for (int r = row; r < row + length; ++r) {
    if (rows_[r].occupied()) return false;
  }
  return true;
}

void LinkGrid::place(int row, int length, int job_id, int component_index) {
  for (int r = row; r < row + length; ++r) {
    if (rows_[r].occupied()) {
      throw InternalConsistencyError("link grid overlap on placement");
    }
    rows_[r] = {job_id, component_index};
  }
}

void LinkGrid::shift() {
  rows_.erase(rows_.begin());
  rows_.emplace_back();
}

Simulator::Simulator(Topology topo, SimConfig cfg, std::vector<JobSpec> jobs)
    : topo_(std::move(topo)), cfg_(cfg), pending_(std::move(jobs)) {
  topo_.validate();
  if (cfg_.queue_slots < 1) throw InvalidTopologyError("queue needs >= 1 slot");
  for (const JobSpec& job : pending_) validate_job(job, topo_);
  std::stable_sort(pending_.begin(), pending_.end(),
                   [](const JobSpec& a, const JobSpec& b) {
                     return a.arrival_slot < b.arrival_slot;
                   });
  for (const NodeInfo& n : topo_.nodes) {
    node_grids_.emplace_back(n.id, n.capacity, cfg_.node_horizon);
  }
  const int nv = topo_.node_count();
  link_index_.assign(nv, std::vector<int>(nv, -1));
  for (NodeId u = 0; u < nv; ++u) {
    for (NodeId v = 0; v < nv; ++v) {
      if (u == v) continue;
      link_index_[u][v] = static_cast<int>(link_grids_.size());
      link_grids_.emplace_back(u, v, cfg_.link_horizon);
    }
  }
  queue_.assign(cfg_.queue_slots, std::nullopt);
  admit_arrivals();
}

const std::optional<QueuedJob>& Simulator::queue_slot(int index) const {
  return queue_.at(index);
}

int Simulator::link_index(NodeId u, NodeId v) const {
  int idx = link_index_[u][v];
  if (idx < 0) throw InternalConsistencyError("self-link requested");
  return idx;
}

bool Simulator::link_span_free(int index, int row, int length) const {
  if (!link_grids_[index].free_span(row, length)) return false;
  if (cfg_.strict_node_exclusive) {
    // One outbound transfer per sender per slot: every link sharing the
    // source must be idle over the span.
    NodeId from = link_grids_[index].from();
    for (const LinkGrid& lg : link_grids_) {
      if (lg.from() != from) continue;
      if (!lg.free_span(row, length)) return false;
    }
  }
  return true;
}

std::optional<Schedule> Simulator::plan(const JobSpec& job) const {
  Schedule sched;
  const int n = static_cast<int>(job.components.size());
  sched.component_starts.resize(n, -1);
  sched.transfers.resize(n > 0 ? n - 1 : 0);

  int earliest = clock_;
  for (int i = 0; i < n; ++i) {
    const ComponentSpec& comp = job.components[i];
    if (i > 0) {
      const ComponentSpec& prev = job.components[i - 1];
      const int prev_finish =
          sched.component_starts[i - 1] + prev.duration;
      if (prev.assigned_node == comp.assigned_node) {
        earliest = prev_finish;  // same-node hand-off, no link involved
      } else {
        const long long bw =
            topo_.bandwidth(prev.assigned_node, comp.assigned_node);
        const int delay = transfer_delay(prev.output_bytes, bw);
        const int li = link_index(prev.assigned_node, comp.assigned_node);
        // Earliest slot where the link is free for the whole transfer.
        int tr = -1;
        const int last_start = clock_ + cfg_.link_horizon - delay;
        for (int cand = prev_finish; cand <= last_start; ++cand) {
          if (link_span_free(li, cand - clock_, delay)) {
            tr = cand;
            break;
          }
        }
        if (tr < 0) return std::nullopt;
        sched.transfers[i - 1] = {true, prev.assigned_node,
                                  comp.assigned_node, tr, delay};
        earliest = tr + delay;
      }
    }
    const NodeGrid& grid = node_grids_[comp.assigned_node];
    const int last_start = clock_ + cfg_.node_horizon - comp.duration;
    int start = -1;
    for (int cand = std::max(earliest, clock_); cand <= last_start; ++cand) {
      bool ok = true;
      for (int r = cand - clock_; r < cand - clock_ + comp.duration; ++r) {
        if (!grid.fits(r, comp.resource)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        start = cand;
        break;
      }
    }
    if (start < 0) return std::nullopt;
    sched.component_starts[i] = start;
  }
  return sched;
}

void Simulator::commit(const JobSpec& job, const Schedule& sched) {
  for (std::size_t i = 0; i < job.components.size(); ++i) {
    const ComponentSpec& comp = job.components[i];
    NodeGrid& grid = node_grids_[comp.assigned_node];
    const int start = sched.component_starts[i];
    for (int r = start - clock_; r < start - clock_ + comp.duration; ++r) {
      grid.place(r, comp.resource, job.job_id, comp.index);
    }
    if (i + 1 < job.components.size() && sched.transfers[i].needed) {
      const TransferPlan& tp = sched.transfers[i];
      link_grids_[link_index(tp.from, tp.to)].place(tp.start_slot - clock_,
                                                    tp.delay, job.job_id,
                                                    comp.index);
    }
  }
}

std::optional<Schedule> Simulator::probe_schedule(int queue_index) const {
  const auto& slot = queue_.at(queue_index);
  if (!slot.has_value()) return std::nullopt;
  return plan(slot->job);
}

std::optional<Schedule> Simulator::try_schedule_job(int queue_index) {
  auto& slot = queue_.at(queue_index);
  if (!slot.has_value()) return std::nullopt;
  std::optional<Schedule> sched = plan(slot->job);
  if (!sched.has_value()) return std::nullopt;
  commit(slot->job, *sched);
  active_.push_back({std::move(slot->job), *sched, slot->base_time});
  slot.reset();
  return sched;
}

Simulator::SubactionResult Simulator::apply_subaction(int a) {
  if (a < 0 || a > cfg_.queue_slots) {
    throw InternalConsistencyError("sub-action out of range: " +
                                   std::to_string(a));
  }
  if (a == 0) return SubactionResult::Invalid;
  return try_schedule_job(a - 1).has_value() ? SubactionResult::Scheduled
                                             : SubactionResult::Invalid;
}

double Simulator::remaining_reward() const {
  double r = 0.0;
  for (const auto& slot : queue_) {
    if (slot.has_value()) r -= 1.0 / slot->base_time;
  }
  for (const QueuedJob& qj : backlog_) r -= 1.0 / qj.base_time;
  for (const ActiveJob& aj : active_) r -= 1.0 / aj.base_time;
  return r;
}

double Simulator::advance_time() {
  const double reward = remaining_reward();
  ++clock_;
  for (NodeGrid& g : node_grids_) g.shift();
  for (LinkGrid& g : link_grids_) g.shift();
  // Completion check: a job leaves the system once its last component's
  // final slot has elapsed.
  for (auto it = active_.begin(); it != active_.end();) {
    const int finish = it->schedule.finish_slot(it->job);
    if (finish <= clock_) {
      const int t_in_system = finish - it->job.arrival_slot;
      completed_.push_back(
          {std::move(it->job), it->schedule, t_in_system, it->base_time});
      it = active_.erase(it);
    } else {
      ++it;
    }
  }
  admit_arrivals();
  return reward;
}

void Simulator::admit_arrivals() {
  auto free_slot = [this]() -> int {
    for (int k = 0; k < cfg_.queue_slots; ++k) {
      if (!queue_[k].has_value()) return k;
    }
    return -1;
  };
  // Backlogged jobs are promoted first, in FIFO order.
  while (!backlog_.empty()) {
    int k = free_slot();
    if (k < 0) break;
    queue_[k] = std::move(backlog_.front());
    backlog_.pop_front();
  }
  while (next_pending_ < pending_.size() &&
         pending_[next_pending_].arrival_slot <= clock_) {
    JobSpec job = pending_[next_pending_++];
    ++arrived_;
    QueuedJob qj{std::move(job), 0};
    qj.base_time = job_base_time(qj.job, topo_);
    int k = free_slot();
    if (k >= 0) {
      queue_[k] = std::move(qj);
    } else if (static_cast<int>(backlog_.size()) < cfg_.backlog_cap) {
      backlog_.push_back(std::move(qj));
    } else if (cfg_.drop_on_backlog_overflow) {
      ++dropped_;
    } else {
      throw BacklogOverflowError("backlog full at slot " +
                                 std::to_string(clock_));
    }
  }
}

bool Simulator::episode_done() const {
  if (clock_ >= cfg_.max_slots) return true;
  if (next_pending_ < pending_.size()) return false;
  if (!backlog_.empty() || !active_.empty()) return false;
  for (const auto& slot : queue_) {
    if (slot.has_value()) return false;
  }
  return true;
}

EpisodeMetrics Simulator::episode_metrics() const {
  EpisodeMetrics m;
  m.completed = static_cast<int>(completed_.size());
  m.dropped = dropped_;
  if (m.completed == 0) {
    throw UndefinedMetricsError("no completed jobs");
  }
  double sum_t = 0.0;
  double sum_phi = 0.0;
  for (const CompletionRecord& rec : completed_) {
    sum_t += rec.t_in_system;
    sum_phi += job_slowdown(rec.t_in_system, rec.base_time);
  }
  m.mean_completion_time = sum_t / m.completed;
  m.mean_slowdown = sum_phi / m.completed;

  double censored_sum = 0.0;
  auto censor = [&](const JobSpec& job) {
    ++m.censored;
    censored_sum += clock_ - job.arrival_slot;
  };
  for (const auto& slot : queue_) {
    if (slot.has_value()) censor(slot->job);
  }
  for (const QueuedJob& qj : backlog_) censor(qj.job);
  for (const ActiveJob& aj : active_) censor(aj.job);
  if (m.censored > 0) m.censored_mean_time = censored_sum / m.censored;
  return m;
}

std::vector<int> Simulator::feasible_subactions() const {
  std::vector<int> out;
  for (int k = 0; k < cfg_.queue_slots; ++k) {
    if (queue_[k].has_value() && plan(queue_[k]->job).has_value()) {
      out.push_back(k + 1);
    }
  }
  return out;
}

void Simulator::check_invariants() const {
  // Conservation: every arrived job is in exactly one place.
  int in_queue = 0;
  for (const auto& slot : queue_) {
    if (slot.has_value()) ++in_queue;
  }
  const int accounted = in_queue + static_cast<int>(backlog_.size()) +
                        static_cast<int>(active_.size()) +
                        static_cast<int>(completed_.size()) + dropped_;
  if (accounted != arrived_) {
    throw InternalConsistencyError("job conservation violated");
  }
  // Capacity safety per row.
  for (const NodeGrid& g : node_grids_) {
    for (int r = 0; r < g.horizon(); ++r) {
      if (g.used(r) > g.capacity()) {
        throw InternalConsistencyError("capacity exceeded on node " +
                                       std::to_string(g.node()));
      }
    }
  }
  // Active schedules agree with grid contents.
  for (const ActiveJob& aj : active_) {
    for (std::size_t i = 0; i < aj.job.components.size(); ++i) {
      const ComponentSpec& comp = aj.job.components[i];
      const int start = aj.schedule.component_starts[i];
      for (int t = std::max(start, clock_); t < start + comp.duration; ++t) {
        const int row = t - clock_;
        if (row >= cfg_.node_horizon) break;
        int found = 0;
        const NodeGrid& g = node_grids_[comp.assigned_node];
        for (int c = 0; c < g.capacity(); ++c) {
          const CellOwner& cell = g.cell(row, c);
          if (cell.job_id == aj.job.job_id &&
              cell.component_index == comp.index) {
            ++found;
          }
        }
        if (found != comp.resource) {
          throw InternalConsistencyError(
              "grid cells disagree with schedule for job " +
              std::to_string(aj.job.job_id));
        }
      }
    }
  }
}

}  // namespace edgesched
