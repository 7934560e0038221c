#include "qsw/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsw {

RowPartition RowPartition::even(std::size_t dim, std::size_t n_workers) {
  if (n_workers == 0) throw std::invalid_argument("worker count must be at least 1");
  RowPartition p;
  p.starts.resize(n_workers + 1);
  const std::size_t base = dim / n_workers;
  const std::size_t extra = dim % n_workers;
  p.starts[0] = 0;
  for (std::size_t w = 0; w < n_workers; ++w) {
    p.starts[w + 1] = p.starts[w] + base + (w < extra ? 1 : 0);
  }
  return p;
}

std::size_t RowPartition::owner(std::size_t row) const {
  auto it = std::upper_bound(starts.begin(), starts.end(), row);
  return static_cast<std::size_t>(it - starts.begin()) - 1;
}

CommPlan plan_communication(const RowPartition& partition,
                            const std::vector<SparseMatrix>& local_blocks) {
  const std::size_t n = partition.worker_count();
  if (local_blocks.size() != n) {
    throw std::invalid_argument("one local block per worker is required");
  }

  // Receive lists: remote columns referenced by each block, grouped by owner.
  std::vector<std::vector<std::vector<std::size_t>>> recv(n);
  for (auto& r : recv) r.resize(n);
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<std::size_t> remote;
    for (std::size_t c : local_blocks[w].col_indices()) {
      if (c < partition.begin(w) || c >= partition.end(w)) remote.push_back(c);
    }
    std::sort(remote.begin(), remote.end());
    remote.erase(std::unique(remote.begin(), remote.end()), remote.end());
    for (std::size_t c : remote) recv[w][partition.owner(c)].push_back(c);
  }

  CommPlan plan(n);
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t peer = 0; peer < n; ++peer) {
      if (peer == w) continue;
      if (recv[w][peer].empty() && recv[peer][w].empty()) continue;
      PeerExchange ex;
      ex.peer = peer;
      ex.recv = recv[w][peer];
      ex.send = recv[peer][w];  // symmetric by construction
      plan[w].push_back(std::move(ex));
    }
  }
  return plan;
}

WorkerPool::WorkerPool(std::size_t n_workers) : n_(n_workers) {
  if (n_workers == 0) throw std::invalid_argument("worker count must be at least 1");
  if (n_ > 1) {
    threads_.reserve(n_);
    for (std::size_t id = 0; id < n_; ++id) {
      threads_.emplace_back([this, id] { thread_main(id); });
    }
  }
}

WorkerPool::~WorkerPool() {
  if (n_ > 1) {
    {
      std::lock_guard lock(mutex_);
      stopping_ = true;
    }
    cv_start_.notify_all();
    for (auto& t : threads_) t.join();
  }
}

void WorkerPool::run(const std::function<void(std::size_t)>& fn) {
  if (n_ == 1) {
    fn(0);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    task_ = &fn;
    remaining_ = n_;
    ++generation_;
  }
  cv_start_.notify_all();
  std::unique_lock lock(mutex_);
  cv_done_.wait(lock, [this] { return remaining_ == 0; });
  task_ = nullptr;
}

void WorkerPool::thread_main(std::size_t id) {
  std::uint64_t seen = 0;
  for (;;) {
    const std::function<void(std::size_t)>* task = nullptr;
    {
      std::unique_lock lock(mutex_);
      cv_start_.wait(lock, [&] { return stopping_ || generation_ != seen; });
      if (stopping_) return;
      seen = generation_;
      task = task_;
    }
    (*task)(id);
    {
      std::lock_guard lock(mutex_);
      if (--remaining_ == 0) cv_done_.notify_one();
    }
  }
}

}  // namespace qsw
