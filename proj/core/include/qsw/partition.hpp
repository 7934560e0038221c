#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "qsw/sparse.hpp"

namespace qsw {

/// Contiguous row ranges covering [0, dim), one per worker.
struct RowPartition {
  std::vector<std::size_t> starts;  // length worker_count() + 1

  /// Near-equal contiguous split: dim/n rows each, remainder spread over the
  /// leading workers.
  static RowPartition even(std::size_t dim, std::size_t n_workers);

  std::size_t worker_count() const { return starts.size() - 1; }
  std::size_t dim() const { return starts.back(); }
  std::size_t begin(std::size_t w) const { return starts[w]; }
  std::size_t end(std::size_t w) const { return starts[w + 1]; }
  std::size_t size(std::size_t w) const { return starts[w + 1] - starts[w]; }
  std::size_t owner(std::size_t row) const;

  bool operator==(const RowPartition&) const = default;
};

/// One worker's exchange with a peer: which vector elements it receives from
/// the peer before each multiplication, and which of its own elements the
/// peer expects in return. Indices are global and sorted.
struct PeerExchange {
  std::size_t peer = 0;
  std::vector<std::size_t> recv;
  std::vector<std::size_t> send;
};

/// Per-worker exchange lists. Symmetric by construction: worker a's send list
/// for peer b equals worker b's recv list for peer a.
using CommPlan = std::vector<std::vector<PeerExchange>>;

/// Derives the minimal exchange lists from the nonzero columns of each
/// worker's row block that fall outside its own range.
CommPlan plan_communication(const RowPartition& partition,
                            const std::vector<SparseMatrix>& local_blocks);

/// Fixed-size pool running one task per worker in lockstep rounds. Results
/// are deterministic: each worker touches only its own outputs, and rounds
/// are separated by full joins.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t n_workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const { return n_; }

  /// Runs fn(w) for every worker id w and waits until all complete.
  void run(const std::function<void(std::size_t)>& fn);

 private:
  void thread_main(std::size_t id);

  std::size_t n_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable cv_start_;
  std::condition_variable cv_done_;
  const std::function<void(std::size_t)>* task_ = nullptr;
  std::uint64_t generation_ = 0;
  std::size_t remaining_ = 0;
  bool stopping_ = false;
};

}  // namespace qsw
