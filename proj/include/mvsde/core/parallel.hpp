#pragma once

#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include <Eigen/Core>

namespace mvsde {

// Fork-join worker pool for per-particle maps. Work is split into one
// contiguous index range per worker, so a given particle is always updated by
// exactly one thread and the schedule cannot influence the result. The first
// exception thrown by any range is rethrown on the calling thread.
class ThreadPool {
 public:
  explicit ThreadPool(int n_threads) : n_threads_(n_threads < 1 ? 1 : n_threads) {
    for (int w = 1; w < n_threads_; ++w) {
      workers_.emplace_back([this, w] { worker_loop(w); });
    }
  }

  ~ThreadPool() {
    {
      std::unique_lock lock(mu_);
      stop_ = true;
      ++epoch_;
    }
    cv_start_.notify_all();
    for (auto& t : workers_) t.join();
  }

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int size() const { return n_threads_; }

  // Runs body(begin, end) over a static partition of [0, n).
  void parallel_for(Eigen::Index n,
                    const std::function<void(Eigen::Index, Eigen::Index)>& body) {
    if (n_threads_ == 1 || n < 2 * n_threads_) {
      body(0, n);
      return;
    }
    {
      std::unique_lock lock(mu_);
      body_ = &body;
      total_ = n;
      pending_ = n_threads_ - 1;
      error_ = nullptr;
      ++epoch_;
    }
    cv_start_.notify_all();
    run_range(body, 0);
    std::exception_ptr error;
    {
      std::unique_lock lock(mu_);
      cv_done_.wait(lock, [this] { return pending_ == 0; });
      body_ = nullptr;
      error = error_;
    }
    if (error) std::rethrow_exception(error);
  }

 private:
  Eigen::Index chunk_begin(int w) const { return total_ * w / n_threads_; }

  void run_range(const std::function<void(Eigen::Index, Eigen::Index)>& body, int w) {
    try {
      body(chunk_begin(w), chunk_begin(w + 1));
    } catch (...) {
      std::unique_lock lock(mu_);
      if (!error_) error_ = std::current_exception();
    }
  }

  void worker_loop(int w) {
    std::uint64_t seen = 0;
    for (;;) {
      const std::function<void(Eigen::Index, Eigen::Index)>* body = nullptr;
      {
        std::unique_lock lock(mu_);
        cv_start_.wait(lock, [&] { return epoch_ != seen; });
        seen = epoch_;
        if (stop_) return;
        body = body_;
      }
      run_range(*body, w);
      {
        std::unique_lock lock(mu_);
        if (--pending_ == 0) cv_done_.notify_one();
      }
    }
  }

  int n_threads_;
  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable cv_start_;
  std::condition_variable cv_done_;
  const std::function<void(Eigen::Index, Eigen::Index)>* body_ = nullptr;
  Eigen::Index total_ = 0;
  int pending_ = 0;
  std::uint64_t epoch_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

}  // namespace mvsde
