#pragma once

#include <atomic>
#include <cstddef>

#include "mpsham/errors.hpp"

namespace mpsham {

/// Tracks the large dense buffers of a computation against a single byte
/// budget.  Every sizeable allocation is announced through reserve() before
/// the memory is touched, so exceeding the budget surfaces as a ResourceError
/// instead of an OOM kill.  Thread safe; the peak counter is monotone.
class MemoryBudget {
 public:
  static constexpr std::size_t kDefaultBytes = std::size_t{4} << 30;  // 4 GiB

  explicit MemoryBudget(std::size_t budget_bytes = kDefaultBytes)
      : budget_(budget_bytes) {}

  std::size_t budget() const { return budget_; }
  void set_budget(std::size_t bytes) { budget_ = bytes; }

  std::size_t in_use() const { return used_.load(); }
  std::size_t peak() const { return peak_.load(); }
  void reset_peak() { peak_.store(used_.load()); }

  void reserve(std::size_t bytes) {
    std::size_t prev = used_.fetch_add(bytes);
    if (prev + bytes > budget_) {
      used_.fetch_sub(bytes);
      throw ResourceError(bytes, prev, budget_);
    }
    std::size_t cur = prev + bytes;
    std::size_t seen = peak_.load();
    while (seen < cur && !peak_.compare_exchange_weak(seen, cur)) {
    }
  }

  void release(std::size_t bytes) { used_.fetch_sub(bytes); }

 private:
  std::size_t budget_;
  std::atomic<std::size_t> used_{0};
  std::atomic<std::size_t> peak_{0};
};

/// RAII reservation against a MemoryBudget.
class MemReservation {
 public:
  MemReservation() = default;
  MemReservation(MemoryBudget& budget, std::size_t bytes)
      : budget_(&budget), bytes_(bytes) {
    budget.reserve(bytes);
  }
  MemReservation(const MemReservation&) = delete;
  MemReservation& operator=(const MemReservation&) = delete;
  MemReservation(MemReservation&& other) noexcept
      : budget_(other.budget_), bytes_(other.bytes_) {
    other.budget_ = nullptr;
    other.bytes_ = 0;
  }
  MemReservation& operator=(MemReservation&& other) noexcept {
    if (this != &other) {
      release();
      budget_ = other.budget_;
      bytes_ = other.bytes_;
      other.budget_ = nullptr;
      other.bytes_ = 0;
    }
    return *this;
  }
  ~MemReservation() { release(); }

  void release() {
    if (budget_ != nullptr) {
      budget_->release(bytes_);
      budget_ = nullptr;
      bytes_ = 0;
    }
  }

 private:
  MemoryBudget* budget_ = nullptr;
  std::size_t bytes_ = 0;
};

/// Process-wide default budget, used when an operation is not handed an
/// explicit one.  The CLI configures it from --mem-budget.
MemoryBudget& default_budget();

}  // namespace mpsham
