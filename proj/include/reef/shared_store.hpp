#pragma once

#include <mutex>
#include <shared_mutex>
#include <utility>

#include "reef/quad_store.hpp"

namespace reef {

// Single-writer / multi-reader wrapper. A ReadView pins a consistent snapshot
// for as long as it lives; writes wait for readers to drain.
class SharedStore {
 public:
  class ReadView {
   public:
    const QuadStore& operator*() const { return *store_; }
    const QuadStore* operator->() const { return store_; }
    const QuadStore& get() const { return *store_; }

   private:
    friend class SharedStore;
    ReadView(std::shared_mutex& m, const QuadStore& s)
        : lock_(m), store_(&s) {}
    std::shared_lock<std::shared_mutex> lock_;
    const QuadStore* store_;
  };

  SharedStore() = default;
  explicit SharedStore(QuadStore store) : store_(std::move(store)) {}

  ReadView read() const { return ReadView(mutex_, store_); }

  template <typename Fn>
  decltype(auto) write(Fn&& fn) {
    std::unique_lock lock(mutex_);
    return std::forward<Fn>(fn)(store_);
  }

 private:
  mutable std::shared_mutex mutex_;
  QuadStore store_;
};

}  // namespace reef
