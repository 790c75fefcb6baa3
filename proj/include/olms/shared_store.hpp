#pragma once

#include "olms/ontology.hpp"

#include <mutex>
#include <shared_mutex>
#include <type_traits>
#include <utility>

namespace olms {

// Coarse reader/writer exclusion around one OntologyStore.
//
// write() runs the mutation against a scratch copy and publishes it only if
// the callable returns normally, so a compound operation that throws half-way
// leaves the shared store untouched.
class SharedStore {
public:
  SharedStore() = default;
  explicit SharedStore(OntologyStore store) : store_(std::move(store)) {}

  template <class F>
  decltype(auto) read(F&& fn) const {
    std::shared_lock lock(mutex_);
    return std::forward<F>(fn)(std::as_const(store_));
  }

  template <class F>
  decltype(auto) write(F&& fn) {
    std::unique_lock lock(mutex_);
    OntologyStore scratch = store_;
    if constexpr (std::is_void_v<std::invoke_result_t<F, OntologyStore&>>) {
      std::forward<F>(fn)(scratch);
      store_ = std::move(scratch);
    } else {
      auto result = std::forward<F>(fn)(scratch);
      store_ = std::move(scratch);
      return result;
    }
  }

  OntologyStore snapshot() const {
    std::shared_lock lock(mutex_);
    return store_;
  }

private:
  mutable std::shared_mutex mutex_;
  OntologyStore store_;
};

} // namespace olms
