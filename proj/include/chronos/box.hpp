#pragma once

#include <concepts>
#include <memory>
#include <type_traits>
#include <utility>

namespace chronos {

/// Immutable heap cell with value semantics, used for recursive AST nodes.
/// Copies share the pointee; equality compares the pointees.
template <class T>
class Box {
 public:
  template <class U = T>
    requires(!std::same_as<std::remove_cvref_t<U>, Box>)
  Box(U&& value)  // NOLINT(google-explicit-constructor)
      : ptr_(std::make_shared<const T>(std::forward<U>(value))) {}

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  const T& get() const { return *ptr_; }

  friend bool operator==(const Box& a, const Box& b) {
    return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
  }

 private:
  std::shared_ptr<const T> ptr_;
};

}  // namespace chronos
