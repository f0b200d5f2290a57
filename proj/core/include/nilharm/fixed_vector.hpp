#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>

namespace nilharm {

/// Inline vector with a compile-time capacity. Group coordinates live in
/// these so the quadrature hot loops never touch the heap.
template <typename T, std::size_t Capacity>
class FixedVector {
 public:
  using value_type = T;
  using iterator = T*;
  using const_iterator = const T*;

  FixedVector() = default;

  explicit FixedVector(std::size_t n, const T& value = T{}) { resize(n, value); }

  FixedVector(std::initializer_list<T> init) {
    if (init.size() > Capacity) throw std::length_error("FixedVector capacity exceeded");
    std::copy(init.begin(), init.end(), data_.begin());
    size_ = init.size();
  }

  explicit FixedVector(std::span<const T> values) {
    if (values.size() > Capacity) throw std::length_error("FixedVector capacity exceeded");
    std::copy(values.begin(), values.end(), data_.begin());
    size_ = values.size();
  }

  static constexpr std::size_t capacity() { return Capacity; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  void resize(std::size_t n, const T& value = T{}) {
    if (n > Capacity) throw std::length_error("FixedVector capacity exceeded");
    for (std::size_t i = size_; i < n; ++i) data_[i] = value;
    size_ = n;
  }

  void push_back(const T& value) {
    if (size_ == Capacity) throw std::length_error("FixedVector capacity exceeded");
    data_[size_++] = value;
  }

  void clear() { size_ = 0; }

  T& operator[](std::size_t i) {
    assert(i < size_);
    return data_[i];
  }
  const T& operator[](std::size_t i) const {
    assert(i < size_);
    return data_[i];
  }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  iterator begin() { return data_.data(); }
  iterator end() { return data_.data() + size_; }
  const_iterator begin() const { return data_.data(); }
  const_iterator end() const { return data_.data() + size_; }

  operator std::span<const T>() const { return {data_.data(), size_}; }
  operator std::span<T>() { return {data_.data(), size_}; }
  std::span<const T> span() const { return {data_.data(), size_}; }

  friend bool operator==(const FixedVector& a, const FixedVector& b) {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
  }

 private:
  std::array<T, Capacity> data_{};
  std::size_t size_ = 0;
};

}  // namespace nilharm
