#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ahp {

/// Dense row-major n x n grid. Shared storage for crisp and fuzzy
/// comparison matrices.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  SquareMatrix(std::size_t n, const T& fill) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

}  // namespace ahp
