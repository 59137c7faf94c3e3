#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ccuc {

/// Dense row-major 2-D array.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  T& at(std::size_t r, std::size_t c) {
    check(r, c);
    return (*this)(r, c);
  }
  const T& at(std::size_t r, std::size_t c) const {
    check(r, c);
    return (*this)(r, c);
  }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("Matrix index");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Dense 3-D array, last index fastest.
template <typename T>
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t d0, std::size_t d1, std::size_t d2, T fill = T{})
      : d0_(d0), d1_(d1), d2_(d2), data_(d0 * d1 * d2, fill) {}

  std::size_t dim0() const { return d0_; }
  std::size_t dim1() const { return d1_; }
  std::size_t dim2() const { return d2_; }

  T& operator()(std::size_t a, std::size_t b, std::size_t c) {
    return data_[(a * d1_ + b) * d2_ + c];
  }
  const T& operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return data_[(a * d1_ + b) * d2_ + c];
  }

  /// Contiguous slice over the last index.
  std::span<T> fiber(std::size_t a, std::size_t b) {
    return {data_.data() + (a * d1_ + b) * d2_, d2_};
  }
  std::span<const T> fiber(std::size_t a, std::size_t b) const {
    return {data_.data() + (a * d1_ + b) * d2_, d2_};
  }

  /// Contiguous slab over the last two indices.
  std::span<const T> slab(std::size_t a) const {
    return {data_.data() + a * d1_ * d2_, d1_ * d2_};
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  bool operator==(const Tensor3&) const = default;

 private:
  std::size_t d0_ = 0;
  std::size_t d1_ = 0;
  std::size_t d2_ = 0;
  std::vector<T> data_;
};

}  // namespace ccuc
