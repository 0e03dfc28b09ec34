#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace assignkit {

/// Dense row-major matrix. Dimensions are fixed at construction.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative grid dimension");
  }

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  T& at(int i, int j) {
    check(i, j);
    return (*this)(i, j);
  }
  const T& at(int i, int j) const {
    check(i, j);
    return (*this)(i, j);
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("grid index");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

}  // namespace assignkit
