#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace parasurf {

/// Dense cube of doubles with all extents equal, indexed (a, b, c).
class Tensor3 {
public:
  Tensor3() = default;
  explicit Tensor3(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

  int dim() const { return dim_; }
  double& operator()(int a, int b, int c) { return data_[(static_cast<std::size_t>(a) * dim_ + b) * dim_ + c]; }
  double operator()(int a, int b, int c) const {
    return data_[(static_cast<std::size_t>(a) * dim_ + b) * dim_ + c];
  }
  double max_abs() const {
    double out = 0.0;
    for (double x : data_) out = std::max(out, std::abs(x));
    return out;
  }

private:
  int dim_ = 0;
  std::vector<double> data_;
};

/// Rank-4 analogue of Tensor3, indexed (a, b, c, d).
class Tensor4 {
public:
  Tensor4() = default;
  explicit Tensor4(int dim)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

  int dim() const { return dim_; }
  double& operator()(int a, int b, int c, int d) { return data_[index(a, b, c, d)]; }
  double operator()(int a, int b, int c, int d) const { return data_[index(a, b, c, d)]; }
  double max_abs() const {
    double out = 0.0;
    for (double x : data_) out = std::max(out, std::abs(x));
    return out;
  }

private:
  std::size_t index(int a, int b, int c, int d) const {
    return ((static_cast<std::size_t>(a) * dim_ + b) * dim_ + c) * dim_ + d;
  }

  int dim_ = 0;
  std::vector<double> data_;
};

} // namespace parasurf
