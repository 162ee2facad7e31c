#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mim/common.hpp"

namespace mim {

inline int64_t shape_numel(const std::vector<int64_t>& shape) {
  int64_t n = 1;
  for (int64_t d : shape) n *= d;
  return n;
}

inline std::string shape_str(const std::vector<int64_t>& shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

// Dense row-major tensor. values and grad always have matching length;
// grad starts zeroed and accumulates across backward calls until reset.
template <typename T>
struct Tensor {
  std::vector<int64_t> shape;
  std::vector<T> values;
  std::vector<T> grad;
  bool requires_grad = false;

  Tensor() = default;
  Tensor(std::vector<int64_t> s, bool req)
      : shape(std::move(s)),
        values(static_cast<size_t>(shape_numel(shape)), T(0)),
        grad(values.size(), T(0)),
        requires_grad(req) {}
  Tensor(std::vector<int64_t> s, std::vector<T> vals, bool req)
      : shape(std::move(s)), values(std::move(vals)), grad(values.size(), T(0)), requires_grad(req) {
    if (static_cast<int64_t>(values.size()) != shape_numel(shape)) {
      throw ShapeError("tensor: " + std::to_string(values.size()) + " values for shape " + shape_str(shape));
    }
  }

  int rank() const { return static_cast<int>(shape.size()); }
  int64_t numel() const { return static_cast<int64_t>(values.size()); }
  int64_t dim(int i) const { return shape[static_cast<size_t>(i)]; }
  int64_t rows() const { return shape.size() == 2 ? shape[0] : 1; }
  int64_t cols() const { return shape.empty() ? 1 : shape.back(); }
  bool is_scalar() const { return numel() == 1; }

  T item() const {
    if (!is_scalar()) throw ShapeError("item: tensor " + shape_str(shape) + " is not scalar");
    return values[0];
  }

  void zero_grad() { std::fill(grad.begin(), grad.end(), T(0)); }

  bool values_finite() const {
    for (T v : values) {
      if (!std::isfinite(static_cast<double>(v))) return false;
    }
    return true;
  }
  bool grad_finite() const {
    for (T v : grad) {
      if (!std::isfinite(static_cast<double>(v))) return false;
    }
    return true;
  }
};

template <typename T>
using TensorPtr = std::shared_ptr<Tensor<T>>;

template <typename T>
TensorPtr<T> make_tensor(std::vector<int64_t> shape, bool requires_grad = false) {
  return std::make_shared<Tensor<T>>(std::move(shape), requires_grad);
}

template <typename T>
TensorPtr<T> make_tensor(std::vector<int64_t> shape, std::vector<T> values, bool requires_grad = false) {
  return std::make_shared<Tensor<T>>(std::move(shape), std::move(values), requires_grad);
}

template <typename T>
TensorPtr<T> scalar_tensor(T v, bool requires_grad = false) {
  return make_tensor<T>({1}, {v}, requires_grad);
}

}  // namespace mim
