#include <cmath>
#include <cstdint>

#include "mim/kernels.hpp"

// Reference kernels. The float32 versions define the semantics that the AVX2
// variants must reproduce: float64 accumulators in every reduction, plain
// round-after-each-op float32 arithmetic elsewhere (this file is compiled
// with -ffp-contract=off so the compiler cannot fuse into FMAs).

namespace mim::kernels {
namespace {

template <typename T>
void gemm_nn_impl(int64_t m, int64_t k, int64_t n, const T* a, const T* b, T* c) {
  for (int64_t i = 0; i < m; ++i) {
    for (int64_t j = 0; j < n; ++j) {
      double acc = 0.0;
      const T* arow = a + i * k;
      for (int64_t t = 0; t < k; ++t) {
        acc += static_cast<double>(arow[t]) * static_cast<double>(b[t * n + j]);
      }
      c[i * n + j] = static_cast<T>(acc);
    }
  }
}

template <typename T>
void gemm_nt_impl(int64_t m, int64_t k, int64_t n, const T* a, const T* b, T* c) {
  for (int64_t i = 0; i < m; ++i) {
    for (int64_t j = 0; j < n; ++j) {
      double acc = 0.0;
      const T* arow = a + i * k;
      const T* brow = b + j * k;
      for (int64_t t = 0; t < k; ++t) {
        acc += static_cast<double>(arow[t]) * static_cast<double>(brow[t]);
      }
      c[i * n + j] = static_cast<T>(acc);
    }
  }
}

template <typename T>
void gemm_tn_impl(int64_t m, int64_t k, int64_t n, const T* a, const T* b, T* c) {
  // a is k-by-m, b is k-by-n, c is m-by-n.
  for (int64_t i = 0; i < m; ++i) {
    for (int64_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int64_t t = 0; t < k; ++t) {
        acc += static_cast<double>(a[t * m + i]) * static_cast<double>(b[t * n + j]);
      }
      c[i * n + j] = static_cast<T>(acc);
    }
  }
}

template <typename T>
void add_impl(int64_t n, const T* a, const T* b, T* out) {
  for (int64_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

template <typename T>
void sub_impl(int64_t n, const T* a, const T* b, T* out) {
  for (int64_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

template <typename T>
void mul_impl(int64_t n, const T* a, const T* b, T* out) {
  for (int64_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

template <typename T>
void axpy_impl(int64_t n, T alpha, const T* x, T* y) {
  for (int64_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

template <typename T>
void scale_impl(int64_t n, T alpha, const T* x, T* out) {
  for (int64_t i = 0; i < n; ++i) out[i] = alpha * x[i];
}

template <typename T>
double reduce_sum_impl(int64_t n, const T* x) {
  double acc = 0.0;
  for (int64_t i = 0; i < n; ++i) acc += static_cast<double>(x[i]);
  return acc;
}

template <typename T>
double reduce_sumsq_impl(int64_t n, const T* x) {
  double acc = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    double v = static_cast<double>(x[i]);
    acc += v * v;
  }
  return acc;
}

template <typename T>
double dot_impl(int64_t n, const T* a, const T* b) {
  double acc = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

template <typename T>
void relu_impl(int64_t n, const T* x, T* out) {
  for (int64_t i = 0; i < n; ++i) out[i] = x[i] > T(0) ? x[i] : T(0);
}

template <typename T>
void relu_backward_impl(int64_t n, const T* x, const T* dy, T* dx) {
  for (int64_t i = 0; i < n; ++i) {
    if (x[i] > T(0)) dx[i] = dx[i] + dy[i];
  }
}

template <typename T>
void adam_update_impl(int64_t n, T* w, const T* g, T* m, T* v,
                      T lr, T beta1, T beta2, T eps, T bc1, T bc2) {
  const T one_minus_b1 = T(1) - beta1;
  const T one_minus_b2 = T(1) - beta2;
  for (int64_t i = 0; i < n; ++i) {
    T gi = g[i];
    T mi = beta1 * m[i] + one_minus_b1 * gi;
    T vi = beta2 * v[i] + one_minus_b2 * (gi * gi);
    m[i] = mi;
    v[i] = vi;
    T mhat = mi * bc1;
    T vhat = vi * bc2;
    w[i] = w[i] - lr * (mhat / (std::sqrt(vhat) + eps));
  }
}

template <typename T>
void clip_impl(int64_t n, T* g, T lo, T hi) {
  for (int64_t i = 0; i < n; ++i) {
    T v = g[i];
    if (v < lo) v = lo;
    if (v > hi) v = hi;
    g[i] = v;
  }
}

}  // namespace

const TableF32& scalar_f32() {
  static const TableF32 table = {
      gemm_nn_impl<float>, gemm_nt_impl<float>, gemm_tn_impl<float>,
      add_impl<float>,     sub_impl<float>,     mul_impl<float>,
      axpy_impl<float>,    scale_impl<float>,
      reduce_sum_impl<float>, reduce_sumsq_impl<float>, dot_impl<float>,
      relu_impl<float>,    relu_backward_impl<float>,
      adam_update_impl<float>, clip_impl<float>,
  };
  return table;
}

namespace scalar64 {

void gemm_nn(int64_t m, int64_t k, int64_t n, const double* a, const double* b, double* c) { gemm_nn_impl(m, k, n, a, b, c); }
void gemm_nt(int64_t m, int64_t k, int64_t n, const double* a, const double* b, double* c) { gemm_nt_impl(m, k, n, a, b, c); }
void gemm_tn(int64_t m, int64_t k, int64_t n, const double* a, const double* b, double* c) { gemm_tn_impl(m, k, n, a, b, c); }
void add(int64_t n, const double* a, const double* b, double* out) { add_impl(n, a, b, out); }
void sub(int64_t n, const double* a, const double* b, double* out) { sub_impl(n, a, b, out); }
void mul(int64_t n, const double* a, const double* b, double* out) { mul_impl(n, a, b, out); }
void axpy(int64_t n, double alpha, const double* x, double* y) { axpy_impl(n, alpha, x, y); }
void scale(int64_t n, double alpha, const double* x, double* out) { scale_impl(n, alpha, x, out); }
double reduce_sum(int64_t n, const double* x) { return reduce_sum_impl(n, x); }
double reduce_sumsq(int64_t n, const double* x) { return reduce_sumsq_impl(n, x); }
double dot(int64_t n, const double* a, const double* b) { return dot_impl(n, a, b); }
void relu(int64_t n, const double* x, double* out) { relu_impl(n, x, out); }
void relu_backward(int64_t n, const double* x, const double* dy, double* dx) { relu_backward_impl(n, x, dy, dx); }
void adam_update(int64_t n, double* w, const double* g, double* m, double* v,
                 double lr, double beta1, double beta2, double eps, double bc1, double bc2) {
  adam_update_impl(n, w, g, m, v, lr, beta1, beta2, eps, bc1, bc2);
}
void clip(int64_t n, double* g, double lo, double hi) { clip_impl(n, g, lo, hi); }

}  // namespace scalar64
}  // namespace mim::kernels
