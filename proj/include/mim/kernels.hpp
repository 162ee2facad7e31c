#pragma once

#include <cstdint>

// Inner-loop kernels behind the tensor engine. Every float32 kernel has a
// scalar reference implementation and, on x86-64 with AVX2+FMA, a vectorized
// variant; the active table is chosen once at runtime. Reductions (gemm inner
// products, sums, dots) accumulate in float64 in both variants. Elementwise
// kernels are plain float32 arithmetic, so the two variants agree bitwise.
//
// float64 kernels exist only as scalar references; the double instantiation
// of the engine is used for gradient checking, never for training.
namespace mim::kernels {

enum class Backend { kScalar, kAvx2 };

struct TableF32 {
  // C[m,n] = A[m,k] * B[k,n]
  void (*gemm_nn)(int64_t m, int64_t k, int64_t n, const float* a, const float* b, float* c);
  // C[m,n] = A[m,k] * B[n,k]^T
  void (*gemm_nt)(int64_t m, int64_t k, int64_t n, const float* a, const float* b, float* c);
  // C[m,n] = A[k,m]^T * B[k,n]
  void (*gemm_tn)(int64_t m, int64_t k, int64_t n, const float* a, const float* b, float* c);
  void (*add)(int64_t n, const float* a, const float* b, float* out);
  void (*sub)(int64_t n, const float* a, const float* b, float* out);
  void (*mul)(int64_t n, const float* a, const float* b, float* out);
  // y += alpha * x
  void (*axpy)(int64_t n, float alpha, const float* x, float* y);
  void (*scale)(int64_t n, float alpha, const float* x, float* out);
  double (*reduce_sum)(int64_t n, const float* x);
  double (*reduce_sumsq)(int64_t n, const float* x);
  double (*dot)(int64_t n, const float* a, const float* b);
  void (*relu)(int64_t n, const float* x, float* out);
  // dx += dy where x > 0
  void (*relu_backward)(int64_t n, const float* x, const float* dy, float* dx);
  // In-place Adam update; bc1/bc2 are the precomputed 1/(1-beta^t) corrections.
  void (*adam_update)(int64_t n, float* w, const float* g, float* m, float* v,
                      float lr, float beta1, float beta2, float eps, float bc1, float bc2);
  void (*clip)(int64_t n, float* g, float lo, float hi);
};

const TableF32& f32();
const TableF32& scalar_f32();
Backend active_backend();
const char* backend_name(Backend b);
bool avx2_supported();
// Testing hook; MIM_KERNELS=scalar|avx2 in the environment does the same.
void force_backend(Backend b);
void reset_backend();

namespace detail {
// AVX2 table; falls back to the scalar table when the build lacks AVX2.
const TableF32& avx2_f32();
bool avx2_compiled();
}  // namespace detail

namespace scalar64 {
void gemm_nn(int64_t m, int64_t k, int64_t n, const double* a, const double* b, double* c);
void gemm_nt(int64_t m, int64_t k, int64_t n, const double* a, const double* b, double* c);
void gemm_tn(int64_t m, int64_t k, int64_t n, const double* a, const double* b, double* c);
void add(int64_t n, const double* a, const double* b, double* out);
void sub(int64_t n, const double* a, const double* b, double* out);
void mul(int64_t n, const double* a, const double* b, double* out);
void axpy(int64_t n, double alpha, const double* x, double* y);
void scale(int64_t n, double alpha, const double* x, double* out);
double reduce_sum(int64_t n, const double* x);
double reduce_sumsq(int64_t n, const double* x);
double dot(int64_t n, const double* a, const double* b);
void relu(int64_t n, const double* x, double* out);
void relu_backward(int64_t n, const double* x, const double* dy, double* dx);
void adam_update(int64_t n, double* w, const double* g, double* m, double* v,
                 double lr, double beta1, double beta2, double eps, double bc1, double bc2);
void clip(int64_t n, double* g, double lo, double hi);
}  // namespace scalar64

// Typed shims so templated engine code routes float through the dispatch
// table and double through the scalar reference path.
template <typename T>
struct Dispatch;

template <>
struct Dispatch<float> {
  static void gemm_nn(int64_t m, int64_t k, int64_t n, const float* a, const float* b, float* c) { f32().gemm_nn(m, k, n, a, b, c); }
  static void gemm_nt(int64_t m, int64_t k, int64_t n, const float* a, const float* b, float* c) { f32().gemm_nt(m, k, n, a, b, c); }
  static void gemm_tn(int64_t m, int64_t k, int64_t n, const float* a, const float* b, float* c) { f32().gemm_tn(m, k, n, a, b, c); }
  static void add(int64_t n, const float* a, const float* b, float* out) { f32().add(n, a, b, out); }
  static void sub(int64_t n, const float* a, const float* b, float* out) { f32().sub(n, a, b, out); }
  static void mul(int64_t n, const float* a, const float* b, float* out) { f32().mul(n, a, b, out); }
  static void axpy(int64_t n, float alpha, const float* x, float* y) { f32().axpy(n, alpha, x, y); }
  static void scale(int64_t n, float alpha, const float* x, float* out) { f32().scale(n, alpha, x, out); }
  static double reduce_sum(int64_t n, const float* x) { return f32().reduce_sum(n, x); }
  static double reduce_sumsq(int64_t n, const float* x) { return f32().reduce_sumsq(n, x); }
  static double dot(int64_t n, const float* a, const float* b) { return f32().dot(n, a, b); }
  static void relu(int64_t n, const float* x, float* out) { f32().relu(n, x, out); }
  static void relu_backward(int64_t n, const float* x, const float* dy, float* dx) { f32().relu_backward(n, x, dy, dx); }
  static void adam_update(int64_t n, float* w, const float* g, float* m, float* v,
                          float lr, float beta1, float beta2, float eps, float bc1, float bc2) {
    f32().adam_update(n, w, g, m, v, lr, beta1, beta2, eps, bc1, bc2);
  }
  static void clip(int64_t n, float* g, float lo, float hi) { f32().clip(n, g, lo, hi); }
};

template <>
struct Dispatch<double> {
  static void gemm_nn(int64_t m, int64_t k, int64_t n, const double* a, const double* b, double* c) { scalar64::gemm_nn(m, k, n, a, b, c); }
  static void gemm_nt(int64_t m, int64_t k, int64_t n, const double* a, const double* b, double* c) { scalar64::gemm_nt(m, k, n, a, b, c); }
  static void gemm_tn(int64_t m, int64_t k, int64_t n, const double* a, const double* b, double* c) { scalar64::gemm_tn(m, k, n, a, b, c); }
  static void add(int64_t n, const double* a, const double* b, double* out) { scalar64::add(n, a, b, out); }
  static void sub(int64_t n, const double* a, const double* b, double* out) { scalar64::sub(n, a, b, out); }
  static void mul(int64_t n, const double* a, const double* b, double* out) { scalar64::mul(n, a, b, out); }
  static void axpy(int64_t n, double alpha, const double* x, double* y) { scalar64::axpy(n, alpha, x, y); }
  static void scale(int64_t n, double alpha, const double* x, double* out) { scalar64::scale(n, alpha, x, out); }
  static double reduce_sum(int64_t n, const double* x) { return scalar64::reduce_sum(n, x); }
  static double reduce_sumsq(int64_t n, const double* x) { return scalar64::reduce_sumsq(n, x); }
  static double dot(int64_t n, const double* a, const double* b) { return scalar64::dot(n, a, b); }
  static void relu(int64_t n, const double* x, double* out) { scalar64::relu(n, x, out); }
  static void relu_backward(int64_t n, const double* x, const double* dy, double* dx) { scalar64::relu_backward(n, x, dy, dx); }
  static void adam_update(int64_t n, double* w, const double* g, double* m, double* v,
                          double lr, double beta1, double beta2, double eps, double bc1, double bc2) {
    scalar64::adam_update(n, w, g, m, v, lr, beta1, beta2, eps, bc1, bc2);
  }
  static void clip(int64_t n, double* g, double lo, double hi) { scalar64::clip(n, g, lo, hi); }
};

}  // namespace mim::kernels
