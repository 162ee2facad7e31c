#include <cmath>
#include <cstdint>

#include "mim/kernels.hpp"

// AVX2+FMA variants of the float32 kernels. Reductions convert to double
// lanes and accumulate with 4-wide double FMAs, matching the scalar
// reference's float64-accumulator contract. Elementwise kernels use the same
// rounded single-precision operation sequence as the scalar reference
// (separate mul/add, no contraction), so they agree with it bitwise; loop
// tails reuse the scalar expressions.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace mim::kernels {
namespace {

inline double hsum_pd(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

inline void cvt8(const float* p, __m256d& lo, __m256d& hi) {
  __m256 v = _mm256_loadu_ps(p);
  lo = _mm256_cvtps_pd(_mm256_castps256_ps128(v));
  hi = _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1));
}

inline void store8_from_pd(float* p, __m256d lo, __m256d hi) {
  __m128 flo = _mm256_cvtpd_ps(lo);
  __m128 fhi = _mm256_cvtpd_ps(hi);
  _mm256_storeu_ps(p, _mm256_set_m128(fhi, flo));
}

void gemm_nn_avx2(int64_t m, int64_t k, int64_t n, const float* a, const float* b, float* c) {
  const int64_t n8 = n & ~int64_t(7);
  for (int64_t i = 0; i < m; ++i) {
    const float* arow = a + i * k;
    int64_t j = 0;
    for (; j < n8; j += 8) {
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      for (int64_t t = 0; t < k; ++t) {
        __m256d av = _mm256_set1_pd(static_cast<double>(arow[t]));
        __m256d blo, bhi;
        cvt8(b + t * n + j, blo, bhi);
        acc0 = _mm256_fmadd_pd(av, blo, acc0);
        acc1 = _mm256_fmadd_pd(av, bhi, acc1);
      }
      store8_from_pd(c + i * n + j, acc0, acc1);
    }
    for (; j < n; ++j) {
      double acc = 0.0;
      for (int64_t t = 0; t < k; ++t) {
        acc += static_cast<double>(arow[t]) * static_cast<double>(b[t * n + j]);
      }
      c[i * n + j] = static_cast<float>(acc);
    }
  }
}

void gemm_nt_avx2(int64_t m, int64_t k, int64_t n, const float* a, const float* b, float* c) {
  const int64_t k8 = k & ~int64_t(7);
  for (int64_t i = 0; i < m; ++i) {
    const float* arow = a + i * k;
    for (int64_t j = 0; j < n; ++j) {
      const float* brow = b + j * k;
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      int64_t t = 0;
      for (; t < k8; t += 8) {
        __m256d alo, ahi, blo, bhi;
        cvt8(arow + t, alo, ahi);
        cvt8(brow + t, blo, bhi);
        acc0 = _mm256_fmadd_pd(alo, blo, acc0);
        acc1 = _mm256_fmadd_pd(ahi, bhi, acc1);
      }
      double acc = hsum_pd(_mm256_add_pd(acc0, acc1));
      for (; t < k; ++t) {
        acc += static_cast<double>(arow[t]) * static_cast<double>(brow[t]);
      }
      c[i * n + j] = static_cast<float>(acc);
    }
  }
}

void gemm_tn_avx2(int64_t m, int64_t k, int64_t n, const float* a, const float* b, float* c) {
  // a is k-by-m, b is k-by-n, c is m-by-n.
  const int64_t n8 = n & ~int64_t(7);
  for (int64_t i = 0; i < m; ++i) {
    int64_t j = 0;
    for (; j < n8; j += 8) {
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      for (int64_t t = 0; t < k; ++t) {
        __m256d av = _mm256_set1_pd(static_cast<double>(a[t * m + i]));
        __m256d blo, bhi;
        cvt8(b + t * n + j, blo, bhi);
        acc0 = _mm256_fmadd_pd(av, blo, acc0);
        acc1 = _mm256_fmadd_pd(av, bhi, acc1);
      }
      store8_from_pd(c + i * n + j, acc0, acc1);
    }
    for (; j < n; ++j) {
      double acc = 0.0;
      for (int64_t t = 0; t < k; ++t) {
        acc += static_cast<double>(a[t * m + i]) * static_cast<double>(b[t * n + j]);
      }
      c[i * n + j] = static_cast<float>(acc);
    }
  }
}

void add_avx2(int64_t n, const float* a, const float* b, float* out) {
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(out + i, _mm256_add_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void sub_avx2(int64_t n, const float* a, const float* b, float* out) {
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(out + i, _mm256_sub_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void mul_avx2(int64_t n, const float* a, const float* b, float* out) {
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(out + i, _mm256_mul_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy_avx2(int64_t n, float alpha, const float* x, float* y) {
  __m256 av = _mm256_set1_ps(alpha);
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 prod = _mm256_mul_ps(av, _mm256_loadu_ps(x + i));
    _mm256_storeu_ps(y + i, _mm256_add_ps(_mm256_loadu_ps(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void scale_avx2(int64_t n, float alpha, const float* x, float* out) {
  __m256 av = _mm256_set1_ps(alpha);
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(out + i, _mm256_mul_ps(av, _mm256_loadu_ps(x + i)));
  }
  for (; i < n; ++i) out[i] = alpha * x[i];
}

double reduce_sum_avx2(int64_t n, const float* x) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d lo, hi;
    cvt8(x + i, lo, hi);
    acc0 = _mm256_add_pd(acc0, lo);
    acc1 = _mm256_add_pd(acc1, hi);
  }
  double acc = hsum_pd(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += static_cast<double>(x[i]);
  return acc;
}

double reduce_sumsq_avx2(int64_t n, const float* x) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d lo, hi;
    cvt8(x + i, lo, hi);
    acc0 = _mm256_fmadd_pd(lo, lo, acc0);
    acc1 = _mm256_fmadd_pd(hi, hi, acc1);
  }
  double acc = hsum_pd(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    double v = static_cast<double>(x[i]);
    acc += v * v;
  }
  return acc;
}

double dot_avx2(int64_t n, const float* a, const float* b) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d alo, ahi, blo, bhi;
    cvt8(a + i, alo, ahi);
    cvt8(b + i, blo, bhi);
    acc0 = _mm256_fmadd_pd(alo, blo, acc0);
    acc1 = _mm256_fmadd_pd(ahi, bhi, acc1);
  }
  double acc = hsum_pd(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

void relu_avx2(int64_t n, const float* x, float* out) {
  __m256 zero = _mm256_setzero_ps();
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(out + i, _mm256_max_ps(_mm256_loadu_ps(x + i), zero));
  }
  for (; i < n; ++i) out[i] = x[i] > 0.0f ? x[i] : 0.0f;
}

void relu_backward_avx2(int64_t n, const float* x, const float* dy, float* dx) {
  __m256 zero = _mm256_setzero_ps();
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 xv = _mm256_loadu_ps(x + i);
    __m256 dxv = _mm256_loadu_ps(dx + i);
    __m256 sum = _mm256_add_ps(dxv, _mm256_loadu_ps(dy + i));
    __m256 mask = _mm256_cmp_ps(xv, zero, _CMP_GT_OQ);
    _mm256_storeu_ps(dx + i, _mm256_blendv_ps(dxv, sum, mask));
  }
  for (; i < n; ++i) {
    if (x[i] > 0.0f) dx[i] = dx[i] + dy[i];
  }
}

void adam_update_avx2(int64_t n, float* w, const float* g, float* m, float* v,
                      float lr, float beta1, float beta2, float eps, float bc1, float bc2) {
  const __m256 b1 = _mm256_set1_ps(beta1);
  const __m256 b2 = _mm256_set1_ps(beta2);
  const __m256 omb1 = _mm256_set1_ps(1.0f - beta1);
  const __m256 omb2 = _mm256_set1_ps(1.0f - beta2);
  const __m256 lrv = _mm256_set1_ps(lr);
  const __m256 epsv = _mm256_set1_ps(eps);
  const __m256 bc1v = _mm256_set1_ps(bc1);
  const __m256 bc2v = _mm256_set1_ps(bc2);
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 gi = _mm256_loadu_ps(g + i);
    __m256 mi = _mm256_add_ps(_mm256_mul_ps(b1, _mm256_loadu_ps(m + i)), _mm256_mul_ps(omb1, gi));
    __m256 vi = _mm256_add_ps(_mm256_mul_ps(b2, _mm256_loadu_ps(v + i)),
                              _mm256_mul_ps(omb2, _mm256_mul_ps(gi, gi)));
    _mm256_storeu_ps(m + i, mi);
    _mm256_storeu_ps(v + i, vi);
    __m256 mhat = _mm256_mul_ps(mi, bc1v);
    __m256 vhat = _mm256_mul_ps(vi, bc2v);
    __m256 denom = _mm256_add_ps(_mm256_sqrt_ps(vhat), epsv);
    __m256 step = _mm256_mul_ps(lrv, _mm256_div_ps(mhat, denom));
    _mm256_storeu_ps(w + i, _mm256_sub_ps(_mm256_loadu_ps(w + i), step));
  }
  const float one_minus_b1 = 1.0f - beta1;
  const float one_minus_b2 = 1.0f - beta2;
  for (; i < n; ++i) {
    float gi = g[i];
    float mi = beta1 * m[i] + one_minus_b1 * gi;
    float vi = beta2 * v[i] + one_minus_b2 * (gi * gi);
    m[i] = mi;
    v[i] = vi;
    float mhat = mi * bc1;
    float vhat = vi * bc2;
    w[i] = w[i] - lr * (mhat / (std::sqrt(vhat) + eps));
  }
}

void clip_avx2(int64_t n, float* g, float lo, float hi) {
  const __m256 lov = _mm256_set1_ps(lo);
  const __m256 hiv = _mm256_set1_ps(hi);
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 v = _mm256_loadu_ps(g + i);
    v = _mm256_max_ps(v, lov);
    v = _mm256_min_ps(v, hiv);
    _mm256_storeu_ps(g + i, v);
  }
  for (; i < n; ++i) {
    float v = g[i];
    if (v < lo) v = lo;
    if (v > hi) v = hi;
    g[i] = v;
  }
}

}  // namespace

namespace detail {

const TableF32& avx2_f32() {
  static const TableF32 table = {
      gemm_nn_avx2, gemm_nt_avx2, gemm_tn_avx2,
      add_avx2,     sub_avx2,     mul_avx2,
      axpy_avx2,    scale_avx2,
      reduce_sum_avx2, reduce_sumsq_avx2, dot_avx2,
      relu_avx2,    relu_backward_avx2,
      adam_update_avx2, clip_avx2,
  };
  return table;
}

bool avx2_compiled() { return true; }

}  // namespace detail
}  // namespace mim::kernels

#else  // no AVX2 at compile time

namespace mim::kernels::detail {

const TableF32& avx2_f32() { return scalar_f32(); }
bool avx2_compiled() { return false; }

}  // namespace mim::kernels::detail

#endif
