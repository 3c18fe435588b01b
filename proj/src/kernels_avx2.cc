// Copyright 2026 The ionmbqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2 -mfma. Nothing here may run before the dispatcher has
// checked the CPU.

#include <immintrin.h>

#include "ionmbqc/simd_kernels.h"

namespace ionmbqc {
namespace simd {
namespace {

// One __m256d holds two complex numbers as [re0, im0, re1, im1].
inline __m256d load2(const Complex *p) {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}

inline void store2(Complex *p, __m256d v) {
    _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

inline __m256d swap_re_im(__m256d a) {
    return _mm256_permute_pd(a, 0b0101);
}

// Lane-wise complex product of `a` with the complex numbers whose real parts
// are broadcast in `cr` and imaginary parts in `ci`.
inline __m256d cmul(__m256d a, __m256d cr, __m256d ci) {
    return _mm256_fmaddsub_pd(a, cr, _mm256_mul_pd(swap_re_im(a), ci));
}

inline __m256d cmul(__m256d a, __m256d c) {
    return cmul(a, _mm256_movedup_pd(c), _mm256_permute_pd(c, 0b1111));
}

inline __m256d broadcast_re(Complex c) {
    return _mm256_set1_pd(c.real());
}

inline __m256d broadcast_im(Complex c) {
    return _mm256_set1_pd(c.imag());
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void apply_2x2_avx2(Complex *amps, size_t len, size_t bit, const Complex *m) {
    if (bit == 0) {
        // Both members of a pair share one register.
        __m256d diag = _mm256_setr_pd(m[0].real(), m[0].imag(), m[3].real(), m[3].imag());
        __m256d off = _mm256_setr_pd(m[1].real(), m[1].imag(), m[2].real(), m[2].imag());
        __m256d diag_r = _mm256_movedup_pd(diag);
        __m256d diag_i = _mm256_permute_pd(diag, 0b1111);
        __m256d off_r = _mm256_movedup_pd(off);
        __m256d off_i = _mm256_permute_pd(off, 0b1111);
        for (size_t i = 0; i < len; i += 2) {
            __m256d v = load2(amps + i);
            __m256d vs = _mm256_permute2f128_pd(v, v, 0x01);
            store2(amps + i, _mm256_add_pd(cmul(v, diag_r, diag_i), cmul(vs, off_r, off_i)));
        }
        return;
    }
    size_t stride = size_t{1} << bit;
    __m256d m00r = broadcast_re(m[0]), m00i = broadcast_im(m[0]);
    __m256d m01r = broadcast_re(m[1]), m01i = broadcast_im(m[1]);
    __m256d m10r = broadcast_re(m[2]), m10i = broadcast_im(m[2]);
    __m256d m11r = broadcast_re(m[3]), m11i = broadcast_im(m[3]);
    for (size_t base = 0; base < len; base += 2 * stride) {
        for (size_t i = base; i < base + stride; i += 2) {
            __m256d a0 = load2(amps + i);
            __m256d a1 = load2(amps + i + stride);
            __m256d r0 = _mm256_add_pd(cmul(a0, m00r, m00i), cmul(a1, m01r, m01i));
            __m256d r1 = _mm256_add_pd(cmul(a0, m10r, m10i), cmul(a1, m11r, m11i));
            store2(amps + i, r0);
            store2(amps + i + stride, r1);
        }
    }
}

void mul_diagonal_avx2(Complex *amps, const Complex *diag, size_t len) {
    size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        store2(amps + i, cmul(load2(amps + i), load2(diag + i)));
    }
    for (; i < len; i++) {
        amps[i] *= diag[i];
    }
}

Complex inner_avx2(const Complex *a, const Complex *b, size_t len) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d va = load2(a + i);
        __m256d vb = load2(b + i);
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        acc_im = _mm256_fmadd_pd(va, swap_re_im(vb), acc_im);
    }
    alignas(32) double im_lanes[4];
    _mm256_store_pd(im_lanes, acc_im);
    double re = hsum(acc_re);
    double im = (im_lanes[0] + im_lanes[2]) - (im_lanes[1] + im_lanes[3]);
    for (; i < len; i++) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double norm_sq_avx2(const Complex *a, size_t len) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        __m256d v0 = load2(a + i);
        __m256d v1 = load2(a + i + 2);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    double t = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < len; i++) {
        t += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
    return t;
}

void probabilities_avx2(const Complex *a, double *out, size_t len) {
    size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        __m256d v0 = load2(a + i);
        __m256d v1 = load2(a + i + 2);
        __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0b11011000));
    }
    for (; i < len; i++) {
        out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
}

void scale_avx2(Complex *a, double s, size_t len) {
    __m256d vs = _mm256_set1_pd(s);
    size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        store2(a + i, _mm256_mul_pd(load2(a + i), vs));
    }
    for (; i < len; i++) {
        a[i] *= s;
    }
}

}  // namespace

const KernelTable &avx2_kernel_table() {
    static const KernelTable table{
        "avx2",
        apply_2x2_avx2,
        mul_diagonal_avx2,
        inner_avx2,
        norm_sq_avx2,
        probabilities_avx2,
        scale_avx2,
    };
    return table;
}

}  // namespace simd
}  // namespace ionmbqc
