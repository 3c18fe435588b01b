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

#include "ionmbqc/simd_kernels.h"

namespace ionmbqc {
namespace simd {
namespace {

void apply_2x2_scalar(Complex *amps, size_t len, size_t bit, const Complex *m) {
    size_t stride = size_t{1} << bit;
    for (size_t base = 0; base < len; base += 2 * stride) {
        for (size_t i = base; i < base + stride; i++) {
            Complex a0 = amps[i];
            Complex a1 = amps[i + stride];
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void mul_diagonal_scalar(Complex *amps, const Complex *diag, size_t len) {
    for (size_t i = 0; i < len; i++) {
        amps[i] *= diag[i];
    }
}

Complex inner_scalar(const Complex *a, const Complex *b, size_t len) {
    double re = 0;
    double im = 0;
    for (size_t i = 0; i < len; i++) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double norm_sq_scalar(const Complex *a, size_t len) {
    double t = 0;
    for (size_t i = 0; i < len; i++) {
        t += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
    return t;
}

void probabilities_scalar(const Complex *a, double *out, size_t len) {
    for (size_t i = 0; i < len; i++) {
        out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
}

void scale_scalar(Complex *a, double s, size_t len) {
    for (size_t i = 0; i < len; i++) {
        a[i] *= s;
    }
}

}  // namespace

const KernelTable &scalar_kernels() {
    static const KernelTable table{
        "scalar",
        apply_2x2_scalar,
        mul_diagonal_scalar,
        inner_scalar,
        norm_sq_scalar,
        probabilities_scalar,
        scale_scalar,
    };
    return table;
}

}  // namespace simd
}  // namespace ionmbqc
