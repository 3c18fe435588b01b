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

#ifndef IONMBQC_SIMD_KERNELS_H
#define IONMBQC_SIMD_KERNELS_H

#include <complex>
#include <cstddef>

namespace ionmbqc {
namespace simd {

using Complex = std::complex<double>;

/// Table of the dense-vector kernels used by the simulator.
///
/// Every kernel has a scalar reference implementation; optimized tables must
/// agree with it up to floating point reassociation.
struct KernelTable {
    const char *name;

    /// Applies the 2x2 matrix `m` (row-major m00, m01, m10, m11) to every
    /// amplitude pair whose indices differ only in bit `bit` (bit 0 = LSB).
    /// `len` is a power of two and at least 2 << bit.
    void (*apply_2x2)(Complex *amps, size_t len, size_t bit, const Complex *m);

    /// amps[i] *= diag[i].
    void (*mul_diagonal)(Complex *amps, const Complex *diag, size_t len);

    /// Sum over i of conj(a[i]) * b[i].
    Complex (*inner)(const Complex *a, const Complex *b, size_t len);

    /// Sum over i of |a[i]|^2.
    double (*norm_sq)(const Complex *a, size_t len);

    /// out[i] = |a[i]|^2.
    void (*probabilities)(const Complex *a, double *out, size_t len);

    /// a[i] *= s.
    void (*scale)(Complex *a, double s, size_t len);
};

const KernelTable &scalar_kernels();

/// Returns null when the AVX2 table was not compiled in or the running CPU
/// lacks AVX2/FMA.
const KernelTable *avx2_kernels();

/// The table selected for this process (fastest supported).
const KernelTable &active_kernels();

}  // namespace simd
}  // namespace ionmbqc

#endif
