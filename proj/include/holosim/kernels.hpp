// Copyright 2026 The holosim Authors
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

#ifndef HOLOSIM_KERNELS_HPP
#define HOLOSIM_KERNELS_HPP

#include <cstddef>

#include "holosim/types.hpp"

namespace holosim::kernels {

enum class Isa { Scalar, Avx2 };

/// Complex vector kernels. Matrices are column-major with leading dimension `ld`.
struct KernelTable {
    Isa isa;
    // sum_i conj(a_i) * b_i
    cplx (*dotc)(const cplx *a, const cplx *b, std::size_t n);
    // y = A x, A is rows x cols
    void (*gemv)(const cplx *a, std::size_t ld, std::size_t rows, std::size_t cols, const cplx *x, cplx *y);
    // y = A^H x, A is rows x cols, y has cols entries
    void (*gemv_adjoint)(
        const cplx *a, std::size_t ld, std::size_t rows, std::size_t cols, const cplx *x, cplx *y);
    // y_i *= d_i
    void (*mul_inplace)(cplx *y, const cplx *d, std::size_t n);
    // y_hi + y_lo = (A_hi + A_lo)(x_hi + x_lo), error-free products and compensated sums
    void (*gemv_dd)(
        const cplx *a_hi,
        const cplx *a_lo,
        std::size_t ld,
        std::size_t rows,
        std::size_t cols,
        const cplx *x_hi,
        const cplx *x_lo,
        cplx *y_hi,
        cplx *y_lo);
};

const KernelTable &scalar_table();
/// Throws NumericalError if the binary or host lacks AVX2/FMA.
const KernelTable &avx2_table();
bool avx2_available();

/// Selected once per process: AVX2 when the CPU supports it, unless HOLOSIM_ISA=scalar.
const KernelTable &active();

const char *isa_name(Isa isa);

// Eigen-typed conveniences over the active table.
CVector matvec(const CMatrix &a, const CVector &x);
CVector matvec_adjoint(const CMatrix &a, const CVector &x);
/// A^H B
CMatrix adjoint_times(const CMatrix &a, const CMatrix &b);
/// A B
CMatrix times(const CMatrix &a, const CMatrix &b);

}  // namespace holosim::kernels

#endif
