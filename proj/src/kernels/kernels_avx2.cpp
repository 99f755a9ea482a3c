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

#include "holosim/kernels.hpp"

#include <cmath>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define HOLOSIM_HAVE_AVX2 1
#endif

namespace holosim::kernels {

#ifdef HOLOSIM_HAVE_AVX2
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx *p) {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}

inline void store2(cplx *p, __m256d v) {
    _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

// a * b where b holds one broadcast complex value split as (re, re, re, re) and (im, im, im, im).
inline __m256d cmul_bcast(__m256d a, __m256d b_re, __m256d b_im) {
    __m256d a_swap = _mm256_permute_pd(a, 0b0101);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_swap, b_im));
}

// Elementwise a * b.
inline __m256d cmul(__m256d a, __m256d b) {
    __m256d b_re = _mm256_movedup_pd(b);
    __m256d b_im = _mm256_permute_pd(b, 0b1111);
    return cmul_bcast(a, b_re, b_im);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

cplx dotc_avx2(const cplx *a, const cplx *b, std::size_t n) {
    __m256d acc_direct = _mm256_setzero_pd();
    __m256d acc_cross = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = load2(a + i);
        __m256d vb = load2(b + i);
        acc_direct = _mm256_fmadd_pd(va, vb, acc_direct);
        acc_cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc_cross);
    }
    // acc_direct lanes: ar*br, ai*bi. acc_cross lanes: ar*bi, ai*br.
    double re = hsum(acc_direct);
    alignas(32) double c[4];
    _mm256_store_pd(c, acc_cross);
    double im = (c[0] - c[1]) + (c[2] - c[3]);
    for (; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag();
        double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

void gemv_avx2(const cplx *a, std::size_t ld, std::size_t rows, std::size_t cols, const cplx *x, cplx *y) {
    std::size_t even = rows & ~std::size_t{1};
    for (std::size_t i = 0; i < rows; ++i) {
        y[i] = 0;
    }
    for (std::size_t j = 0; j < cols; ++j) {
        const cplx *col = a + j * ld;
        __m256d xr = _mm256_set1_pd(x[j].real());
        __m256d xi = _mm256_set1_pd(x[j].imag());
        for (std::size_t i = 0; i < even; i += 2) {
            store2(y + i, _mm256_add_pd(load2(y + i), cmul_bcast(load2(col + i), xr, xi)));
        }
        if (even < rows) {
            double cr = col[even].real(), ci = col[even].imag();
            y[even] += cplx(cr * x[j].real() - ci * x[j].imag(), cr * x[j].imag() + ci * x[j].real());
        }
    }
}

void gemv_adjoint_avx2(
    const cplx *a, std::size_t ld, std::size_t rows, std::size_t cols, const cplx *x, cplx *y) {
    for (std::size_t j = 0; j < cols; ++j) {
        y[j] = dotc_avx2(a + j * ld, x, rows);
    }
}

void mul_inplace_avx2(cplx *y, const cplx *d, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        store2(y + i, cmul(load2(y + i), load2(d + i)));
    }
    for (; i < n; ++i) {
        double yr = y[i].real(), yi = y[i].imag();
        double dr = d[i].real(), di = d[i].imag();
        y[i] = cplx(yr * dr - yi * di, yr * di + yi * dr);
    }
}

inline void two_sum(__m256d a, __m256d b, __m256d &s, __m256d &e) {
    s = _mm256_add_pd(a, b);
    __m256d bb = _mm256_sub_pd(s, a);
    e = _mm256_add_pd(_mm256_sub_pd(a, _mm256_sub_pd(s, bb)), _mm256_sub_pd(b, bb));
}

// a x_lo + a_lo x without the library complex multiply
inline cplx cross_terms(cplx a, cplx x_lo, cplx a_lo, cplx x) {
    return {a.real() * x_lo.real() - a.imag() * x_lo.imag() + a_lo.real() * x.real() - a_lo.imag() * x.imag(),
            a.real() * x_lo.imag() + a.imag() * x_lo.real() + a_lo.real() * x.imag() + a_lo.imag() * x.real()};
}

inline void two_sum(double a, double b, double &s, double &e) {
    s = a + b;
    double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

inline void accumulate(double &s, double &c, double a, double b) {
    double p = a * b;
    double e = std::fma(a, b, -p);
    double t;
    two_sum(s, p, s, t);
    c += t + e;
}

void gemv_dd_avx2(
    const cplx *a_hi,
    const cplx *a_lo,
    std::size_t ld,
    std::size_t rows,
    std::size_t cols,
    const cplx *x_hi,
    const cplx *x_lo,
    cplx *y_hi,
    cplx *y_lo) {
    std::size_t even = rows & ~std::size_t{1};
    for (std::size_t i = 0; i < rows; ++i) {
        y_hi[i] = 0;
        y_lo[i] = 0;
    }
    const __m256d sign = _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0);
    for (std::size_t j = 0; j < cols; ++j) {
        const cplx *col = a_hi + j * ld;
        const cplx *col_lo = a_lo + j * ld;
        const __m256d xr = _mm256_set1_pd(x_hi[j].real());
        const __m256d xi = _mm256_set1_pd(x_hi[j].imag());
        const __m256d xlr = _mm256_set1_pd(x_lo[j].real());
        const __m256d xli = _mm256_set1_pd(x_lo[j].imag());
        for (std::size_t i = 0; i < even; i += 2) {
            __m256d s = load2(y_hi + i);
            __m256d c = load2(y_lo + i);
            const __m256d a = load2(col + i);
            const __m256d sw = _mm256_permute_pd(a, 0b0101);
            // lanes (re, im): p1 = (ar xr, ai xr), p2 = (-ai xi, ar xi), exact errors from fma
            __m256d p1 = _mm256_mul_pd(a, xr);
            __m256d e1 = _mm256_fmsub_pd(a, xr, p1);
            __m256d p2 = _mm256_mul_pd(sw, xi);
            __m256d e2 = _mm256_mul_pd(_mm256_fmsub_pd(sw, xi, p2), sign);
            p2 = _mm256_mul_pd(p2, sign);
            __m256d t1, t2;
            two_sum(s, p1, s, t1);
            two_sum(s, p2, s, t2);
            __m256d small = _mm256_add_pd(cmul_bcast(a, xlr, xli), cmul_bcast(load2(col_lo + i), xr, xi));
            c = _mm256_add_pd(c, _mm256_add_pd(_mm256_add_pd(t1, t2), _mm256_add_pd(_mm256_add_pd(e1, e2), small)));
            store2(y_hi + i, s);
            store2(y_lo + i, c);
        }
        if (even < rows) {
            double sr = y_hi[even].real(), si = y_hi[even].imag();
            double cr = y_lo[even].real(), ci = y_lo[even].imag();
            const double ar = col[even].real(), ai = col[even].imag();
            accumulate(sr, cr, ar, x_hi[j].real());
            accumulate(sr, cr, -ai, x_hi[j].imag());
            accumulate(si, ci, ar, x_hi[j].imag());
            accumulate(si, ci, ai, x_hi[j].real());
            const cplx small = cross_terms(col[even], x_lo[j], col_lo[even], x_hi[j]);
            y_hi[even] = cplx(sr, si);
            y_lo[even] = cplx(cr + small.real(), ci + small.imag());
        }
    }
    for (std::size_t i = 0; i < rows; ++i) {
        double hr, er, hi, ei;
        two_sum(y_hi[i].real(), y_lo[i].real(), hr, er);
        two_sum(y_hi[i].imag(), y_lo[i].imag(), hi, ei);
        y_hi[i] = cplx(hr, hi);
        y_lo[i] = cplx(er, ei);
    }
}

}  // namespace

bool avx2_compiled() {
    return true;
}

const KernelTable &avx2_table() {
    static const KernelTable table{Isa::Avx2, dotc_avx2, gemv_avx2, gemv_adjoint_avx2, mul_inplace_avx2, gemv_dd_avx2};
    if (!avx2_available()) {
        throw NumericalError("AVX2/FMA kernels requested on a host without AVX2/FMA");
    }
    return table;
}

#else

bool avx2_compiled() {
    return false;
}

const KernelTable &avx2_table() {
    throw NumericalError("AVX2 kernels were not compiled into this build");
}

#endif

}  // namespace holosim::kernels
