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

namespace holosim::kernels {
namespace {

cplx dotc_scalar(const cplx *a, const cplx *b, std::size_t n) {
    double re = 0, im = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag();
        double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

void gemv_scalar(const cplx *a, std::size_t ld, std::size_t rows, std::size_t cols, const cplx *x, cplx *y) {
    for (std::size_t i = 0; i < rows; ++i) {
        y[i] = 0;
    }
    for (std::size_t j = 0; j < cols; ++j) {
        const cplx *col = a + j * ld;
        double xr = x[j].real(), xi = x[j].imag();
        for (std::size_t i = 0; i < rows; ++i) {
            double cr = col[i].real(), ci = col[i].imag();
            y[i] += cplx(cr * xr - ci * xi, cr * xi + ci * xr);
        }
    }
}

void gemv_adjoint_scalar(
    const cplx *a, std::size_t ld, std::size_t rows, std::size_t cols, const cplx *x, cplx *y) {
    for (std::size_t j = 0; j < cols; ++j) {
        y[j] = dotc_scalar(a + j * ld, x, rows);
    }
}

void mul_inplace_scalar(cplx *y, const cplx *d, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double yr = y[i].real(), yi = y[i].imag();
        double dr = d[i].real(), di = d[i].imag();
        y[i] = cplx(yr * dr - yi * di, yr * di + yi * dr);
    }
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

// Dekker product; this file is built with -ffp-contract=off.
inline void two_prod(double a, double b, double &p, double &e) {
    constexpr double split = 134217729.0;  // 2^27 + 1
    p = a * b;
    double ta = split * a, tb = split * b;
    double ah = ta - (ta - a), bh = tb - (tb - b);
    double al = a - ah, bl = b - bh;
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
}

inline void accumulate(double &s, double &c, double a, double b) {
    double p, e, t;
    two_prod(a, b, p, e);
    two_sum(s, p, s, t);
    c += t + e;
}

void gemv_dd_scalar(
    const cplx *a_hi,
    const cplx *a_lo,
    std::size_t ld,
    std::size_t rows,
    std::size_t cols,
    const cplx *x_hi,
    const cplx *x_lo,
    cplx *y_hi,
    cplx *y_lo) {
    // y_hi holds the running sum, y_lo the running correction
    for (std::size_t i = 0; i < rows; ++i) {
        y_hi[i] = 0;
        y_lo[i] = 0;
    }
    for (std::size_t j = 0; j < cols; ++j) {
        const cplx *col = a_hi + j * ld;
        const cplx *col_lo = a_lo + j * ld;
        const double xr = x_hi[j].real(), xi = x_hi[j].imag();
        for (std::size_t i = 0; i < rows; ++i) {
            double sr = y_hi[i].real(), si = y_hi[i].imag();
            double cr = y_lo[i].real(), ci = y_lo[i].imag();
            const double ar = col[i].real(), ai = col[i].imag();
            accumulate(sr, cr, ar, xr);
            accumulate(sr, cr, -ai, xi);
            accumulate(si, ci, ar, xi);
            accumulate(si, ci, ai, xr);
            const cplx small = cross_terms(col[i], x_lo[j], col_lo[i], x_hi[j]);
            y_hi[i] = cplx(sr, si);
            y_lo[i] = cplx(cr + small.real(), ci + small.imag());
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

const KernelTable &scalar_table() {
    static const KernelTable table{
        Isa::Scalar, dotc_scalar, gemv_scalar, gemv_adjoint_scalar, mul_inplace_scalar, gemv_dd_scalar};
    return table;
}

}  // namespace holosim::kernels
