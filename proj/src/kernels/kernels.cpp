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

#include <cstdlib>
#include <cstring>

#include "holosim/kernels.hpp"

namespace holosim::kernels {

bool avx2_compiled();

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    static const bool ok = avx2_compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

const KernelTable &active() {
    static const KernelTable &table = [] () -> const KernelTable & {
        const char *forced = std::getenv("HOLOSIM_ISA");
        if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
            return scalar_table();
        }
        return avx2_available() ? avx2_table() : scalar_table();
    }();
    return table;
}

const char *isa_name(Isa isa) {
    return isa == Isa::Avx2 ? "avx2" : "scalar";
}

CVector matvec(const CMatrix &a, const CVector &x) {
    if (a.cols() != x.size()) {
        throw ValidationError("matvec: dimension mismatch");
    }
    CVector y(a.rows());
    active().gemv(a.data(), a.outerStride(), a.rows(), a.cols(), x.data(), y.data());
    return y;
}

CVector matvec_adjoint(const CMatrix &a, const CVector &x) {
    if (a.rows() != x.size()) {
        throw ValidationError("matvec_adjoint: dimension mismatch");
    }
    CVector y(a.cols());
    active().gemv_adjoint(a.data(), a.outerStride(), a.rows(), a.cols(), x.data(), y.data());
    return y;
}

CMatrix adjoint_times(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows()) {
        throw ValidationError("adjoint_times: dimension mismatch");
    }
    CMatrix c(a.cols(), b.cols());
    const auto &k = active();
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        k.gemv_adjoint(a.data(), a.outerStride(), a.rows(), a.cols(), b.col(j).data(), c.col(j).data());
    }
    return c;
}

CMatrix times(const CMatrix &a, const CMatrix &b) {
    if (a.cols() != b.rows()) {
        throw ValidationError("times: dimension mismatch");
    }
    CMatrix c(a.rows(), b.cols());
    const auto &k = active();
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        k.gemv(a.data(), a.outerStride(), a.rows(), a.cols(), b.col(j).data(), c.col(j).data());
    }
    return c;
}

}  // namespace holosim::kernels
