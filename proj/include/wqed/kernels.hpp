#pragma once

#include "wqed/core.hpp"

// Inner-loop kernels for the dense tensor fills and reductions.  Every
// kernel has a scalar reference implementation and (on x86-64) an AVX2+FMA
// variant; the active table is chosen once at startup.  All wavefunction
// rows reduce to three shapes:
//
//   row3      out[k] = A*u[k] + B*dA[k] + C*dB[k]
//   row3_low  out[k] = A*u[k] + ssq[k]*(B*dA[k] + C*dB[k])
//   row3_mid  out[k] = A*u[k] + B*dA[k] + C*ssq[k]*dB[k] + D*w[k]
//
// with complex constants A..D, complex series u/ssq/w and real decay
// slices dA/dB.  Null dA/dB pointers mean the term is absent.

namespace wqed::kernels {

struct Table {
    const char* name;

    void (*row3)(cplx* out, int len, cplx A, const cplx* u, cplx B,
                 const double* dA, cplx C, const double* dB);
    void (*row3_low)(cplx* out, int len, cplx A, const cplx* u,
                     const cplx* ssq, cplx B, const double* dA, cplx C,
                     const double* dB);
    void (*row3_mid)(cplx* out, int len, cplx A, const cplx* u, cplx B,
                     const double* dA, cplx C, const cplx* ssq,
                     const double* dB, cplx D, const cplx* w);

    void (*abs2)(const cplx* z, double* out, int len);
    // sum_k w[k] * |z[k]|^2
    double (*wabs2)(const double* w, const cplx* z, int len);
    // sum_k w[k] * (a[k] + cb*b[k])
    double (*waxpby)(const double* w, const double* a, const double* b,
                     double cb, int len);
    // sum_k w[k] * min(a,b,c)[k]
    double (*wmin3)(const double* w, const double* a, const double* b,
                    const double* c, int len);
    double (*wmin4)(const double* w, const double* a, const double* b,
                    const double* c, const double* d, int len);
};

const Table& scalar_table();
bool avx2_available();
const Table& avx2_table();  // only valid if avx2_available()

// Active table: AVX2 when the CPU supports it, unless overridden by the
// LAMBDA_SCATTER_LANE environment variable ("scalar" or "avx2").
const Table& active();

}  // namespace wqed::kernels
