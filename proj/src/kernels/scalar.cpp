#include "wqed/kernels.hpp"

#include <algorithm>

namespace wqed::kernels {
namespace {

void row3_s(cplx* out, int len, cplx A, const cplx* u, cplx B,
            const double* dA, cplx C, const double* dB) {
    for (int k = 0; k < len; ++k) {
        cplx v = A * u[k];
        if (dA) v += B * dA[k];
        if (dB) v += C * dB[k];
        out[k] = v;
    }
}

void row3_low_s(cplx* out, int len, cplx A, const cplx* u, const cplx* ssq,
                cplx B, const double* dA, cplx C, const double* dB) {
    for (int k = 0; k < len; ++k) {
        cplx v = B * dA[k];
        if (dB) v += C * dB[k];
        out[k] = A * u[k] + ssq[k] * v;
    }
}

void row3_mid_s(cplx* out, int len, cplx A, const cplx* u, cplx B,
                const double* dA, cplx C, const cplx* ssq, const double* dB,
                cplx D, const cplx* w) {
    for (int k = 0; k < len; ++k)
        out[k] = A * u[k] + B * dA[k] + C * (ssq[k] * dB[k]) + D * w[k];
}

void abs2_s(const cplx* z, double* out, int len) {
    for (int k = 0; k < len; ++k)
        out[k] = z[k].real() * z[k].real() + z[k].imag() * z[k].imag();
}

double wabs2_s(const double* w, const cplx* z, int len) {
    double acc = 0.0;
    for (int k = 0; k < len; ++k)
        acc += w[k] * (z[k].real() * z[k].real() + z[k].imag() * z[k].imag());
    return acc;
}

double waxpby_s(const double* w, const double* a, const double* b, double cb,
                int len) {
    double acc = 0.0;
    for (int k = 0; k < len; ++k) acc += w[k] * (a[k] + cb * b[k]);
    return acc;
}

double wmin3_s(const double* w, const double* a, const double* b,
               const double* c, int len) {
    double acc = 0.0;
    for (int k = 0; k < len; ++k)
        acc += w[k] * std::min(a[k], std::min(b[k], c[k]));
    return acc;
}

double wmin4_s(const double* w, const double* a, const double* b,
               const double* c, const double* d, int len) {
    double acc = 0.0;
    for (int k = 0; k < len; ++k)
        acc += w[k] * std::min(std::min(a[k], b[k]), std::min(c[k], d[k]));
    return acc;
}

}  // namespace

const Table& scalar_table() {
    static const Table t{"scalar",  row3_s,   row3_low_s, row3_mid_s,
                         abs2_s,    wabs2_s,  waxpby_s,   wmin3_s,
                         wmin4_s};
    return t;
}

}  // namespace wqed::kernels
