// AVX2+FMA variants of the inner-loop kernels.  Compiled with -mavx2 -mfma;
// only dispatched to when the CPU reports both features.  Complex numbers
// are processed two per 256-bit register in interleaved (re,im) layout.

#include "wqed/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>

namespace wqed::kernels {
namespace {

// [re0,im0,re1,im1] complex multiply
inline __m256d cmul(__m256d p, __m256d q) {
    __m256d qre = _mm256_movedup_pd(q);                 // [qr0,qr0,qr1,qr1]
    __m256d qim = _mm256_permute_pd(q, 0xF);            // [qi0,qi0,qi1,qi1]
    __m256d pswap = _mm256_permute_pd(p, 0x5);          // [im,re,...]
    return _mm256_fmaddsub_pd(p, qre, _mm256_mul_pd(pswap, qim));
}

// broadcast one complex scalar into both lanes
inline __m256d cbroadcast(cplx c) {
    return _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&c));
}

// load two reals d[k],d[k+1] and expand to [d0,d0,d1,d1]
inline __m256d dup2(const double* d) {
    __m256d v = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(d));
    return _mm256_permute4x64_pd(v, 0xD8);  // (0,2,1,3)
}

inline const double* dptr(const cplx* z) {
    return reinterpret_cast<const double*>(z);
}
inline double* dptr(cplx* z) { return reinterpret_cast<double*>(z); }

void row3_v(cplx* out, int len, cplx A, const cplx* u, cplx B,
            const double* dA, cplx C, const double* dB) {
    const __m256d va = cbroadcast(A);
    const __m256d vb = cbroadcast(B);
    const __m256d vc = cbroadcast(C);
    int k = 0;
    for (; k + 2 <= len; k += 2) {
        __m256d acc = cmul(va, _mm256_loadu_pd(dptr(u + k)));
        if (dA) acc = _mm256_add_pd(acc, _mm256_mul_pd(vb, dup2(dA + k)));
        if (dB) acc = _mm256_add_pd(acc, _mm256_mul_pd(vc, dup2(dB + k)));
        _mm256_storeu_pd(dptr(out + k), acc);
    }
    for (; k < len; ++k) {
        cplx v = A * u[k];
        if (dA) v += B * dA[k];
        if (dB) v += C * dB[k];
        out[k] = v;
    }
}

void row3_low_v(cplx* out, int len, cplx A, const cplx* u, const cplx* ssq,
                cplx B, const double* dA, cplx C, const double* dB) {
    const __m256d va = cbroadcast(A);
    const __m256d vb = cbroadcast(B);
    const __m256d vc = cbroadcast(C);
    int k = 0;
    for (; k + 2 <= len; k += 2) {
        __m256d inner = _mm256_mul_pd(vb, dup2(dA + k));
        if (dB) inner = _mm256_add_pd(inner, _mm256_mul_pd(vc, dup2(dB + k)));
        __m256d acc = cmul(_mm256_loadu_pd(dptr(ssq + k)), inner);
        acc = _mm256_add_pd(acc, cmul(va, _mm256_loadu_pd(dptr(u + k))));
        _mm256_storeu_pd(dptr(out + k), acc);
    }
    for (; k < len; ++k) {
        cplx v = B * dA[k];
        if (dB) v += C * dB[k];
        out[k] = A * u[k] + ssq[k] * v;
    }
}

void row3_mid_v(cplx* out, int len, cplx A, const cplx* u, cplx B,
                const double* dA, cplx C, const cplx* ssq, const double* dB,
                cplx D, const cplx* w) {
    const __m256d va = cbroadcast(A);
    const __m256d vb = cbroadcast(B);
    const __m256d vc = cbroadcast(C);
    const __m256d vd = cbroadcast(D);
    int k = 0;
    for (; k + 2 <= len; k += 2) {
        __m256d acc = cmul(va, _mm256_loadu_pd(dptr(u + k)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(vb, dup2(dA + k)));
        __m256d sq = _mm256_mul_pd(_mm256_loadu_pd(dptr(ssq + k)), dup2(dB + k));
        acc = _mm256_add_pd(acc, cmul(vc, sq));
        acc = _mm256_add_pd(acc, cmul(vd, _mm256_loadu_pd(dptr(w + k))));
        _mm256_storeu_pd(dptr(out + k), acc);
    }
    for (; k < len; ++k)
        out[k] = A * u[k] + B * dA[k] + C * (ssq[k] * dB[k]) + D * w[k];
}

void abs2_v(const cplx* z, double* out, int len) {
    int k = 0;
    for (; k + 4 <= len; k += 4) {
        __m256d z0 = _mm256_loadu_pd(dptr(z + k));       // [r0,i0,r1,i1]
        __m256d z1 = _mm256_loadu_pd(dptr(z + k + 2));   // [r2,i2,r3,i3]
        __m256d s0 = _mm256_mul_pd(z0, z0);
        __m256d s1 = _mm256_mul_pd(z1, z1);
        __m256d h = _mm256_hadd_pd(s0, s1);              // [|0|,|2|,|1|,|3|]
        h = _mm256_permute4x64_pd(h, 0xD8);              // [|0|,|1|,|2|,|3|]
        _mm256_storeu_pd(out + k, h);
    }
    for (; k < len; ++k)
        out[k] = z[k].real() * z[k].real() + z[k].imag() * z[k].imag();
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double wabs2_v(const double* w, const cplx* z, int len) {
    __m256d acc = _mm256_setzero_pd();
    int k = 0;
    for (; k + 4 <= len; k += 4) {
        __m256d z0 = _mm256_loadu_pd(dptr(z + k));
        __m256d z1 = _mm256_loadu_pd(dptr(z + k + 2));
        __m256d h = _mm256_hadd_pd(_mm256_mul_pd(z0, z0), _mm256_mul_pd(z1, z1));
        h = _mm256_permute4x64_pd(h, 0xD8);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + k), h, acc);
    }
    double tail = 0.0;
    for (; k < len; ++k)
        tail += w[k] * (z[k].real() * z[k].real() + z[k].imag() * z[k].imag());
    return hsum(acc) + tail;
}

double waxpby_v(const double* w, const double* a, const double* b, double cb,
                int len) {
    __m256d acc = _mm256_setzero_pd();
    const __m256d vcb = _mm256_set1_pd(cb);
    int k = 0;
    for (; k + 4 <= len; k += 4) {
        __m256d s = _mm256_fmadd_pd(vcb, _mm256_loadu_pd(b + k),
                                    _mm256_loadu_pd(a + k));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + k), s, acc);
    }
    double tail = 0.0;
    for (; k < len; ++k) tail += w[k] * (a[k] + cb * b[k]);
    return hsum(acc) + tail;
}

double wmin3_v(const double* w, const double* a, const double* b,
               const double* c, int len) {
    __m256d acc = _mm256_setzero_pd();
    int k = 0;
    for (; k + 4 <= len; k += 4) {
        __m256d m = _mm256_min_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
        m = _mm256_min_pd(m, _mm256_loadu_pd(c + k));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + k), m, acc);
    }
    double tail = 0.0;
    for (; k < len; ++k) tail += w[k] * std::min(a[k], std::min(b[k], c[k]));
    return hsum(acc) + tail;
}

double wmin4_v(const double* w, const double* a, const double* b,
               const double* c, const double* d, int len) {
    __m256d acc = _mm256_setzero_pd();
    int k = 0;
    for (; k + 4 <= len; k += 4) {
        __m256d m = _mm256_min_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
        m = _mm256_min_pd(m, _mm256_min_pd(_mm256_loadu_pd(c + k),
                                           _mm256_loadu_pd(d + k)));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + k), m, acc);
    }
    double tail = 0.0;
    for (; k < len; ++k)
        tail += w[k] * std::min(std::min(a[k], b[k]), std::min(c[k], d[k]));
    return hsum(acc) + tail;
}

}  // namespace

const Table& avx2_table() {
    static const Table t{"avx2",   row3_v,   row3_low_v, row3_mid_v,
                         abs2_v,   wabs2_v,  waxpby_v,   wmin3_v,
                         wmin4_v};
    return t;
}

}  // namespace wqed::kernels

#else

namespace wqed::kernels {
const Table& avx2_table() { return scalar_table(); }
}  // namespace wqed::kernels

#endif
