#!/usr/bin/env python3
"""Prototype of the full pipeline in numpy to validate algebra, quadrature
resolutions, and optimum locations before the C++ build."""
import numpy as np

G0 = 1.0  # gamma0


def s_coef(d, chi=1.0):
    return chi * (-1j * G0) / (d + 1j * G0)


def t_coef(d, chi=1.0):
    return 1.0 + s_coef(d, chi)


def make_grid(gamma, n=None, hmax=None):
    tmin = -6.0 / gamma
    tmax = 6.0 / gamma + 10.0
    if n is None:
        n = int(np.ceil((tmax - tmin) / hmax)) + 1
        if n % 2 == 0:
            n += 1
    t = np.linspace(tmin, tmax, n)
    return t


def gauss_env(t, delta, gamma, nf=None):
    if nf is None:
        nf = np.sqrt(gamma) / np.pi ** 0.25
    return nf * np.exp(-1j * delta * t - gamma ** 2 * t ** 2 / 2)


def hermite_env(t, delta, gamma, coeffs):  # coeffs: list of complex c_n for n=2..
    x = gamma * t
    poly = np.ones_like(x, dtype=complex)
    Hm1, H = np.ones_like(x), 2 * x  # H0, H1
    for n in range(2, 2 + len(coeffs)):
        Hm1, H = H, 2 * x * H - 2 * (n - 1) * Hm1
        poly = poly + coeffs[n - 2] * H
    return poly * np.exp(-1j * delta * t - gamma ** 2 * t ** 2 / 2)


def normalize(t, phi):
    nrm = np.trapz(np.abs(phi) ** 2, t)
    return phi / np.sqrt(nrm)


def filtered(t, phi0f, chi=1.0):
    """RK4 on dphis/dt = -G0 phis - chi G0 phi0(t); phi0f callable."""
    n = len(t)
    h = t[1] - t[0]
    out = np.zeros(n, dtype=complex)
    y = 0.0 + 0.0j
    def f(tt, yy):
        return -G0 * yy - chi * G0 * phi0f(tt)
    for i in range(n - 1):
        k1 = f(t[i], y)
        k2 = f(t[i] + h / 2, y + h / 2 * k1)
        k3 = f(t[i] + h / 2, y + h / 2 * k2)
        k4 = f(t[i] + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i + 1] = y
    return out


def series(delta, gamma, n=None, hmax=None, coeffs=(), chi=1.0, substep=None):
    t = make_grid(gamma, n=n, hmax=hmax)
    h = t[1] - t[0]
    if substep is None:
        substep = max(1, int(np.ceil(h / 0.05)))
    nf = [None]
    def phi0f(tt):
        if len(coeffs):
            v = hermite_env(np.array([tt]), delta, gamma, coeffs)[0]
        else:
            v = gauss_env(np.array([tt]), delta, gamma)[0]
        return v * nf[0]
    # normalize on grid first with nf=1
    nf[0] = 1.0
    phi0 = np.array([phi0f(tt) for tt in t])
    nrm = np.trapz(np.abs(phi0) ** 2, t)
    nf[0] = 1.0 / np.sqrt(nrm)
    phi0 = phi0 * nf[0]
    tf = np.linspace(t[0], t[-1], (len(t) - 1) * substep + 1)
    phisf = filtered(tf, phi0f, chi)
    phis = phisf[::substep]
    return t, phi0, phis, phi0 + phis


def scatter2(t, phi0, phis, phitau):
    n = len(t)
    dt = np.abs(t[:, None] - t[None, :])
    dec = np.exp(-G0 * dt)
    smin = np.where(t[:, None] <= t[None, :], phis[:, None], phis[None, :])
    xxx = phitau[:, None] * phitau[None, :] - smin ** 2 * dec
    # xyy[i,j]: first X at t_i, Y at t_j
    theta = (t[None, :] > t[:, None]).astype(float)
    decd = np.exp(-G0 * (t[None, :] - t[:, None]))
    xyy = phi0[:, None] * phis[None, :] + theta * phis[:, None] * (
        phis[None, :] - phis[:, None] * np.where(theta > 0, decd, 0.0))
    return xxx, xyy


def pw3_avg(t, xxx, xyy):
    h = t[1] - t[0]
    w = np.full(len(t), h); w[0] = w[-1] = h / 2
    W = w[:, None] * w[None, :]
    A = np.abs(xxx) ** 2
    B = np.abs(xyy) ** 2
    BT = B.T
    num = 3 * np.sum(W * np.minimum(A, np.minimum(B, BT)))
    den = np.sum(W * (A + 2 * B))
    return num / den, den


def pw3_of(delta, gamma, n=None, hmax=0.25, coeffs=()):
    t, p0, ps, pt = series(delta, gamma, n=n, hmax=hmax, coeffs=coeffs)
    xxx, xyy = scatter2(t, p0, ps, pt)
    return pw3_avg(t, xxx, xyy)


# ---- three photon ----
def scatter3(t, phi0, phis, phitau):
    n = len(t)
    ss = phis ** 2
    q = phis - phi0
    T1 = t[:, None, None]; T2 = t[None, :, None]; T3 = t[None, None, :]
    ts = np.sort(np.stack(np.broadcast_arrays(T1 + 0 * T2 + 0 * T3,
                                              T2 + 0 * T1 + 0 * T3,
                                              T3 + 0 * T1 + 0 * T2), axis=-1), axis=-1)
    t1s, t2s, t3s = ts[..., 0], ts[..., 1], ts[..., 2]
    idx = np.argsort(np.stack(np.broadcast_arrays(T1 + 0 * T2 + 0 * T3,
                                                  T2 + 0 * T1 + 0 * T3,
                                                  T3 + 0 * T1 + 0 * T2), axis=-1), axis=-1, kind='stable')
    # map sorted values through interp of series: since times are grid values, use searchsorted
    def at(arr, tv):
        k = np.searchsorted(t, tv.ravel()).reshape(tv.shape)
        k = np.clip(k, 0, n - 1)
        # fix off-by-one due to float compare
        k = np.where(np.abs(t[np.clip(k - 1, 0, n - 1)] - tv) < 1e-12, np.clip(k - 1, 0, n - 1), k)
        return arr[k]
    e21 = np.exp(-G0 * (t2s - t1s)); e32 = np.exp(-G0 * (t3s - t2s)); e31 = np.exp(-G0 * (t3s - t1s))
    xxxx = (at(phitau, t1s) * at(phitau, t2s) * at(phitau, t3s)
            - at(ss, t1s) * at(phitau, t3s) * e21
            - at(ss, t2s) * at(phitau, t1s) * e32
            + at(ss, t1s) * (at(phis, t2s) - at(phi0, t2s)) * e31)
    # xxyy[i,j,k]: X at t_i,t_j ; Y at t_k
    tl = np.minimum(T1, T2) + 0 * T3
    tg = np.maximum(T1, T2) + 0 * T3
    t3 = T3 + 0 * T1 + 0 * T2
    th_l = np.where(tl > t3, 1.0, np.where(tl == t3, 0.5, 0.0))
    th_g = np.where(t3 > tg, 1.0, np.where(t3 == tg, 0.5, 0.0))
    th_m = np.where(tg > t3, 1.0, np.where(tg == t3, 0.5, 0.0)) * np.where(t3 > tl, 1.0, np.where(t3 == tl, 0.5, 0.0))
    dlg = np.exp(-G0 * np.abs(tg - tl))
    d3g = np.exp(-G0 * np.abs(t3 - tg))
    d3l = np.exp(-G0 * np.abs(t3 - tl))
    xxyy = (th_l * at(phi0, tl) * at(phi0, tg) * at(phis, t3)
            + th_g * (at(phitau, tl) * at(phitau, tg) * at(phis, t3)
                      - at(ss, tl) * at(phis, t3) * dlg
                      - at(ss, tg) * at(phitau, tl) * d3g
                      + at(ss, tl) * (at(phis, tg) - at(phi0, tg)) * d3l)
            + th_m * at(phi0, tg) * (at(phitau, tl) * at(phis, t3) - at(ss, tl) * d3l))
    return xxxx, xxyy


def pw4_avg(t, xxxx, xxyy):
    h = t[1] - t[0]
    w = np.full(len(t), h); w[0] = w[-1] = h / 2
    W = w[:, None, None] * w[None, :, None] * w[None, None, :]
    A = np.abs(xxxx) ** 2
    B = np.abs(xxyy) ** 2
    B2 = np.transpose(B, (0, 2, 1))  # Y at t2: xxyy[i,k,j]
    B1 = np.transpose(B, (2, 0, 1))  # hmm check: want W1[i,j,k]=B[j,k,i]
    B1 = np.transpose(B, (2, 0, 1))  # B1[i,j,k] = B[j,k,i]
    num = 4 * np.sum(W * np.minimum(np.minimum(A, B), np.minimum(B2, B1)))
    den = np.sum(W * (A + 3 * B))
    return num / den, den


def pw4_of(delta, gamma, n=None, hmax=0.4, coeffs=()):
    t, p0, ps, pt = series(delta, gamma, n=n, hmax=hmax, coeffs=coeffs)
    xxxx, xxyy = scatter3(t, p0, ps, pt)
    return pw4_avg(t, xxxx, xxyy)


if __name__ == "__main__":
    import sys
    mode = sys.argv[1] if len(sys.argv) > 1 else "basic"
    if mode == "basic":
        # two-photon norm + paper values
        v, nrm = pw3_of(0.98, 0.97, hmax=0.12)
        print("PW3(0.98,0.97) =", v, "norm=", nrm)
        v, nrm = pw3_of(1.0, 0.05, hmax=0.25)
        print("PW3(1.0,0.05) =", v, "norm=", nrm, " vs mono 0.75")
        v, nrm = pw3_of(0.0, 0.5, hmax=0.12)
        print("PW3(0,0.5) =", v, "norm=", nrm)
    elif mode == "mono3":
        for hmax in (0.5, 0.35, 0.25):
            v, nrm = pw3_of(1.0, 0.05, hmax=hmax)
            print(f"PW3(1,0.05) hmax={hmax}: {v:.5f} norm={nrm:.5f}")
    elif mode == "pw4":
        v, nrm = pw4_of(0.87, 1.33, hmax=0.2)
        print("PW4(0.87,1.33) =", v, "norm=", nrm)
        v, nrm = pw4_of(np.sqrt(2), 0.3, hmax=0.35)
        print("PW4(sqrt2,0.3) =", v, "norm=", nrm, "vs 16/27 =", 16 / 27)
