#!/usr/bin/env python3
"""High-precision (50-digit) reference values for the C++ test suite.

Independent evaluation path: direct adaptive quadrature of the filter
integral, analytic L2 normalization over the real line, and explicit
Hermite polynomial summation.  No shared code with the implementation.
"""
import mpmath as mp

mp.mp.dps = 50

G0 = mp.mpf(1)
CHI = mp.mpf(1)


def gauss(t, delta, gamma):
    # analytic unit-L2-norm prefactor
    nf = mp.sqrt(gamma) / mp.pi ** mp.mpf("0.25")
    return nf * mp.e ** (-1j * delta * t - gamma ** 2 * t ** 2 / 2)


def phis(t, delta, gamma):
    # -chi*G0 * int_-inf^t phi0(u) e^{-G0 (t-u)} du
    f = lambda u: gauss(u, delta, gamma) * mp.e ** (-G0 * (t - u))
    val = mp.quad(f, [-mp.inf, t])
    return -CHI * G0 * val


def cfmt(z, digits=20):
    return f"{mp.nstr(z.real, digits)}, {mp.nstr(z.imag, digits)}"


print("// Gaussian delta=0 gamma=0.5, analytic norm")
d, g = mp.mpf(0), mp.mpf("0.5")
p0_0 = gauss(0, d, g)
ps_0 = phis(0, d, g)
print("phi0(0)   =", cfmt(p0_0))
print("phis(0)   =", cfmt(ps_0))
print("phis(2)   =", cfmt(phis(2, d, g)))
print("phis(-3)  =", cfmt(phis(-3, d, g)))
xxx00 = p0_0 * (p0_0 + 2 * ps_0)
print("psiXXx(0,0) =", cfmt(xxx00))

# probe (t1,t2) = (0.5, -0.25)
t1, t2 = mp.mpf("0.5"), mp.mpf("-0.25")
p0_1, p0_2 = gauss(t1, d, g), gauss(t2, d, g)
ps_1, ps_2 = phis(t1, d, g), phis(t2, d, g)
pt_1, pt_2 = p0_1 + ps_1, p0_2 + ps_2
dec = mp.e ** (-G0 * (t1 - t2))
xxx = pt_1 * pt_2 - ps_2 ** 2 * dec          # t_< = t2
xyy_12 = p0_1 * ps_2                          # t2 < t1: theta = 0
xyy_21 = p0_2 * ps_1 + ps_2 * (ps_1 - ps_2 * dec)
print("psiXXx(0.5,-0.25) =", cfmt(xxx))
print("psiXYy(0.5,-0.25) =", cfmt(xyy_12))
print("psiXYy(-0.25,0.5) =", cfmt(xyy_21))
w = [abs(xxx) ** 2, abs(xyy_12) ** 2, abs(xyy_21) ** 2]
pw3 = 3 * min(w) / sum(w)
print("PW3(0.5,-0.25) =", mp.nstr(pw3, 20))

# three-photon coincidence probe, delta=0 gamma=0.2
d3, g3 = mp.mpf(0), mp.mpf("0.2")
p0 = gauss(0, d3, g3)
ps = phis(0, d3, g3)
pt = p0 + ps
xxxx000 = pt ** 3 - 2 * ps ** 2 * pt + ps ** 2 * (ps - p0)
print("// three-photon, delta=0 gamma=0.2")
print("phis(0) g=0.2 =", cfmt(ps))
print("psiXXXx(0,0,0) =", cfmt(xxxx000))

# Hermite-augmented shape (table column), value at t=0 after analytic norm
print("// hermite shape: delta=0.8984 gamma=1.0143 c2=i*0.0294 c3=0.0062+i*0.0147 c4=0.0024")
dh, gh = mp.mpf("0.8984"), mp.mpf("1.0143")
cs = [mp.mpc(0, "0.0294"), mp.mpc("0.0062", "0.0147"), mp.mpc("0.0024", 0)]


def hpoly(n, x):
    if n == 0:
        return mp.mpf(1)
    hm, h = mp.mpf(1), 2 * x
    for k in range(2, n + 1):
        hm, h = h, 2 * x * h - 2 * (k - 1) * hm
    return h


def henv_unnorm(t):
    x = gh * t
    poly = mp.mpf(1)
    for i, c in enumerate(cs):
        poly += c * hpoly(i + 2, x)
    return poly * mp.e ** (-1j * dh * t - gh ** 2 * t ** 2 / 2)


nrm2 = mp.quad(lambda u: abs(henv_unnorm(u)) ** 2, [-mp.inf, 0, mp.inf])
nf = 1 / mp.sqrt(nrm2)
print("hermite env(0) normalized =", cfmt(nf * henv_unnorm(0)))
print("hermite env(0.7) normalized =", cfmt(nf * henv_unnorm(mp.mpf("0.7"))))
