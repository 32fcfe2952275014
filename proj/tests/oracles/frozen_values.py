"""Independent reference values frozen into the C++ unit tests.

Uses mpmath (50 digits) for closed forms and plain numpy loops for discrete
sums, sharing no code with the library. Run: python3 frozen_values.py
"""
import mpmath as mp
import numpy as np

mp.mp.dps = 50


def psi2(t):
    t = mp.mpf(t)
    return mp.sqrt(30) * (mp.e ** (-2 * t) - mp.e ** (-t)) / (1 + mp.e ** (-t)) ** 3


def logistic(a, b, ysat, t):
    return mp.mpf(ysat) / (1 + mp.e ** (-(mp.mpf(t) - b) / a))


print("gompertz(100,0.15,20) at 0      =", mp.nstr(100 * mp.e ** (-mp.e ** 3), 20))
print("psi2(1)                          =", mp.nstr(psi2(1), 20))
eq4b = [(6.17, 50, 88057), (5.12, 33.55, -10919), (8.77, 67.17, 22846)]
print("Eq.(4b) model at t=0             =", mp.nstr(sum(logistic(mp.mpf(str(a)), mp.mpf(str(b)), y, 0) for a, b, y in eq4b), 20))
print("gompertz(1e5,0.1,50) at 201      =", mp.nstr(100000 * mp.e ** (-mp.e ** (-mp.mpf("15.1"))), 20))

# Discrete Index of the second differences of an exact logistic, unit grid n = 0..201.
n = np.arange(202, dtype=float)


def psi_np(u):
    out = np.empty_like(u)
    for i, x in enumerate(u):
        out[i] = float(psi2(mp.mpf(x)))
    return out


y = np.array([float(logistic(6.115, 50, 87959, k)) for k in n])
d2 = y[2:] - 2 * y[1:-1] + y[:-2]
tn = n[1:-1]
print("Index(dd logistic; 6.115, 50)    =", repr(float(np.sum(d2 * psi_np((tn - 50) / 6.115) / np.sqrt(6.115)))))

# Gompertz series: Index at the paper's first-pass coordinates.
g = np.array([float(100000 * mp.e ** (-mp.e ** (-(mp.mpf(k) - 50) / 10))) for k in n])
gd2 = g[2:] - 2 * g[1:-1] + g[:-2]
print("Index(dd gompertz; 6.115, 50)    =", repr(float(np.sum(gd2 * psi_np((tn - 50) / 6.115) / np.sqrt(6.115)))))
