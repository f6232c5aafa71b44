"""Independent dense-sampling oracle for the default gamma and sigma paths.

Rebuilds both paths from their piecewise formulas with numpy, samples
densely and reports the minimum max-norm clearance to the cut sets and the
winding of z1, z2, z1 - z2 via numpy.unwrap.
"""
import numpy as np

a0, b0, a1, b1, a2, b2, a3, b3 = 7, 4, 7, 2, 2, 7, 4, 7
w = np.exp(1j * np.pi / 4)
E = lambda th: np.exp(1j * np.pi * th)


def gamma(t):
    k = min(int(t * 7), 6)
    s = 7 * t - k
    if k == 0:
        return (a0 + (a1 - a0) * s) * w, (b0 + (b1 - b0) * s) * w
    if k == 1:
        return a1 * w, b1 * E(0.25 + s)
    if k == 2:
        return (a1 + (a2 - a1) * s) * w, (b1 + (b2 - b1) * s) * E(1.25)
    if k == 3:
        return a2 * E(0.25 + s), b2 * E(1.25)
    if k == 4:
        return b2 * E(1.25) + (b2 - a2) * E(0.25 + s), b2 * E(1.25)
    if k == 5:
        return (2 * b2 - a2) * E(1.25 - s), b2 * E(1.25 - s)
    return ((2 * b2 - a2) + (a0 - (2 * b2 - a2)) * s) * w, (b2 + (b0 - b2) * s) * w


def sigma(t):
    k = min(int(t * 7), 6)
    s = 7 * t - k
    if k == 0:
        return a3 * w, a3 * w + (b3 - a3) * E(0.25 + s)
    if k == 1:
        return (a3 + (a0 - a3) * s) * w, ((2 * a3 - b3) + (b0 - (2 * a3 - b3)) * s) * w
    if k == 2:
        return (a0 + (a1 - a0) * s) * w, (b0 + (b1 - b0) * s) * w
    if k == 3:
        return a1 * w, b1 * E(0.25 + s)
    if k == 4:
        return (a1 + (a2 - a1) * s) * w, (b1 + (b2 - b1) * s) * E(1.25)
    if k == 5:
        return a2 * w, b2 * E(1.25 - s)
    return (a2 + (a3 - a2) * s) * w, (b2 + (b3 - b2) * s) * w


def dist(z):
    return np.where(z.real >= 0, np.abs(z.imag), np.abs(z))


def report(name, f, sign):
    t = np.linspace(0, 1, 700001)
    z = np.array([f(x) for x in t])
    z1, z2 = z[:, 0], z[:, 1]
    d = sign * (z1 - z2)
    c = np.minimum(np.minimum(dist(z1), dist(z2)), dist(d) / 2)
    wind = [round((np.unwrap(np.angle(v))[-1] - np.angle(v)[0]) / (2 * np.pi), 9) for v in (z1, z2, z1 - z2)]
    print(f"{name}: min clearance {c.min():.12f} winding {wind}")


report("gamma", gamma, 1)
report("sigma", sigma, -1)
