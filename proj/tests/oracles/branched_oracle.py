"""Independent numeric continuation of branched monomials.

Logs are continued along explicit polylines with numpy.unwrap and compared
against principal logarithms with arguments in [0, 2 pi). Prints the frozen
values used by test_branched.cpp.
"""
import numpy as np

w8 = np.exp(1j * np.pi / 4)


def plog(z):
    a = np.angle(z)
    return np.log(abs(z)) + 1j * (a if a >= 0 else a + 2 * np.pi)


def continued_log(zs):
    """Continuous log along samples zs, starting at the principal value."""
    args = np.unwrap(np.angle(zs))
    args = args - args[0] + plog(zs[0]).imag
    return np.log(np.abs(zs[-1])) + 1j * args[-1]


t = np.linspace(0, 1, 20001)

# z1^(1/2) on R1 at z1 = 2i
print("sqrt(2i) principal:", np.exp(0.5 * plog(2j)))

# swap of (z1-z2)^(1/2): continue w from P0 to Q0 inside R4, where z2 - z1
# avoids [0, inf), so w turns clockwise.
z1 = (7 - 3 * t) * w8
w = 3 * np.exp(1j * (np.pi / 4 - np.pi * t))
L = continued_log(w)
val_q0 = np.exp(0.5 * L)
coef = val_q0 / np.exp(0.5 * plog(3 * w8))
print("swap coefficient for (z1-z2)^(1/2):", np.round(coef, 12))
print("swap twice:", np.round(coef * coef, 12))

# substitute_shift of z2^(1/2): at d = (7w, 2 e^{5 pi i/4}) the value is the
# preferred R1 value of z2^(1/2) at (z1 - z2, -z2) = (9w, 2w).
d2 = 2 * np.exp(5j * np.pi / 4)
val = np.exp(0.5 * plog(2 * w8))
coef = val / np.exp(0.5 * plog(d2))
print("shift coefficient for z2^(1/2):", np.round(coef, 12))

# substitute_shift of z1^(1/3) z2^(1/4) (z1-z2)^(1/5):
# value at shifted point (9w, 2w) on R1: z1^(1/3) z2^(1/4) (z1-z2)^(1/5) with
# (z1-z2) = 7w principal (R1 log of z1-z2 is plog(z1) + Log(1 - z2/z1)).
q1, q2 = 9 * w8, 2 * w8
vq = np.exp(plog(q1) / 3 + plog(q2) / 4 + (plog(q1) + np.log(1 - q2 / q1)) / 5)
p1, p2 = 7 * w8, d2
# h = c * z1^(1/5) z2^(1/4) (z1-z2)^(1/3) in principal logs at d
vp = np.exp(plog(p1) / 5 + plog(p2) / 4 + plog(p1 - p2) / 3)
print("shift coefficient for z1^(1/3) z2^(1/4) (z1-z2)^(1/5):", np.round(vq / vp, 12))
