"""Closed-form correlator values and Omega phases for the abelian models.

Evaluates the product correlator z1^a z2^b (z1 - z2)^c of a class on its
R1 branch with mpmath: logs of z1 and z2 use arguments in [0, 2 pi) and
(z1 - z2)^c is written as z1^c (1 - z2/z1)^c with the principal power of
the ratio. Prints the values frozen in test_model.cpp.
"""
import mpmath as mp

mp.mp.dps = 30


def plog(z):
    z = mp.mpc(z)
    a = mp.arg(z)
    if a < 0:
        a += 2 * mp.pi
    return mp.log(abs(z)) + 1j * a


def form(n, g, h):
    q = mp.mpf(2 * g * h) / n
    return q - 2 * mp.floor(q / 2)


def product_r1(n, g, z1, z2):
    a, b, c = form(n, g[0], g[2]), form(n, g[1], g[2]), form(n, g[0], g[1])
    return mp.exp(a * plog(z1) + b * plog(z2) + c * plog(z1)) * mp.power(1 - z2 / z1, c)


def show(label, v):
    print(f"{label}: {mp.nstr(mp.re(v), 15)} {mp.nstr(mp.im(v), 15)}")


z1 = mp.mpc(-3, -2)
z2 = mp.mpc(1, 0.5)
show("N=4 P(1,2,3) at (-3-2i, 1+0.5i)", product_r1(4, (1, 2, 3), z1, z2))
show("N=8 P(3,5,7) at (-3-2i, 1+0.5i)", product_r1(8, (3, 5, 7), z1, z2))

# (z1 - z2)^(1/2) from the q(1,1) = 1/2 override at the same point
show("semion (1,1,0,0) at (-3-2i, 1+0.5i)", mp.exp(0.5 * plog(z1)) * mp.sqrt(1 - z2 / z1))

# Omega_{-1} on Op(3,5) of Z/8: exp(-pi i q(3,5)), q = 30/8 mod 2 = 7/4
q = form(8, 3, 5)
print("q(3,5) for N=8:", q)
show("Omega_{-1} phase Op(3,5), N=8", mp.exp(-1j * mp.pi * q))
show("Omega_{0} phase Op(3,5), N=8", mp.exp(1j * mp.pi * q))
