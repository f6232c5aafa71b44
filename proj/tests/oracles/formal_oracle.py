"""Independent sympy oracle for frozen values in test_formal.cpp."""
import sympy as sp

u, v, x0, x1, x2, t = sp.symbols("u v x0 x1 x2 t", positive=True)

# (u - v)^(1/2) = u^(1/2) (1 - v/u)^(1/2): coefficients of (v/u)^m
print("sqrt", [sp.series(sp.sqrt(1 - t), t, 0, 4).removeO().coeff(t, m) for m in range(4)])

# iota12 of f = (x1^2 x2 + 3 x0) / (x0^2 x1 x2), x0 = x1 - x2, expanded in x2 small.
f = (x1**2 * x2 + 3 * (x1 - x2)) / ((x1 - x2) ** 2 * x1 * x2)
# substitute x2 = t*x1 and expand in t
g = sp.simplify(f.subs(x2, t * x1))
ser = sp.series(g, t, 0, 4).removeO()
print("iota12 f in t (times powers of x1):", sp.expand(ser))

# iota20 of the same f: x1 = x0 + x2, x0 small
f20 = (x1**2 * x2 + 3 * x0) / (x0**2 * x1 * x2)
g20 = f20.subs(x1, x0 + x2).subs(x0, t * x2)
print("iota20 f in t:", sp.expand(sp.series(g20, t, 0, 3).removeO()))

# iota21 of 1/(x1-x2)^2: x1 small
g21 = (1 / (x1 - x2) ** 2).subs(x1, t * x2)
print("iota21 1/(x1-x2)^2:", sp.expand(sp.series(g21, t, 0, 4).removeO()))

# iota10 of x0/(x2^2): x2 = x1 - x0, x0 small
g10 = (x0 / x2**2).subs(x2, x1 - x0).subs(x0, t * x1)
print("iota10 x0/x2^2:", sp.expand(sp.series(g10, t, 0, 4).removeO()))

# Coefficient of x0^{-n-1} x1^{n-m} x2^m in x0^{-1} delta((x1-x2)/x0) is (-1)^m C(n,m)
for n, m in [(-1, 0), (-1, 3), (-3, 2), (2, 1), (2, 3), (5, 2)]:
    print("delta coeff", n, m, (-1) ** m * sp.binomial(n, m))
