"""Independent sympy oracle for the frozen values in test_scalars.cpp."""
import sympy as sp

x = sp.symbols("x")
for n in (1, 2, 3, 4, 5, 6, 8, 12, 24, 30, 105):
    print("Phi", n, sp.Poly(sp.cyclotomic_poly(n, x), x).all_coeffs()[::-1])

# inverse of zeta_4 modulo Phi_4, as coefficients in 1, zeta
print("inv zeta4", sp.Poly(sp.invert(x, x**2 + 1), x).all_coeffs()[::-1])
# inverse of 1 + zeta_5 modulo Phi_5
print("inv 1+zeta5", sp.Poly(sp.invert(1 + x, sp.cyclotomic_poly(5, x)), x).all_coeffs()[::-1])
# (1 + 2 zeta_12)(3 - zeta_12^3) reduced mod Phi_12
p = sp.rem(sp.expand((1 + 2 * x) * (3 - x**3)), sp.cyclotomic_poly(12, x), x)
print("prod12", sp.Poly(p, x).all_coeffs()[::-1])
z8 = sp.exp(2 * sp.pi * sp.I / 8)
print("zeta8", sp.N(sp.re(z8), 20), sp.N(sp.im(z8), 20))
# e^{2 pi i / 6} in Q(zeta_3): equals -zeta_3^2 = 1 + zeta_3
print("zeta6 as 1+zeta3:", sp.simplify(sp.exp(2*sp.pi*sp.I/6) - (1 + sp.exp(2*sp.pi*sp.I/3))))
print("C(1/2,30)", sp.binomial(sp.Rational(1, 2), 30))
