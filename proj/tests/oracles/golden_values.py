"""Independent oracle values for the C++ test suites.

Every number here is computed by adaptive quadrature (mpmath.quad) or by
an independent special-function implementation, never by the C++ code
under test. The printed values are frozen into tests/golden.hpp.
"""
import mpmath as mp

mp.mp.dps = 40


def upper_gamma_quad(a, x):
    return mp.quad(lambda t: t ** (a - 1) * mp.e ** (-t), [x, 2 * x + 2, mp.inf])


def c_alpha(alpha):
    return 1 / (2 * abs(mp.gamma(-alpha)))


def tail_quad(alpha, lam, ell):
    return mp.quad(lambda y: mp.e ** (-lam * y) * y ** (-1 - alpha), [ell, ell + 1, mp.inf])


def rhs_oracle(x, alpha, lam):
    """Operator applied to (1-x^2)_+ by symmetrised quadrature."""
    u = lambda z: (1 - z * z) if abs(z) < 1 else mp.mpf(0)
    c = c_alpha(alpha)

    def second_diff(y):
        # exact form while both points stay inside, avoids cancellation at small y
        if abs(x + y) < 1 and abs(x - y) < 1:
            return -2 * y * y
        return u(x + y) + u(x - y) - 2 * u(x)

    f = lambda y: second_diff(y) * mp.e ** (-lam * y) * y ** (-1 - alpha)
    pts = sorted({mp.mpf(0), abs(1 - x), abs(1 + x), mp.mpf(3)})
    return c * mp.quad(f, pts + [mp.inf])


def f1_quad(s, r, alpha, lam):
    def g(th):
        q = s * s + r * r - 2 * s * r * mp.cos(th)
        return mp.e ** (-lam * mp.sqrt(q)) * q ** (-(alpha + 2) / 2)
    return mp.quad(g, [0, mp.pi / 8, mp.pi])


def boundary_tail_quad(r, alpha, lam):
    def g(th):
        rt = mp.sqrt(1 - r * r * mp.sin(th) ** 2) - r * mp.cos(th)
        return lam ** alpha * mp.gammainc(-alpha, lam * rt)
    return 2 * mp.quad(g, [0, mp.mpf('0.01'), mp.mpf('0.1'), mp.pi])


def near_field_quad(h, alpha, lam):
    """Coefficient C with int_{B_h}[u(x+y)-u(x)-y.grad u] K dy = C * Lap u for u = |x|^2."""
    k = lambda rho: mp.e ** (-lam * rho) * rho ** (-alpha - 2)
    # u = |x|^2 => integrand |y|^2 K(|y|); Laplacian of u is 4
    val = mp.quad(lambda rho, th: rho * rho * k(rho) * rho, [0, h], [0, 2 * mp.pi])
    return val / 4


vals = {
    "gamma_m05_1": upper_gamma_quad(mp.mpf(-0.5), 1),
    "gamma_m15_001": upper_gamma_quad(mp.mpf(-1.5), mp.mpf('0.01')),
    "e1_of_1": mp.e1(1),
    "p_15_2": mp.gammainc(1.5, 0, 2, regularized=True),
    "p_15_2_quad": mp.quad(lambda t: t ** 0.5 * mp.e ** (-t), [0, 2]) / mp.gamma(1.5),
    "zeta_m05": mp.zeta(-0.5),
    "zeta_05": mp.zeta(0.5),
    "zeta_m15": mp.zeta(-1.5),
    "zeta_m25": mp.zeta(-2.5),
    "zeta_09": mp.zeta(0.9),
    "zeta_m0001": mp.zeta(-0.001),
    "c_alpha_05": c_alpha(mp.mpf(0.5)),
    "c_alpha_15": c_alpha(mp.mpf(1.5)),
    "c_alpha_0999": c_alpha(mp.mpf('0.999')),
    "tail_w0_a05_l001": tail_quad(mp.mpf(0.5), mp.mpf('0.01'), 1),
    "tail_w03_a15_l01": tail_quad(mp.mpf(1.5), mp.mpf('0.1'), mp.mpf('1.3')),
    "rhs_x0_a05_l001": rhs_oracle(mp.mpf(0), mp.mpf(0.5), mp.mpf('0.01')),
    "rhs_x03_a05_l001": rhs_oracle(mp.mpf('0.3'), mp.mpf(0.5), mp.mpf('0.01')),
    "rhs_x03_a15_l001": rhs_oracle(mp.mpf('0.3'), mp.mpf(1.5), mp.mpf('0.01')),
    "rhs_xm07_a15_l01": rhs_oracle(mp.mpf('-0.7'), mp.mpf(1.5), mp.mpf('0.1')),
    "f1_05_02_a05_l001": f1_quad(mp.mpf('0.5'), mp.mpf('0.2'), mp.mpf(0.5), mp.mpf('0.01')),
    "f1_07_05_a15_l01": f1_quad(mp.mpf('0.7'), mp.mpf('0.5'), mp.mpf(1.5), mp.mpf('0.1')),
    "btail_05_a05_l001": boundary_tail_quad(mp.mpf('0.5'), mp.mpf(0.5), mp.mpf('0.01')),
    "btail_09_a15_l001": boundary_tail_quad(mp.mpf('0.9'), mp.mpf(1.5), mp.mpf('0.01')),
    "near_h01_a05_l0": near_field_quad(mp.mpf('0.1'), mp.mpf(0.5), mp.mpf(0)),
    "near_h01_a15_l01": near_field_quad(mp.mpf('0.1'), mp.mpf(1.5), mp.mpf('0.1')),
}

# Incomplete gamma table on a grid of (a, x)
table = []
for a in ["-1.9", "-1.5", "-0.999", "-0.5", "-0.1", "0.2", "0.5", "0.999", "1.5", "1.9"]:
    for x in ["1e-4", "0.01", "0.3", "1.2", "1.6", "5", "20"]:
        table.append((a, x, upper_gamma_quad(mp.mpf(a), mp.mpf(x))))

for k, v in vals.items():
    print(f"{k} = {mp.nstr(v, 17)}")
print("table:")
for a, x, v in table:
    print(f"  {{{a}, {x}, {mp.nstr(v, 17)}}},")
