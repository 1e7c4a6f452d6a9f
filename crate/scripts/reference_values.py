#!/usr/bin/env python3
"""High-precision reference values frozen into the Rust tests.

Evaluates the squeezed-thermal-state formulas with mpmath at 50 digits,
independently of the Rust implementation. Run: python3 scripts/reference_values.py
"""
from mpmath import mp, mpf, cosh, sinh, sqrt, log, exp, acosh, asinh

mp.dps = 50


def sts(r, na, nb):
    r, na, nb = mpf(r), mpf(na), mpf(nb)
    ch2, sh2 = cosh(r) ** 2, sinh(r) ** 2
    n = (2 * na + 1) * ch2 + (2 * nb + 1) * sh2
    m = (2 * nb + 1) * ch2 + (2 * na + 1) * sh2
    c = (na + nb + 1) * sinh(2 * r)
    return n, m, c


def f(x):
    if x == 1:
        return mpf(0)
    return (x + 1) / 2 * log((x + 1) / 2) - (x - 1) / 2 * log((x - 1) / 2)


def spectrum(n, m, c):
    det = (n * m - c * c) ** 2
    delta = n * n + m * m - 2 * c * c
    disc = sqrt(delta ** 2 - 4 * det)
    return sqrt((delta + disc) / 2), sqrt((delta - disc) / 2)


def discord_ab(n, m, c):
    dp, dm = spectrum(n, m, c)
    z = (n + m * n - c * c) / (m + 1)
    return f(m) - f(dp) - f(dm) + f(z)


def g_sym(n, m, c):
    return (n - m + sqrt((n - m) ** 2 + 4 * c * c)) / (2 * c)


def show(name, value):
    print(f"{name:<34} {mp.nstr(value, 17)}")


def main():
    n, m, c = sts("0.6", 0, 1)
    show("n(0.6,0,1)", n)
    show("m(0.6,0,1)", m)
    show("c(0.6,0,1)", c)
    show("E_A|B(0.6,0,1)", n - c * c / m)
    show("E_B|A(0.6,0,1)", m - c * c / n)
    show("g_sym A|B(0.6,0,1)", g_sym(n, m, c))
    show("D_A|B(0.6,0,1)", discord_ab(n, m, c))
    show("D_B|A(0.6,0,1)", discord_ab(m, n, c))
    dp, dm = spectrum(n, m, c)
    show("d+(0.6,0,1)", dp)
    show("d-(0.6,0,1)", dm)

    n0, m0, c0 = sts("0.6", 0, 0)
    show("F_sym(0.6,0,0)", 1 / (1 + (n0 + m0 - 2 * c0) / 2))
    show("D pure (0.6)", discord_ab(n0, m0, c0))
    show("f(cosh 1.2)", f(cosh(mpf("1.2"))))

    show("r_ent(1,1)", acosh(sqrt(mpf(4) / 3)))
    show("r_steer_B|A(0,1)", acosh(sqrt(mpf(3) / 2)))
    S = mpf(1 + 2 + 1)
    show("r_steer_A|B(1,2)", asinh(sqrt(1 * (2 * 2 + 1) / S)))
    show("r_steer_B|A(1,2)", asinh(sqrt(2 * (2 * 1 + 1) / S)))
    show("r_st_duan(1,2)", log(sqrt(2 * S)))


if __name__ == "__main__":
    main()
