#!/usr/bin/env python3
"""Generate coefficient tables for the uniform incomplete-gamma expansion.

Q(a, x) = Phibar(sqrt(a) eta) + exp(-a eta^2 / 2) / sqrt(2 pi a) * sum_k c_k(eta) a^-k

with xi = x/a - 1, eta^2 / 2 = xi - log(1 + xi), and

    c_k(eta) = (-1)^k [ q_k(xi) / xi^(2k+1) - A_k / eta^(2k+1) ].

The xi-part obeys R_k = (1 + xi)/xi * dR_{k-1}/dxi + (-1)^k g_k / xi with
R_0 = 1/xi, where g_k are the Stirling coefficients of Gamma*(a).  The
eta-part is the large-argument normal-tail expansion, A_k = (2k-1)!!.

Prints the q_k polynomial coefficients and the Maclaurin coefficients of
c_k(eta) used near eta = 0, all as exact rationals and as C++ literals.
"""

from fractions import Fraction as F

STIRLING_G = [F(1), F(1, 12), F(1, 288), F(-139, 51840), F(-571, 2488320)]
K_MAX = 3
SERIES_ORDER = 26  # number of Maclaurin coefficients per c_k
PAD = 2 * K_MAX + 8


def poly_mul(p, q, order):
    out = [F(0)] * order
    for i, a in enumerate(p[:order]):
        if a == 0:
            continue
        for j, b in enumerate(q[: order - i]):
            out[i + j] += a * b
    return out


def poly_inv(p, order):
    out = [F(0)] * order
    out[0] = 1 / p[0]
    for n in range(1, order):
        s = sum(p[k] * out[n - k] for k in range(1, min(n, len(p) - 1) + 1))
        out[n] = -s / p[0]
    return out


def poly_pow(p, e, order):
    out = [F(1)] + [F(0)] * (order - 1)
    base = p
    if e < 0:
        base = poly_inv(p, order)
        e = -e
    for _ in range(e):
        out = poly_mul(out, base, order)
    return out


def xi_series(order):
    """xi(eta) = eta * s(eta); returns coefficients of s up to `order`."""
    # Solve eta^2/2 = xi - log(1+xi) by fixed-point on the coefficients of xi(eta).
    xi = [F(0), F(1)] + [F(0)] * (order)
    n = order + 2
    for m in range(2, n):
        # compute f(xi) = sum_{j>=2} (-1)^j xi^j / j up to eta^m, require == eta^2/2
        f = [F(0)] * (m + 1)
        xp = [F(1)] + [F(0)] * m
        for j in range(1, m + 1):
            xp = poly_mul(xp, xi[: m + 1], m + 1)
            if j >= 2:
                coef = F((-1) ** j, j)
                for i in range(m + 1):
                    f[i] += coef * xp[i]
        target = F(1, 2) if m == 2 else F(0)
        # coefficient of eta^m in f is linear in xi[m-1] with slope 1 (from 2*xi1*xi_{m-1}/2)
        resid = f[m] - target
        xi[m - 1] -= resid
    return xi[1 : order + 1]


def q_polys():
    # Represent R_k as Laurent polynomial in xi: dict power -> coeff.
    r = {-1: F(1)}
    out = [[F(1)]]
    for k in range(1, K_MAX + 1):
        deriv = {p - 1: c * p for p, c in r.items() if p != 0}
        nxt = {}
        for p, c in deriv.items():
            # (1 + xi)/xi * xi^p = xi^(p-1) + xi^p
            nxt[p - 1] = nxt.get(p - 1, F(0)) + c
            nxt[p] = nxt.get(p, F(0)) + c
        nxt[-1] = nxt.get(-1, F(0)) + (-1) ** k * STIRLING_G[k]
        r = nxt
        # q_k(xi) = (-1)^k xi^(2k+1) R_k
        lo = -(2 * k + 1)
        q = [F(0)] * (2 * k + 1)
        for p, c in r.items():
            assert p >= lo, (k, p)
            q[p - lo] = (-1) ** k * c
        out.append(q)
    return out


def double_factorial_odd(k):
    v = 1
    for j in range(1, 2 * k, 2):
        v *= j
    return v


def c_series(qs):
    order = SERIES_ORDER + PAD
    s = xi_series(order)
    series = []
    for k, q in enumerate(qs):
        m = 2 * k + 1
        # q_k(xi(eta)) / xi^m = eta^-m * q_k(eta s) * s^-m
        qeta = [F(0)] * order
        sp = [F(1)] + [F(0)] * (order - 1)
        for l, a in enumerate(q):
            # (eta s)^l = eta^l s^l
            term = [F(0)] * order
            for i in range(order - l):
                term[i + l] = sp[i]
            for i in range(order):
                qeta[i] += a * term[i]
            sp = poly_mul(sp, s, order)
        body = poly_mul(qeta, poly_pow(s, -m, order), order)
        # body / eta^m - A_k / eta^m, then times (-1)^k
        body[0] -= double_factorial_odd(k)
        for i in range(m):
            assert body[i] == 0, (k, i, body[i])
        coeffs = [(-1) ** k * body[i] for i in range(m, m + SERIES_ORDER)]
        series.append(coeffs)
    return series


def main():
    qs = q_polys()
    for k, q in enumerate(qs):
        print(f"q_{k}:", ", ".join(str(c) for c in q))
    ser = c_series(qs)
    for k, cs in enumerate(ser):
        print(f"c_{k}(0..): {cs[0]}, {cs[1]}, {cs[2]}")
    print()
    for k, cs in enumerate(ser):
        print(f"// c_{k}")
        print("{" + ",\n ".join(f"{float(c):.17e}" for c in cs) + "},")


if __name__ == "__main__":
    main()
