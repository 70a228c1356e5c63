#!/usr/bin/env python3
"""Extended-precision reference values for the meanlab test suite.

Every mean is evaluated from its textbook closed form at 50 significant
digits with mpmath. No canonical scaling, no series stabilisation: at this
precision the naive formulas are accurate everywhere the tests probe them.

Regenerate with:

    python3 tools/oracle.py > crates/core/tests/data/oracle.json
"""

import json
from mpmath import mp, mpf, log, exp, sqrt, asin, atan, pi, e, taylor

mp.dps = 50


def H(a, b):
    return 2 / (1 / a + 1 / b)


def G(a, b):
    return sqrt(a * b)


def L(a, b):
    return (b - a) / (log(b) - log(a)) if a != b else a


def I(a, b):
    return (b ** b / a ** a) ** (1 / (b - a)) / e if a != b else a


def A(a, b):
    return (a + b) / 2


def S(a, b):
    return a ** (a / (a + b)) * b ** (b / (a + b))


def P(a, b):
    return (a - b) / (2 * asin((a - b) / (a + b))) if a != b else a


def T(a, b):
    return (a - b) / (2 * atan((a - b) / (a + b))) if a != b else a


def holder(s):
    s = mpf(s)

    def f(a, b):
        if s == 0:
            return sqrt(a * b)
        return ((a ** s + b ** s) / 2) ** (1 / s)
    return f


def lehmer(r):
    r = mpf(r)
    return lambda a, b: (a ** (r + 1) + b ** (r + 1)) / (a ** r + b ** r)


def stolarsky(r, s):
    r, s = mpf(r), mpf(s)

    def f(x, y):
        if x == y:
            return x
        if r == 0 and s == 0:
            return sqrt(x * y)
        if r == s:
            return exp(-1 / s + (x ** s * log(x) - y ** s * log(y)) / (x ** s - y ** s))
        if r == 0 or s == 0:
            q = s if r == 0 else r
            return ((x ** q - y ** q) / (q * (log(x) - log(y)))) ** (1 / q)
        return (r * (x ** s - y ** s) / (s * (x ** r - y ** r))) ** (1 / (s - r))
    return f


def genlog(p):
    return stolarsky(0, p)


def lam(s):
    s = mpf(s)

    def f(a, b):
        if a == b:
            return a
        m = (a + b) / 2
        if s == -1:
            return (2 * log(m) - log(a) - log(b)) / (1 / (2 * a) + 1 / (2 * b) - 2 / (a + b))
        if s == 0:
            return (a * log(a) + b * log(b) - (a + b) * log(m)) / (2 * log(m) - log(a) - log(b))
        if s == 1:
            return (b - a) ** 2 / (4 * (a * log(a) + b * log(b) - (a + b) * log(m)))
        num = a ** (s + 1) + b ** (s + 1) - 2 * m ** (s + 1)
        den = a ** s + b ** s - 2 * m ** s
        return (s - 1) / (s + 1) * num / den
    return f


def kmean(r):
    r = mpf(r)

    def f(a, b):
        if r == 0:
            return S(a, b)
        return ((a ** (r + 1) + b ** (r + 1)) / (a + b)) ** (1 / r)
    return f


def dual(m):
    return lambda a, b: a * b / m(a, b)


def power(m, s):
    s = mpf(s)
    return lambda a, b: m(a ** s, b ** s) ** (1 / s)


def phi(m, t):
    t = mpf(t)
    if t == 0:
        return mpf(1)
    return m(1 - t, 1 + t)


def series(m):
    """Return (a1, a2) of phi(t) = 1 + a1 t^2 + a2 t^4 + ..."""
    c = taylor(lambda t: phi(m, t), 0, 4)
    return c[2], c[4]


def num(x):
    return float(mp.nstr(x, 30))


R = lambda p, q: mpf(p) / q

values = {}


def put(name, x):
    values[name] = num(x)


one, three = mpf(1), mpf(3)

# Elementary means and their duals.
put("eval S 1 3", S(one, three))
put("eval L 1 3", L(one, three))
put("eval P 1 3", P(one, three))
put("eval I 1 3", I(one, three))
put("eval T 1 3", T(one, three))
put("dual S 1 3", dual(S)(one, three))
put("phi S 0.5", phi(S, "0.5"))

# Parametric families at (1, 3).
put("holder 2 1 3", holder(2)(one, three))
put("holder 1/3 1 3", holder(R(1, 3))(one, three))
put("lehmer -1/3 1 3", lehmer(R(-1, 3))(one, three))
put("genlog 3 1 3", genlog(3)(one, three))
put("genlog -3 1 3", genlog(-3)(one, three))
put("stolarsky 1 1 1 3", stolarsky(1, 1)(one, three))
put("stolarsky 3 3 1 3", stolarsky(3, 3)(one, three))
put("stolarsky 0.5 2.5 2 7", stolarsky("0.5", "2.5")(mpf(2), mpf(7)))
put("stolarsky -1.5 0.75 2 7", stolarsky("-1.5", "0.75")(mpf(2), mpf(7)))
put("lambda 1 1 3", lam(1)(one, three))
put("lambda 0 1 3", lam(0)(one, three))
put("lambda -1 1 3", lam(-1)(one, three))
put("lambda 5 1 3", lam(5)(one, three))
put("lambda -4 1 3", lam(-4)(one, three))
put("lambda 0.5 1 3", lam("0.5")(one, three))
put("k 1 1 3", kmean(1)(one, three))
put("k -1 1 3", kmean(mpf(-1) + mpf("1e-40"))(one, three))
put("k 0.5 2 7", kmean("0.5")(mpf(2), mpf(7)))
put("power A 2 1 3", power(A, 2)(one, three))
for name, m in (("S", S), ("L", L), ("I", I)):
    put(f"power {name} 3 2 5", power(m, 3)(mpf(2), mpf(5)))
    put(f"power {name} -3 2 5", power(m, -3)(mpf(2), mpf(5)))

# Characteristic numbers.
put("sigma I", 2 / e)
put("sigma P", 2 / pi)
put("sigma T", 4 / pi)
put("sigma_closed pow A 2", mpf(2) ** (1 - R(1, 2)))
put("sigma_closed stolarsky 3", 2 * exp(-R(1, 3)))
# The double nearest 1 - 1e-10, which is what a caller can pass.
put("phi L 1-1e-10", phi(L, mpf(1 - 1e-10)))

# Series coefficients, a1 and a2.
series_cases = {
    "H": H, "G": G, "L": L, "I": I, "A": A, "S": S, "P": P, "T": T,
    "holder(-2)": holder(-2), "holder(-1)": holder(-1), "holder(1/3)": holder(R(1, 3)),
    "holder(2/3)": holder(R(2, 3)), "holder(5/3)": holder(R(5, 3)), "holder(2)": holder(2),
    "holder(3)": holder(3),
    "lehmer(-1/3)": lehmer(R(-1, 3)), "lehmer(-1/2)": lehmer(R(-1, 2)), "lehmer(1)": lehmer(1),
    "lehmer(2.5)": lehmer("2.5"),
    "genlog(-3)": genlog(-3), "genlog(2)": genlog(2), "genlog(3)": genlog(3), "genlog(4)": genlog(4),
    "stolarsky(1,2)": stolarsky(1, 2), "stolarsky(0,1)": stolarsky(0, 1),
    "stolarsky(1,1)": stolarsky(1, 1), "stolarsky(-2,-1)": stolarsky(-2, -1),
    "stolarsky(3,3)": stolarsky(3, 3), "stolarsky(-3,-3)": stolarsky(-3, -3),
    "stolarsky(0.5,2.5)": stolarsky("0.5", "2.5"), "stolarsky(-1,4)": stolarsky(-1, 4),
    "lambda(-4)": lam(-4), "lambda(-3)": lam(-3), "lambda(-1)": lam(-1), "lambda(-1/2)": lam(R(-1, 2)),
    "lambda(0)": lam(0), "lambda(1)": lam(1), "lambda(2)": lam(2), "lambda(5)": lam(5),
    "lambda(10)": lam(10),
    "k(0)": kmean(0), "k(0.5)": kmean("0.5"), "k(1)": kmean(1), "k(2)": kmean(2),
    "dual(S)": dual(S), "dual(L)": dual(L),
    "pow(S, 2)": power(S, 2), "pow(L, -3)": power(L, -3), "pow(I, 1/2)": power(I, R(1, 2)),
}
coeffs = {}
for name, m in series_cases.items():
    a1, a2 = series(m)
    coeffs[name] = [num(a1), num(a2)]

# ln phi far from the diagonal, addressed by z = atanh t so that ratios
# b/a = e^(2z) beyond double precision are reachable.
def ln_phi_z(m, z):
    z = mpf(z)
    q = exp(-2 * z)
    return log(m(2 * q / (1 + q), 2 / (1 + q)))


far_cases = {
    "H": H, "G": G, "L": L, "I": I, "S": S, "P": P, "T": T,
    "genlog(50)": genlog(50), "genlog(-50)": genlog(-50), "genlog(3)": genlog(3),
    "holder(5)": holder(5), "holder(-5)": holder(-5), "holder(0.3)": holder("0.3"),
    "stolarsky(-1.5,0.75)": stolarsky("-1.5", "0.75"), "stolarsky(2,7)": stolarsky(2, 7),
    "stolarsky(4,4)": stolarsky(4, 4), "stolarsky(-4,-4)": stolarsky(-4, -4),
    "lehmer(2)": lehmer(2), "lehmer(-3)": lehmer(-3),
    "lambda(3)": lam(3), "lambda(-2.5)": lam("-2.5"), "lambda(0)": lam(0), "lambda(1)": lam(1),
    "k(2)": kmean(2), "k(0)": kmean(0),
    "dual(S)": dual(S), "pow(I, 3)": power(I, 3), "pow(L, -2)": power(L, -2),
}
far = {}
for name, m in far_cases.items():
    for z in ("0.7", "3", "40", "1e6", "1e14"):
        far[f"{name} {z}"] = num(ln_phi_z(m, z))

# Identities.
def stolarsky_lehmer(a, b, s):
    a, b, s = mpf(a), mpf(b), mpf(s)
    lhs = log(stolarsky(s, s)(a, b) / S(a, b))
    rhs = (lehmer(-1 / s)(a ** s, b ** s) / L(a ** s, b ** s) - 1) / s
    return lhs, rhs


for (a, b, s) in ((1, 3, 3), (1, 3, -3), (2, 9, "0.5")):
    lhs, rhs = stolarsky_lehmer(a, b, s)
    put(f"stolarsky-lehmer lhs {a} {b} {s}", lhs)
    put(f"stolarsky-lehmer rhs {a} {b} {s}", rhs)


def l3_ratio(t):
    t = mpf(t)
    return (genlog(3)(1 - t, 1 + t) / A(1 - t, 1 + t)) ** 3


put("genlog3 ratio 0.5", l3_ratio("0.5"))
put("genlog3 ratio 0.999", l3_ratio("0.999"))
put("log_pi 2", log(2) / log(pi))
put("log_pi/2 2", log(2) / log(pi / 2))

print(json.dumps({"values": values, "series": coeffs, "far": far}, indent=2, sort_keys=True))
