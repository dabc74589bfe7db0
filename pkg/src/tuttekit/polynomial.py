"""Exact polynomial arithmetic.

``BiPoly`` is a sparse bivariate polynomial with integer (occasionally
rational) coefficients; ``UniPoly`` is a dense univariate one.  Both support
ring operations with each other's scalars, exact evaluation and a small
text format that the parser reads back.

Numerical root finding lives here too: Aberth iteration in double precision
from :mod:`tuttekit.kernels`, then a multiprecision Aberth pass (gmpy2)
against the exact coefficients, repeated at doubled precision until the
roots stop moving.  Exact inputs are split into squarefree factors first
(sympy), so multiplicities are exact rather than guessed.  Numeric
coefficient lists fall back to clustering plus mpmath polishing.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

import gmpy2
import mpmath
import numpy as np
import sympy

from . import kernels


class RootFindingError(RuntimeError):
    def __init__(self, msg, iterate=None, residual=None):
        super().__init__(msg)
        self.iterate = iterate
        self.residual = residual


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v.numerator)
    if isinstance(v, bool):
        return int(v)
    return v


def _is_scalar(v):
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def _fmt_coeff(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _fmt_terms(items):
    """``items``: list of (coeff, monomial string or '')."""
    if not items:
        return "0"
    out = []
    for k, (c, mono) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        else:
            body = _fmt_coeff(a)
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _mono(names, exps):
    parts = []
    for nm, e in zip(names, exps):
        if e == 1:
            parts.append(nm)
        elif e > 1:
            parts.append(f"{nm}^{e}")
    return "*".join(parts)


# ------------------------------------------------------------------ BiPoly

class BiPoly:
    __slots__ = ("c", "names")

    def __init__(self, coeffs=None, names=("x", "y")):
        self.names = tuple(names)
        c = {}
        if coeffs:
            for (i, j), v in coeffs.items():
                v = _norm(v)
                if v:
                    c[(int(i), int(j))] = v
        self.c = c

    # constructors
    @classmethod
    def const(cls, v, names=("x", "y")):
        return cls({(0, 0): v}, names)

    @classmethod
    def var(cls, which, names=("x", "y")):
        k = names.index(which) if isinstance(which, str) else int(which)
        return cls({(1, 0) if k == 0 else (0, 1): 1}, names)

    @classmethod
    def gens(cls, names=("x", "y")):
        return cls.var(0, names), cls.var(1, names)

    # basics
    def _coerce(self, other):
        if isinstance(other, BiPoly):
            if other.names != self.names:
                raise ValueError(f"ring mismatch {self.names} vs {other.names}")
            return other
        if _is_scalar(other):
            return BiPoly.const(other, self.names)
        return NotImplemented

    def copy(self):
        b = BiPoly(None, self.names)
        b.c = dict(self.c)
        return b

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        o = self._coerce(other) if (isinstance(other, BiPoly) or _is_scalar(other)) else None
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((self.names, frozenset(self.c.items())))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        r = dict(self.c)
        for k, v in o.c.items():
            r[k] = r.get(k, 0) + v
        return BiPoly(r, self.names)

    __radd__ = __add__

    def __neg__(self):
        b = BiPoly(None, self.names)
        b.c = {k: -v for k, v in self.c.items()}
        return b

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            return BiPoly({k: v * other for k, v in self.c.items()}, self.names)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        r = {}
        for (i1, j1), a in self.c.items():
            for (i2, j2), b in o.c.items():
                k = (i1 + i2, j1 + j2)
                r[k] = r.get(k, 0) + a * b
        return BiPoly(r, self.names)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return BiPoly({k: Fraction(v) / other for k, v in self.c.items()}, self.names)
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("non-negative integer powers only")
        result = BiPoly.const(1, self.names)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # inspection
    def coeff(self, i, j):
        return self.c.get((i, j), 0)

    def degree(self, which=None):
        if not self.c:
            return -1
        if which is None:
            return max(i + j for i, j in self.c)
        k = self.names.index(which) if isinstance(which, str) else int(which)
        return max(m[k] for m in self.c)

    total_degree = degree

    def is_integral(self):
        return all(isinstance(v, int) for v in self.c.values())

    def terms(self):
        """Monomials sorted by descending total degree, then descending x power."""
        return sorted(self.c.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    # evaluation
    def eval_ring(self, x, y):
        """Substitute arbitrary ring elements (ints, Fractions, UniPoly, BiPoly...)."""
        if not self.c:
            return 0
        mx = max(i for i, _ in self.c)
        my = max(j for _, j in self.c)
        xs = [1, x]
        for _ in range(2, mx + 1):
            xs.append(xs[-1] * x)
        ys = [1, y]
        for _ in range(2, my + 1):
            ys.append(ys[-1] * y)
        total = 0
        for (i, j), v in self.c.items():
            total = total + v * xs[i] * ys[j] if (i or j) else total + v
        return total

    def __call__(self, x, y):
        return self.eval_ring(x, y)

    def eval_exact(self, x, y):
        return _norm(self.eval_ring(Fraction(x), Fraction(y)))

    def eval_complex(self, x, y):
        return complex(sum(complex(v) * (x ** i) * (y ** j) for (i, j), v in self.c.items()))

    def shift(self, a, b):
        """Polynomial in new variables X, Y with X = x - a, Y = y - b.

        i.e. returns f(X + a, Y + b) expressed in (X, Y).
        """
        X, Y = BiPoly.gens(self.names)
        return BiPoly._as(self.eval_ring(X + a, Y + b), self.names)

    @staticmethod
    def _as(v, names):
        if isinstance(v, BiPoly):
            return v
        return BiPoly.const(v, names)

    def div_linear(self, which, a=1):
        """Exact division by (var - a); raises ValueError on a remainder."""
        k = self.names.index(which) if isinstance(which, str) else int(which)
        # group by the other exponent, synthetic division in var k
        groups = {}
        for m, v in self.c.items():
            groups.setdefault(m[1 - k], {})[m[k]] = v
        out = {}
        for other, row in groups.items():
            d = max(row)
            carry = 0
            for e in range(d, -1, -1):
                carry = row.get(e, 0) + carry * a if e < d else row[d]
                if e == 0:
                    if carry != 0:
                        raise ValueError("division is not exact")
                else:
                    if carry:
                        key = (e - 1, other) if k == 0 else (other, e - 1)
                        out[key] = carry
        return BiPoly(out, self.names)

    def to_uni(self, which=None):
        """UniPoly in the one variable that occurs (or ``which``)."""
        if which is None:
            which = 0 if self.degree(1) <= 0 else 1
        k = self.names.index(which) if isinstance(which, str) else int(which)
        if self.degree(1 - k) > 0:
            raise ValueError("polynomial depends on both variables")
        coeffs = {}
        for m, v in self.c.items():
            coeffs[m[k]] = v
        n = max(coeffs) if coeffs else -1
        return UniPoly([coeffs.get(i, 0) for i in range(n + 1)], self.names[k])

    # text / json
    def to_str(self):
        return _fmt_terms([(v, _mono(self.names, m)) for m, v in self.terms()])

    __str__ = to_str

    def __repr__(self):
        return f"BiPoly({self.to_str()!r}, names={self.names})"

    @classmethod
    def parse(cls, s, names=("x", "y")):
        return _Parser(s, tuple(names)).parse()

    def to_json(self):
        return [[i, j, _fmt_coeff(v)] for (i, j), v in self.terms()]

    @classmethod
    def from_json(cls, data, names=("x", "y")):
        return cls({(i, j): _norm(Fraction(v)) for i, j, v in data}, names)


# ----------------------------------------------------------------- UniPoly

class UniPoly:
    __slots__ = ("c", "var")

    def __init__(self, coeffs=(), var="q"):
        c = [_norm(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c
        self.var = var

    @classmethod
    def x(cls, var="q"):
        return cls([0, 1], var)

    @classmethod
    def const(cls, v, var="q"):
        return cls([v], var)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            if other.var != self.var:
                raise ValueError(f"ring mismatch {self.var} vs {other.var}")
            return other
        if _is_scalar(other):
            return UniPoly([other], self.var)
        return NotImplemented

    def degree(self):
        return len(self.c) - 1

    def lead(self):
        return self.c[-1] if self.c else 0

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, UniPoly) or _is_scalar(other):
            o = self._coerce(other)
            return self.c == o.c
        return NotImplemented

    def __hash__(self):
        return hash((self.var, tuple(self.c)))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.c), len(o.c))
        return UniPoly([self.coeff(i) + o.coeff(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-v for v in self.c], self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            return UniPoly([v * other for v in self.c], self.var)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.c or not o.c:
            return UniPoly([], self.var)
        r = [0] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    r[i + j] += a * b
        return UniPoly(r, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return UniPoly([Fraction(v) / other for v in self.c], self.var)
        return NotImplemented

    def __pow__(self, e):
        result = UniPoly([1], self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divmod(self, other):
        o = self._coerce(other)
        if not o.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(v) for v in self.c]
        dq = len(r) - len(o.c)
        if dq < 0:
            return UniPoly([], self.var), self
        quot = [Fraction(0)] * (dq + 1)
        lc = Fraction(o.c[-1])
        for k in range(dq, -1, -1):
            f = r[k + len(o.c) - 1] / lc
            quot[k] = f
            if f:
                for j, b in enumerate(o.c):
                    r[k + j] -= f * b
        return UniPoly(quot, self.var), UniPoly(r[: len(o.c) - 1], self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        qt, rm = self.divmod(other)
        if rm:
            raise ValueError("division is not exact")
        return qt

    def monic(self):
        lc = Fraction(self.lead())
        return UniPoly([Fraction(v) / lc for v in self.c], self.var)

    def gcd(self, other):
        other = self._coerce(other)
        if not self:
            return other.monic() if other else other
        if not other:
            return self.monic()
        g = _to_sympy(self).gcd(_to_sympy(other))
        return _from_sympy(g, self.var).monic()

    def derivative(self):
        return UniPoly([i * v for i, v in enumerate(self.c)][1:], self.var)

    def squarefree_part(self):
        if self.degree() < 1:
            return self
        return _from_sympy(_to_sympy(self).sqf_part(), self.var)

    def squarefree_factors(self):
        """[(f, k)]: monic squarefree, pairwise coprime f with self = lc * prod f^k."""
        if self.degree() < 1:
            return []
        _, parts = _to_sympy(self).sqf_list()
        return [(_from_sympy(f, self.var).monic(), int(k)) for f, k in parts]

    def eval_ring(self, x):
        acc = 0
        for v in reversed(self.c):
            acc = acc * x + v
        return acc

    def __call__(self, x):
        return self.eval_ring(x)

    def eval_exact(self, x):
        return _norm(self.eval_ring(Fraction(x)))

    def eval_complex(self, z):
        acc = 0j
        for v in reversed(self.c):
            acc = acc * z + complex(v)
        return acc

    def eval_numpy(self, z):
        """Horner over an array of points (double precision)."""
        z = np.asarray(z)
        acc = np.zeros(z.shape, dtype=complex)
        for v in reversed(self.c):
            acc = acc * z + float(v)
        return acc

    def coeffs_float(self):
        return np.array([float(v) for v in self.c])

    def to_str(self):
        items = [(v, _mono((self.var,), (i,))) for i, v in reversed(list(enumerate(self.c))) if v]
        return _fmt_terms(items)

    __str__ = to_str

    def __repr__(self):
        return f"UniPoly({self.to_str()!r}, var={self.var!r})"

    @classmethod
    def parse(cls, s, var="q"):
        b = _Parser(s, (var, "\0")).parse()
        return b.to_uni(0) if b else UniPoly([], var)

    def to_json(self):
        return [_fmt_coeff(v) for v in self.c]

    @classmethod
    def from_json(cls, data, var="q"):
        return cls([Fraction(v) for v in data], var)


# ------------------------------------------------------------------ parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive descent: sums of products with ``^``, ``**``, implicit
    multiplication (``3xy^2``, ``2(x+1)``) and parentheses."""

    def __init__(self, s, names):
        self.names = names
        self.toks = []
        pos = 0
        s = s.strip()
        while pos < len(s):
            m = _TOKEN.match(s, pos)
            if not m or m.end() == pos:
                if s[pos:].strip() == "":
                    break
                raise ValueError(f"cannot parse polynomial near {s[pos:pos + 10]!r}")
            num, name, op = m.groups()
            if num is not None:
                self.toks.append(("n", int(num)))
            elif name is not None:
                if name not in names:
                    raise ValueError(f"unknown variable {name!r} (expected one of {names})")
                self.toks.append(("v", name))
            else:
                self.toks.append(("o", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        if not self.toks:
            raise ValueError("empty polynomial")
        v = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return BiPoly._as(v, self.names)

    def expr(self):
        acc = self.term()
        while self.peek() in (("o", "+"), ("o", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        sign = 1
        while self.peek() in (("o", "+"), ("o", "-")):
            if self.take()[1] == "-":
                sign = -sign
        acc = self.factor()
        while True:
            t = self.peek()
            if t == ("o", "*"):
                self.take()
                acc = acc * self.factor()
            elif t == ("o", "/"):
                self.take()
                d = self.factor()
                if not _is_scalar(d):
                    raise ValueError("division by a non-constant")
                acc = acc * Fraction(1, 1) / d if _is_scalar(acc) else acc / d
            elif t[0] in ("n", "v") or t == ("o", "("):
                acc = acc * self.factor()
            else:
                break
        return acc * sign if sign == 1 else -acc

    def factor(self):
        base = self.base()
        if self.peek() == ("o", "^"):
            self.take()
            kind, e = self.take()
            if kind != "n":
                raise ValueError("exponent must be a non-negative integer")
            return base ** e
        return base

    def base(self):
        kind, val = self.take()
        if kind == "n":
            return val
        if kind == "v":
            return BiPoly.var(val, self.names)
        if val == "(":
            v = self.expr()
            if self.take() != ("o", ")"):
                raise ValueError("unbalanced parentheses")
            return v
        raise ValueError(f"unexpected token {val!r}")


_SYM = sympy.Symbol("t")


def _to_sympy(p):
    cs = [sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in reversed(p.c)]
    return sympy.Poly(cs or [0], _SYM, domain="QQ")


def _from_sympy(sp, var):
    cs = []
    for v in reversed(sp.all_coeffs()):
        v = sympy.Rational(v)
        cs.append(Fraction(int(v.p), int(v.q)))
    return UniPoly(cs, var)


# ------------------------------------------------------------ power sums

def newton_power_sums(cs, m):
    """Power sums p_1..p_m of the roots of xi^n + c1 xi^(n-1) + ... + cn.

    ``cs = [c1, ..., cn]`` may be elements of any commutative ring; only
    ring operations are used.  Returns the list ``[p_0, p_1, ..., p_m]``
    with ``p_0 = n``.
    """
    n = len(cs)
    p = [n]
    for k in range(1, m + 1):
        acc = k * cs[k - 1] if k <= n else 0
        for i in range(1, min(k - 1, n) + 1):
            acc = acc + cs[i - 1] * p[k - i]
        p.append(-acc)
    return p


def power_sums(poly, m):
    """Sum of m-th powers of the roots of a UniPoly (exact rational)."""
    if poly.degree() < 1:
        return 0
    mon = poly.monic()
    n = mon.degree()
    cs = [mon.coeff(n - k) for k in range(1, n + 1)]
    return _norm(newton_power_sums(cs, m)[m])


# ---------------------------------------------------------------- roots

def _initial_guesses(coeffs_asc):
    """Starting points on circles from the Newton polygon of log|c_i|."""
    a = np.abs(coeffs_asc)
    n = len(a) - 1
    pts = [(i, math.log(a[i])) for i in range(n + 1) if a[i] > 0]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    z = []
    sigma = 0.7
    for (i0, l0), (i1, l1) in zip(hull, hull[1:]):
        k = i1 - i0
        u = math.exp((l0 - l1) / k)
        for j in range(k):
            ang = 2 * math.pi * j / k + 2 * math.pi * i0 / n + sigma
            z.append(u * complex(math.cos(ang), math.sin(ang)))
    return np.array(z, dtype=complex)


def _mp_horner(cs, z):
    p = mpmath.mpc(0)
    dp = mpmath.mpc(0)
    for v in reversed(cs):
        dp = dp * z + p
        p = p * z + v
    return p, dp


def _mp_derivs(cs, z, k):
    """Values of p, p', ..., p^(k) divided by the scale sum |c_i||z|^i."""
    out = []
    cur = list(cs)
    az = abs(z)
    for _ in range(k + 1):
        val = mpmath.mpc(0)
        sc = mpmath.mpf(0)
        for v in reversed(cur):
            val = val * z + v
            sc = sc * az + abs(v)
        out.append(abs(val) / sc if sc else mpmath.mpf(0))
        cur = [i * v for i, v in enumerate(cur)][1:]
        if not cur:
            break
    return out


def _polish(cs, z, mult, dps, maxit=200):
    z = mpmath.mpc(z)
    tol = mpmath.mpf(10) ** (-(dps - 8))
    dcs = [i * v for i, v in enumerate(cs)][1:]
    for _ in range(maxit):
        p, dp = _mp_horner(cs, z)
        if p == 0:
            break
        if dp == 0:
            break
        step = mult * p / dp
        z = z - step
        if abs(step) <= tol * max(1, abs(z)):
            break
    return z


def _double_aberth(body, maxiter):
    """Double-precision Aberth on ascending coefficients; returns (z, ok)."""
    numeric = np.array([complex(float(v)) if isinstance(v, (int, Fraction)) else complex(v) for v in body])
    numeric = numeric / np.max(np.abs(numeric))
    z0 = _initial_guesses(numeric)
    z, it, ok = kernels.aberth(numeric[::-1], z0, 1e-14, maxiter)
    bad = ~np.isfinite(z)
    if bad.any():  # overflow on a wide root spread; restart those from the polygon guesses
        z = np.where(bad, z0, z)
        ok = False
    return z, ok


def _mp_coeffs(body):
    out = []
    for v in body:
        if isinstance(v, Fraction):
            out.append(mpmath.mpf(v.numerator) / v.denominator)
        elif isinstance(v, int):
            out.append(mpmath.mpf(v))
        else:
            out.append(mpmath.mpc(v))
    return out


def _mp_aberth(cs, z, dps, maxit=200):
    """Multiprecision Aberth sweeps (Gauss-Seidel order) from starting points ``z``.

    Simultaneous correction keeps distinct roots apart even when they are
    close, which plain Newton polishing does not.  A root is settled once
    its correction is below 10^-(dps-6) relative or |p(z)| is at the
    rounding level of the evaluation.  Returns (roots, ok).
    """
    z = [mpmath.mpc(v) for v in z]
    n = len(z)
    tol = mpmath.mpf(10) ** (-(dps - 6))
    eps = mpmath.mpf(10) ** (-dps) * 8 * len(cs)
    acs = [abs(c) for c in cs]
    done = [False] * n
    for _ in range(maxit):
        for i in range(n):
            if done[i]:
                continue
            zi = z[i]
            p, dp = _mp_horner(cs, zi)
            az = abs(zi)
            scale = mpmath.mpf(0)
            for a in reversed(acs):
                scale = scale * az + a
            if abs(p) <= eps * scale:
                done[i] = True
                continue
            s = mpmath.mpc(0)
            for j in range(n):
                if j != i:
                    s += 1 / (zi - z[j])
            ratio = p / dp if dp != 0 else mpmath.mpc(tol, 0)
            den = 1 - ratio * s
            w = ratio / den if den != 0 else ratio
            z[i] = zi - w
            if abs(w) <= tol * max(1, abs(z[i])):
                done[i] = True
        if all(done):
            return z, True
    return z, False


def _gp_aberth(f, z, dps, maxit=200):
    """Aberth sweeps in gmpy2 arithmetic on exact coefficients ``f``.

    Same stopping rules as :func:`_mp_aberth`; gmpy2 numbers avoid most of
    the interpreter overhead of mpmath objects.
    """
    bits = int(dps * 3.33) + 16
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        cs = [gmpy2.mpc(gmpy2.mpfr(gmpy2.mpq(v.numerator, v.denominator))) for v in f]
        acs = [abs(c) for c in cs]
        z = [gmpy2.mpc(complex(v)) for v in z]
        n = len(z)
        tol = gmpy2.mpfr(10) ** (-(dps - 6))
        eps = gmpy2.mpfr(10) ** (-dps) * 8 * len(cs)
        one = gmpy2.mpc(1)
        done = [False] * n
        for _ in range(maxit):
            for i in range(n):
                if done[i]:
                    continue
                zi = z[i]
                p = dp = gmpy2.mpc(0)
                for c in reversed(cs):
                    dp = dp * zi + p
                    p = p * zi + c
                az = abs(zi)
                scale = gmpy2.mpfr(0)
                for a in reversed(acs):
                    scale = scale * az + a
                if abs(p) <= eps * scale:
                    done[i] = True
                    continue
                sm = gmpy2.mpc(0)
                for j in range(n):
                    if j != i:
                        sm += one / (zi - z[j])
                ratio = p / dp if dp != 0 else gmpy2.mpc(tol)
                den = one - ratio * sm
                w = ratio / den if den != 0 else ratio
                z[i] = zi - w
                if abs(w) <= tol * max(1, abs(z[i])):
                    done[i] = True
            if all(done):
                return z, True
        return z, False


def _squarefree_roots(f, maxiter, dps):
    """Roots of a squarefree exact polynomial (ascending Fraction coefficients)."""
    deg = len(f) - 1
    if deg == 1:
        return [complex(-Fraction(f[0]) / Fraction(f[1]))]
    z, _ = _double_aberth(f, maxiter)
    # the backward-error stop only guarantees accuracy relative to the
    # coefficient scale, so double the precision until the roots settle
    prev = None
    while True:
        w, ok = _gp_aberth(f, z, dps)
        if ok:
            cur = np.array([complex(v) for v in w])
            if prev is not None and np.all(
                    np.abs(cur - prev) <= 1e-15 * np.maximum(1.0, np.abs(cur))):
                return list(cur)
            prev = cur
        elif dps >= _MAX_DPS:
            raise RootFindingError("multiprecision Aberth did not converge",
                                   iterate=np.array([complex(v) for v in w]))
        z = w
        if dps >= _MAX_DPS:
            return list(prev)
        dps *= 2


_MAX_DPS = 1600


def roots(poly, maxiter=500, dps=50):
    """All complex roots with multiplicity.

    ``poly`` is a ``UniPoly`` or a sequence of complex coefficients in
    ascending order.  Exact polynomials are split into squarefree factors
    and each factor is solved by double-precision Aberth followed by
    multiprecision Aberth at ``dps`` digits.  Numeric input is clustered
    (near-multiple roots) and polished per cluster.  Raises
    ``RootFindingError`` when the iteration stalls.
    """
    if isinstance(poly, UniPoly):
        if poly.is_zero():
            raise ValueError("zero polynomial has no well-defined roots")
        out = []
        for f, k in poly.squarefree_factors():
            body = [Fraction(v) for v in f.c]
            nz = 0
            while body[nz] == 0:
                nz += 1
            out += [0j] * (nz * k)
            body = body[nz:]
            if len(body) > 1:
                for zc in _squarefree_roots(body, maxiter, dps):
                    if abs(zc.imag) <= 1e-25 * max(1.0, abs(zc)):
                        zc = complex(zc.real, 0.0)
                    out += [zc] * k
        out.sort(key=lambda c: (round(c.real, 10), c.imag))
        return out
    exact = [complex(v) for v in poly]
    while exact and exact[-1] == 0:
        exact.pop()
    if not exact:
        raise ValueError("zero polynomial has no well-defined roots")
    real = all(v.imag == 0 for v in exact)
    nz = 0
    while exact[nz] == 0:
        nz += 1
    body = exact[nz:]
    deg = len(body) - 1
    out = [0j] * nz
    if deg == 0:
        return out
    z, ok = _double_aberth(body, maxiter)
    if not ok:
        with mpmath.workdps(dps):
            w, ok = _mp_aberth(_mp_coeffs(body), z, dps)
        if not ok:
            res = float(np.abs(np.polyval(np.array(body)[::-1], z)).max())
            raise RootFindingError(f"Aberth iteration did not converge after {maxiter} iterations",
                                   iterate=z, residual=res)
        z = np.array([complex(v) for v in w])
    with mpmath.workdps(dps):
        cs = _mp_coeffs(body)
        found = []
        for idx in _clusters(z):
            k = len(idx)
            centre = complex(np.mean(z[idx]))
            if k > 1:
                w = _polish(cs, centre, k, dps)
                d = _mp_derivs(cs, w, k - 1)
                lim = mpmath.mpf(10) ** (-(dps // 3))
                if all(v <= lim for v in d[:k]):
                    found.extend([w] * k)
                    continue
            for i in idx:
                found.append(_polish(cs, complex(z[i]), 1, dps))
        for w in found:
            zc = complex(w)
            if real and abs(zc.imag) <= 1e-25 * max(1.0, abs(zc)):
                zc = complex(zc.real, 0.0)
            out.append(zc)
    out.sort(key=lambda c: (round(c.real, 10), c.imag))
    return out


def _clusters(z, rel=1e-5):
    n = len(z)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= rel * max(1.0, abs(z[i])):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def residual(poly, z):
    """Backward-error style residual |p(z)| / sum |c_i||z|^i."""
    num = abs(poly.eval_complex(z)) if isinstance(poly, UniPoly) else abs(
        sum(complex(c) * z ** i for i, c in enumerate(poly)))
    coeffs = poly.c if isinstance(poly, UniPoly) else list(poly)
    den = sum(abs(complex(c)) * abs(z) ** i for i, c in enumerate(coeffs))
    return num / den if den else 0.0
