"""Special functions for the solution catalog, with second-order jet lifts.

Airy, Bessel (J, Y, I, K of real non-integer order), Kummer M and U, and the
Whittaker pair.  Power series are summed in binary floating point when that
is safe and in :mod:`decimal` arithmetic at raised precision when the series
cancels, so that results stay accurate across the documented envelopes:

* Airy: ``|z| <= 30``;
* Bessel: ``0 < z <= 50`` and ``|nu| <= 5``, ``nu`` not an integer;
* Kummer M: ``|z| <= 40``; Kummer U (real): ``0 < z <= 40``, ``b`` not an integer;
* Kummer U with complex parameters: ``|z| <= 5``.

Derivatives come from the standard contiguous relations; second derivatives
of Airy, Bessel and Whittaker functions come from their defining equations.
"""

from __future__ import annotations

import cmath
import enum
import math
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple, Union

from .jetcalc import Jet2, quasi_random_points

Num = Union[int, float, complex]


class SpecialFunctionError(ValueError):
    """Base class for special-function failures."""


class EnvelopeError(SpecialFunctionError):
    """Argument outside the shipped accuracy envelope."""


class PoleError(SpecialFunctionError):
    """Parameter at a pole of a gamma factor or of the series."""


class ConvergenceError(SpecialFunctionError):
    """Series failed to converge within the term cap."""


class CylinderKind(enum.Enum):
    J = "J"
    Y = "Y"
    I = "I"
    K = "K"
    MODIFIED_TILDE_I = "tildeI"
    TILDE_H1 = "tildeH1"
    TILDE_H2 = "tildeH2"


TERM_CAP = 700


# ---------------------------------------------------------------------------
# gamma function, binary floating point


_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _is_nonpositive_integer(z: Num) -> bool:
    if isinstance(z, complex):
        if z.imag != 0:
            return False
        z = z.real
    return z <= 0 and float(z).is_integer()


def gamma(z: Num) -> Num:
    """Lanczos approximation (g=7, 9 terms) with reflection; real or complex argument."""
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {z}")
    is_complex = isinstance(z, complex)
    if (z.real if is_complex else z) < 0.5:
        s = cmath.sin(cmath.pi * z) if is_complex else math.sin(math.pi * z)
        return math.pi / (s * gamma(1 - z))
    z = z - 1
    acc = _LANCZOS[0]
    for i in range(1, _LANCZOS_G + 2):
        acc = acc + _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    if is_complex:
        return cmath.sqrt(2 * cmath.pi) * t ** (z + 0.5) * cmath.exp(-t) * acc
    return math.sqrt(2 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def rgamma(z: Num) -> Num:
    """Reciprocal gamma, zero at the poles."""
    if _is_nonpositive_integer(z):
        return 0.0
    return 1 / gamma(z)


# ---------------------------------------------------------------------------
# decimal kernels


def _digits_for(loss_digits: float, base: int = 34) -> int:
    return int(base + max(0.0, loss_digits)) + 1


@lru_cache(maxsize=32)
def _dec_pi(prec: int) -> Decimal:
    # Taylor-free recurrence from the decimal module documentation
    with localcontext() as ctx:
        ctx.prec = prec + 5
        three = Decimal(3)
        lasts, t, s, n, na, d, da = 0, three, 3, 1, 0, 0, 24
        while s != lasts:
            lasts = s
            n, na = n + na, na + 8
            d, da = d + da, da + 32
            t = (t * n) / d
            s += t
    with localcontext() as ctx:
        ctx.prec = prec
        return +s


def _dec_sin_cos(x: Decimal, prec: int) -> Tuple[Decimal, Decimal]:
    with localcontext() as ctx:
        ctx.prec = prec + 10
        two_pi = 2 * _dec_pi(prec + 10)
        x = x % two_pi
        if x > two_pi / 2:
            x -= two_pi
        x2 = x * x
        s, c = Decimal(0), Decimal(0)
        term_s, term_c = x, Decimal(1)
        k = 0
        eps = Decimal(10) ** (-(prec + 8))
        while abs(term_s) > eps or abs(term_c) > eps:
            s += term_s
            c += term_c
            term_s = -term_s * x2 / ((2 * k + 2) * (2 * k + 3))
            term_c = -term_c * x2 / ((2 * k + 1) * (2 * k + 2))
            k += 1
    return +s, +c


@lru_cache(maxsize=4)
def _bernoulli_even(n: int) -> Tuple[Fraction, ...]:
    """``B_0, B_2, ..., B_{2n}`` via the Akiyama-Tanigawa algorithm."""
    m_max = 2 * n
    a = [Fraction(0)] * (m_max + 1)
    out = []
    for m in range(m_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if m % 2 == 0:
            out.append(a[0])
    return tuple(out)


def _dec_lgamma_pos(x: Decimal, prec: int) -> Decimal:
    """``ln Gamma(x)`` for ``x > 0`` by shifted Stirling series."""
    with localcontext() as ctx:
        ctx.prec = prec + 15
        shift = Decimal(1)
        X = x
        target = Decimal(prec + 10)
        while X < target:
            shift *= X
            X += 1
        two_pi = 2 * _dec_pi(prec + 15)
        s = (X - Decimal("0.5")) * X.ln() - X + two_pi.ln() / 2
        eps = Decimal(10) ** (-(prec + 12))
        nb = prec // 2 + 20
        bern = _bernoulli_even(nb)
        Xp = X
        X2 = X * X
        for k in range(1, nb + 1):
            b = bern[k]
            term = Decimal(b.numerator) / Decimal(b.denominator) / (2 * k * (2 * k - 1)) / Xp
            s += term
            if abs(term) < eps:
                break
            Xp *= X2
        return s - shift.ln()


def dec_gamma(x: Union[float, Decimal], prec: int = 40) -> Decimal:
    """Gamma function of a real argument in decimal arithmetic."""
    x = Decimal(x) if not isinstance(x, Decimal) else x
    return _dec_gamma_cached(x, prec)


@lru_cache(maxsize=512)
def _dec_gamma_cached(x: Decimal, prec: int) -> Decimal:
    if x <= 0 and x == x.to_integral_value():
        raise PoleError(f"gamma has a pole at {x}")
    with localcontext() as ctx:
        ctx.prec = prec + 10
        if x < Decimal("0.5"):
            pi = _dec_pi(prec + 10)
            s, _ = _dec_sin_cos(pi * x, prec + 10)
            return pi / (s * dec_gamma(1 - x, prec + 5))
        return _dec_lgamma_pos(x, prec).exp()


class _DecComplex:
    """Minimal complex arithmetic on decimal parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=Decimal(0)):
        self.re = Decimal(re)
        self.im = Decimal(im)

    @classmethod
    def of(cls, z: Num) -> "_DecComplex":
        z = complex(z)
        return cls(Decimal(z.real), Decimal(z.imag))

    def __add__(self, o):
        o = o if isinstance(o, _DecComplex) else _DecComplex(o)
        return _DecComplex(self.re + o.re, self.im + o.im)

    def __mul__(self, o):
        o = o if isinstance(o, _DecComplex) else _DecComplex(o)
        return _DecComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __truediv__(self, o):
        o = o if isinstance(o, _DecComplex) else _DecComplex(o)
        den = o.re * o.re + o.im * o.im
        return _DecComplex((self.re * o.re + self.im * o.im) / den, (self.im * o.re - self.re * o.im) / den)

    def __abs__(self):
        return (self.re * self.re + self.im * self.im).sqrt()

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


# ---------------------------------------------------------------------------
# Kummer M


def _check_b(b: Num) -> None:
    if _is_nonpositive_integer(b):
        raise PoleError(f"Kummer M has a pole at b={b}")


def _m_float(a: Num, b: Num, z: Num) -> Tuple[Num, float]:
    term = 1.0 + 0j if isinstance(a, complex) or isinstance(b, complex) or isinstance(z, complex) else 1.0
    total = term
    biggest = 1.0
    for k in range(TERM_CAP):
        term = term * (a + k) / ((b + k) * (k + 1)) * z
        total = total + term
        at = abs(term)
        biggest = max(biggest, at)
        if at <= 1e-17 * abs(total) and k > abs(z) and (term == 0 or k > abs(a)):
            return total, biggest
        if term == 0:
            return total, biggest
    raise ConvergenceError(f"Kummer M series did not converge for a={a}, b={b}, z={z}")


def _m_decimal(a: Num, b: Num, z: Num, prec: int) -> Num:
    real = not any(isinstance(v, complex) for v in (a, b, z))
    with localcontext() as ctx:
        ctx.prec = prec
        eps = Decimal(10) ** (-(prec - 4))
        if real:
            A, B, Z = Decimal(a), Decimal(b), Decimal(z)
            term = Decimal(1)
            total = Decimal(1)
            for k in range(TERM_CAP * 2):
                term = term * (A + k) / ((B + k) * (k + 1)) * Z
                total += term
                if abs(term) <= eps * abs(total) and k > abs(z) and k > abs(a):
                    return float(total)
                if term == 0:
                    return float(total)
        else:
            A, B, Z = _DecComplex.of(a), _DecComplex.of(b), _DecComplex.of(z)
            term = _DecComplex(1)
            total = _DecComplex(1)
            for k in range(TERM_CAP * 2):
                term = term * (A + k) / ((B + k) * (k + 1)) * Z
                total = total + term
                if abs(term) <= eps * abs(total) and k > abs(z) and k > abs(a):
                    return total.to_complex()
    raise ConvergenceError(f"Kummer M series did not converge for a={a}, b={b}, z={z}")


def kummer_m(a: Num, b: Num, z: Num) -> Num:
    """Kummer's confluent hypergeometric function ``M(a, b, z)``.

    Returns a float for real inputs and a complex number otherwise.
    """
    _check_b(b)
    if abs(z) > 40:
        raise EnvelopeError(f"|z|={abs(z)} exceeds the Kummer M envelope 40")
    total, biggest = _m_float(a, b, z)
    ratio = biggest / max(abs(total), 1e-300)
    if ratio > 1e3 or total == 0:
        loss = math.log10(ratio) if total != 0 else 0.8686 * abs(z) + 20
        total = _m_decimal(a, b, z, _digits_for(loss + 4))
    return total


# ---------------------------------------------------------------------------
# Kummer U


def _is_integer(v: float) -> bool:
    return float(v).is_integer()


def _u_real(a: float, b: float, z: float) -> float:
    prec = _digits_for(0.8686 * z + 4)
    for p in (a, a + 1 - b):
        if _is_nonpositive_integer(p):
            raise PoleError(f"gamma pole in the connection formula at {p}")
    with localcontext() as ctx:
        ctx.prec = prec + 10
        A, B, Z = Decimal(a), Decimal(b), Decimal(z)
        g1 = dec_gamma(1 - B, prec) / dec_gamma(A + 1 - B, prec)
        g2 = dec_gamma(B - 1, prec) / dec_gamma(A, prec)
        m1 = Decimal(_m_decimal_exact(A, B, Z, prec))
        m2 = Decimal(_m_decimal_exact(A - B + 1, 2 - B, Z, prec))
        val = g1 * m1 + g2 * Z ** (1 - B) * m2
        return float(val)


def _m_decimal_exact(A: Decimal, B: Decimal, Z: Decimal, prec: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = prec + 10
        eps = Decimal(10) ** (-(prec + 6))
        term = Decimal(1)
        total = Decimal(1)
        for k in range(TERM_CAP * 2):
            term = term * (A + k) / ((B + k) * (k + 1)) * Z
            total += term
            if abs(term) <= eps * abs(total) and k > abs(Z) and k > abs(A):
                return total
            if term == 0:
                return total
    raise ConvergenceError("Kummer M series did not converge")


def _u_complex(a: complex, b: Num, z: complex) -> complex:
    if abs(z) > 5:
        raise EnvelopeError("complex-parameter Kummer U is shipped for |z| <= 5")
    g1 = gamma(complex(1 - b)) * rgamma(complex(a + 1 - b))
    g2 = gamma(complex(b - 1)) * rgamma(complex(a))
    m1 = complex(kummer_m(complex(a), complex(b), complex(z)))
    m2 = complex(kummer_m(complex(a - b + 1), complex(2 - b), complex(z)))
    return g1 * m1 + g2 * complex(z) ** (1 - b) * m2


def kummer_u(a: Num, b: float, z: Num) -> Num:
    """Tricomi's confluent hypergeometric function ``U(a, b, z)``.

    Real ``a`` and ``0 < z <= 40`` use decimal arithmetic; complex ``a``, ``b``
    or ``z`` use the complex connection formula on ``|z| <= 5``.
    """
    if isinstance(b, complex):
        if b.imag == 0:
            b = b.real
        else:
            return _u_complex(complex(a), b, complex(z))
    if _is_integer(b):
        raise SpecialFunctionError("Kummer U is supported for non-integer b only")
    if isinstance(a, complex) or isinstance(z, complex):
        return _u_complex(complex(a), float(b), complex(z))
    if z <= 0:
        raise EnvelopeError("real Kummer U needs z > 0")
    if z > 40:
        raise EnvelopeError(f"z={z} exceeds the Kummer U envelope 40")
    return _u_real(float(a), float(b), float(z))


# ---------------------------------------------------------------------------
# Whittaker


def whittaker(kind: str, a: Num, b: float, z: Num) -> complex:
    """Whittaker ``M_{a,b}(z)`` or ``W_{a,b}(z)`` on the principal branch."""
    val, _ = _whittaker_with_derivative(kind, a, b, z)
    return complex(val)


def _whittaker_with_derivative(kind: str, k: Num, m: float, z: Num) -> Tuple[complex, complex]:
    if _is_nonpositive_integer(1 + 2 * m):
        raise PoleError("1+2b must not be a non-positive integer")
    A = 0.5 + m - k
    B = 1 + 2 * m
    zc = complex(z)
    pref = cmath.exp(-zc / 2) * zc ** (m + 0.5)
    if kind == "M":
        f = complex(kummer_m(A, B, z))
        fp = complex(kummer_m(A + 1, B + 1, z)) * (A / B)
    elif kind == "W":
        f = complex(kummer_u(A, B, z))
        fp = -A * complex(kummer_u(A + 1, B + 1, z))
    else:
        raise KeyError(kind)
    val = pref * f
    der = pref * ((-0.5 + (m + 0.5) / zc) * f + fp)
    return val, der


def whittaker_rhs(k: Num, m: float, z: Num) -> Num:
    """Coefficient ``q`` in ``phi'' = q phi`` for the Whittaker equation."""
    return 0.25 - k / z - (0.25 - m * m) / (z * z)


# ---------------------------------------------------------------------------
# Airy


@lru_cache(maxsize=16)
def _airy_constants(prec: int) -> Tuple[Decimal, Decimal]:
    with localcontext() as ctx:
        ctx.prec = prec + 10
        third = Decimal(1) / 3
        g13 = dec_gamma(third, prec + 5)
        pi = _dec_pi(prec + 10)
        g23 = 2 * pi / (Decimal(3).sqrt() * g13)
        c1 = 1 / (Decimal(3) ** (2 * third) * g23)
        c2 = 1 / (Decimal(3) ** third * g13)
        return +c1, +c2


def airy(kind: str, z: float) -> Tuple[float, float]:
    """``(Ai(z), Ai'(z))`` or ``(Bi(z), Bi'(z))`` for real ``|z| <= 30``."""
    if abs(z) > 30:
        raise EnvelopeError(f"|z|={abs(z)} exceeds the Airy envelope 30")
    if kind not in ("Ai", "Bi"):
        raise KeyError(kind)
    loss = (4.0 / 3.0) * abs(z) ** 1.5 / math.log(10)
    prec = _digits_for(loss + 4)
    c1, c2 = _airy_constants(prec)
    with localcontext() as ctx:
        ctx.prec = prec + 10
        Z = Decimal(z)
        Z3 = Z * Z * Z
        eps = Decimal(10) ** (-(prec + 6))
        # f = sum 3^k (1/3)_k z^{3k}/(3k)!, g = sum 3^k (2/3)_k z^{3k+1}/(3k+1)!
        tf, tg = Decimal(1), Z
        f, g = tf, tg
        fp, gp = Decimal(0), Decimal(1)
        k = 0
        while True:
            tf = tf * Z3 / ((3 * k + 2) * (3 * k + 3))
            tg = tg * Z3 / ((3 * k + 3) * (3 * k + 4))
            k += 1
            f += tf
            g += tg
            if Z != 0:
                fp += tf * 3 * k / Z
                gp += tg * (3 * k + 1) / Z
            if abs(tf) + abs(tg) <= eps * (abs(f) + abs(g) + 1) or Z == 0:
                break
            if k > TERM_CAP:
                raise ConvergenceError("Airy series did not converge")
        if kind == "Ai":
            v, d = c1 * f - c2 * g, c1 * fp - c2 * gp
        else:
            s3 = Decimal(3).sqrt()
            v, d = s3 * (c1 * f + c2 * g), s3 * (c1 * fp + c2 * gp)
        return float(v), float(d)


# ---------------------------------------------------------------------------
# Bessel


def _half_integer(nu: float) -> bool:
    return _is_integer(nu - 0.5)


def _bessel_series(nu: Decimal, X: Decimal, modified: bool, prec: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = prec + 10
        half = X / 2
        q = half * half
        term = half ** nu / dec_gamma(nu + 1, prec + 5)
        total = term
        eps = Decimal(10) ** (-(prec + 6))
        k = 0
        while True:
            term = term * q / ((k + 1) * (k + 1 + nu))
            if not modified:
                term = -term
            total += term
            k += 1
            if abs(term) <= eps * abs(total) and k > float(X):
                return total
            if k > TERM_CAP:
                raise ConvergenceError("Bessel series did not converge")


def _bessel_half(kind: CylinderKind, nu: float, X: Decimal, prec: int) -> Decimal:
    """Closed forms at half-integer order with the three-term recurrences."""
    with localcontext() as ctx:
        ctx.prec = prec + 10
        pi = _dec_pi(prec + 10)
        pref = (2 / (pi * X)).sqrt()
        n = int(round(abs(nu) - 0.5))
        if kind in (CylinderKind.J, CylinderKind.Y):
            s, c = _dec_sin_cos(X, prec + 10)
            if kind == CylinderKind.Y:
                # Y_{n+1/2} = (-1)^{n+1} J_{-n-1/2}
                m = -nu
                sgn = -1 if (int(round(nu - 0.5)) % 2 == 0) else 1
                return sgn * _bessel_half(CylinderKind.J, m, X, prec)
            lo, hi = pref * c, pref * s  # orders -1/2, 1/2
            if nu > 0:
                order = Decimal("0.5")
                for _ in range(n):
                    lo, hi = hi, (2 * order / X) * hi - lo
                    order += 1
                return hi
            order = Decimal("-0.5")
            for _ in range(n):
                # J_{v-1} = (2v/x) J_v - J_{v+1}
                lo, hi = (2 * order / X) * lo - hi, lo
                order -= 1
            return lo
        ex = X.exp()
        if kind == CylinderKind.I:
            sh, ch = (ex - 1 / ex) / 2, (ex + 1 / ex) / 2
            lo, hi = pref * ch, pref * sh
            if nu > 0:
                order = Decimal("0.5")
                for _ in range(n):
                    lo, hi = hi, lo - (2 * order / X) * hi
                    order += 1
                return hi
            order = Decimal("-0.5")
            for _ in range(n):
                # I_{v-1} = I_{v+1} + (2v/x) I_v
                lo, hi = hi + (2 * order / X) * lo, lo
                order -= 1
            return lo
        if kind == CylinderKind.K:
            k_half = (pi / (2 * X)).sqrt() / ex
            lo, hi = k_half, k_half  # K_{-1/2} = K_{1/2}
            order = Decimal("0.5")
            for _ in range(n):
                lo, hi = hi, lo + (2 * order / X) * hi
                order += 1
            return hi
    raise SpecialFunctionError(kind)


def _bessel_value(kind: CylinderKind, nu: float, z: float) -> float:
    prec = _digits_for(0.8686 * z + 4)
    with localcontext() as ctx:
        ctx.prec = prec + 10
        X = Decimal(z)
        if _half_integer(nu):
            return float(_bessel_half(kind, nu, X, prec))
        N = Decimal(nu)
        if kind == CylinderKind.J:
            return float(_bessel_series(N, X, False, prec))
        if kind == CylinderKind.I:
            return float(_bessel_series(N, X, True, prec))
        pi = _dec_pi(prec + 10)
        s, c = _dec_sin_cos(N * pi, prec + 10)
        if kind == CylinderKind.Y:
            j, jm = _bessel_series(N, X, False, prec), _bessel_series(-N, X, False, prec)
            return float((j * c - jm) / s)
        if kind == CylinderKind.K:
            i, im = _bessel_series(N, X, True, prec), _bessel_series(-N, X, True, prec)
            return float(pi / 2 * (im - i) / s)
    raise EnvelopeError(f"{kind} is outside the shipped real-order envelope")


def bessel(kind: Union[CylinderKind, str], nu: float, z: float) -> Tuple[float, float]:
    """``(Z_nu(z), Z_nu'(z))`` for ``Z`` in ``J, Y, I, K``; ``z > 0`` and non-integer ``nu``."""
    kind = CylinderKind(kind) if not isinstance(kind, CylinderKind) else kind
    if kind in (CylinderKind.MODIFIED_TILDE_I, CylinderKind.TILDE_H1, CylinderKind.TILDE_H2):
        raise EnvelopeError("imaginary-order cylinder functions are outside the shipped envelope")
    if z <= 0:
        raise EnvelopeError("Bessel functions need z > 0")
    if z > 50:
        raise EnvelopeError("z exceeds the Bessel envelope 50")
    if abs(nu) > 5:
        raise EnvelopeError("|nu| exceeds the Bessel envelope 5")
    if _is_integer(nu):
        raise EnvelopeError("integer Bessel orders are not supported")
    v = _bessel_value(kind, nu, z)
    lo = _bessel_value(kind, nu - 1, z)
    hi = _bessel_value(kind, nu + 1, z)
    if kind in (CylinderKind.J, CylinderKind.Y):
        d = (lo - hi) / 2
    elif kind == CylinderKind.I:
        d = (lo + hi) / 2
    else:
        d = -(lo + hi) / 2
    return v, d


# ---------------------------------------------------------------------------
# jet lifts


def lift_airy(kind: str, arg: Jet2) -> Jet2:
    v, d = airy(kind, arg.v)
    return arg.chain(v, d, arg.v * v)


def lift_bessel(kind: Union[CylinderKind, str], nu: float, arg: Jet2) -> Jet2:
    kind = CylinderKind(kind) if not isinstance(kind, CylinderKind) else kind
    z = arg.v
    v, d = bessel(kind, nu, z)
    if kind in (CylinderKind.J, CylinderKind.Y):
        d2 = -d / z - (1 - nu * nu / (z * z)) * v
    else:
        d2 = -d / z + (1 + nu * nu / (z * z)) * v
    return arg.chain(v, d, d2)


def kummer_m_derivs(a: float, b: float, z: float) -> Tuple[float, float, float]:
    f0 = kummer_m(a, b, z)
    f1 = a / b * kummer_m(a + 1, b + 1, z)
    f2 = a * (a + 1) / (b * (b + 1)) * kummer_m(a + 2, b + 2, z)
    return f0, f1, f2


def kummer_u_derivs(a: float, b: float, z: float) -> Tuple[float, float, float]:
    f0 = kummer_u(a, b, z)
    f1 = -a * kummer_u(a + 1, b + 1, z)
    f2 = a * (a + 1) * kummer_u(a + 2, b + 2, z)
    return f0, f1, f2


def lift_kummer(kind: str, a: float, b: float, arg: Jet2) -> Jet2:
    """Jet lift of ``M(a, b, .)`` (``kind='M'``) or ``U(a, b, .)`` (``kind='U'``)."""
    if kind == "M":
        return arg.chain(*kummer_m_derivs(a, b, arg.v))
    if kind == "U":
        return arg.chain(*kummer_u_derivs(a, b, arg.v))
    raise KeyError(kind)


def whittaker_derivs(kind: str, k: Num, m: float, z: Num) -> Tuple[complex, complex, complex]:
    v, d = _whittaker_with_derivative(kind, k, m, z)
    return v, d, whittaker_rhs(k, m, complex(z)) * v


def lift_whittaker(kind: str, k: float, m: float, arg: Jet2) -> Jet2:
    """Real-argument, real-parameter Whittaker function as a jet."""
    v, d, d2 = whittaker_derivs(kind, k, m, arg.v)
    return arg.chain(v.real, d.real, d2.real)


def lift_whittaker_imag_real_part(kind: str, k: complex, m: float, s: Jet2) -> Jet2:
    """``Re F(i s)`` for a Whittaker function ``F`` with complex index ``k``, as a jet in ``s``."""
    v, d, d2 = whittaker_derivs(kind, k, m, 1j * s.v)
    return s.chain(v.real, (1j * d).real, (-d2).real)


# ---------------------------------------------------------------------------
# self-checks: defining equations, Wronskians, Kummer's transformation


def _second_derivative(deriv: Callable[[float], float], z: float, h: float = 1e-3) -> float:
    """Richardson-extrapolated central difference of ``deriv``; independent of the lifts' ODE closures."""
    d1 = (deriv(z + h) - deriv(z - h)) / (2 * h)
    d2 = (deriv(z + h / 2) - deriv(z - h / 2)) / h
    return (4 * d2 - d1) / 3


@dataclass(frozen=True)
class OdeCase:
    """A special function with its value/derivative evaluator, defining ODE and sampling envelope."""

    name: str
    pair: Callable[[float], Tuple[float, float]]
    terms: Callable[[float, float, float, float], Tuple[float, ...]]
    lo: float
    hi: float


def ode_cases() -> List[OdeCase]:
    def kummer_pair(kind, a, b):
        if kind == "M":
            return lambda z: (kummer_m(a, b, z), a / b * kummer_m(a + 1, b + 1, z))
        return lambda z: (kummer_u(a, b, z), -a * kummer_u(a + 1, b + 1, z))

    def kummer_terms(a, b):
        return lambda z, f, d, dd: (z * dd, (b - z) * d, -a * f)

    def whit_pair(kind, k, m):
        def pair(z):
            v, d = _whittaker_with_derivative(kind, k, m, z)
            return v.real, d.real
        return pair

    def whit_terms(k, m):
        return lambda z, f, d, dd: (dd, (-0.25 + k / z + (0.25 - m * m) / (z * z)) * f)

    def bessel_terms(nu, modified):
        s = -1.0 if modified else 1.0
        return lambda z, f, d, dd: (z * z * dd, z * d, s * z * z * f, -nu * nu * f)

    cases = [
        OdeCase("Ai", lambda z: airy("Ai", z), lambda z, f, d, dd: (dd, -z * f), -10.0, 10.0),
        OdeCase("Bi", lambda z: airy("Bi", z), lambda z, f, d, dd: (dd, -z * f), -10.0, 10.0),
    ]
    for kind in ("J", "Y", "I", "K"):
        for nu in (1 / 3, 1 / 6, 2.5):
            cases.append(OdeCase(f"{kind}[{nu:.4g}]", lambda z, k=kind, n=nu: bessel(k, n, z),
                                 bessel_terms(nu, kind in ("I", "K")), 0.3, 12.0))
    for kind in ("M", "U"):
        for a, b in ((0.4, 4 / 3), (-1.3, 1.5), (2.2, 0.75)):
            cases.append(OdeCase(f"{kind}[{a:g},{b:.4g}]", kummer_pair(kind, a, b), kummer_terms(a, b),
                                 0.2, 20.0))
    for kind in ("M", "W"):
        for k, m in ((0.2, 1 / 6), (-0.7, 1 / 3)):
            cases.append(OdeCase(f"Whittaker{kind}[{k:g},{m:.4g}]", whit_pair(kind, k, m), whit_terms(k, m),
                                 0.2, 15.0))
    return cases


def ode_residual(case: OdeCase, z: float) -> float:
    f, d = case.pair(z)
    dd = _second_derivative(lambda s: case.pair(s)[1], z)
    terms = case.terms(z, f, d, dd)
    return abs(sum(terms)) / max(1.0, sum(abs(t) for t in terms))


def _grid(lo: float, hi: float, n: int, seed_value: int) -> List[float]:
    return [float(p[0]) for p in quasi_random_points(((lo, hi),), n, seed_value)]


def max_ode_residuals(n: int = 50, seed_value: int = 42) -> Dict[str, float]:
    """Worst relative defining-ODE residual per case over ``n`` quasi-random points of its envelope."""
    return {c.name: max(ode_residual(c, z) for z in _grid(c.lo, c.hi, n, seed_value)) for c in ode_cases()}


def wronskian_gaps(n: int = 20, seed_value: int = 42) -> Dict[str, float]:
    """Worst relative gap of the standard Wronskian identities over ``n`` points."""
    out: Dict[str, float] = {}

    def rel(got, want):
        return abs(got - want) / max(1.0, abs(want))

    zs = _grid(-8.0, 8.0, n, seed_value)
    out["Ai,Bi"] = max(rel(airy("Ai", z)[0] * airy("Bi", z)[1] - airy("Ai", z)[1] * airy("Bi", z)[0], 1 / math.pi)
                       for z in zs)
    zs = _grid(0.3, 12.0, n, seed_value)
    for nu in (1 / 3, 1 / 6):
        def w(k1, k2, z):
            f, df = bessel(k1, nu, z)
            g, dg = bessel(k2, nu, z)
            return f * dg - df * g
        out[f"J,Y[{nu:.4g}]"] = max(rel(w("J", "Y", z), 2 / (math.pi * z)) for z in zs)
        out[f"I,K[{nu:.4g}]"] = max(rel(w("I", "K", z), -1 / z) for z in zs)
    zs = _grid(0.2, 12.0, n, seed_value)
    for a, b in ((0.4, 4 / 3), (2.2, 0.75)):
        def wmu(z):
            m, dm = kummer_m(a, b, z), a / b * kummer_m(a + 1, b + 1, z)
            u, du = kummer_u(a, b, z), -a * kummer_u(a + 1, b + 1, z)
            return m * du - dm * u
        out[f"M,U[{a:g},{b:.4g}]"] = max(rel(wmu(z), -gamma(b) / gamma(a) * z ** (-b) * math.exp(z)) for z in zs)
    return out


def kummer_transformation_gap(n: int = 40, seed_value: int = 42, zmax: float = 20.0) -> float:
    """Worst relative gap of ``M(a, b, z) = e^z M(b - a, b, -z)`` over ``|z| <= zmax``."""
    worst = 0.0
    for z in _grid(-zmax, zmax, n, seed_value):
        for a, b in ((0.3, 4 / 3), (-1.7, 0.5), (2.5, 1.5)):
            lhs = kummer_m(a, b, z)
            rhs = math.exp(z) * kummer_m(b - a, b, -z)
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
    return worst
