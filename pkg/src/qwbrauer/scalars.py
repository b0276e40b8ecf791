"""Exact scalars for the quantized walled Brauer algebra.

Two representations live here:

* ``ExactScalar``: a reduced fraction of integer polynomials in ``rho`` and
  ``q`` times a Laurent monomial. Polynomial arithmetic and gcds are
  delegated to FLINT's multivariate integer polynomials.
* ``BracketProduct``: a factored form
  ``c * q^a * prod [m]^e_m * prod [delta+n]^f_n`` which multiplies by
  exponent arithmetic and is the working format for norms and determinants.

The module also provides univariate rational functions in an auxiliary
variable ``u`` (for residues) and evaluation in finite fields
(``SpecializationParams`` / ``specialize``).
"""

from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

import flint

from .errors import (
    DivisionByZero,
    DomainError,
    HigherOrderPole,
    NotAPole,
    SpecializationPole,
)

_CTX = flint.fmpz_mpoly_ctx.get(("rho", "q"), "lex")
_RHO, _Q = _CTX.gens()
_ONE = _CTX.from_dict({(0, 0): 1})
_ZERO = _CTX.from_dict({})
_QQ1 = _Q**2 - 1  # (q - q^-1) = q^-1 (q^2 - 1)

Rational = Union[int, Fraction]


def _monomial(a: int, b: int):
    return _CTX.from_dict({(a, b): 1})


def _strip_monomial(p):
    """Split ``p`` as ``rho^a q^b * p'`` with ``p'`` free of monomial factors."""
    mons = p.monoms()
    a = min(m[0] for m in mons)
    b = min(m[1] for m in mons)
    if a or b:
        p = p / _monomial(a, b)
    return p, a, b


# ---------------------------------------------------------------------------
# ExactScalar
# ---------------------------------------------------------------------------


class ExactScalar:
    """An element of Q(rho, q) in canonical reduced form.

    The value is ``rho^unit[0] * q^unit[1] * num / den`` where ``num`` and
    ``den`` are coprime integer polynomials with no monomial factor and
    ``den`` has positive leading coefficient (lex order, ``rho`` first).
    Zero is ``num = 0, den = 1, unit = (0, 0)``. Because the form is unique,
    structural equality is field equality.
    """

    __slots__ = ("num", "den", "unit", "_hash", "_slices")

    def __init__(self, num, den, unit=(0, 0)):
        # Internal constructor; arguments must already be canonical.
        self.num = num
        self.den = den
        self.unit = (int(unit[0]), int(unit[1]))
        self._hash = None
        self._slices = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def build(cls, num, den, ar: int = 0, aq: int = 0) -> "ExactScalar":
        """Reduce ``rho^ar q^aq num/den`` to canonical form."""
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            return cls(_ZERO, _ONE)
        num, a1, b1 = _strip_monomial(num)
        den, a2, b2 = _strip_monomial(den)
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return cls(num, den, (ar + a1 - a2, aq + b1 - b2))

    @classmethod
    def from_rational(cls, c: Rational) -> "ExactScalar":
        c = Fraction(c)
        if c == 0:
            return cls(_ZERO, _ONE)
        return cls(_ONE * c.numerator, _ONE * c.denominator)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], Rational]) -> "ExactScalar":
        """Build a Laurent polynomial from ``{(rho_exp, q_exp): coeff}``."""
        total = cls.zero()
        for (a, b), c in terms.items():
            total = total + cls.from_rational(c) * cls.monomial(a, b)
        return total

    @classmethod
    def monomial(cls, a: int, b: int) -> "ExactScalar":
        return cls(_ONE, _ONE, (a, b))

    @classmethod
    def zero(cls) -> "ExactScalar":
        return cls(_ZERO, _ONE)

    @classmethod
    def one(cls) -> "ExactScalar":
        return cls(_ONE, _ONE)

    @classmethod
    def rho(cls) -> "ExactScalar":
        return cls.monomial(1, 0)

    @classmethod
    def q(cls) -> "ExactScalar":
        return cls.monomial(0, 1)

    @classmethod
    def delta(cls) -> "ExactScalar":
        return expand(qdelta(0))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.unit == (0, 0) and self.num.is_one() and self.den.is_one()

    # -- arithmetic ---------------------------------------------------------

    def _aligned(self, other: "ExactScalar"):
        ar = min(self.unit[0], other.unit[0])
        aq = min(self.unit[1], other.unit[1])
        n1 = self.num * _monomial(self.unit[0] - ar, self.unit[1] - aq)
        n2 = other.num * _monomial(other.unit[0] - ar, other.unit[1] - aq)
        return n1, n2, ar, aq

    def __add__(self, other) -> "ExactScalar":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        n1, n2, ar, aq = self._aligned(other)
        if self.den == other.den:
            return ExactScalar.build(n1 + n2, self.den, ar, aq)
        return ExactScalar.build(n1 * other.den + n2 * self.den, self.den * other.den, ar, aq)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.num, self.den, self.unit)

    def __sub__(self, other) -> "ExactScalar":
        other = _coerce(other)
        return NotImplemented if other is None else self + (-other)

    def __rsub__(self, other) -> "ExactScalar":
        other = _coerce(other)
        return NotImplemented if other is None else other + (-self)

    def __mul__(self, other) -> "ExactScalar":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ExactScalar.zero()
        ar = self.unit[0] + other.unit[0]
        aq = self.unit[1] + other.unit[1]
        # cross-cancel before multiplying to keep polynomials small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = (self.num / g1) * (other.num / g2)
        den = (self.den / g2) * (other.den / g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return ExactScalar(num, den, (ar, aq))

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return ExactScalar(num, den, (-self.unit[0], -self.unit[1]))

    def __truediv__(self, other) -> "ExactScalar":
        other = _coerce(other)
        return NotImplemented if other is None else self * other.inverse()

    def __rtruediv__(self, other) -> "ExactScalar":
        other = _coerce(other)
        return NotImplemented if other is None else other * self.inverse()

    def __pow__(self, k: int) -> "ExactScalar":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ExactScalar.one()
        if self.is_zero():
            return self
        return ExactScalar(self.num**k, self.den**k, (self.unit[0] * k, self.unit[1] * k))

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.from_rational(other)
        elif isinstance(other, BracketProduct):
            other = expand(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.unit == other.unit and self.num == other.num and self.den == other.den

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (self.unit, tuple(sorted(self.num.to_dict().items())), tuple(sorted(self.den.to_dict().items())))
            )
        return self._hash

    # -- inspection ---------------------------------------------------------

    def laurent_terms(self, which: str = "num") -> dict[tuple[int, int], int]:
        """Terms of the numerator (with the unit folded in) or denominator."""
        if which == "num":
            a, b = self.unit
            return {(i + a, j + b): int(c) for (i, j), c in self.num.to_dict().items()}
        return {(i, j): int(c) for (i, j), c in self.den.to_dict().items()}

    def substitute(self, rho: "ExactScalar", q: "ExactScalar") -> "ExactScalar":
        """Evaluate at other scalars (used e.g. for rho = q^n)."""
        def ev(poly):
            total = ExactScalar.zero()
            for (i, j), c in poly.to_dict().items():
                total = total + ExactScalar.from_rational(int(c)) * rho**i * q**j
            return total

        return ev(self.num) / ev(self.den) * rho ** self.unit[0] * q ** self.unit[1]

    def __str__(self) -> str:
        num = _format_laurent(self.laurent_terms("num"))
        if self.den.is_one():
            return num
        return f"({num}) / ({_format_laurent(self.laurent_terms('den'))})"

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    # -- specialization -----------------------------------------------------

    def _rho_slices(self):
        # group terms by rho-degree: {i: [q-coefficients]} for num and den
        if self._slices is None:
            out = []
            for poly in (self.num, self.den):
                groups: dict[int, dict[int, int]] = defaultdict(dict)
                for (i, j), c in poly.to_dict().items():
                    groups[i][j] = int(c)
                dense = {}
                for i, coeffs in groups.items():
                    top = max(coeffs)
                    dense[i] = [coeffs.get(j, 0) for j in range(top + 1)]
                out.append(dense)
            self._slices = tuple(out)
        return self._slices


def _coerce(x) -> ExactScalar | None:
    """Like ``as_scalar`` but returns None for foreign types."""
    if isinstance(x, (ExactScalar, int, Fraction, BracketProduct)):
        return as_scalar(x)
    return None


def as_scalar(x) -> ExactScalar:
    """Coerce ints, fractions and bracket products to ``ExactScalar``."""
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar.from_rational(x)
    if isinstance(x, BracketProduct):
        return expand(x)
    raise TypeError(f"cannot convert {type(x).__name__} to ExactScalar")


def _format_term(c: int, i: int, j: int) -> str:
    factors = []
    if i:
        factors.append("rho" if i == 1 else f"rho^{i}")
    if j:
        factors.append("q" if j == 1 else f"q^{j}")
    if not factors:
        return str(c)
    body = "*".join(factors)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def _format_laurent(terms: Mapping[tuple[int, int], int]) -> str:
    if not terms:
        return "0"
    out = ""
    for k, (i, j) in enumerate(sorted(terms)):
        s = _format_term(terms[(i, j)], i, j)
        if k == 0:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


def is_in_base_ring(x) -> bool:
    """Membership in Z[q^±, rho^±] with (q - q^-1) inverted."""
    if isinstance(x, BracketProduct):
        x = expand(x)
    den = x.den
    for lin in (_Q - 1, _Q + 1):
        while True:
            quo, rem = divmod(den, lin)
            if not rem.is_zero():
                break
            den = quo
    return den.is_one()


# ---------------------------------------------------------------------------
# BracketProduct
# ---------------------------------------------------------------------------


def _freeze(exps: Mapping[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((int(k), int(v)) for k, v in exps.items() if v))


@dataclass(frozen=True)
class BracketProduct:
    """``coefficient * q^q_power * prod [m]^e * prod [delta+n]^f``.

    Exponent maps are stored as sorted tuples of pairs so instances are
    hashable; ``qint`` and ``qdelta`` give dict views. The factored form is
    canonical: distinct instances expand to distinct field elements.
    """

    coefficient: Fraction = Fraction(1)
    q_power: int = 0
    qint_exponents: tuple[tuple[int, int], ...] = ()
    qdelta_exponents: tuple[tuple[int, int], ...] = ()
    zero_flag: bool = False

    @staticmethod
    def make(coefficient: Rational = 1, q_power: int = 0,
             qint: Mapping[int, int] | None = None,
             qdelta: Mapping[int, int] | None = None) -> "BracketProduct":
        coefficient = Fraction(coefficient)
        if coefficient == 0:
            return ZERO
        qint = dict(qint or {})
        for m in list(qint):
            if m < 2:
                raise ValueError(f"qint exponent key must be >= 2, got {m}")
        return BracketProduct(coefficient, int(q_power), _freeze(qint), _freeze(qdelta or {}))

    @property
    def qint(self) -> dict[int, int]:
        return dict(self.qint_exponents)

    @property
    def qdelta(self) -> dict[int, int]:
        return dict(self.qdelta_exponents)

    def is_zero(self) -> bool:
        return self.zero_flag

    def is_one(self) -> bool:
        return self == ONE

    def __mul__(self, other) -> "BracketProduct":
        if isinstance(other, (int, Fraction)):
            other = BracketProduct.make(other)
        if not isinstance(other, BracketProduct):
            return NotImplemented
        if self.zero_flag or other.zero_flag:
            return ZERO
        qi = defaultdict(int, self.qint)
        for m, e in other.qint_exponents:
            qi[m] += e
        qd = defaultdict(int, self.qdelta)
        for n, f in other.qdelta_exponents:
            qd[n] += f
        return BracketProduct(self.coefficient * other.coefficient, self.q_power + other.q_power,
                              _freeze(qi), _freeze(qd))

    __rmul__ = __mul__

    def inverse(self) -> "BracketProduct":
        if self.zero_flag:
            raise DivisionByZero("inverse of a zero bracket product")
        return BracketProduct(1 / self.coefficient, -self.q_power,
                              tuple((m, -e) for m, e in self.qint_exponents),
                              tuple((n, -f) for n, f in self.qdelta_exponents))

    def __truediv__(self, other) -> "BracketProduct":
        if isinstance(other, (int, Fraction)):
            other = BracketProduct.make(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "BracketProduct":
        return BracketProduct.make(other) * self.inverse()

    def __neg__(self) -> "BracketProduct":
        if self.zero_flag:
            return self
        return BracketProduct(-self.coefficient, self.q_power, self.qint_exponents, self.qdelta_exponents)

    def __pow__(self, k: int) -> "BracketProduct":
        if k == 0:
            return ONE
        if self.zero_flag:
            if k < 0:
                raise DivisionByZero("negative power of zero")
            return ZERO
        return BracketProduct(self.coefficient**k, self.q_power * k,
                              tuple((m, e * k) for m, e in self.qint_exponents),
                              tuple((n, f * k) for n, f in self.qdelta_exponents))

    def cyclotomic_exponents(self) -> dict[int, int]:
        """Net exponent of each cyclotomic factor Phi_d (d > 2) in the q-part."""
        out: dict[int, int] = defaultdict(int)
        for m, e in self.qint_exponents:
            for d in _divisors(2 * m):
                if d > 2:
                    out[d] += e
        return {d: e for d, e in out.items() if e}

    def in_base_ring(self) -> bool:
        """Factored base-ring test: no net denominators besides (q - q^-1)."""
        if self.zero_flag:
            return True
        if self.coefficient.denominator != 1:
            return False
        if any(f < 0 for _, f in self.qdelta_exponents):
            return False
        return all(e >= 0 for e in self.cyclotomic_exponents().values())

    def __str__(self) -> str:
        return format_factored(self)

    def to_json(self) -> dict:
        return {
            "coeff": str(self.coefficient) if not self.zero_flag else "0",
            "qpow": self.q_power,
            "qint": {str(m): e for m, e in self.qint_exponents},
            "qdelta": {str(n): f for n, f in self.qdelta_exponents},
            "zero": self.zero_flag,
        }

    @staticmethod
    def from_json(obj: Mapping | str) -> "BracketProduct":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if obj.get("zero"):
            return ZERO
        return BracketProduct.make(Fraction(obj["coeff"]), obj.get("qpow", 0),
                                   {int(k): v for k, v in obj.get("qint", {}).items()},
                                   {int(k): v for k, v in obj.get("qdelta", {}).items()})


ZERO = BracketProduct(Fraction(0), 0, (), (), True)
ONE = BracketProduct()


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


def qint(k: int) -> BracketProduct:
    """Quantum integer [k] = (q^k - q^-k)/(q - q^-1)."""
    if k == 0:
        return ZERO
    if k < 0:
        return -qint(-k)
    if k == 1:
        return ONE
    return BracketProduct(Fraction(1), 0, ((k, 1),), ())


def qdelta(n: int) -> BracketProduct:
    """[delta+n] = (rho q^n - rho^-1 q^-n)/(q - q^-1); qdelta(0) is delta."""
    return BracketProduct(Fraction(1), 0, (), ((int(n), 1),))


def qceil(n: int) -> BracketProduct:
    """1 + q^-2 + ... + q^-(2n-2) = q^(1-n) [n], with qceil(0) = 1."""
    if n < 0:
        raise DomainError(f"qceil needs n >= 0, got {n}")
    if n == 0:
        return ONE
    return qpow(1 - n) * qint(n)


def qpow(a: int) -> BracketProduct:
    return BracketProduct(Fraction(1), int(a), (), ())


def rational(c: Rational) -> BracketProduct:
    return BracketProduct.make(c)


def bracket_product(factors: Iterable[BracketProduct]) -> BracketProduct:
    out = ONE
    for f in factors:
        out = out * f
    return out


def substitute_rho_power(b: BracketProduct, n: int) -> BracketProduct:
    """Specialize rho = q^n, turning every [delta+k] into [n+k]."""
    if b.zero_flag:
        return ZERO
    out = BracketProduct(b.coefficient, b.q_power, b.qint_exponents, ())
    for k, f in b.qdelta_exponents:
        factor = qint(n + k)
        if factor.zero_flag and f < 0:
            raise DivisionByZero(f"[delta{k:+d}] vanishes at rho = q^{n}")
        out = out * factor**f
    return out


@lru_cache(maxsize=None)
def _cyclotomic(d: int):
    coeffs = [int(c) for c in flint.fmpz_poly.cyclotomic(d).coeffs()]
    return _CTX.from_dict({(0, j): c for j, c in enumerate(coeffs) if c})


def _delta_poly(n: int):
    # [delta+n] = rho^-1 q^(1-n) (rho^2 q^(2n) - 1)/(q^2 - 1), shifted for n < 0
    if n >= 0:
        return _CTX.from_dict({(2, 2 * n): 1, (0, 0): -1}), 1 - n
    return _CTX.from_dict({(2, 0): 1, (0, -2 * n): -1}), 1 + n


@lru_cache(maxsize=4096)
def expand(b: BracketProduct) -> ExactScalar:
    """The ``ExactScalar`` value of a bracket product.

    Each [m] is written as q^(1-m) times its cyclotomic factors Phi_d with
    d | 2m, d > 2; each [delta+n] is an irreducible-pair polynomial over
    (q^2 - 1). The assembled fraction is already reduced, so no gcd is run.
    """
    if b.zero_flag:
        return ExactScalar.zero()
    aq = b.q_power
    ar = 0
    num, den = _ONE, _ONE
    for m, e in b.qint_exponents:
        aq += e * (1 - m)
    for d, e in sorted(b.cyclotomic_exponents().items()):
        if e > 0:
            num = num * _cyclotomic(d) ** e
        else:
            den = den * _cyclotomic(d) ** (-e)
    total = 0
    for n, f in b.qdelta_exponents:
        poly, shift = _delta_poly(n)
        ar -= f
        aq += f * shift
        total += f
        if f > 0:
            num = num * poly**f
        else:
            den = den * poly ** (-f)
    if total > 0:
        den = den * _QQ1**total
    elif total < 0:
        num = num * _QQ1 ** (-total)
    num = num * b.coefficient.numerator
    den = den * b.coefficient.denominator
    return ExactScalar(num, den, (ar, aq))


_FACTOR_RE = re.compile(r"^(?:q\^(?P<qp>-?\d+)|q|\[(?P<m>\d+)\]|\[d(?P<n>[+-]\d+)?\])(?:\^(?P<e>-?\d+))?$")


def format_factored(b: BracketProduct) -> str:
    """Text form ``c * q^a * [m]^e * [d+n]^f`` with ``[d+0]`` shown as ``[d]``."""
    if b.zero_flag:
        return "0"
    parts = []
    if b.q_power:
        parts.append(f"q^{b.q_power}")
    for m, e in b.qint_exponents:
        parts.append(f"[{m}]" + (f"^{e}" if e != 1 else ""))
    for n, f in sorted(b.qdelta_exponents, key=lambda nf: (abs(nf[0]), nf[0])):
        name = "[d]" if n == 0 else f"[d{n:+d}]"
        parts.append(name + (f"^{f}" if f != 1 else ""))
    c = b.coefficient
    if not parts:
        return str(c)
    body = " * ".join(parts)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c} * {body}"


def parse_factored(text: str) -> BracketProduct:
    """Inverse of ``format_factored``."""
    text = text.strip()
    if text == "0":
        return ZERO
    sign = 1
    if text.startswith("-") and not re.match(r"^-\d", text):
        sign, text = -1, text[1:]
    out = BracketProduct.make(sign)
    for tok in text.split(" * "):
        tok = tok.strip()
        if re.fullmatch(r"-?\d+(/\d+)?", tok):
            out = out * BracketProduct.make(Fraction(tok))
            continue
        mt = _FACTOR_RE.match(tok)
        if not mt:
            raise DomainError(f"cannot parse factor {tok!r}")
        e = int(mt.group("e") or 1)
        if mt.group("m"):
            out = out * qint(int(mt.group("m"))) ** e
        elif tok.startswith("[d"):
            out = out * qdelta(int(mt.group("n") or 0)) ** e
        else:
            out = out * qpow(int(mt.group("qp") or 1) * e)
    return out


# ---------------------------------------------------------------------------
# Rational functions in u
# ---------------------------------------------------------------------------

UPoly = tuple  # coefficients low -> high, each an ExactScalar, no trailing zeros


def _utrim(c: Sequence[ExactScalar]) -> UPoly:
    c = list(c)
    while c and c[-1].is_zero():
        c.pop()
    return tuple(c)


def _uadd(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    z = ExactScalar.zero()
    return _utrim([(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)])


def _uscale(a: UPoly, c: ExactScalar) -> UPoly:
    return _utrim([x * c for x in a])


def _umul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return ()
    out = [ExactScalar.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _utrim(out)


def _udivmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    rem = list(a)
    quo = [ExactScalar.zero()] * max(len(a) - len(b) + 1, 0)
    lead_inv = b[-1].inverse()
    while len(rem) >= len(b) and rem:
        shift = len(rem) - len(b)
        c = rem[-1] * lead_inv
        quo[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] = rem[shift + i] - c * y
        rem = list(_utrim(rem))
    return _utrim(quo), tuple(rem)


def _umonic(a: UPoly) -> UPoly:
    return _uscale(a, a[-1].inverse()) if a else a


def _ugcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, _udivmod(a, b)[1]
    return _umonic(a)


def _uderiv(a: UPoly) -> UPoly:
    return _utrim([a[i] * i for i in range(1, len(a))])


def _ueval(a: UPoly, x: ExactScalar) -> ExactScalar:
    acc = ExactScalar.zero()
    for c in reversed(a):
        acc = acc * x + c
    return acc


class RationalFunctionInU:
    """A reduced quotient of polynomials in ``u`` over Q(rho, q).

    The denominator is kept monic, so equal functions have equal
    coefficient tuples.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence, den: Sequence | None = None, reduce: bool = True):
        num = _utrim([as_scalar(c) for c in num])
        den = _utrim([as_scalar(c) for c in (den if den is not None else [1])])
        if not den:
            raise DivisionByZero("zero denominator in u")
        if reduce:
            if not num:
                den = (ExactScalar.one(),)
            else:
                g = _ugcd(num, den)
                if len(g) > 1:
                    num = _udivmod(num, g)[0]
                    den = _udivmod(den, g)[0]
            lead = den[-1].inverse()
            num, den = _uscale(num, lead), _uscale(den, lead)
        self.num: UPoly = num
        self.den: UPoly = den

    @classmethod
    def u(cls) -> "RationalFunctionInU":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "RationalFunctionInU":
        return cls([as_scalar(c)])

    @staticmethod
    def _coerce(x) -> "RationalFunctionInU":
        if isinstance(x, RationalFunctionInU):
            return x
        return RationalFunctionInU.constant(x)

    def __add__(self, other):
        o = self._coerce(other)
        return RationalFunctionInU(_uadd(_umul(self.num, o.den), _umul(o.num, self.den)),
                                   _umul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionInU(_uscale(self.num, ExactScalar.from_rational(-1)), self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunctionInU(_umul(self.num, o.num), _umul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not o.num:
            raise DivisionByZero("division by the zero function")
        return RationalFunctionInU(_umul(self.num, o.den), _umul(self.den, o.num))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, x) -> ExactScalar:
        x = as_scalar(x)
        d = _ueval(self.den, x)
        if d.is_zero():
            raise DivisionByZero("evaluation at a pole")
        return _ueval(self.num, x) / d

    def __repr__(self) -> str:
        return f"RationalFunctionInU(num={[str(c) for c in self.num]}, den={[str(c) for c in self.den]})"


def residue_at(f: RationalFunctionInU, u0) -> ExactScalar:
    """Residue N(u0)/D'(u0) at a simple pole of the reduced function."""
    u0 = as_scalar(u0)
    if not _ueval(f.den, u0).is_zero():
        raise NotAPole(f"denominator does not vanish at {u0}")
    d1 = _ueval(_uderiv(f.den), u0)
    if d1.is_zero():
        raise HigherOrderPole(f"pole of order > 1 at {u0}")
    return _ueval(f.num, u0) / d1


# ---------------------------------------------------------------------------
# Specialization to finite fields
# ---------------------------------------------------------------------------

_GENERIC_BOUND = 256  # |n| range over which "generic" and "e = inf" are certified
_EMULATION_BITS = 61


def _is_prime(n: int) -> bool:
    return n > 1 and bool(flint.fmpz(n).is_prime())


def _prime_factors(n: int) -> list[int]:
    return [int(p) for p, _ in flint.fmpz(n).factor()] if n > 1 else []


def _has_order(x, t: int, one) -> bool:
    if x**t != one:
        return False
    return all(x ** (t // ell) != one for ell in _prime_factors(t))


def _elements(F, p: int, k: int):
    # deterministic enumeration of field elements, skipping 0 and 1
    i = 2
    while True:
        digits, j = [], i
        while j:
            digits.append(j % p)
            j //= p
        if len(digits) > k:
            return
        yield F(digits) if k > 1 else F(i)
        i += 1


@lru_cache(maxsize=None)
def _field_setup(e: int | None, p: int):
    """Pick a finite field, an image of q, and a generic image of rho."""
    if p == 0:
        if e is None:
            P = 2**_EMULATION_BITS - 1
        else:
            step = 2 * e
            P = (2**_EMULATION_BITS // step + 1) * step + 1
            while not _is_prime(P):
                P += step
        k = 1
    else:
        if not _is_prime(p):
            raise DomainError(f"p must be 0 or prime, got {p}")
        P = p
        k = 1
        while True:
            N = p**k - 1
            if e is None:
                if N > 64 * _GENERIC_BOUND:
                    break
            elif e % p != 0:
                ok = N % (2 * e) == 0 or (e % 2 == 1 and N % e == 0)
                if ok and N // (2 if N % 2 == 0 else 1) > e:
                    break
            else:
                raise DomainError(f"no field of characteristic {p} has q^2 of order {e}")
            k += 1
            if k > 40:
                raise DomainError(f"cannot realise e={e} in characteristic {p}")
    F = flint.fq_default_ctx(P, k)
    one = F.one()
    N = P**k - 1
    q_img = None
    if e is None:
        for x in _elements(F, P, k):
            y = x**2
            acc, good = one, True
            for _ in range(_GENERIC_BOUND):
                acc = acc * y
                if acc == one:
                    good = False
                    break
            if good:
                q_img = x
                break
        small = set()
        acc = one
        inv = (q_img**2) ** -1
        acc_up, acc_dn = one, one
        small.add(one)
        for _ in range(_GENERIC_BOUND):
            acc_up = acc_up * q_img**2
            acc_dn = acc_dn * inv
            small.add(acc_up)
            small.add(acc_dn)
        rho_generic = next(x for x in _elements(F, P, k) if x**2 not in small)
    else:
        t = 2 * e if N % (2 * e) == 0 else e
        for x in _elements(F, P, k):
            y = x ** (N // t)
            if _has_order(y, t, one):
                q_img = y
                break
        rho_generic = next(x for x in _elements(F, P, k) if (x**2) ** e != one)
    if q_img is None:
        raise DomainError(f"no suitable q in GF({P}^{k})")
    return P, k, F, q_img, rho_generic


@dataclass(frozen=True)
class SpecializationParams:
    """Target field data: quantum characteristic e, characteristic p, rho.

    ``e=None`` means infinite; ``n=None`` means generic rho, otherwise
    rho = q^n so that rho^2 = q^(2n). For ``p = 0`` the field is a prime
    field of size about 2^61 with ``P = 1 mod 2e``; for ``p > 0`` it is the
    smallest GF(p^k) containing a q with q^2 of order e.
    """

    e: int | None = None
    p: int = 0
    n: int | None = None
    eval_prime: int = field(init=False)
    degree: int = field(init=False)
    q_image: object = field(init=False, compare=False, repr=False)
    rho_image: object = field(init=False, compare=False, repr=False)
    _field: object = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.e is not None and self.e < 2:
            raise DomainError(f"e must be >= 2 or infinite, got {self.e}")
        P, k, F, q_img, rho_gen = _field_setup(self.e, self.p)
        rho = rho_gen if self.n is None else q_img**self.n
        object.__setattr__(self, "eval_prime", P)
        object.__setattr__(self, "degree", k)
        object.__setattr__(self, "q_image", q_img)
        object.__setattr__(self, "rho_image", rho)
        object.__setattr__(self, "_field", F)

    @property
    def field_ctx(self):
        return self._field

    def describe(self) -> str:
        e = "inf" if self.e is None else str(self.e)
        n = "generic" if self.n is None else str(self.n)
        return f"e={e},p={self.p},n={n}"

    def to_json(self) -> dict:
        return {"e": "inf" if self.e is None else self.e, "p": self.p,
                "n": "generic" if self.n is None else self.n,
                "eval_prime": self.eval_prime, "degree": self.degree}


def parse_params(text: str) -> SpecializationParams:
    """Parse ``e=<int|inf>,p=<prime|0>,n=<int|generic>``."""
    vals = {"e": "inf", "p": "0", "n": "generic"}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise DomainError(f"bad parameter {chunk!r}")
        key, val = (s.strip() for s in chunk.split("=", 1))
        if key not in vals:
            raise DomainError(f"unknown parameter {key!r}")
        vals[key] = val
    try:
        e = None if vals["e"] in ("inf", "infinity", "oo") else int(vals["e"])
        p = int(vals["p"])
        n = None if vals["n"] == "generic" else int(vals["n"])
    except ValueError as exc:
        raise DomainError(f"bad parameter value in {text!r}") from exc
    return SpecializationParams(e=e, p=p, n=n)


@dataclass(frozen=True)
class Specialized:
    value: object
    is_zero: bool


def _eval_poly(slices: Mapping[int, list[int]], params: SpecializationParams):
    F = params.field_ctx
    PC = _poly_ctx(F)
    total = F.zero()
    for i, coeffs in slices.items():
        total = total + PC(coeffs)(params.q_image) * params.rho_image**i
    return total


@lru_cache(maxsize=None)
def _poly_ctx(F):
    return flint.fq_default_poly_ctx(F)


def specialize(x, params: SpecializationParams) -> Specialized:
    """Evaluate at ``q = q_image, rho = rho_image``.

    Bracket products are expanded first so that cancellations between
    factors are resolved before any value is computed.
    """
    if isinstance(x, BracketProduct):
        if x.zero_flag:
            return Specialized(params.field_ctx.zero(), True)
        x = expand(x)
    x = as_scalar(x)
    if x.is_zero():
        return Specialized(params.field_ctx.zero(), True)
    num_s, den_s = x._rho_slices()
    den = _eval_poly(den_s, params)
    if den.is_zero():
        raise SpecializationPole(f"denominator vanishes at {params.describe()}")
    num = _eval_poly(num_s, params)
    val = num / den * params.rho_image ** x.unit[0] * params.q_image ** x.unit[1]
    return Specialized(val, val.is_zero())
