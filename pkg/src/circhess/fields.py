"""Exact field arithmetic: rationals, prime fields, and quotient extensions.

A FieldSpec describes a field and implements all arithmetic on raw payloads:

    Rationals          -> fractions.Fraction
    PrimeField(p)      -> int in [0, p)
    QuotientExtension  -> tuple of base payloads, length deg(modulus)

FieldElement is a thin wrapper pairing a payload with its spec.  Elements of
different fields never mix (MixedFieldsError); there is no coercion between
fields, only embedding of plain integers.  All arithmetic is exact; equality
is structural equality of canonical payloads.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from .errors import (
    DivisionByZeroError,
    MixedFieldsError,
    NoSuchRootError,
    NotPrimeError,
    ParseError,
    ReducibleModulusError,
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FieldSpec:
    """Common payload-level interface; concrete fields subclass this."""

    characteristic: int

    # payload-level arithmetic -------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def dot(self, xs, ys):
        """Sum of products; matrix multiplication hot path."""
        acc = self.zero
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc

    def is_zero(self, a) -> bool:
        return a == self.zero

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    @property
    def order(self) -> int | None:
        """Number of elements, or None for infinite fields."""
        raise NotImplementedError

    def element_payloads(self) -> Iterator:
        raise NotImplementedError("only finite fields enumerate elements")

    def from_int(self, k: int):
        raise NotImplementedError

    def render(self, a) -> str:
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    # element-level conveniences ------------------------------------------
    def element(self, x) -> "FieldElement":
        """Build a FieldElement from an int, Fraction, canonical string, or
        an existing element of this same field."""
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise MixedFieldsError(f"element of {x.spec} used in {self}")
            return x
        if isinstance(x, bool):
            raise ParseError("bool is not a field element")
        if isinstance(x, int):
            return FieldElement(self, self.from_int(x))
        if isinstance(x, Fraction):
            num = self.from_int(x.numerator)
            den = self.from_int(x.denominator)
            return FieldElement(self, self.div(num, den))
        if isinstance(x, str):
            return FieldElement(self, self.parse(x))
        raise ParseError(f"cannot interpret {x!r} as an element of {self}")

    def zero_element(self) -> "FieldElement":
        return FieldElement(self, self.zero)

    def one_element(self) -> "FieldElement":
        return FieldElement(self, self.one)

    def elements(self) -> Iterator["FieldElement"]:
        for p in self.element_payloads():
            yield FieldElement(self, p)

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(FieldSpec):
    """The field of arbitrary-precision rationals."""

    characteristic: int = field(default=0, init=False)

    @property
    def zero(self):
        return _F0

    @property
    def one(self):
        return _F1

    @property
    def order(self):
        return None

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZeroError("inverse of 0 in QQ")
        return 1 / a

    def dot(self, xs, ys):
        return sum((x * y for x, y in zip(xs, ys)), _F0)

    def from_int(self, k: int):
        return Fraction(k)

    def render(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational {s!r}") from e

    def __str__(self):
        return "QQ"

    def to_json(self) -> dict:
        return {"kind": "rationals"}


_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class PrimeField(FieldSpec):
    """GF(p) for a prime p, residues stored as ints in [0, p)."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise NotPrimeError(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def order(self):
        return self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZeroError(f"inverse of 0 in GF({self.p})")
        return pow(a, -1, self.p)

    def dot(self, xs, ys):
        return sum(map(int.__mul__, xs, ys)) % self.p

    def element_payloads(self):
        return iter(range(self.p))

    def from_int(self, k: int):
        return k % self.p

    def render(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        try:
            k = int(s)
        except ValueError as e:
            raise ParseError(f"bad GF({self.p}) element {s!r}") from e
        if not 0 <= k < self.p:
            raise ParseError(f"{s!r} out of range for GF({self.p})")
        return k

    def __str__(self):
        return f"GF({self.p})"

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p}


@dataclass(frozen=True)
class QuotientExtension(FieldSpec):
    """base[x]/(m(x)) for a monic irreducible m of degree >= 2.

    The modulus is stored low-to-high including the leading 1.  Payloads are
    tuples of base payloads of length deg(m).  Irreducibility is certified by
    exhaustive root/factor search over finite bases and by a rational-root
    test over QQ; degree >= 4 moduli over QQ are accepted only on the
    documented cyclotomic path (cyclotomic polynomials are irreducible).
    """

    base: FieldSpec
    modulus: tuple
    gen: str = "t"
    assume_irreducible: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.deg < 2:
            raise ReducibleModulusError("modulus degree must be >= 2")
        if self.modulus[-1] != self.base.one:
            raise ReducibleModulusError("modulus must be monic")
        if not self.assume_irreducible:
            self._check_irreducible()

    @property
    def deg(self) -> int:
        return len(self.modulus) - 1

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def zero(self):
        return self._zero_payload

    @property
    def one(self):
        return self._one_payload

    @cached_property
    def _zero_payload(self):
        return (self.base.zero,) * self.deg

    @cached_property
    def _one_payload(self):
        return (self.base.one,) + (self.base.zero,) * (self.deg - 1)

    @property
    def order(self):
        bo = self.base.order
        return None if bo is None else bo ** self.deg

    @cached_property
    def generator_payload(self):
        return tuple(
            self.base.one if i == 1 else self.base.zero for i in range(self.deg)
        )

    def generator(self) -> "FieldElement":
        return FieldElement(self, self.generator_payload)

    # reduction of x^(deg+e) mod modulus, precomputed
    @cached_property
    def _red_rows(self):
        b = self.base
        k = self.deg
        rows = []
        # x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
        cur = [b.neg(c) for c in self.modulus[:k]]
        rows.append(tuple(cur))
        for _ in range(k - 2):
            top = cur[-1]
            cur = [b.zero] + cur[:-1]
            if not b.is_zero(top):
                cur = [b.add(c, b.mul(top, r)) for c, r in zip(cur, rows[0])]
            rows.append(tuple(cur))
        return rows

    def _reduce(self, conv):
        # conv has length <= 2*deg - 1, low-to-high
        b = self.base
        k = self.deg
        out = list(conv[:k]) + [b.zero] * (k - len(conv[:k]))
        for e, c in enumerate(conv[k:]):
            if b.is_zero(c):
                continue
            row = self._red_rows[e]
            out = [b.add(o, b.mul(c, r)) for o, r in zip(out, row)]
        return tuple(out)

    def add(self, a, b):
        ba = self.base
        return tuple(ba.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        ba = self.base
        return tuple(ba.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        ba = self.base
        return tuple(ba.neg(x) for x in a)

    def mul(self, a, b):
        ba = self.base
        k = self.deg
        conv = [ba.zero] * (2 * k - 1)
        for i, x in enumerate(a):
            if ba.is_zero(x):
                continue
            for j, y in enumerate(b):
                conv[i + j] = ba.add(conv[i + j], ba.mul(x, y))
        return self._reduce(conv)

    def dot(self, xs, ys):
        ba = self.base
        k = self.deg
        conv = [ba.zero] * (2 * k - 1)
        for x, y in zip(xs, ys):
            for i, xi in enumerate(x):
                if ba.is_zero(xi):
                    continue
                for j, yj in enumerate(y):
                    conv[i + j] = ba.add(conv[i + j], ba.mul(xi, yj))
        return self._reduce(conv)

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZeroError(f"inverse of 0 in {self}")
        # extended Euclid over base[x]: g = s*a + t*m with g constant
        b = self.base
        r0, r1 = list(self.modulus), _poly_trim(list(a), b)
        s0, s1 = [b.zero], [b.one]
        while _poly_deg(r1, b) > 0:
            q, r = _poly_divmod(r0, r1, b)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, b), b)
        if _poly_deg(r1, b) < 0:
            raise ReducibleModulusError(
                f"zero divisor mod {self._modulus_str()}: modulus not irreducible"
            )
        c = b.inv(r1[0])
        s1 = [b.mul(c, x) for x in s1]
        s1 = s1[: self.deg] + [b.zero] * max(0, self.deg - len(s1))
        return tuple(s1)

    def is_zero(self, a) -> bool:
        ba = self.base
        return all(ba.is_zero(x) for x in a)

    def element_payloads(self):
        base_payloads = list(self.base.element_payloads())
        # fixed lexicographic order so searches are deterministic
        for combo in itertools.product(base_payloads, repeat=self.deg):
            yield tuple(combo)

    def from_int(self, k: int):
        return (self.base.from_int(k),) + (self.base.zero,) * (self.deg - 1)

    def embed(self, base_payload):
        """Embed a base-field payload as a constant of the extension."""
        return (base_payload,) + (self.base.zero,) * (self.deg - 1)

    def render(self, a) -> str:
        parts = []
        wrap = isinstance(self.base, QuotientExtension)
        for i, c in enumerate(a):
            cs = self.base.render(c)
            if wrap:
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            elif i == 1:
                parts.append(f"{cs}*{self.gen}")
            else:
                parts.append(f"{cs}*{self.gen}^{i}")
        return "+".join(parts)

    def parse(self, s: str):
        terms = _split_top_level(s)
        if len(terms) != len(self._zero_payload):
            raise ParseError(
                f"expected {self.deg} coefficients for {self}, got {len(terms)}"
            )
        coeffs = []
        for i, t in enumerate(terms):
            if i == 0:
                cs = t
            else:
                suffix = f"*{self.gen}" if i == 1 else f"*{self.gen}^{i}"
                if not t.endswith(suffix):
                    raise ParseError(f"term {t!r} lacks suffix {suffix!r}")
                cs = t[: -len(suffix)]
            if cs.startswith("(") and cs.endswith(")"):
                cs = cs[1:-1]
            coeffs.append(self.base.parse(cs))
        return tuple(coeffs)

    def _modulus_str(self) -> str:
        return "[" + ",".join(self.base.render(c) for c in self.modulus) + "]"

    def __str__(self):
        return f"{self.base}[{self.gen}]/{self._modulus_str()}"

    def to_json(self) -> dict:
        return {
            "kind": "extension",
            "base": self.base.to_json(),
            "modulus": [self.base.render(c) for c in self.modulus],
            "generator": self.gen,
        }

    def _check_irreducible(self):
        b = self.base
        m = list(self.modulus)
        if b.order is not None:
            # finite base: exhaustive root search, then factor search
            for x in b.element_payloads():
                if b.is_zero(_poly_eval(m, x, b)):
                    raise ReducibleModulusError(
                        f"modulus {self._modulus_str()} has root {b.render(x)}"
                    )
            for degf in range(2, self.deg // 2 + 1):
                if b.order ** degf > 200_000:
                    raise ReducibleModulusError(
                        "factor search budget exceeded; cannot certify modulus"
                    )
                for tail in itertools.product(b.element_payloads(), repeat=degf):
                    f = list(tail) + [b.one]
                    _, r = _poly_divmod(m, f, b)
                    if _poly_deg(r, b) < 0:
                        raise ReducibleModulusError(
                            f"modulus {self._modulus_str()} divisible by a "
                            f"degree-{degf} factor"
                        )
        elif isinstance(b, Rationals):
            if _rational_root_exists(m):
                raise ReducibleModulusError(
                    f"modulus {self._modulus_str()} has a rational root"
                )
            if self.deg > 3:
                raise ReducibleModulusError(
                    "cannot certify irreducibility of degree > 3 over QQ; "
                    "use cyclotomic_field for cyclotomic moduli"
                )
        else:
            raise ReducibleModulusError(
                "cannot certify irreducibility over this base field"
            )


# --- polynomial helpers on low-to-high payload lists -------------------------

def _poly_trim(p, b):
    while p and b.is_zero(p[-1]):
        p.pop()
    return p


def _poly_deg(p, b) -> int:
    p = _poly_trim(list(p), b)
    return len(p) - 1


def _poly_sub(p, q, b):
    n = max(len(p), len(q))
    p = list(p) + [b.zero] * (n - len(p))
    q = list(q) + [b.zero] * (n - len(q))
    return _poly_trim([b.sub(x, y) for x, y in zip(p, q)], b)


def _poly_mul(p, q, b):
    if not p or not q:
        return []
    out = [b.zero] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if b.is_zero(x):
            continue
        for j, y in enumerate(q):
            out[i + j] = b.add(out[i + j], b.mul(x, y))
    return _poly_trim(out, b)


def _poly_divmod(p, q, b):
    p = _poly_trim(list(p), b)
    q = _poly_trim(list(q), b)
    if not q:
        raise DivisionByZeroError("polynomial division by zero")
    inv_lead = b.inv(q[-1])
    quot = [b.zero] * max(0, len(p) - len(q) + 1)
    rem = list(p)
    while len(rem) >= len(q) and rem:
        c = b.mul(rem[-1], inv_lead)
        k = len(rem) - len(q)
        quot[k] = c
        for i, y in enumerate(q):
            rem[k + i] = b.sub(rem[k + i], b.mul(c, y))
        rem = _poly_trim(rem, b)
    return _poly_trim(quot, b), rem


def _poly_eval(p, x, b):
    acc = b.zero
    for c in reversed(p):
        acc = b.add(b.mul(acc, x), c)
    return acc


def _rational_root_exists(m) -> bool:
    # clear denominators; candidates +-(divisor of a0)/(divisor of an)
    lcm = 1
    for c in m:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    zs = [int(c * lcm) for c in m]
    if zs and zs[0] == 0:
        return True  # x = 0 is a root
    a0, an = abs(zs[0]), abs(zs[-1])

    def divisors(n):
        out = []
        f = 1
        while f * f <= n:
            if n % f == 0:
                out.append(f)
                out.append(n // f)
            f += 1
        return sorted(set(out))

    for num in divisors(a0):
        for den in divisors(an):
            for sgn in (1, -1):
                x = Fraction(sgn * num, den)
                if sum(c * x**i for i, c in enumerate(zs)) == 0:
                    return True
    return False


def _split_top_level(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0 and cur:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


# --- elements ----------------------------------------------------------------

class FieldElement:
    """An exact element of a field, compared structurally."""

    __slots__ = ("spec", "payload")

    def __init__(self, spec: FieldSpec, payload):
        self.spec = spec
        self.payload = payload

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise MixedFieldsError(
                    f"cannot mix elements of {self.spec} and {other.spec}"
                )
            return other.payload
        if isinstance(other, int) and not isinstance(other, bool):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.add(self.payload, p))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(self.payload, p))

    def __rsub__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(p, self.payload))

    def __mul__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul(self.payload, p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return NotImplemented
        if self.spec.is_zero(p):
            raise DivisionByZeroError(f"division by zero in {self.spec}")
        return FieldElement(self.spec, self.spec.div(self.payload, p))

    def __rtruediv__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return NotImplemented
        if self.spec.is_zero(self.payload):
            raise DivisionByZeroError(f"division by zero in {self.spec}")
        return FieldElement(self.spec, self.spec.div(p, self.payload))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.payload))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        spec = self.spec
        base = self.payload
        if n < 0:
            if spec.is_zero(base):
                raise DivisionByZeroError(f"0**{n} in {spec}")
            base = spec.inv(base)
            n = -n
        acc = spec.one
        while n:
            if n & 1:
                acc = spec.mul(acc, base)
            base = spec.mul(base, base)
            n >>= 1
        return FieldElement(spec, acc)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.payload))

    def is_zero(self) -> bool:
        return self.spec.is_zero(self.payload)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.payload == other.payload
        if isinstance(other, int) and not isinstance(other, bool):
            return self.payload == self.spec.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.payload))

    def __str__(self):
        return self.spec.render(self.payload)

    def __repr__(self):
        return f"<{self.spec.render(self.payload)} in {self.spec}>"

    def lift(self, ext: QuotientExtension) -> "FieldElement":
        """Embed this element into a quotient extension of its own field."""
        if ext.base != self.spec:
            raise MixedFieldsError(f"{ext} does not extend {self.spec}")
        return FieldElement(ext, ext.embed(self.payload))


# --- constructors and roots of unity -----------------------------------------

def rationals() -> Rationals:
    return Rationals()


def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


def quotient_extension(base: FieldSpec, modulus, gen: str = "t") -> QuotientExtension:
    """Build base[x]/(m).  `modulus` is a low-to-high list of ints, Fractions,
    payloads, or base elements, with leading coefficient 1."""
    coeffs = []
    for c in modulus:
        if isinstance(c, FieldElement):
            coeffs.append(base.element(c).payload)
        elif isinstance(c, (int, Fraction, str)):
            coeffs.append(base.element(c).payload)
        else:
            coeffs.append(c)
    return QuotientExtension(base, tuple(coeffs), gen)


def euler_phi(n: int) -> int:
    out = n
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            out -= out // f
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out -= out // m
    return out


def cyclotomic_polynomial(n: int) -> list[Fraction]:
    """Coefficients (low-to-high) of the n-th cyclotomic polynomial,
    computed by the recursive quotient of x^n - 1."""
    b = Rationals()
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    den = [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d), b)
    quot, rem = _poly_divmod(num, den, b)
    if rem:
        raise ReducibleModulusError(f"cyclotomic division left a remainder for n={n}")
    return quot


def cyclotomic_field(n: int, gen: str = "t") -> QuotientExtension:
    """QQ[t]/(Phi_n); the generator is a primitive n-th root of unity.

    Irreducibility of cyclotomic polynomials over QQ is taken as known; the
    degree is still cross-checked against Euler's totient, and a rational
    root test is run as a sanity check.
    """
    if n < 3:
        raise NoSuchRootError("cyclotomic extensions need n >= 3")
    phi = cyclotomic_polynomial(n)
    if len(phi) - 1 != euler_phi(n):
        raise ReducibleModulusError(f"Phi_{n} degree != euler_phi({n})")
    if _rational_root_exists(phi):
        raise ReducibleModulusError(f"Phi_{n} unexpectedly has a rational root")
    return QuotientExtension(Rationals(), tuple(phi), gen, assume_irreducible=True)


def _prime_divisors(n: int) -> list[int]:
    out = []
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def primitive_root_of_unity(
    spec: FieldSpec, n: int, allow_extension: bool = False
) -> FieldElement:
    """Return q with q^n = 1 and q^k != 1 for 1 <= k < n.

    Finite fields are searched exhaustively over the multiplicative group,
    in the field's canonical enumeration order.  Over QQ a fresh cyclotomic
    extension is constructed and its generator returned.  When n does not
    divide the group order and allow_extension is set, the smallest quotient
    extension containing such a root is constructed (prime-field base only).
    """
    if n < 2:
        raise NoSuchRootError("n must be >= 2")
    if isinstance(spec, Rationals):
        return cyclotomic_field(n).generator()
    if spec.order is None:
        # infinite extension (cyclotomic over QQ): look among generator powers
        if isinstance(spec, QuotientExtension):
            g = spec.generator()
            m = _generator_order(spec)
            if m is not None and m % n == 0:
                return g ** (m // n)
        raise NoSuchRootError(f"no primitive {n}-th root found in {spec}")
    group = spec.order - 1
    if group % n == 0:
        pds = _prime_divisors(n)
        for p in spec.element_payloads():
            if spec.is_zero(p):
                continue
            e = FieldElement(spec, p)
            if (e**n).payload != spec.one:
                continue
            if all((e ** (n // pd)).payload != spec.one for pd in pds):
                return e
        raise NoSuchRootError(f"no element of order {n} in {spec}")
    if not allow_extension:
        raise NoSuchRootError(
            f"{n} does not divide |{spec}^x| = {group} "
            "(extension construction disabled)"
        )
    if not isinstance(spec, PrimeField):
        raise NoSuchRootError("extension search supported over prime fields only")
    p = spec.p
    for k in range(2, 9):
        if (p**k - 1) % n == 0:
            ext = _find_extension_field(spec, k)
            return primitive_root_of_unity(ext, n)
    raise NoSuchRootError(f"no GF({p}^k) with k <= 8 contains an order-{n} root")


def _generator_order(spec: QuotientExtension) -> int | None:
    """Order of the generator when it is a root of unity (None otherwise)."""
    g = spec.generator_payload
    acc = g
    for k in range(1, 4 * spec.deg + 16):
        if acc == spec.one:
            return k
        acc = spec.mul(acc, g)
    return None


def _find_extension_field(base: PrimeField, k: int) -> QuotientExtension:
    """Smallest-lexicographic monic irreducible of degree k over GF(p)."""
    for tail in itertools.product(range(base.p), repeat=k):
        coeffs = tuple(tail) + (1,)
        try:
            return QuotientExtension(base, coeffs, gen="s")
        except ReducibleModulusError:
            continue
    raise NoSuchRootError(f"no irreducible of degree {k} over {base}")


# --- descriptors --------------------------------------------------------------

def field_from_string(s: str) -> FieldSpec:
    """Parse the CLI field grammar: rat | gf:p | ext:gf:p:c0,c1,... | cyclo:n."""
    parts = s.strip().split(":")
    try:
        if parts == ["rat"]:
            return Rationals()
        if parts[0] == "gf" and len(parts) == 2:
            return PrimeField(int(parts[1]))
        if parts[0] == "ext" and len(parts) == 4 and parts[1] == "gf":
            base = PrimeField(int(parts[2]))
            coeffs = [int(c) for c in parts[3].split(",")]
            return quotient_extension(base, coeffs, gen="w")
        if parts[0] == "cyclo" and len(parts) == 2:
            return cyclotomic_field(int(parts[1]))
    except (ValueError, NotPrimeError, ReducibleModulusError, NoSuchRootError) as e:
        raise ParseError(f"bad field descriptor {s!r}: {e}") from e
    raise ParseError(f"bad field descriptor {s!r}")


def field_to_string(spec: FieldSpec) -> str:
    if isinstance(spec, Rationals):
        return "rat"
    if isinstance(spec, PrimeField):
        return f"gf:{spec.p}"
    if isinstance(spec, QuotientExtension):
        if isinstance(spec.base, PrimeField):
            coeffs = ",".join(spec.base.render(c) for c in spec.modulus)
            return f"ext:gf:{spec.base.p}:{coeffs}"
        if isinstance(spec.base, Rationals):
            # recognize cyclotomic by generator order
            m = _generator_order(spec)
            if m is not None and list(spec.modulus) == cyclotomic_polynomial(m):
                return f"cyclo:{m}"
    raise ParseError(f"no string form for {spec}")


def field_from_json(d: dict) -> FieldSpec:
    kind = d.get("kind")
    if kind == "rationals":
        return Rationals()
    if kind == "prime":
        return PrimeField(int(d["p"]))
    if kind == "extension":
        base = field_from_json(d["base"])
        coeffs = tuple(base.parse(c) for c in d["modulus"])
        known_cyclo = False
        if isinstance(base, Rationals):
            n = len(coeffs) - 1
            # accept cyclotomic moduli of any degree by recomputing them
            for cand in range(3, 4 * n + 20):
                if euler_phi(cand) == n and tuple(cyclotomic_polynomial(cand)) == coeffs:
                    known_cyclo = True
                    break
        return QuotientExtension(
            base, coeffs, d.get("generator", "t"), assume_irreducible=known_cyclo
        )
    raise ParseError(f"bad field JSON {d!r}")
