"""Finite fields GF(q) and univariate polynomials over them.

Field elements are integers ``0..q-1``.  For an extension field GF(p^m) the
integer ``sum(c_i * p**i)`` stands for the residue polynomial
``c_0 + c_1 t + ... + c_{m-1} t^{m-1}`` modulo the field's modulus, so in
GF(4) with modulus ``X^2 + X + 1`` the element ``t`` is ``2`` and ``t + 1`` is ``3``.

Polynomials store their coefficients low-to-high (index ``i`` holds the
coefficient of ``X^i``) with no trailing zeros.  The zero polynomial has
``coeffs == ()`` and ``degree is None``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .errors import CamocaError, FieldMismatchError, InfeasibleError

DEFAULT_MAX_ORDER = 256
MAX_ENUMERATION = 1 << 20

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def is_prime(n: int) -> bool:
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


def encode_symbols(symbols, q: int) -> str:
    """Render a symbol sequence as a string, one character per symbol.

    Fields larger than 36 elements fall back to dot-separated decimals.
    """
    if q <= len(_DIGITS):
        return "".join(_DIGITS[s] for s in symbols)
    return ".".join(str(s) for s in symbols)


def decode_symbols(text: str, q: int) -> tuple[int, ...]:
    if q <= len(_DIGITS):
        try:
            out = tuple(_DIGITS.index(ch) for ch in text.strip().lower())
        except ValueError:
            raise CamocaError(f"invalid symbol string {text!r}") from None
    else:
        out = tuple(int(tok) for tok in text.split(".")) if text else ()
    if any(not 0 <= s < q for s in out):
        raise CamocaError(f"symbol out of range 0..{q - 1} in {text!r}")
    return out


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^m).  ``modulus`` is a monic irreducible over GF(p) when m > 1."""

    p: int
    m: int = 1
    modulus: Polynomial | None = None

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def elements(self) -> range:
        return range(self.q)

    def check(self, a: int) -> int:
        if not (isinstance(a, int) and 0 <= a < self.q):
            raise CamocaError(f"{a!r} is not an element of GF({self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return _tables(self)[0][a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        return _tables(self)[2][a]

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        return _tables(self)[1][a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.m == 1:
            return pow(a, -1, self.p)
        return _tables(self)[3][a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def __str__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}) mod {self.modulus!r}"

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={self.modulus!r})"


@functools.lru_cache(maxsize=None)
def _tables(field: FieldSpec):
    # add, mul, neg, inv tables for an extension field
    p, m, q = field.p, field.m, field.q
    mod = field.modulus.coeffs

    def digits(a):
        return [(a // p**i) % p for i in range(m)]

    def undigits(ds):
        return sum(c * p**i for i, c in enumerate(ds))

    def polymul(a, b):
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(digits(a)):
            if x:
                for j, y in enumerate(digits(b)):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                for i, mc in enumerate(mod):
                    prod[k - m + i] = (prod[k - m + i] - c * mc) % p
        return undigits(prod[:m])

    add = [[undigits([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q)] for a in range(q)]
    mul = [[polymul(a, b) for b in range(q)] for a in range(q)]
    neg = [undigits([-x % p for x in digits(a)]) for a in range(q)]
    inv = [0] * q
    for a in range(1, q):
        inv[a] = mul[a].index(1)
    return add, mul, neg, inv


def field_make(p: int, m: int = 1, *, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    """Build GF(p^m); extension fields use the lexicographically least irreducible modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise CamocaError(f"characteristic {p!r} is not prime")
    if not isinstance(m, int) or m < 1:
        raise CamocaError(f"extension degree must be >= 1, got {m!r}")
    if p**m > max_order:
        raise InfeasibleError(f"field order {p}^{m} = {p**m} exceeds bound {max_order}")
    if m == 1:
        return FieldSpec(p, 1, None)
    base = FieldSpec(p, 1, None)
    return FieldSpec(p, m, enumerate_irreducibles(base, m)[0])


def field_from_order(q: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    """Build GF(q) for a prime power q."""
    if q < 2:
        raise CamocaError(f"field order must be a prime power, got {q}")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise CamocaError(f"field order {q} is not a prime power")
    return field_make(p, m, max_order=max_order)


def field_check(field: FieldSpec) -> None:
    """Validate a field built by hand (e.g. deserialized): prime p, irreducible modulus."""
    if not is_prime(field.p) or field.m < 1:
        raise CamocaError(f"invalid field parameters p={field.p}, m={field.m}")
    if field.m == 1:
        if field.modulus is not None:
            raise CamocaError("prime field must not carry a modulus")
        return
    mod = field.modulus
    if mod is None or mod.field != FieldSpec(field.p) or mod.degree != field.m or mod.leading != 1:
        raise CamocaError("extension field needs a monic modulus of degree m over GF(p)")
    if not is_irreducible(mod):
        raise CamocaError(f"modulus {mod!r} is reducible")


def field_ops(field: FieldSpec, a: int, b: int | None = None, which: str = "add") -> int:
    """Dispatch one field operation by name (``add``, ``sub``, ``mul``, ``neg``, ``inv``)."""
    field.check(a)
    if which in ("neg", "inv"):
        return field.neg(a) if which == "neg" else field.inv(a)
    if b is None:
        raise CamocaError(f"operation {which!r} needs two operands")
    field.check(b)
    try:
        op = {"add": field.add, "sub": field.sub, "mul": field.mul}[which]
    except KeyError:
        raise CamocaError(f"unknown field operation {which!r}") from None
    return op(a, b)


@dataclass(frozen=True)
class Polynomial:
    field: FieldSpec
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        cs = tuple(self.coeffs)
        for c in cs:
            self.field.check(c)
        n = len(cs)
        while n and cs[n - 1] == 0:
            n -= 1
        object.__setattr__(self, "coeffs", cs[:n])

    @classmethod
    def from_string(cls, field: FieldSpec, text: str) -> Polynomial:
        return cls(field, decode_symbols(text, field.q))

    @classmethod
    def monomial(cls, field: FieldSpec, k: int, c: int = 1) -> Polynomial:
        return cls(field, (0,) * k + (c,))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def monic(self) -> Polynomial:
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic associate")
        inv = self.field.inv(self.leading)
        return Polynomial(self.field, tuple(self.field.mul(c, inv) for c in self.coeffs))

    def _same_field(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatchError(f"polynomials over {self.field} and {other.field}")
        return other

    def __add__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return other
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(f, tuple(f.add(self.coeff(i), other.coeff(i)) for i in range(n)))

    def __neg__(self):
        return Polynomial(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return other
        f = self.field
        if self.is_zero() or other.is_zero():
            return Polynomial(f)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Polynomial(f, tuple(out))

    def __pow__(self, e: int):
        result = Polynomial(self.field, (1,))
        for _ in range(e):
            result = result * self
        return result

    def __divmod__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dd = other.degree
        inv_lead = f.inv(other.leading)
        quot = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c:
                t = f.mul(c, inv_lead)
                quot[k - dd] = t
                for i, oc in enumerate(other.coeffs):
                    rem[k - dd + i] = f.sub(rem[k - dd + i], f.mul(t, oc))
        return Polynomial(f, tuple(quot)), Polynomial(f, tuple(rem[:dd]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __str__(self) -> str:
        return encode_symbols(self.coeffs, self.field.q) if self.coeffs else "0"

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms)


def poly_arith(a: Polynomial, b: Polynomial, which: str):
    """Named ring operation: ``add``, ``mul`` or ``divmod``."""
    if which == "add":
        return a + b
    if which == "mul":
        return a * b
    if which == "divmod":
        return divmod(a, b)
    raise CamocaError(f"unknown polynomial operation {which!r}")


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by Euclid's algorithm."""
    if a.field != b.field:
        raise FieldMismatchError(f"polynomials over {a.field} and {b.field}")
    if a.is_zero() and b.is_zero():
        raise CamocaError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def mobius(n: int) -> int:
    if n < 1:
        raise CamocaError(f"Moebius function needs n >= 1, got {n}")
    result = 1
    f = 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            result = -result
        f += 1
    if n > 1:
        result = -result
    return result


def irreducible_count(field: FieldSpec, r: int) -> int:
    """Number of monic irreducible polynomials of degree r over the field (Gauss's formula)."""
    if r < 1:
        raise CamocaError(f"degree must be >= 1, got {r}")
    total = sum(mobius(t) * field.q ** (r // t) for t in range(1, r + 1) if r % t == 0)
    return total // r


def monic_polynomials(field: FieldSpec, r: int):
    """All monic polynomials of degree r, lexicographic in (c_0, c_1, ..., c_{r-1})."""
    for low in itertools.product(field.elements(), repeat=r):
        yield Polynomial(field, low + (1,))


def is_irreducible(poly: Polynomial) -> bool:
    """Trial division against every monic of degree 1..deg/2."""
    deg = poly.degree
    if deg is None or deg < 1:
        return False
    for r in range(1, deg // 2 + 1):
        for div in monic_polynomials(poly.field, r):
            if (poly % div).is_zero():
                return False
    return True


def enumerate_irreducibles(field: FieldSpec, r: int, *, bound: int = MAX_ENUMERATION) -> list[Polynomial]:
    if r < 1:
        raise CamocaError(f"degree must be >= 1, got {r}")
    if field.q**r > bound:
        raise InfeasibleError(f"enumerating {field.q}^{r} monic polynomials exceeds bound {bound}")
    return [f for f in monic_polynomials(field, r) if is_irreducible(f)]
