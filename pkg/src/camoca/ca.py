"""Local rules and no-boundary cellular automata (NBCA).

A local rule of diameter ``d`` over GF(q) is stored as a lookup table of
``q**d`` outputs.  The neighbourhood ``(x_1, ..., x_d)`` sits at table index
``x_1 + x_2*q + ... + x_d*q**(d-1)``, i.e. the leftmost cell is the
least-significant digit.  Configurations are plain tuples of symbols and use
the same convention when coded as integers (see :func:`config_code`).

An NBCA with ``n`` input cells maps ``x`` to the ``n - d + 1`` outputs
``f(x_i, ..., x_{i+d-1})``; it is applied once, never iterated.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import _kernels
from .errors import CamocaError, InfeasibleError, NotBipermutiveError, NotLinearError
from .gf import FieldSpec, Polynomial, encode_symbols, field_make

Config = tuple[int, ...]


def config_code(x: Sequence[int], q: int) -> int:
    code = 0
    for s in reversed(x):
        code = code * q + s
    return code


def config_from_code(code: int, q: int, n: int) -> Config:
    out = []
    for _ in range(n):
        code, s = divmod(code, q)
        out.append(s)
    return tuple(out)


def all_configs(q: int, n: int):
    """Every configuration of length n, in ascending code order."""
    for code in range(q**n):
        yield config_from_code(code, q, n)


@dataclass(frozen=True)
class LocalRule:
    field: FieldSpec
    d: int
    table: tuple[int, ...]
    linear_coeffs: tuple[int, ...] | None = None

    def __post_init__(self):
        q = self.field.q
        if not isinstance(self.d, int) or self.d < 1:
            raise CamocaError(f"diameter must be >= 1, got {self.d!r}")
        table = tuple(self.table)
        if len(table) != q**self.d:
            raise CamocaError(f"table has {len(table)} entries, expected q^d = {q**self.d}")
        if any(not (isinstance(v, int) and 0 <= v < q) for v in table):
            raise CamocaError(f"table entries must be symbols 0..{q - 1}")
        object.__setattr__(self, "table", table)
        if self.linear_coeffs is not None:
            coeffs = tuple(self.linear_coeffs)
            if len(coeffs) != self.d or _linear_table(self.field, coeffs) != table:
                raise NotLinearError(f"table does not match linear coefficients {coeffs}")
            object.__setattr__(self, "linear_coeffs", coeffs)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def is_linear(self) -> bool:
        return self.linear_coeffs is not None

    def __call__(self, *xs: int) -> int:
        return self.table[config_code(xs, self.field.q)]

    @property
    def name(self) -> str:
        if self.field.q == 2:
            return str(wolfram_code(self))
        return f"q{self.field.q}d{self.d}:{encode_symbols(self.table, self.field.q)}"

    def __repr__(self) -> str:
        return f"LocalRule({self.name})"


def _linear_table(field: FieldSpec, coeffs) -> tuple[int, ...]:
    q, d = field.q, len(coeffs)
    out = []
    for code in range(q**d):
        acc = 0
        for a, x in zip(coeffs, config_from_code(code, q, d)):
            acc = field.add(acc, field.mul(a, x))
        out.append(acc)
    return tuple(out)


def _detect_linear(field: FieldSpec, d: int, table: tuple[int, ...]):
    q = field.q
    coeffs = tuple(table[q**i] for i in range(d))
    if _linear_table(field, coeffs) == table:
        return coeffs
    return None


def rule_from_table(field: FieldSpec, d: int, table: Sequence[int]) -> LocalRule:
    """Wrap a lookup table; linear coefficients are attached when the table is linear."""
    rule = LocalRule(field, d, tuple(table))
    coeffs = _detect_linear(field, d, rule.table)
    if coeffs is None:
        return rule
    return LocalRule(field, d, rule.table, coeffs)


def _wolfram_weight(x: Config) -> int:
    # f(1,...,1) is the most significant bit: x_1 is the high bit of the row number
    w = 0
    for s in x:
        w = 2 * w + s
    return w


def rule_from_wolfram(code: int, d: int = 3) -> LocalRule:
    if d < 1:
        raise CamocaError(f"diameter must be >= 1, got {d}")
    if not 0 <= code < 1 << (1 << d):
        raise CamocaError(f"Wolfram code {code} out of range for d={d}")
    table = [(code >> _wolfram_weight(x)) & 1 for x in all_configs(2, d)]
    return rule_from_table(field_make(2), d, table)


def wolfram_code(rule: LocalRule) -> int:
    if rule.field.q != 2:
        raise CamocaError("Wolfram codes are defined for binary rules only")
    return sum(v << _wolfram_weight(x) for x, v in zip(all_configs(2, rule.d), rule.table))


def rule_from_polynomial(field: FieldSpec, coeffs: Sequence[int]) -> LocalRule:
    """Linear rule ``a_1 x_1 + ... + a_d x_d`` from its coefficients (low-to-high)."""
    coeffs = tuple(coeffs)
    if not coeffs:
        raise CamocaError("empty coefficient list")
    for a in coeffs:
        field.check(a)
    return LocalRule(field, len(coeffs), _linear_table(field, coeffs), coeffs)


def associated_polynomial(rule: LocalRule) -> Polynomial:
    """``a_1 + a_2 X + ... + a_d X^(d-1)`` for a linear rule."""
    if rule.linear_coeffs is None:
        raise NotLinearError(f"{rule!r} is not linear")
    return Polynomial(rule.field, rule.linear_coeffs)


class OpCounter:
    """Tally of local-rule evaluations, for complexity accounting."""

    def __init__(self):
        self.evaluations = 0

    def add(self, k: int = 1) -> None:
        self.evaluations += k

    def __repr__(self) -> str:
        return f"OpCounter(evaluations={self.evaluations})"


def check_config(rule: LocalRule, x: Sequence[int]) -> Config:
    x = tuple(x)
    if any(not (isinstance(s, int) and 0 <= s < rule.field.q) for s in x):
        raise CamocaError(f"configuration {x} has symbols outside 0..{rule.field.q - 1}")
    return x


def evaluate(rule: LocalRule, x: Sequence[int], counter: OpCounter | None = None) -> Config:
    x = check_config(rule, x)
    d = rule.d
    if len(x) < d:
        raise CamocaError(f"configuration of length {len(x)} is shorter than the diameter {d}")
    if counter is not None:
        counter.add(len(x) - d + 1)
    q, table = rule.field.q, rule.table
    return tuple(table[config_code(x[i:i + d], q)] for i in range(len(x) - d + 1))


def evaluate_codes(rule: LocalRule, n: int, codes) -> list[int]:
    """Batch form of :func:`evaluate` over integer-coded configurations."""
    if n < rule.d:
        raise CamocaError(f"input length {n} is shorter than the diameter {rule.d}")
    return _kernels.evaluate_codes(rule.table, rule.field.q, rule.d, n, codes)


def evaluate_all(rule: LocalRule, n: int) -> list[int]:
    """Output code of every length-n input, indexed by input code."""
    return evaluate_codes(rule, n, range(rule.field.q**n))


class Permutivity(NamedTuple):
    leftmost: bool
    rightmost: bool

    @property
    def bipermutive(self) -> bool:
        return self.leftmost and self.rightmost


def permutivity(rule: LocalRule) -> Permutivity:
    q, d, t = rule.field.q, rule.d, rule.table
    top = q ** (d - 1)
    full = set(range(q))
    left = all({t[x1 + q * rest] for x1 in range(q)} == full for rest in range(top))
    right = all({t[prefix + top * xd] for xd in range(q)} == full for prefix in range(top))
    return Permutivity(left, right)


def is_bipermutive(rule: LocalRule) -> bool:
    return permutivity(rule).bipermutive


def require_bipermutive(rule: LocalRule) -> None:
    if not is_bipermutive(rule):
        raise NotBipermutiveError(f"{rule!r} is not bipermutive")


def generating_function(rule: LocalRule) -> LocalRule:
    """The g in ``f = x_1 xor g(x_2..x_{d-1}) xor x_d`` for a binary bipermutive f."""
    if rule.field.q != 2:
        raise CamocaError("generating functions are defined for binary rules only")
    if rule.d < 3:
        raise CamocaError("generating function needs diameter >= 3")
    require_bipermutive(rule)
    # g(y) = f(0, y, 0)
    inner = [rule.table[2 * y] for y in range(2 ** (rule.d - 2))]
    return rule_from_table(rule.field, rule.d - 2, inner)


def transition_matrix(rule: LocalRule, n: int) -> tuple[tuple[int, ...], ...]:
    if rule.linear_coeffs is None:
        raise NotLinearError(f"{rule!r} is not linear")
    d = rule.d
    if n < d:
        raise CamocaError(f"input length {n} is shorter than the diameter {d}")
    return tuple(
        tuple(rule.linear_coeffs[c - i] if i <= c < i + d else 0 for c in range(n))
        for i in range(n - d + 1)
    )


def matvec(field: FieldSpec, matrix, x: Sequence[int]) -> Config:
    out = []
    for row in matrix:
        acc = 0
        for a, s in zip(row, x):
            acc = field.add(acc, field.mul(a, s))
        out.append(acc)
    return tuple(out)


def bipermutive_rules(field: FieldSpec, d: int, *, bound: int = 1 << 16):
    """Every bipermutive rule of diameter d, in ascending table order.

    Binary rules with d >= 3 come from their generating functions and are
    sorted by Wolfram code; otherwise every lookup table is scanned, so
    ``q ** (q ** d)`` must stay within ``bound``.
    """
    q = field.q
    if q == 2 and d >= 3:
        if 2 ** (2 ** (d - 2)) > bound:
            raise InfeasibleError(f"too many bipermutive rules for q=2, d={d}")
        rules = []
        for inner in itertools.product((0, 1), repeat=2 ** (d - 2)):
            table = []
            for code in range(2**d):
                x1, xd = code & 1, code >> (d - 1)
                table.append(x1 ^ inner[(code >> 1) & ((1 << (d - 2)) - 1)] ^ xd)
            rules.append(rule_from_table(field, d, table))
        rules.sort(key=wolfram_code)
        return rules
    if q ** (q**d) > bound:
        raise InfeasibleError(f"enumerating {q}^({q}^{d}) lookup tables exceeds bound {bound}")
    out = []
    for table in itertools.product(range(q), repeat=q**d):
        rule = LocalRule(field, d, table[::-1])
        if is_bipermutive(rule):
            out.append(rule_from_table(field, d, rule.table))
    out.sort(key=wolfram_code if q == 2 else (lambda r: r.table[::-1]))
    return out
