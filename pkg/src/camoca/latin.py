"""Latin squares generated by bipermutive CA, and orthogonal families of them.

Words of length ``d - 1`` are numbered ``1..N`` (``N = q**(d-1)``) with the
leftmost symbol least significant, so for q = 2, d = 3 the order is
``00, 10, 01, 11``.  The Cayley table of an NBCA on ``2(d-1)`` cells has the
left half of the input as its row and the right half as its column.  Cells are
numbered ``1..N**2`` row by row.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import _kernels
from .ca import (
    Config,
    LocalRule,
    associated_polynomial,
    bipermutive_rules,
    config_code,
    config_from_code,
    evaluate_codes,
    is_bipermutive,
    require_bipermutive,
    rule_from_polynomial,
)
from .debruijn import preimages
from .errors import CamocaError, InfeasibleError, NotLinearError, NotOrthogonalError
from .gf import FieldSpec, Polynomial, enumerate_irreducibles, irreducible_count, poly_gcd

SEARCH_BOUND = 1 << 16
CANDIDATE_BOUND = 1 << 12


@dataclass(frozen=True)
class IndexCodec:
    q: int
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise CamocaError("index codec needs d >= 2")

    @property
    def N(self) -> int:
        return self.q ** (self.d - 1)

    def phi(self, word: Sequence[int]) -> int:
        if len(word) != self.d - 1:
            raise CamocaError(f"word {tuple(word)} does not have length {self.d - 1}")
        return 1 + config_code(word, self.q)

    def psi(self, i: int) -> Config:
        if not 1 <= i <= self.N:
            raise CamocaError(f"index {i} outside 1..{self.N}")
        return config_from_code(i - 1, self.q, self.d - 1)

    def pair(self, i: int, j: int) -> int:
        if not (1 <= i <= self.N and 1 <= j <= self.N):
            raise CamocaError(f"pair ({i}, {j}) outside [{self.N}]x[{self.N}]")
        return self.N * (i - 1) + j

    def unpair(self, k: int) -> tuple[int, int]:
        if not 1 <= k <= self.N**2:
            raise CamocaError(f"cell index {k} outside 1..{self.N**2}")
        i, j = divmod(k - 1, self.N)
        return i + 1, j + 1

    def cell_config(self, k: int) -> Config:
        """The input ``psi(i) || psi(j)`` sitting at cell k = (i, j)."""
        i, j = self.unpair(k)
        return self.psi(i) + self.psi(j)

    def config_cell(self, x: Sequence[int]) -> int:
        h = self.d - 1
        if len(x) != 2 * h:
            raise CamocaError(f"configuration {tuple(x)} does not have length {2 * h}")
        return self.pair(self.phi(x[:h]), self.phi(x[h:]))


def index_codec(field: FieldSpec, d: int) -> IndexCodec:
    return IndexCodec(field.q, d)


def _as_rows(matrix) -> tuple[tuple[int, ...], ...]:
    if isinstance(matrix, LatinSquare):
        return matrix.entries
    rows = tuple(tuple(r) for r in matrix)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise CamocaError("a Latin square must be a non-empty square matrix")
    if any(not isinstance(v, int) for r in rows for v in r):
        raise CamocaError("Latin square entries must be integers")
    return rows


def is_latin(matrix) -> bool:
    rows = _as_rows(matrix)
    n = len(rows)
    return _kernels.is_latin_flat([v for r in rows for v in r], n)


@dataclass(frozen=True)
class LatinSquare:
    entries: tuple[tuple[int, ...], ...]
    rule: LocalRule | None = None

    def __post_init__(self):
        rows = _as_rows(self.entries)
        object.__setattr__(self, "entries", rows)
        if not is_latin(rows):
            raise CamocaError("rows and columns must be permutations of 1..N")

    @property
    def N(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def flat(self) -> list[int]:
        return [v for r in self.entries for v in r]

    def transpose(self) -> LatinSquare:
        return LatinSquare(tuple(zip(*self.entries)))

    def render(self) -> str:
        width = len(str(self.N))
        return "\n".join(" ".join(f"{v:>{width}}" for v in row) for row in self.entries)


def cayley_table(rule: LocalRule) -> LatinSquare:
    """``C(i, j) = phi(F(psi(i) || psi(j)))`` for the NBCA on 2(d-1) cells."""
    if rule.d < 2:
        raise CamocaError("Cayley tables need diameter >= 2")
    require_bipermutive(rule)
    n = rule.field.q ** (rule.d - 1)
    # input code of psi(i)||psi(j) is (i-1) + n*(j-1)
    codes = [i + n * j for i in range(n) for j in range(n)]
    out = evaluate_codes(rule, 2 * (rule.d - 1), codes)
    rows = tuple(tuple(v + 1 for v in out[i * n:(i + 1) * n]) for i in range(n))
    return LatinSquare(rows, rule)


def are_orthogonal(sq1, sq2) -> bool:
    a, b = _as_rows(sq1), _as_rows(sq2)
    if len(a) != len(b):
        raise CamocaError(f"orders differ: {len(a)} vs {len(b)}")
    n = len(a)
    return _kernels.superposition_distinct([v for r in a for v in r], [v for r in b for v in r], n)


def orthogonal_by_gcd(rule_f: LocalRule, rule_g: LocalRule) -> bool:
    """Orthogonality of two linear bipermutive rules via coprimality of their polynomials."""
    for r in (rule_f, rule_g):
        if not r.is_linear:
            raise NotLinearError(f"{r!r} is not linear")
        require_bipermutive(r)
    if rule_f.field != rule_g.field or rule_f.d != rule_g.d:
        raise CamocaError("rules must share field and diameter")
    return poly_gcd(associated_polynomial(rule_f), associated_polynomial(rule_g)).degree == 0


def orthogonal_rules(rule_f: LocalRule, rule_g: LocalRule) -> bool:
    """gcd test when both rules are linear, superposition scan otherwise."""
    if rule_f.is_linear and rule_g.is_linear:
        return orthogonal_by_gcd(rule_f, rule_g)
    return are_orthogonal(cayley_table(rule_f), cayley_table(rule_g))


@dataclass(frozen=True)
class MocaFamily:
    field: FieldSpec
    d: int
    rules: tuple[LocalRule, ...]
    squares: tuple[LatinSquare, ...]

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def codec(self) -> IndexCodec:
        return IndexCodec(self.field.q, self.d)

    def names(self) -> list[str]:
        return [r.name for r in self.rules]


def family_problems(rules: Sequence[LocalRule]) -> list[str]:
    """Everything wrong with a would-be family, as human-readable lines (1-based indices)."""
    if not rules:
        return ["family is empty"]
    field, d = rules[0].field, rules[0].d
    problems = []
    for k, r in enumerate(rules, 1):
        if r.field != field or r.d != d:
            problems.append(f"rule {k} has a different field or diameter")
        elif d < 2 or not is_bipermutive(r):
            problems.append(f"rule {k} ({r.name}) is not bipermutive")
    if problems:
        return problems
    squares = [cayley_table(r) for r in rules]
    for a, b in itertools.combinations(range(len(rules)), 2):
        if not is_latin(squares[a]) or not are_orthogonal(squares[a], squares[b]):
            problems.append(f"pair ({a + 1},{b + 1}) not orthogonal")
    return problems


def make_family(rules: Sequence[LocalRule]) -> MocaFamily:
    """Validate and wrap rules as a mutually orthogonal family.

    Linear pairs are checked by gcd, the rest by brute-force superposition;
    the squares are then re-checked by brute force regardless.
    """
    rules = tuple(rules)
    if rules and all(r.is_linear for r in rules):
        for a, b in itertools.combinations(range(len(rules)), 2):
            if rules[a].field == rules[b].field and rules[a].d == rules[b].d:
                if is_bipermutive(rules[a]) and is_bipermutive(rules[b]) and not orthogonal_by_gcd(rules[a], rules[b]):
                    raise NotOrthogonalError(f"pair ({a + 1},{b + 1}) not orthogonal")
    problems = family_problems(rules)
    if problems:
        raise NotOrthogonalError("; ".join(problems))
    return MocaFamily(rules[0].field, rules[0].d, rules, tuple(cayley_table(r) for r in rules))


def _adjusted_count(field: FieldSpec, j: int) -> int:
    # degree-1 irreducibles minus X, which has no constant term
    return field.q - 1 if j == 1 else irreducible_count(field, j)


def max_family_size(field: FieldSpec, k: int) -> int:
    """Largest linear family for polynomial degree k: ``I'_k + sum_{j <= k/2} I'_j``.

    ``I'_j`` counts monic irreducibles of degree j with a nonzero constant term.
    """
    if k < 1:
        raise CamocaError(f"degree must be >= 1, got {k}")
    return _adjusted_count(field, k) + sum(_adjusted_count(field, j) for j in range(1, k // 2 + 1))


def printed_family_size(field: FieldSpec, k: int) -> int:
    """The same sum with unadjusted irreducible counts (X included)."""
    if k < 1:
        raise CamocaError(f"degree must be >= 1, got {k}")
    return irreducible_count(field, k) + sum(irreducible_count(field, j) for j in range(1, k // 2 + 1))


def _candidate_order(field: FieldSpec, k: int) -> list[Polynomial]:
    irr = {j: [p for p in enumerate_irreducibles(field, j) if p.coeff(0) != 0] for j in range(1, k + 1)}
    ordered = list(irr[k])
    for j in range(1, k):
        if k % j == 0:
            ordered.extend(p ** (k // j) for p in irr[j])
    return ordered


def _all_candidates(field: FieldSpec, k: int) -> list[Polynomial]:
    q = field.q
    out = []
    for low in itertools.product(range(q), repeat=k):
        if low[0] != 0:
            out.append(Polynomial(field, low + (1,)))
    return out


def build_mols(field: FieldSpec, d: int, m: int) -> MocaFamily:
    """m linear bipermutive rules with pairwise coprime monic polynomials of degree d-1.

    Irreducibles of degree d-1 come first, then powers of lower-degree
    irreducibles; if that is not enough a backtracking search over all
    admissible polynomials fills the rest.
    """
    if d < 2:
        raise CamocaError("diameter must be >= 2")
    if m < 2:
        raise CamocaError(f"a family needs at least 2 rules, got {m}")
    k = d - 1
    top = max_family_size(field, k)
    if m > top:
        raise InfeasibleError(f"requested {m} rules, maximum is {top}")
    chosen = _candidate_order(field, k)
    if len(chosen) < m:
        chosen = _backtrack(chosen + [p for p in _all_candidates_bounded(field, k) if p not in chosen], m)
    polys = chosen[:m]
    return make_family([rule_from_polynomial(field, p.coeffs) for p in polys])


def _all_candidates_bounded(field: FieldSpec, k: int) -> list[Polynomial]:
    if (field.q - 1) * field.q ** (k - 1) > CANDIDATE_BOUND:
        raise InfeasibleError(f"too many degree-{k} candidates over GF({field.q}) for backtracking")
    return _all_candidates(field, k)


def _backtrack(pool: list[Polynomial], m: int) -> list[Polynomial]:
    picked: list[Polynomial] = []

    def extend(start: int) -> bool:
        if len(picked) == m:
            return True
        for idx in range(start, len(pool)):
            p = pool[idx]
            if all(poly_gcd(p, other).degree == 0 for other in picked):
                picked.append(p)
                if extend(idx + 1):
                    return True
                picked.pop()
        return False

    if not extend(0):
        raise InfeasibleError(f"no pairwise coprime family of size {m} found")
    return picked


@dataclass(frozen=True)
class ParallelClassSet:
    rule: LocalRule
    classes: dict[Config, frozenset[int]]

    def sorted_classes(self) -> list[tuple[Config, list[int]]]:
        return [(y, sorted(s)) for y, s in self.classes.items()]


def parallel_classes(rule: LocalRule) -> ParallelClassSet:
    """Preimage sets of every output block, as Cayley cell indices, keyed in phi order."""
    require_bipermutive(rule)
    codec = IndexCodec(rule.field.q, rule.d)
    classes = {}
    for i in range(1, codec.N + 1):
        y = codec.psi(i)
        classes[y] = frozenset(codec.config_cell(x) for x in preimages(rule, y))
    return ParallelClassSet(rule, classes)


def search_moca_bruteforce(
    field: FieldSpec,
    d: int,
    target_size: int,
    *,
    first_only: bool = False,
    nonlinear: bool = True,
) -> list[tuple[LocalRule, ...]]:
    """Families of bipermutive rules of the given size with pairwise orthogonal squares.

    Families are listed in lexicographic order of the candidate list (Wolfram
    code order for binary rules).
    """
    if target_size < 1:
        raise CamocaError(f"family size must be >= 1, got {target_size}")
    if d < 2 or field.q ** (field.q**d) > SEARCH_BOUND:
        raise InfeasibleError(f"exhaustive search infeasible for q={field.q}, d={d}")
    rules = [r for r in bipermutive_rules(field, d, bound=SEARCH_BOUND) if nonlinear or r.is_linear]
    squares = [cayley_table(r) for r in rules]
    n = len(rules)
    ortho = [[i != j and are_orthogonal(squares[i], squares[j]) for j in range(n)] for i in range(n)]
    found: list[tuple[LocalRule, ...]] = []
    stack: list[int] = []

    def extend(start: int) -> bool:
        if len(stack) == target_size:
            found.append(tuple(rules[i] for i in stack))
            return first_only
        for idx in range(start, n):
            if all(ortho[idx][s] for s in stack):
                stack.append(idx)
                if extend(idx + 1):
                    return True
                stack.pop()
        return False

    extend(0)
    return found
