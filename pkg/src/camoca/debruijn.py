"""De Bruijn graphs of local rules, preimages, and coupled-graph recovery.

Vertices are the words of length ``d - 1``; there is an edge ``u -> v`` when
``u[1:] == v[:-1]``, labelled with ``f(u ⊙ v)`` where ``u ⊙ v`` is ``u``
followed by the last symbol of ``v``.  An input word of the NBCA is a walk in
this graph and its image is the sequence of edge labels.

For a bipermutive rule the outgoing labels at every vertex are a permutation
of the alphabet, so from any start vertex there is exactly one walk carrying
a given label sequence.  That gives the ``q**(d-1)`` preimages of any block.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .ca import Config, LocalRule, OpCounter, all_configs, check_config, config_code, require_bipermutive
from .errors import CamocaError, MultipleSurvivorsError, NoSurvivorError
from .gf import encode_symbols


def fusion(u: Sequence[int], v: Sequence[int]) -> Config:
    u, v = tuple(u), tuple(v)
    if len(u) != len(v) or not u:
        raise CamocaError(f"cannot fuse words of lengths {len(u)} and {len(v)}")
    if u[1:] != v[:-1]:
        raise CamocaError(f"{u} and {v} do not overlap")
    return u + v[-1:]


@dataclass(frozen=True, eq=False)
class DeBruijnGraph:
    rule: LocalRule
    labels: Mapping[tuple[Config, Config], int]

    @property
    def d(self) -> int:
        return self.rule.d

    @property
    def field(self):
        return self.rule.field

    @property
    def vertices(self) -> list[Config]:
        return list(all_configs(self.rule.field.q, self.rule.d - 1))

    def successors(self, u: Config) -> list[tuple[Config, int]]:
        u = tuple(u)
        return [((u + (s,))[1:], self.labels[u, (u + (s,))[1:]]) for s in range(self.rule.field.q)]

    def predecessors(self, v: Config) -> list[tuple[Config, int]]:
        v = tuple(v)
        return [(((s,) + v)[:-1], self.labels[((s,) + v)[:-1], v]) for s in range(self.rule.field.q)]

    def edge_list(self) -> str:
        """Debug dump, one ``u v label`` line per edge in vertex order."""
        q = self.rule.field.q
        lines = []
        for u in self.vertices:
            for v, label in self.successors(u):
                lines.append(f"{encode_symbols(u, q)} {encode_symbols(v, q)} {encode_symbols((label,), q)}")
        return "\n".join(lines)


def build_graph(rule: LocalRule) -> DeBruijnGraph:
    if rule.d < 2:
        raise CamocaError("de Bruijn graphs need diameter >= 2")
    q = rule.field.q
    labels = {}
    for u in all_configs(q, rule.d - 1):
        for s in range(q):
            x = u + (s,)
            labels[u, x[1:]] = rule.table[config_code(x, q)]
    return DeBruijnGraph(rule, labels)


def block_key(x: Sequence[int], q: int, block: int) -> tuple[int, ...]:
    """Sort key: per-block codes of consecutive ``block``-cell chunks, first chunk most significant.

    For inputs of length ``2*block`` this is the Cayley cell order (row, then column).
    """
    return tuple(config_code(x[i:i + block], q) for i in range(0, len(x), block))


def _follow(rule: LocalRule, start: Config, labels: Sequence[int], counter: OpCounter | None) -> Config:
    # walk from start along the unique outgoing edge carrying each label
    q, d, table = rule.field.q, rule.d, rule.table
    word = list(start)
    for y in labels:
        tail = word[len(word) - d + 1:]
        base = config_code(tail, q)
        top = q ** (d - 1)
        nxt = [s for s in range(q) if table[base + top * s] == y]
        if counter is not None:
            counter.add(q)
        if len(nxt) != 1:
            raise CamocaError(f"{rule!r} is not rightmost permutive at {tuple(tail)}")
        word.append(nxt[0])
    return tuple(word)


def preimages(rule: LocalRule, y: Sequence[int], counter: OpCounter | None = None) -> list[Config]:
    """All inputs mapped to block ``y``, one walk per start vertex.

    Returned in ascending :func:`block_key` order; there are always ``q**(d-1)``.
    """
    require_bipermutive(rule)
    y = check_config(rule, y)
    if not y:
        raise CamocaError("output block must be non-empty")
    q, d = rule.field.q, rule.d
    found = [_follow(rule, start, y, counter) for start in all_configs(q, d - 1)]
    found.sort(key=lambda x: block_key(x, q, d - 1))
    return found


def coupled_recover(
    rule_i: LocalRule,
    rule_j: LocalRule,
    block_i: Sequence[int],
    block_j: Sequence[int],
    counter: OpCounter | None = None,
) -> Config:
    """The unique x of length 2(d-1) with F_i(x) = block_i and F_j(x) = block_j.

    Each start vertex is walked along ``block_i`` in the graph of ``rule_i``
    and kept only if the same walk carries ``block_j`` under ``rule_j``, so the
    product graph is never built.
    """
    if rule_i.field != rule_j.field or rule_i.d != rule_j.d:
        raise CamocaError("rules must share field and diameter")
    require_bipermutive(rule_i)
    require_bipermutive(rule_j)
    q, d = rule_i.field.q, rule_i.d
    block_i, block_j = check_config(rule_i, block_i), check_config(rule_j, block_j)
    if len(block_i) != d - 1 or len(block_j) != d - 1:
        raise CamocaError(f"shares must have length d-1 = {d - 1}")
    survivors = []
    for start in all_configs(q, d - 1):
        x = _follow(rule_i, start, block_i, counter)
        ok = True
        for t in range(d - 1):
            if counter is not None:
                counter.add()
            if rule_j.table[config_code(x[t:t + d], q)] != block_j[t]:
                ok = False
                break
        if ok:
            survivors.append(x)
    if not survivors:
        raise NoSurvivorError(f"no input matches shares {block_i} and {block_j}")
    if len(survivors) > 1:
        raise MultipleSurvivorsError(f"{len(survivors)} inputs match shares {block_i} and {block_j}")
    return survivors[0]
