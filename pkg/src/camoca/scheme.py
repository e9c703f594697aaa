"""The two threshold-2 secret sharing protocols built on an orthogonal CA family.

Basic scheme: the secret is a block ``S`` of ``d - 1`` cells.  The dealer
draws a random block ``R`` and gives player ``i`` the image ``F_i(S || R)``.
Any two players holding rules ``i`` and ``j`` walk the coupled de Bruijn
graph to recover ``S || R``.  Players must know which rule produced which
share, so this scheme is not anonymous.

Anonymous scheme: the secret is the index of one rule of the family.  The
dealer draws a random block ``R`` and hands out the ``q**(d-1)`` preimages of
``R`` under the secret rule, one per player.  Each player independently
computes, for every rule ``k``, the preimage set of ``F_k(own share)``.  Two
players from the same deal have exactly one such set in common (the dealt
one), and the rule it came from is the secret.  Nothing about player
identities enters the computation.

The final intersection is done here by a combiner that sees both candidate
families.  That is the simplest option and it leaks each player's share to
the other (the common element of all sets a player sends is that player's
share).  A private set intersection protocol would close that gap; it is not
provided.

Rule indices and player numbers are 1-based throughout.  All randomness comes
from a caller-supplied ``random.Random`` (Mersenne Twister), used only to
draw ``R``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .ca import Config, OpCounter, all_configs, check_config, evaluate
from .debruijn import coupled_recover, preimages
from .errors import (
    AmbiguousIntersectionError,
    CamocaError,
    EmptyIntersectionError,
    SameShareError,
)
from .latin import MocaFamily


def draw_block(family: MocaFamily, rng: random.Random) -> Config:
    return tuple(rng.randrange(family.field.q) for _ in range(family.d - 1))


def _block(family: MocaFamily, block: Sequence[int], what: str) -> Config:
    block = tuple(block)
    if len(block) != family.d - 1 or any(not (isinstance(s, int) and 0 <= s < family.field.q) for s in block):
        raise CamocaError(f"{what} must be {family.d - 1} symbols in 0..{family.field.q - 1}, got {block}")
    return block


def _share(family: MocaFamily, share: Sequence[int]) -> Config:
    share = tuple(share)
    if len(share) != 2 * (family.d - 1):
        raise CamocaError(f"share must have length {2 * (family.d - 1)}, got {len(share)}")
    return check_config(family.rules[0], share)


def _rule_index(family: MocaFamily, k: int) -> int:
    if not (isinstance(k, int) and 1 <= k <= len(family)):
        raise CamocaError(f"rule index {k!r} outside 1..{len(family)}")
    return k


@dataclass(frozen=True)
class BasicDeal:
    family: MocaFamily
    secret: Config
    random_block: Config
    shares: tuple[Config, ...]

    @property
    def configuration(self) -> Config:
        return self.secret + self.random_block


def basic_setup(
    family: MocaFamily,
    secret: Sequence[int],
    rng: random.Random | None = None,
    *,
    force_r: Sequence[int] | None = None,
) -> BasicDeal:
    """Share a block: player i gets ``F_i(secret || R)``.

    ``force_r`` replaces the random draw and exists for reproducing known
    deals in tests.
    """
    secret = _block(family, secret, "secret")
    if force_r is not None:
        r = _block(family, force_r, "random block")
    else:
        r = draw_block(family, rng if rng is not None else random.Random())
    x = secret + r
    return BasicDeal(family, secret, r, tuple(evaluate(rule, x) for rule in family.rules))


def basic_recover(
    family: MocaFamily,
    i: int,
    j: int,
    share_i: Sequence[int],
    share_j: Sequence[int],
    counter: OpCounter | None = None,
) -> Config:
    """Recover the secret block from the shares of players i and j."""
    _rule_index(family, i)
    _rule_index(family, j)
    if i == j:
        raise SameShareError("recovery needs two distinct players")
    share_i = _block(family, share_i, "share")
    share_j = _block(family, share_j, "share")
    x = coupled_recover(family.rules[i - 1], family.rules[j - 1], share_i, share_j, counter)
    return x[: family.d - 1]


def basic_recover_by_lookup(family: MocaFamily, i: int, j: int, share_i, share_j) -> Config:
    """Same result as :func:`basic_recover`, found by scanning the superposed squares."""
    codec = family.codec
    a, b = codec.phi(tuple(share_i)), codec.phi(tuple(share_j))
    sq_i, sq_j = family.squares[i - 1], family.squares[j - 1]
    hits = [(r, c) for r in range(1, codec.N + 1) for c in range(1, codec.N + 1) if sq_i[r, c] == a and sq_j[r, c] == b]
    if len(hits) != 1:
        raise CamocaError(f"{len(hits)} cells match the superposed shares")
    return codec.psi(hits[0][0])


@dataclass(frozen=True)
class AnonDeal:
    family: MocaFamily
    secret_index: int
    random_block: Config
    shares: tuple[Config, ...]

    @property
    def share_indices(self) -> list[int]:
        return [self.family.codec.config_cell(s) for s in self.shares]


def anon_setup(
    family: MocaFamily,
    secret_index: int,
    rng: random.Random | None = None,
    *,
    force_r: Sequence[int] | None = None,
) -> AnonDeal:
    """Deal the preimages of a random block under the secret rule, one per player.

    Player ``p`` receives ``shares[p - 1]``; shares are in Cayley cell order.
    """
    if len(family) < 2:
        raise CamocaError("the anonymous scheme needs a family of at least 2 rules")
    _rule_index(family, secret_index)
    if force_r is not None:
        r = _block(family, force_r, "random block")
    else:
        r = draw_block(family, rng if rng is not None else random.Random())
    return AnonDeal(family, secret_index, r, tuple(preimages(family.rules[secret_index - 1], r)))


@dataclass(frozen=True)
class CandidateRecord:
    rule_index: int
    image: Config
    preimage_set: frozenset[Config]


@dataclass(frozen=True)
class CandidateFamily:
    share: Config
    records: tuple[CandidateRecord, ...]

    def sets(self) -> list[frozenset[Config]]:
        return [rec.preimage_set for rec in self.records]


def anon_precompute(family: MocaFamily, share: Sequence[int], counter: OpCounter | None = None) -> CandidateFamily:
    """A player's offline step: the preimage set of ``F_k(share)`` for every rule k."""
    share = _share(family, share)
    records = []
    for k, rule in enumerate(family.rules, 1):
        y = evaluate(rule, share, counter)
        records.append(CandidateRecord(k, y, frozenset(preimages(rule, y, counter))))
    return CandidateFamily(share, tuple(records))


def candidate_sets_as_indices(family: MocaFamily, cand: CandidateFamily) -> list[list[int]]:
    """Candidate sets as sorted cell-index lists, in rule order."""
    codec = family.codec
    return [sorted(codec.config_cell(x) for x in s) for s in cand.sets()]


def combine_sets(sets_a: Sequence[frozenset], sets_b: Sequence[frozenset]) -> tuple[frozenset, int]:
    """Intersect two candidate families given as per-rule sets in rule order.

    Whole sets are compared, not their elements.  Returns the common set and
    its 1-based rule index.
    """
    if len(sets_a) != len(sets_b):
        raise CamocaError("candidate families come from families of different sizes")
    if len(sets_a) < 2:
        raise CamocaError("the anonymous scheme needs a family of at least 2 rules")
    if list(sets_a) == list(sets_b):
        raise SameShareError("both candidate families come from the same share")
    common = set(sets_a) & set(sets_b)
    if not common:
        raise EmptyIntersectionError("the two candidate families have no set in common")
    if len(common) > 1:
        raise AmbiguousIntersectionError(f"{len(common)} sets in common; the public family is not orthogonal")
    (found,) = common
    k = list(sets_a).index(found) + 1
    if sets_b[k - 1] != found:
        raise AmbiguousIntersectionError("the common set sits under different rules in the two families")
    return found, k


def anon_combine(cand_a: CandidateFamily, cand_b: CandidateFamily, family: MocaFamily) -> tuple[frozenset[Config], int]:
    """Combiner step: the unique preimage set both players computed, and the rule it belongs to."""
    if len(cand_a.records) != len(family) or len(cand_b.records) != len(family):
        raise CamocaError("candidate families do not match the public family")
    if cand_a.share == cand_b.share:
        raise SameShareError("both candidate families come from the same share")
    return combine_sets(cand_a.sets(), cand_b.sets())


@dataclass
class RecoveryTranscript:
    inputs: frozenset
    intersection: frozenset | None
    secret: object
    counter: OpCounter = field(default_factory=OpCounter)


def anon_recover(family: MocaFamily, share_a: Sequence[int], share_b: Sequence[int]) -> RecoveryTranscript:
    """Both players' precomputation followed by the combiner, with operation counts."""
    counter = OpCounter()
    cand_a = anon_precompute(family, share_a, counter)
    cand_b = anon_precompute(family, share_b, counter)
    common, k = anon_combine(cand_a, cand_b, family)
    return RecoveryTranscript(frozenset({tuple(share_a), tuple(share_b)}), common, k, counter)


def basic_recover_transcript(family: MocaFamily, i: int, j: int, share_i, share_j) -> RecoveryTranscript:
    counter = OpCounter()
    secret = basic_recover(family, i, j, share_i, share_j, counter)
    inputs = frozenset({(i, tuple(share_i)), (j, tuple(share_j))})
    return RecoveryTranscript(inputs, None, secret, counter)


def consistency_count(family: MocaFamily, k: int, share: Sequence[int]) -> int:
    """Number of output blocks R whose preimage set under rule k contains the share.

    Always 1 since ``F_k`` is a function: a single share fits every rule
    equally well.
    """
    _rule_index(family, k)
    share = _share(family, share)
    rule = family.rules[k - 1]
    return sum(share in preimages(rule, r) for r in all_configs(family.field.q, family.d - 1))


def information_ratio(family: MocaFamily) -> float:
    """log(#shares) / log(#secrets) of the anonymous scheme; 1 would be ideal."""
    m = len(family)
    if m < 2:
        return math.inf
    return 2 * (family.d - 1) * math.log(family.field.q) / math.log(m)
