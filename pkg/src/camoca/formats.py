"""JSON documents exchanged by the CLI: families, shares, candidate sets, dealer records.

Every document carries ``format_version`` and ``kind``.  Symbol strings use one
character per symbol (``0-9a-z``) low-to-high, e.g. ``"101"`` is ``1 + X^2``
over GF(2).  A family's ``digest`` is the SHA-256 of its canonical JSON with
the digest field removed; shares and candidate files quote it so mismatched
public parameters are caught.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Sequence

from .ca import LocalRule, rule_from_table
from .errors import DigestMismatchError, FormatError
from .gf import FieldSpec, Polynomial, decode_symbols, encode_symbols, field_check
from .latin import MocaFamily, make_family

FORMAT_VERSION = 1


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _canonical(doc: dict) -> bytes:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def load(path, kind: str | None = None) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format_version") != FORMAT_VERSION:
        raise FormatError(f"{path}: unsupported or missing format_version")
    if kind is not None and doc.get("kind") != kind:
        raise FormatError(f"{path}: expected a {kind!r} document, found {doc.get('kind')!r}")
    return doc


def write(path, doc: dict) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def field_to_dict(field: FieldSpec) -> dict:
    return {"p": field.p, "m": field.m, "modulus": str(field.modulus) if field.modulus is not None else None}


def field_from_dict(doc: dict) -> FieldSpec:
    try:
        p, m = int(doc["p"]), int(doc["m"])
        mod = doc.get("modulus")
        modulus = Polynomial.from_string(FieldSpec(p), mod) if mod is not None else None
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad field record: {exc}") from None
    field = FieldSpec(p, m, modulus)
    field_check(field)
    return field


def rule_to_dict(rule: LocalRule) -> dict:
    doc = {"q": rule.field.q, "d": rule.d, "table": encode_symbols(rule.table, rule.field.q)}
    if rule.field.q == 2:
        doc["wolfram"] = int(rule.name)
    if rule.linear_coeffs is not None:
        doc["coeffs"] = encode_symbols(rule.linear_coeffs, rule.field.q)
    return doc


def rule_from_dict(field: FieldSpec, doc: dict) -> LocalRule:
    try:
        q, d, table = int(doc["q"]), int(doc["d"]), doc["table"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad rule record: {exc}") from None
    if q != field.q:
        raise FormatError(f"rule over GF({q}) in a family over GF({field.q})")
    return rule_from_table(field, d, decode_symbols(table, q))


def family_digest(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "digest"}
    return hashlib.sha256(_canonical(body)).hexdigest()


def family_doc(field: FieldSpec, d: int, rules: Sequence[LocalRule]) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "moca-family",
        "q": field.q,
        "d": d,
        "field": field_to_dict(field),
        "rules": [rule_to_dict(r) for r in rules],
    }
    doc["digest"] = family_digest(doc)
    return doc


def family_to_dict(family: MocaFamily) -> dict:
    return family_doc(family.field, family.d, family.rules)


def family_rules_from_dict(doc: dict) -> tuple[FieldSpec, int, list[LocalRule]]:
    """Parse without checking orthogonality (digest is still verified)."""
    if doc.get("kind") != "moca-family":
        raise FormatError(f"expected a moca-family document, found {doc.get('kind')!r}")
    if "digest" in doc and doc["digest"] != family_digest(doc):
        raise DigestMismatchError("family file digest does not match its contents")
    try:
        field = field_from_dict(doc["field"])
        d = int(doc["d"])
        rules = [rule_from_dict(field, r) for r in doc["rules"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad family document: {exc}") from None
    if field.q != doc.get("q") or any(r.d != d for r in rules):
        raise FormatError("family header disagrees with its rules")
    return field, d, rules


def family_from_dict(doc: dict) -> MocaFamily:
    return make_family(family_rules_from_dict(doc)[2])


def share_doc(family: MocaFamily, scheme: str, share, *, rule_index: int | None = None) -> dict:
    q = family.field.q
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "share",
        "scheme": scheme,
        "q": q,
        "d": family.d,
        "share": encode_symbols(share, q),
        "family_digest": family_to_dict(family)["digest"],
    }
    if scheme == "basic":
        doc["rule_index"] = rule_index
    else:
        doc["cell_index"] = family.codec.config_cell(share)
    return doc


def share_from_dict(family: MocaFamily, doc: dict, scheme: str):
    """Return ``(share, rule_index)``; rule_index is None for anonymous shares."""
    if doc.get("kind") != "share" or doc.get("scheme") != scheme:
        raise FormatError(f"expected a {scheme} share document")
    if doc.get("family_digest") != family_to_dict(family)["digest"]:
        raise DigestMismatchError("share was dealt for a different public family")
    share = decode_symbols(doc.get("share", ""), family.field.q)
    return share, doc.get("rule_index")


def candidates_doc(family: MocaFamily, sets: list[list[int]]) -> dict:
    # the owner's share is deliberately not recorded
    return {
        "format_version": FORMAT_VERSION,
        "kind": "candidates",
        "q": family.field.q,
        "d": family.d,
        "family_digest": family_to_dict(family)["digest"],
        "sets": sets,
    }


def candidates_from_dict(family: MocaFamily, doc: dict) -> list[frozenset[int]]:
    if doc.get("kind") != "candidates":
        raise FormatError("expected a candidates document")
    if doc.get("family_digest") != family_to_dict(family)["digest"]:
        raise DigestMismatchError("candidate sets were computed for a different public family")
    try:
        return [frozenset(int(v) for v in s) for s in doc["sets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad candidates document: {exc}") from None


def dealer_doc(family: MocaFamily, scheme: str, secret, random_block) -> dict:
    q = family.field.q
    return {
        "format_version": FORMAT_VERSION,
        "kind": "dealer-record",
        "sensitive": True,
        "note": "DEALER PRIVATE: holds the secret and the random block; never distribute",
        "scheme": scheme,
        "secret": encode_symbols(secret, q) if scheme == "basic" else secret,
        "random_block": encode_symbols(random_block, q),
        "family_digest": family_to_dict(family)["digest"],
    }
