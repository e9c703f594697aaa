"""Command-line front end.

Subcommands: ``mols`` (build/check/print), ``deal``, ``precompute``,
``recover``, ``simulate`` and ``search``.  Exit status is 0 on success, 1 when
validation or recovery fails, and 2 on usage errors.  Reruns with the same
flags and seed produce byte-identical output.
"""
from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from pathlib import Path

from . import formats
from .ca import all_configs, rule_from_polynomial, rule_from_wolfram
from .errors import CamocaError
from .gf import decode_symbols, encode_symbols, field_from_order, field_make
from .latin import (
    build_mols,
    cayley_table,
    family_problems,
    make_family,
    max_family_size,
    parallel_classes,
    printed_family_size,
    search_moca_bruteforce,
)
from .scheme import (
    anon_precompute,
    anon_recover,
    anon_setup,
    basic_recover_transcript,
    basic_setup,
    candidate_sets_as_indices,
    combine_sets,
    information_ratio,
)

SIMULATION_BOUND = 1 << 16


class UsageError(Exception):
    pass


def _field(args):
    if args.m_ext > 1:
        return field_make(args.q, args.m_ext)
    return field_from_order(args.q)


def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _fmt_set(values) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"


def _load_family(path):
    return formats.family_from_dict(formats.load(path, "moca-family"))


def _parse_rules(args, field):
    if args.rules:
        if field.q != 2:
            raise UsageError("--rules takes Wolfram codes and needs --q 2")
        return [rule_from_wolfram(int(c), args.d) for c in args.rules.split(",")]
    if args.polys:
        return [rule_from_polynomial(field, decode_symbols(p, field.q)) for p in args.polys.split(",")]
    return None


def render_parallel_classes(rules) -> str:
    """Table of preimage classes per output block, one column per rule."""
    cols = [parallel_classes(r) for r in rules]
    q = rules[0].field.q
    header = ["y"] + [f"Π{r.name}" for r in rules]
    rows = []
    for idx, y in enumerate(cols[0].classes, 1):
        rows.append([f"{encode_symbols(y, q)} ({idx})"] + [_fmt_set(c.classes[y]) for c in cols])
    widths = [max(len(r[k]) for r in rows + [header]) for k in range(len(header))]
    lines = [" | ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("-+-".join("-" * w for w in widths))
    lines += [" | ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines)


def cmd_mols(args) -> int:
    if args.action == "build":
        field = _field(args)
        rules = _parse_rules(args, field)
        if rules is None:
            if args.count is None:
                raise UsageError("mols build needs --count, --rules or --polys")
            family = build_mols(field, args.d, args.count)
        else:
            family = make_family(rules)
        doc = formats.family_to_dict(family)
        k = family.d - 1
        adjusted, printed = max_family_size(field, k), printed_family_size(field, k)
        text = (
            f"family: {', '.join(family.names())}\n"
            f"max family size: {adjusted}\n"
            f"printed-formula size (X counted, unadjusted): {printed}\n"
            f"digest: {doc['digest']}"
        )
        payload = {"family": family.names(), "max_family_size": adjusted,
                   "printed_formula_size": printed, "digest": doc["digest"]}
        if args.out:
            formats.write(args.out, doc)
            _emit(args, text, payload)
        else:
            sys.stdout.write(formats.dumps(doc))
            sys.stderr.write(text + "\n")
        return 0

    if args.action == "check":
        if not args.family:
            raise UsageError("mols check needs --family FILE")
        _, _, rules = formats.family_rules_from_dict(formats.load(args.family, "moca-family"))
        problems = family_problems(rules)
        if len(rules) < 2 and not problems:
            problems = ["family needs at least 2 rules"]
        text = "\n".join(problems) if problems else f"ok: {len(rules)} rules, pairwise orthogonal"
        _emit(args, text, {"ok": not problems, "problems": problems, "rules": [r.name for r in rules]})
        return 1 if problems else 0

    # print
    field = _field(args)
    if args.family:
        rules = list(_load_family(args.family).rules)
    else:
        rules = _parse_rules(args, field)
        if args.rule is not None:
            rules = (rules or []) + [rule_from_wolfram(args.rule, args.d)]
        if not rules:
            raise UsageError("mols print needs --rule, --rules, --polys or --family")
    blocks, payload = [], {}
    for r in rules:
        sq = cayley_table(r)
        blocks.append(f"rule {r.name}\n{sq.render()}")
        payload[r.name] = {"square": [list(row) for row in sq.entries],
                           "classes": {encode_symbols(y, field.q): sorted(s) for y, s in parallel_classes(r).classes.items()}}
    blocks.append("parallel classes\n" + render_parallel_classes(rules))
    _emit(args, "\n\n".join(blocks), payload)
    return 0


def _force_r(args, family):
    if args.force_r is None:
        return None
    if not args.testing:
        raise UsageError("--force-r is a test hook and requires --testing")
    return decode_symbols(args.force_r, family.field.q)


def cmd_deal(args) -> int:
    family = _load_family(args.family)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    force = _force_r(args, family)
    q = family.field.q
    if args.scheme == "basic":
        if args.secret is None:
            raise UsageError("deal basic needs --secret")
        deal = basic_setup(family, decode_symbols(args.secret, q), rng, force_r=force)
        for i, share in enumerate(deal.shares, 1):
            formats.write(out / f"share_{i}.json", formats.share_doc(family, "basic", share, rule_index=i))
        formats.write(out / "dealer.json", formats.dealer_doc(family, "basic", deal.secret, deal.random_block))
        shown = [encode_symbols(s, q) for s in deal.shares]
    else:
        if args.secret_index is None:
            raise UsageError("deal anon needs --secret-index")
        deal = anon_setup(family, args.secret_index, rng, force_r=force)
        for i, share in enumerate(deal.shares, 1):
            formats.write(out / f"share_{i}.json", formats.share_doc(family, "anon", share))
        formats.write(out / "dealer.json", formats.dealer_doc(family, "anon", deal.secret_index, deal.random_block))
        shown = [str(v) for v in deal.share_indices]
    text = f"dealt {len(shown)} shares: {', '.join(shown)}\nfiles written to {out}"
    _emit(args, text, {"shares": shown, "out": str(out)})
    return 0


def cmd_precompute(args) -> int:
    family = _load_family(args.family)
    share, _ = formats.share_from_dict(family, formats.load(args.share, "share"), "anon")
    cand = anon_precompute(family, share)
    doc = formats.candidates_doc(family, candidate_sets_as_indices(family, cand))
    if args.out:
        formats.write(args.out, doc)
    else:
        sys.stdout.write(formats.dumps(doc))
    return 0


def cmd_recover(args) -> int:
    family = _load_family(args.family)
    q = family.field.q
    if args.scheme == "basic":
        if not args.share or len(args.share) != 2:
            raise UsageError("recover basic needs exactly two --share files")
        parsed = [formats.share_from_dict(family, formats.load(p, "share"), "basic") for p in args.share]
        (sa, ia), (sb, ib) = sorted(parsed, key=lambda t: (t[1], t[0]))
        tr = basic_recover_transcript(family, ia, ib, sa, sb)
        secret = encode_symbols(tr.secret, q)
        text = f"secret: {secret}\noperations: {tr.counter.evaluations}"
        _emit(args, text, {"secret": secret, "operations": tr.counter.evaluations})
        return 0

    if args.candidates:
        if len(args.candidates) != 2:
            raise UsageError("recover anon needs exactly two --candidates files")
        sets = [formats.candidates_from_dict(family, formats.load(p, "candidates")) for p in args.candidates]
        common, k = combine_sets(*sorted(sets, key=lambda s: [sorted(x) for x in s]))
        cells, ops = sorted(common), None
    else:
        if not args.share or len(args.share) != 2:
            raise UsageError("recover anon needs exactly two --share files (or two --candidates)")
        shares = sorted(formats.share_from_dict(family, formats.load(p, "share"), "anon")[0] for p in args.share)
        tr = anon_recover(family, shares[0], shares[1])
        cells = sorted(family.codec.config_cell(x) for x in tr.intersection)
        k, ops = tr.secret, tr.counter.evaluations
    name = family.rules[k - 1].name
    text = f"secret rule: {name} (index {k}); intersection {_fmt_set(cells)}"
    if ops is not None:
        text += f"\noperations: {ops}"
    _emit(args, text, {"secret_rule": name, "secret_index": k, "intersection": cells, "operations": ops})
    return 0


def _simulation_family(args):
    if args.family:
        return _load_family(args.family)
    field = _field(args)
    if field.q ** (2 * (args.d - 1)) > SIMULATION_BOUND:
        raise CamocaError(f"q^(2(d-1)) = {field.q ** (2 * (args.d - 1))} exceeds simulation bound {SIMULATION_BOUND}")
    rules = _parse_rules(args, field)
    if rules is not None:
        return make_family(rules)
    size = args.count if args.count is not None else max_family_size(field, args.d - 1)
    return build_mols(field, args.d, size)


def cmd_simulate(args) -> int:
    if args.trials is not None and args.trials == 0 and not args.exhaustive:
        _emit(args, "trials: 0\nsuccesses: 0/0", {"trials": 0, "successes": 0})
        return 0
    family = _simulation_family(args)
    rng = random.Random(args.seed)
    q, h, m = family.field.q, family.d - 1, len(family)
    blocks = list(all_configs(q, h))
    cases = []
    if args.exhaustive:
        if args.scheme == "basic":
            cases = [(s, r, i, j) for i, j in itertools.combinations(range(1, m + 1), 2) for s in blocks for r in blocks]
        else:
            npl = q**h
            cases = [(k, r, a, b) for k in range(1, m + 1) for r in blocks
                     for a, b in itertools.combinations(range(1, npl + 1), 2)]
    else:
        for _ in range(args.trials or 0):
            if args.scheme == "basic":
                s = tuple(rng.randrange(q) for _ in range(h))
                i, j = sorted(rng.sample(range(1, m + 1), 2))
                cases.append((s, None, i, j))
            else:
                k = rng.randrange(1, m + 1)
                a, b = sorted(rng.sample(range(1, q**h + 1), 2))
                cases.append((k, None, a, b))
    ok, ops = 0, 0
    for secret, r, a, b in cases:
        if args.scheme == "basic":
            deal = basic_setup(family, secret, rng, force_r=r)
            tr = basic_recover_transcript(family, a, b, deal.shares[a - 1], deal.shares[b - 1])
            ok += tr.secret == deal.secret
        else:
            deal = anon_setup(family, secret, rng, force_r=r)
            tr = anon_recover(family, deal.shares[a - 1], deal.shares[b - 1])
            ok += tr.secret == deal.secret_index
        ops += tr.counter.evaluations
    n = len(cases)
    mean = ops / n if n else 0.0
    text = (
        f"scheme: {args.scheme}\nfamily: {', '.join(family.names())}\n"
        f"{'cases' if args.exhaustive else 'trials'}: {n}\nsuccesses: {ok}/{n}\n"
        f"mean operations: {mean:.2f}"
    )
    if args.scheme == "anon":
        text += f"\ninformation ratio: {information_ratio(family):.4f}"
    _emit(args, text, {"scheme": args.scheme, "family": family.names(), "cases": n,
                       "successes": ok, "mean_operations": mean})
    return 0 if ok == n else 1


def cmd_search(args) -> int:
    field = _field(args)
    fams = search_moca_bruteforce(field, args.d, args.size, first_only=args.first_only, nonlinear=args.nonlinear)
    kind = "nonlinear allowed" if args.nonlinear else "linear only"
    lines = [f"families of size {args.size} (q={field.q}, d={args.d}, {kind}): {len(fams)}"]
    lines += ["{" + ", ".join(r.name for r in f) + "}" for f in fams]
    _emit(args, "\n".join(lines), {"size": args.size, "count": len(fams),
                                   "families": [[r.name for r in f] for f in fams]})
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=2, help="field order, or the prime when --m-ext > 1")
    common.add_argument("--m-ext", type=int, default=1, help="extension degree")
    common.add_argument("--d", type=int, default=3, help="rule diameter")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="camoca", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mols", parents=[common], help="build, check or print an orthogonal family")
    p.add_argument("action", choices=("build", "check", "print"))
    p.add_argument("--count", type=int)
    p.add_argument("--rules", help="comma-separated Wolfram codes (q=2)")
    p.add_argument("--polys", help="comma-separated coefficient strings, low-to-high")
    p.add_argument("--rule", type=int, help="single Wolfram code to print")
    p.add_argument("--family")
    p.set_defaults(func=cmd_mols)

    p = sub.add_parser("deal", parents=[common], help="deal shares to files")
    p.add_argument("scheme", choices=("basic", "anon"))
    p.add_argument("--family", required=True)
    p.add_argument("--secret", help="secret block (basic)")
    p.add_argument("--secret-index", type=int, help="1-based secret rule index (anon)")
    p.add_argument("--testing", action="store_true", help="enable test hooks")
    p.add_argument("--force-r", help="fix the random block (needs --testing)")
    p.set_defaults(func=cmd_deal)

    p = sub.add_parser("precompute", parents=[common], help="a player's candidate preimage sets")
    p.add_argument("--family", required=True)
    p.add_argument("--share", required=True)
    p.set_defaults(func=cmd_precompute)

    p = sub.add_parser("recover", parents=[common], help="recover a secret from two shares")
    p.add_argument("scheme", choices=("basic", "anon"))
    p.add_argument("--family", required=True)
    p.add_argument("--share", action="append")
    p.add_argument("--candidates", action="append")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("simulate", parents=[common], help="deal/recover round trips")
    p.add_argument("--scheme", choices=("basic", "anon"), default="anon")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--family")
    p.add_argument("--count", type=int)
    p.add_argument("--rules")
    p.add_argument("--polys")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("search", parents=[common], help="exhaustive census of orthogonal bipermutive families")
    p.add_argument("--size", type=int, default=2)
    p.add_argument("--nonlinear", action="store_true", help="allow nonlinear members")
    p.add_argument("--first-only", action="store_true")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except CamocaError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
