"""Command-line interface: ``weil-lab <command> ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import admissibility as adm
from .analyzer import analyze, parse_weil
from .classify import PRESETS, classify_newton, preset, quotient_generators, sweep_dimension
from .config import Config, load_aliases
from .errors import ResourceLimitError, ValidationError, WeilLabError
from .groups import conjugation_element, generate, SignedPermutation
from .honda_tate import honda_tate_dimension, ideal_exponents
from .labels import IsogenyLabel, decode_label
from .weights import NewtonPolygon, WeightFunction, all_newton_polygons
from .wpr import WeightedPermRep

SCHEMA = "weil-lab/1"


def _dump(obj):
    return json.dumps({"schema": SCHEMA, **obj}, indent=2, sort_keys=True)


def _group(text, g, add_iota=True):
    gens = [SignedPermutation.parse(t, g) for t in text.split(",") if t.strip()]
    if add_iota:
        gens.append(conjugation_element(g))
    if not gens:
        gens = [SignedPermutation.identity(g)]
    return generate(gens)


def _rho(args):
    np_ = NewtonPolygon.parse(args.newton)
    if np_.g != args.g:
        raise ValidationError(f"Newton polygon has {len(np_.slopes)} slopes, expected {2 * args.g}")
    return WeightedPermRep(WeightFunction.from_newton(np_), _group(args.group, args.g))


def _primes(text, cfg):
    if not text:
        return cfg.p_sweep
    return tuple(adm.parse_p(t) for t in text.split(","))


def _aliases_for(cfg, newton):
    try:
        return load_aliases(cfg.alias_file).get(str(newton), {})
    except FileNotFoundError:
        return {}


def markdown_table(tab, aliases):
    lines = [f"### g = {tab.g}, Newton polygon {tab.newton.pretty()}", "",
             "| label | generators of G/iota | angle rank | exceptional | alias | example |",
             "|---|---|---|---|---|---|"]
    for e in tab.entries:
        a = aliases.get(e.canonical_label, {})
        exc = "n/a" if e.exceptional is None else ("Yes" if e.exceptional else "No")
        lines.append(f"| {e.canonical_label} | {', '.join(quotient_generators(e.wpr.G))} | "
                     f"{e.angle_rank} | {exc} | {a.get('label') or ''} | {a.get('example') or ''} |")
    if not tab.entries:
        lines.append("| (none) | | | | | |")
    return "\n".join(lines) + "\n"


def _check_limit(g, cfg, allow_g6):
    limit = max(cfg.g_limit, 6 if allow_g6 else 0)
    if g > limit:
        raise ResourceLimitError(f"g={g} is above the limit {limit}; pass --allow-g6 for g=6")
    return limit


def cmd_classify(args, cfg):
    limit = _check_limit(args.g, cfg, args.allow_g6)
    filters = preset(args.preset, _primes(args.p_sweep, cfg))
    tab = classify_newton(args.g, args.newton, filters, limit=limit, jobs=args.jobs or cfg.jobs)
    aliases = _aliases_for(cfg, tab.newton)
    if args.markdown:
        return markdown_table(tab, aliases)
    return _dump({"command": "classify", "table": tab.to_json(aliases, timing=args.timing)})


def cmd_sweep(args, cfg):
    limit = _check_limit(args.g, cfg, args.allow_g6)
    filters = preset(args.preset, _primes(args.p_sweep, cfg))

    def progress(npl, tab):
        if args.verbose:
            print(f"{npl.pretty()}: {len(tab.entries)} entries", file=sys.stderr)

    tabs = sweep_dimension(args.g, filters, limit=limit, jobs=args.jobs or cfg.jobs,
                           checkpoint=args.checkpoint, progress=progress)
    out = []
    for t in tabs:
        d = t if isinstance(t, dict) else t.to_json(_aliases_for(cfg, t.newton))
        out.append(d)
    empty = [d["newton"] for d in out if not d["entries"]]
    if args.markdown:
        parts = []
        for t in tabs:
            if isinstance(t, dict):
                continue
            parts.append(markdown_table(t, _aliases_for(cfg, t.newton)))
        return "\n".join(parts)
    return _dump({"command": "sweep", "g": args.g, "tables": out, "empty_polygons": empty,
                  "exceptional_count": sum(1 for d in out for e in d["entries"] if e["exceptional"])})


def cmd_analyze(args, cfg):
    prec = args.precision or cfg.precision
    bound = args.max_unity_order or cfg.max_unity_order
    if args.batch:
        reports = []
        with open(args.batch) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                item = json.loads(line)
                P = parse_weil(item.get("coefficients"), item.get("p"), item.get("q"), item.get("label"))
                reports.append(analyze(P, prec, bound).to_json())
        return _dump({"command": "analyze", "reports": reports})
    if args.label:
        P = parse_weil(label=args.label)
    else:
        if not args.coeffs or not args.q:
            raise ValidationError("give --label or --coeffs with --q")
        P = parse_weil([int(c) for c in args.coeffs.split(",")], args.p, args.q)
    return _dump({"command": "analyze", "report": analyze(P, prec, bound).to_json()})


def cmd_admissible(args, cfg):
    rho = _rho(args)
    p = adm.parse_p(args.p)
    rep = adm.find_admissible_filtrations(rho, p, strong_only=args.strong)
    return _dump({"command": "admissible", "wpr": rho.to_json(), "report": rep.to_json()})


def cmd_dimension(args, cfg):
    rho = _rho(args)
    D = _group(args.decomp, args.g, add_iota=False)
    res = honda_tate_dimension(rho, D, args.trailing_sign)
    return _dump({"command": "dimension", "wpr": rho.to_json(), "result": res.to_json(),
                  "exponents": ideal_exponents(rho, D).to_json()})


def cmd_decode(args, cfg):
    lab = IsogenyLabel.parse(args.label)
    P = decode_label(args.label)
    return _dump({"command": "decode-label", "label": str(lab), "g": lab.g, "q": lab.q,
                  "p": P.p, "a": list(lab.coefficients), "coefficients": list(P.coefficients)})


def cmd_emit(args, cfg):
    limit = _check_limit(args.g, cfg, args.allow_g6)
    os.makedirs(args.out, exist_ok=True)
    filters = preset("appendix", _primes(args.p_sweep, cfg))
    maximal = []
    written = []
    for npl in all_newton_polygons(args.g):
        if npl.is_supersingular:
            continue
        tab = classify_newton(args.g, npl, filters, limit=limit, jobs=args.jobs or cfg.jobs)
        if not tab.entries:
            maximal.append(npl.pretty())
            continue
        name = f"g{args.g}_" + str(npl).replace("/", "-").replace(",", "_") + ".md"
        with open(os.path.join(args.out, name), "w") as fh:
            fh.write(markdown_table(tab, _aliases_for(cfg, npl)))
        written.append(name)
    with open(os.path.join(args.out, f"g{args.g}_maximal_angle_rank.md"), "w") as fh:
        fh.write(f"### g = {args.g}: polygons with only maximal angle rank\n\n")
        fh.writelines(f"- {m}\n" for m in maximal)
    return _dump({"command": "emit-tables", "g": args.g, "files": written,
                  "maximal_angle_rank": maximal})


def build_parser():
    ap = argparse.ArgumentParser(prog="weil-lab", description=__doc__)
    ap.add_argument("--config", help="TOML config file")
    ap.add_argument("--json", action="store_true", help="machine-readable errors on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def common_class(p):
        p.add_argument("--g", type=int, required=True)
        p.add_argument("--preset", choices=sorted(PRESETS), default="appendix")
        p.add_argument("--p-sweep", help="comma list of primes and/or 'generic'")
        p.add_argument("--jobs", type=int, default=0)
        p.add_argument("--markdown", action="store_true")
        p.add_argument("--allow-g6", action="store_true")

    p = sub.add_parser("classify")
    common_class(p)
    p.add_argument("--newton", required=True)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep")
    common_class(p)
    p.add_argument("--checkpoint")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("analyze")
    p.add_argument("--label")
    p.add_argument("--coeffs", help="a_0..a_2g or a_1..a_g, comma separated")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--batch", help="JSON lines file")
    p.add_argument("--precision", type=int)
    p.add_argument("--max-unity-order", type=int)
    p.set_defaults(func=cmd_analyze)

    for name, fn in (("admissible", cmd_admissible), ("dimension", cmd_dimension)):
        p = sub.add_parser(name)
        p.add_argument("--g", type=int, required=True)
        p.add_argument("--newton", required=True)
        p.add_argument("--group", required=True, help="generators, comma separated; iota is added")
        if name == "admissible":
            p.add_argument("--p", required=True)
            p.add_argument("--strong", action="store_true")
        else:
            p.add_argument("--decomp", required=True)
            p.add_argument("--trailing-sign", choices=["+", "-"], required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("decode-label")
    p.add_argument("label")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("emit-tables")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--p-sweep")
    p.add_argument("--jobs", type=int, default=0)
    p.add_argument("--allow-g6", action="store_true")
    p.set_defaults(func=cmd_emit)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = Config.load(args.config)
        out = args.func(args, cfg)
    except WeilLabError as exc:
        if args.json:
            print(json.dumps({"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}),
                  file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
