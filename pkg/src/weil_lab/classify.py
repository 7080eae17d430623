"""Classification pipeline: enumerate classes, filter, decide exceptionality."""
from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field, replace

from . import admissibility as adm
from .errors import ResourceLimitError, WeilLabError
from .groups import MAX_G
from .subgroups import transitive_classes
from .weights import NewtonPolygon, WeightFunction, all_newton_polygons, format_fraction
from .wpr import WeightedPermRep


@dataclass(frozen=True)
class Filters:
    geometrically_simple: bool = False
    admissible: bool = False
    non_maximal: bool = False
    exceptional_only: bool = False
    primes: tuple = adm.DEFAULT_PRIMES

    def to_json(self):
        return {"geometrically_simple": self.geometrically_simple,
                "admissible": self.admissible,
                "non_maximal_angle_rank": self.non_maximal,
                "exceptional_only": self.exceptional_only,
                "primes": [adm.format_p(p) for p in self.primes]}


PRESETS = {
    "appendix": Filters(geometrically_simple=True, admissible=True, non_maximal=True),
    "all": Filters(),
    "exceptional-only": Filters(geometrically_simple=True, exceptional_only=True),
}


def preset(name, primes=None):
    try:
        f = PRESETS[name]
    except KeyError:
        raise WeilLabError(f"unknown preset {name!r}") from None
    return replace(f, primes=tuple(primes)) if primes is not None else f


@dataclass
class ClassificationEntry:
    wpr: WeightedPermRep
    canonical_label: str
    angle_rank: int
    geometrically_simple: bool
    exceptional: bool | None
    witnesses: list
    admissible_primes: list
    level_parts: int

    def to_json(self, aliases=None):
        d = {
            "label": self.canonical_label,
            "order": self.wpr.G.order,
            "generators": self.wpr.G.generator_strings(),
            "generators_mod_iota": quotient_generators(self.wpr.G),
            "angle_rank": self.angle_rank,
            "geometrically_simple": self.geometrically_simple,
            "exceptional": self.exceptional,
            "witnesses": [w.to_json() for w in self.witnesses],
            "admissible_primes": [{"p": adm.format_p(p), "strong": s} for p, s in self.admissible_primes],
            "level_set_parts": self.level_parts,
        }
        if aliases:
            a = aliases.get(self.canonical_label)
            if a:
                d["alias"] = a
        return d


@dataclass
class ClassificationTable:
    g: int
    newton: NewtonPolygon
    entries: list
    filters: Filters
    total_classes: int
    seconds: float = 0.0

    def to_json(self, aliases=None, timing=False):
        d = {"g": self.g, "newton": str(self.newton), "filters": self.filters.to_json(),
             "total_classes": self.total_classes,
             "entries": [e.to_json(aliases) for e in self.entries]}
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


def quotient_generators(G):
    """Generators of G/<iota>, dropping iota itself when it is redundant."""
    from .groups import format_code, iota_code, _close
    import numpy as np
    iota = iota_code(G.g)
    gens = [c for c in G.gens if c != iota]
    span = _close(G.g, gens + [iota])
    if span.size != G.order:
        gens = list(G.gens)
    return [format_code(G.g, c) for c in gens] or ["()"]


def _entry(rho, label, filters):
    simple = rho.is_geometrically_simple()
    if filters.geometrically_simple and not simple:
        return None
    delta = rho.angle_rank()
    if filters.non_maximal and delta >= rho.g:
        return None
    primes = []
    if filters.admissible:
        primes = adm.strongly_admissible_primes(rho, filters.primes)
        if not any(s for _, s in primes):
            return None
    witnesses = rho.exceptional_witnesses() if simple else []
    exceptional = bool(witnesses) if simple else None
    if filters.exceptional_only and not exceptional:
        return None
    _, m = rho.level_set_partition()
    return ClassificationEntry(rho, label, delta, simple, exceptional, witnesses, primes, m)


def classify_newton(g, newton, filters=None, limit=MAX_G, jobs=1, progress=None):
    """Classify all transitive WPRs with the given Newton polygon."""
    if not isinstance(newton, NewtonPolygon):
        newton = NewtonPolygon.parse(newton)
    if newton.g != g:
        raise WeilLabError(f"Newton polygon has {len(newton.slopes)} slopes, expected {2 * g}")
    if g > limit:
        raise ResourceLimitError(f"g={g} exceeds the configured limit {limit}")
    filters = filters or PRESETS["appendix"]
    t0 = time.perf_counter()
    w = WeightFunction.from_newton(newton)
    classes = transitive_classes(w)
    labelled = list(zip(_label_list(classes, g), classes))
    entries = []
    if jobs > 1 and len(labelled) > 1:
        entries = _parallel(w, labelled, filters, jobs)
    else:
        for k, (label, c) in enumerate(labelled):
            e = _entry(WeightedPermRep(w, c.group), label, filters)
            if e is not None:
                entries.append(e)
            if progress:
                progress(k + 1, len(labelled))
    return ClassificationTable(g, newton, entries, filters, len(classes), time.perf_counter() - t0)


def _label_list(classes, g):
    seen = {}
    out = []
    for c in classes:
        seen[c.order] = seen.get(c.order, 0) + 1
        out.append(f"W{2 * g}.{c.order}.{seen[c.order]}")
    return out


def _worker(args):
    w, label, elems, gens, filters = args
    from .groups import PermGroup
    G = PermGroup.from_codes(w.g, gens, elems)
    e = _entry(WeightedPermRep(w, G), label, filters)
    if e is None:
        return None
    return (label, e.angle_rank, e.geometrically_simple, e.exceptional,
            [(x.t_plus, x.t_minus) for x in e.witnesses], e.admissible_primes, e.level_parts)


def _parallel(w, labelled, filters, jobs):
    from concurrent.futures import ProcessPoolExecutor
    from .wpr import ExceptionalWitness
    args = [(w, lab, c.group.elements, c.group.gens, filters) for lab, c in labelled]
    by_label = {lab: c for lab, c in labelled}
    out = []
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for res in ex.map(_worker, args, chunksize=4):
            if res is None:
                continue
            label, delta, simple, exc, wit, primes, m = res
            rho = WeightedPermRep(w, by_label[label].group)
            out.append(ClassificationEntry(rho, label, delta, simple, exc,
                                           [ExceptionalWitness(a, b) for a, b in wit], primes, m))
    return out


def sweep_dimension(g, filters=None, limit=MAX_G, jobs=1, checkpoint=None, progress=None):
    """Classify every valid Newton polygon of dimension g.

    With ``checkpoint`` (a path), finished polygons are stored as JSON
    and skipped on the next run.
    """
    done = {}
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint) as fh:
            done = json.load(fh)
    tables = []
    for npl in all_newton_polygons(g):
        key = str(npl)
        if key in done:
            tables.append(done[key])
            continue
        try:
            tab = classify_newton(g, npl, filters, limit=limit, jobs=jobs)
        except ResourceLimitError as exc:
            exc.partial = tables
            raise
        tables.append(tab)
        if checkpoint:
            done[key] = tab.to_json()
            tmp = checkpoint + ".tmp"
            with open(tmp, "w") as fh:
                json.dump(done, fh, indent=1, sort_keys=True)
            os.replace(tmp, checkpoint)
        if progress:
            progress(npl, tab)
    return tables


def table_json(tab, aliases=None, timing=False):
    return tab if isinstance(tab, dict) else tab.to_json(aliases, timing)
