"""Command-line interface.

Commands: classify, represents, invariants, enumerate, crosscheck,
hilbert.  All results are UTF-8 JSON on stdout (JSON lines for the
streaming commands), diagnostics on stderr.  Exit codes: 0 success,
1 domain error (with a JSON error object on stdout), 2 usage error.

Ideals are serialized as their ord (an integer), with null for the zero
ideal.  Lattices are accepted as {"gram": [[...]]} or {"jordan": [...]},
inline or @file.
"""

from __future__ import annotations

import argparse
import json
import sys

from .field import FieldCfg, FieldError, IdealExp, make_field, parse_elt, hilbert
from .lattices import (
    JordanLattice,
    LatticeError,
    delta_ideal,
    fd_ideal,
    is_classic,
    is_integral,
    lattice_from_json,
    lattice_to_json,
    norm_ideal,
    scale_ideal,
    signed_disc_of_component,
)
from .represent import brute_force_represents, represents_lattice
from .spaces import SpaceError
from .universal import (
    UniversalityError,
    classify_classic_k_universal,
    classify_k_universal,
    crosscheck,
    enumerate_classic_basic,
    enumerate_dominant,
)

DomainError = (FieldError, LatticeError, SpaceError, UniversalityError,
               ValueError, KeyError, TypeError, OSError)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _ideal_json(ideal: IdealExp):
    return None if ideal.is_zero else int(ideal.exp)


def _load_lattice(cfg: FieldCfg, text: str) -> JordanLattice:
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = json.loads(text)
    return lattice_from_json(data, cfg)


def _field_of(args) -> FieldCfg:
    return make_field(args.field_f, args.precision)


def invariants_report(lat: JordanLattice, cfg: FieldCfg) -> dict:
    comps = []
    for c in lat.components:
        span = c.span(cfg)
        comps.append({
            "scale": c.scale_exp,
            "dim": c.dim,
            "proper": c.proper,
            "space": {
                "dim": span.dim,
                "disc": cfg.class_reps[span.disc.index].as_text(),
                "hasse": span.hasse,
            },
            "signed_disc": cfg.class_reps[signed_disc_of_component(c, cfg).index].as_text(),
        })
    if lat.components:
        lo = lat.scales[0] - 2
        hi = lat.scales[-1] + 2
        table = [
            {"i": i, "fd": _ideal_json(fd_ideal(lat, i)), "delta": _ideal_json(delta_ideal(lat, i))}
            for i in range(lo, hi + 1)
        ]
    else:
        table = []
    return {
        "scale": _ideal_json(scale_ideal(lat)),
        "norm": _ideal_json(norm_ideal(lat)),
        "dim": lat.dim,
        "integral": is_integral(lat),
        "classic": is_classic(lat),
        "components": comps,
        "ideals": table,
    }


def _cmd_classify(args) -> int:
    cfg = _field_of(args)
    lat = _load_lattice(cfg, args.lattice)
    if args.classic:
        verdict = classify_classic_k_universal(lat, args.k, cfg)
    else:
        verdict = classify_k_universal(lat, args.k, cfg)
    _emit({
        "value": verdict.value,
        "clause": verdict.clause,
        "witness": lattice_to_json(verdict.witness) if verdict.witness else None,
    })
    return 0


def _cmd_represents(args) -> int:
    cfg = _field_of(args)
    lat = _load_lattice(cfg, args.lattice)
    ell = _load_lattice(cfg, args.ell)
    if args.oracle == "brute":
        from .lattices import gram_from_jordan

        verdict = brute_force_represents(
            gram_from_jordan(ell, cfg), gram_from_jordan(lat, cfg), cfg,
            modulus_exp=args.modulus_exp,
        )
        _emit({
            "value": verdict.value,
            "reason": verdict.reason,
            "witness": [list(map(int, e)) for e in verdict.witness] if verdict.witness else None,
        })
    else:
        verdict = represents_lattice(ell, lat, cfg)
        _emit({"value": verdict.value, "reason": verdict.reason})
    return 0


def _cmd_invariants(args) -> int:
    cfg = _field_of(args)
    lat = _load_lattice(cfg, args.lattice)
    _emit(invariants_report(lat, cfg))
    return 0


def _cmd_enumerate(args) -> int:
    cfg = _field_of(args)
    tests = enumerate_classic_basic(args.k, cfg) if args.classic else enumerate_dominant(args.k, cfg)
    for lat in tests:
        _emit(lattice_to_json(lat))
    return 0


def _cmd_hilbert(args) -> int:
    cfg = _field_of(args)
    a = parse_elt(cfg, args.a)
    b = parse_elt(cfg, args.b)
    _emit({"symbol": hilbert(a, b)})
    return 0


def _crosscheck_worker(payload):
    # Rebuilt per worker: FieldCfg tables are cheap and not picklable-stable.
    global _WORKER_STATE
    f, precision, k, classic, lattice_json = payload
    key = (f, precision)
    if _WORKER_STATE.get("key") != key:
        _WORKER_STATE = {"key": key, "cfg": make_field(f, precision)}
    cfg = _WORKER_STATE["cfg"]
    from .universal import classify_classic_k_universal, classify_k_universal, oracle_k_universal

    lat = lattice_from_json(lattice_json, cfg)
    cv = (classify_classic_k_universal if classic else classify_k_universal)(lat, k, cfg)
    ov = oracle_k_universal(lat, k, classic, cfg)
    return {
        "lattice": lattice_json,
        "classifier": {"value": cv.value, "clause": cv.clause},
        "oracle": {
            "value": ov.value,
            "clause": ov.clause,
            "witness": lattice_to_json(ov.witness) if ov.witness else None,
        },
        "agree": cv.value == ov.value,
    }


_WORKER_STATE: dict = {}


def _cmd_crosscheck(args) -> int:
    cfg = _field_of(args)
    kwargs = dict(
        max_components=args.max_components,
        scale_min=args.scale_min,
        scale_max=args.scale_max,
        max_dim=args.max_dim,
        max_total_dim=args.max_dim_total,
        sample=args.sample,
        seed=args.seed,
    )
    if args.jobs > 1:
        report = _crosscheck_parallel(cfg, args, kwargs)
    else:
        report = crosscheck(cfg, args.k, args.classic, record_sink=_emit, **kwargs)
        report = {k: v for k, v in report.items() if k != "disagreements"} | {
            "disagreements": len(report["disagreements"])
        }
    _emit({"summary": report})
    return 0


def _crosscheck_parallel(cfg, args, kwargs) -> dict:
    import multiprocessing as mp

    from .universal import iter_family, random_lattice
    import random as _random

    if kwargs["sample"] is not None:
        rng = _random.Random(kwargs["seed"])
        pool_src = []
        while len(pool_src) < kwargs["sample"]:
            L = random_lattice(cfg, rng, kwargs["max_components"], kwargs["scale_min"],
                               kwargs["scale_max"], kwargs["max_dim"])
            if (is_classic(L) if args.classic else is_integral(L)):
                pool_src.append(L)
    else:
        pool_src = [
            L for L in iter_family(cfg, kwargs["max_components"], kwargs["scale_min"],
                                   kwargs["scale_max"], kwargs["max_dim"], kwargs["max_total_dim"])
            if (is_classic(L) if args.classic else is_integral(L))
        ]
    payloads = [
        (args.field_f, args.precision, args.k, args.classic, lattice_to_json(L)) for L in pool_src
    ]
    total = agree = 0
    disagreements = 0
    with mp.Pool(args.jobs) as pool:
        for rec in pool.imap(_crosscheck_worker, payloads, chunksize=64):
            _emit(rec)
            total += 1
            agree += rec["agree"]
            disagreements += not rec["agree"]
    return {
        "k": args.k, "classic": args.classic, "total": total, "agree": agree,
        "skipped": 0, "disagreements": disagreements,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dyadiclat",
        description="Universality of quadratic lattices over unramified 2-adic fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field-f", type=int, default=1, help="residue degree f of the field")
        p.add_argument("--precision", type=int, default=12, help="working precision floor (>= 5)")

    p = sub.add_parser("classify", help="decide (classic) k-universality of a lattice")
    common(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--classic", action="store_true")
    p.add_argument("--lattice", required=True, help="lattice JSON or @file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("represents", help="decide whether --lattice represents --ell")
    common(p)
    p.add_argument("--ell", required=True, help="candidate lattice JSON or @file")
    p.add_argument("--lattice", required=True)
    p.add_argument("--oracle", choices=["criterion", "brute"], default="criterion")
    p.add_argument("--modulus-exp", type=int, default=9)
    p.set_defaults(func=_cmd_represents)

    p = sub.add_parser("invariants", help="Jordan invariant report for a lattice")
    common(p)
    p.add_argument("--lattice", required=True)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("enumerate", help="list the dominant / classic basic test lattices")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--classic", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("crosscheck", help="classifier vs oracle sweep over a family")
    common(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--classic", action="store_true")
    p.add_argument("--max-components", type=int, default=3)
    p.add_argument("--scale-min", type=int, default=-1)
    p.add_argument("--scale-max", type=int, default=3)
    p.add_argument("--max-dim", type=int, default=4)
    p.add_argument("--max-dim-total", type=int, default=5)
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_crosscheck)

    p = sub.add_parser("hilbert", help="Hilbert symbol of two field elements")
    common(p)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=_cmd_hilbert)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        _emit({"error": f"malformed JSON: {exc}"})
        return 1
    except DomainError as exc:
        _emit({"error": str(exc)})
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
