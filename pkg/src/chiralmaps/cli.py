"""Command-line interface.

Exit codes: 0 success (or positive verdict), 1 usage, 2 parse/validation,
3 search exhausted / no suitable cover base, 4 internal anomaly,
10 negative verdict (``chiral`` found the map chiral, ``cover`` found no
smooth cover).  Machine output is JSON on stdout or in the ``-o`` file;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .catalog import catalog_get, catalog_names
from .errors import (
    Anomaly,
    MapError,
    MapFileError,
    NoSuitableBase,
    NonHyperbolicType,
    ParityViolation,
    StructureViolation,
    TypeMismatch,
    SizeLimitExceeded,
    UnknownName,
)
from .exceptional import GammaType, exceptional_report, extend_theta, try_theta
from .mapfile import dumps_map, emit_map, parse_map
from .maps import MapType, dual, is_reflexible, is_smooth_cover, mirror, summary
from .pipeline import many_chiral_covers, verify_certificate
from .products import goursat_classify, product_with_pairs
from .seeds import Exhausted, find_chiral_seed

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_EXHAUSTED = 3
EXIT_ANOMALY = 4
EXIT_NEGATIVE = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("%s: %s" % (self.prog, message))


def _write_json(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=1, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _write_map(M, out: str | None) -> None:
    if out:
        emit_map(M, out)
    else:
        sys.stdout.write(dumps_map(M))


def _cmd_info(args) -> int:
    M = parse_map(args.file)
    _write_json(summary(M), None)
    return EXIT_OK


def _cmd_dual(args) -> int:
    _write_map(dual(parse_map(args.file)), args.output)
    return EXIT_OK


def _cmd_mirror(args) -> int:
    _write_map(mirror(parse_map(args.file)), args.output)
    return EXIT_OK


def _cmd_chiral(args) -> int:
    M = parse_map(args.file)
    report = is_reflexible(M)
    _write_json({"label": M.label, "darts": M.d, "verdict": report.verdict}, None)
    return EXIT_OK if report.reflexible else EXIT_NEGATIVE


def _cmd_parallel(args) -> int:
    A, B = parse_map(args.a), parse_map(args.b)
    pm = product_with_pairs(A, B, allow_large=args.allow_large)
    _write_map(pm.map, args.output)
    report = goursat_classify(A, B, pm)
    text = json.dumps(report.as_dict(), indent=1) + "\n"
    # the product itself went to stdout when no -o was given
    (sys.stderr if not args.output else sys.stdout).write(text)
    return EXIT_OK


def _cmd_cover(args) -> int:
    big, small = parse_map(args.big), parse_map(args.small)
    ok = is_smooth_cover(big, small)
    _write_json({"smooth_cover": ok}, None)
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_exceptional(args) -> int:
    M = parse_map(args.file)
    t = GammaType.parse(args.type)
    rep = exceptional_report(M, t)
    out = rep.as_dict()
    if rep.exceptional:
        theta = try_theta(M, t)
        out["theta"] = theta is not None
        out["theta_extends"] = theta is not None and extend_theta(M, t, theta) is not None
    _write_json(out, None)
    return EXIT_OK


def _parse_type(text: str) -> MapType:
    try:
        m, n = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError("--type expects m,n (for example 4,6)") from None
    return MapType(m, n)


def _cmd_seed(args) -> int:
    t = _parse_type(args.type)
    if not t.hyperbolic:
        raise UsageError("type %s is not hyperbolic" % t)
    seed = find_chiral_seed(t, args.rmax, args.budget, args.workers)
    if isinstance(seed, Exhausted):
        print(seed.reason, file=sys.stderr)
        return EXIT_EXHAUSTED
    if args.map_output:
        emit_map(seed.map, args.map_output)
    _write_json({
        "type": [t.m, t.n],
        "degree": seed.r,
        "group_tag": seed.group_tag,
        "x_points": list(seed.x_points.images),
        "y_points": list(seed.y_points.images),
        "summary": summary(seed.map),
    }, args.output)
    return EXIT_OK


def _cmd_chiral_cover(args) -> int:
    M = parse_map(args.file)
    aux = [parse_map(p) for p in args.aux or []]
    if not args.no_catalog_aux:
        for name in catalog_names():
            A = catalog_get(name).map
            if A.type == M.type:
                aux.append(A)
    batch = many_chiral_covers(M, args.count, args.rmax, args.budget, aux,
                               args.workers, args.allow_large)
    if args.product_output and batch.certificates:
        emit_map(batch.certificates[0].product, args.product_output)
    if args.count == 1 and batch.certificates:
        _write_json(batch.certificates[0].document, args.output)
    else:
        _write_json({
            "format": "chiral-cover-batch-v1",
            "certificates": [c.document for c in batch.certificates],
            "exhausted": None if batch.exhausted is None else {
                "reason": batch.exhausted.reason,
                "anomalies": list(batch.exhausted.anomalies),
            },
        }, args.output)
    if batch.exhausted is not None:
        print(batch.exhausted.reason, file=sys.stderr)
        for a in batch.exhausted.anomalies:
            print("anomaly: " + a, file=sys.stderr)
        return EXIT_ANOMALY if batch.exhausted.anomalies else EXIT_EXHAUSTED
    return EXIT_OK


def _cmd_verify_cert(args) -> int:
    try:
        doc = json.loads(Path(args.file).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MapFileError("invalid JSON: %s" % exc, "json") from exc
    product = parse_map(args.product) if args.product else None
    docs = doc["certificates"] if doc.get("format") == "chiral-cover-batch-v1" else [doc]
    failures = []
    for i, d in enumerate(docs):
        failures += ["certificate %d: %s" % (i, f) for f in verify_certificate(d, product)]
    for f in failures:
        print(f, file=sys.stderr)
    _write_json({"certificates": len(docs), "verified": not failures}, None)
    return EXIT_OK if not failures else EXIT_INVALID


def _cmd_catalog(args) -> int:
    if args.action == "list":
        _write_json(catalog_names(), None)
        return EXIT_OK
    if not args.name:
        raise UsageError("catalog get needs a NAME")
    _write_map(catalog_get(args.name).map, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chiralmaps", description="Orientably-regular maps: chirality and chiral covers.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("info", help="type, census and chirality of a map")
    s.add_argument("file")
    s.set_defaults(func=_cmd_info)

    for name, func in (("dual", _cmd_dual), ("mirror", _cmd_mirror)):
        s = sub.add_parser(name, help="write the %s map" % name)
        s.add_argument("file")
        s.add_argument("-o", "--output")
        s.set_defaults(func=func)

    s = sub.add_parser("chiral", help="exit 0 if reflexible, 10 if chiral")
    s.add_argument("file")
    s.set_defaults(func=_cmd_chiral)

    s = sub.add_parser("parallel", help="parallel product and its index in the direct product")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--output")
    s.add_argument("--allow-large", action="store_true")
    s.set_defaults(func=_cmd_parallel)

    s = sub.add_parser("cover", help="exit 0 iff BIG is a smooth cover of SMALL")
    s.add_argument("big")
    s.add_argument("small")
    s.set_defaults(func=_cmd_cover)

    s = sub.add_parser("exceptional", help="index-2 subgroup report")
    s.add_argument("file")
    s.add_argument("--type", required=True, choices=["A", "B", "dualA"])
    s.set_defaults(func=_cmd_exceptional)

    s = sub.add_parser("seed", help="search for a chiral Sym/Alt map of a given type")
    s.add_argument("--type", required=True, help="m,n")
    s.add_argument("--rmax", type=int, default=8)
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("-o", "--output")
    s.add_argument("--map-output")
    s.set_defaults(func=_cmd_seed)

    s = sub.add_parser("chiral-cover", help="verified chiral smooth covers of a map")
    s.add_argument("file")
    s.add_argument("--rmax", type=int, default=8)
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--aux", action="append", help="extra same-type map for the cover base")
    s.add_argument("--no-catalog-aux", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--allow-large", action="store_true")
    s.add_argument("--product-output", help="also write the (first) product map here")
    s.add_argument("-o", "--output")
    s.set_defaults(func=_cmd_chiral_cover)

    s = sub.add_parser("verify-cert", help="re-check a certificate from its own data")
    s.add_argument("file")
    s.add_argument("--product", help="externally stored product map")
    s.set_defaults(func=_cmd_verify_cert)

    s = sub.add_parser("catalog", help="shipped named maps")
    s.add_argument("action", choices=["list", "get"])
    s.add_argument("name", nargs="?")
    s.add_argument("-o", "--output")
    s.set_defaults(func=_cmd_catalog)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "count", 1) < 1:
            raise UsageError("--count must be positive")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (MapFileError, TypeMismatch, ParityViolation, SizeLimitExceeded,
            NonHyperbolicType, UnknownName) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except NoSuitableBase as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_EXHAUSTED
    except (Anomaly, StructureViolation) as exc:
        print("anomaly: %s" % exc, file=sys.stderr)
        return EXIT_ANOMALY
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except MapError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ANOMALY


def run(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
