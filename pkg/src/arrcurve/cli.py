"""Command-line front end.

Every command builds an arrangement from ``--family`` and prints one JSON
document (or DOT with ``--dot`` where supported).  Exit codes: 2 for bad
input, 3 when a size cap is hit, 1 when an internal cross-check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import families
from .arrangement import Arrangement, complex_of_irreducibles, essentialize, intersection_poset, \
    irreducible_flats
from .curveblowup import blowup_faces, homology, verify_wedge
from .deligne import garside_selftest, groupoid, parse_path
from .errors import ArrangementError, CapExceededError, InvariantViolation
from .salvetti import embedding_check, salvetti_complex
from .zonotope import sign_string, zonotope

SCHEMA_VERSION = 1
CONFIG_ENV = "ARRCURVE_CONFIG"


@dataclass
class RunConfig:
    chamber_cap: int = 100000
    word_length_cap: int = 8
    sample_count: int = 200
    seed: int = 0

    def validate(self):
        for name in ("chamber_cap", "word_length_cap", "sample_count"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) <= 0:
                raise ArrangementError(f"config value {name} must be a positive integer")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ArrangementError("config seed must be a nonnegative integer")
        return self


def load_config(path: str | None = None) -> RunConfig:
    """Defaults, overridden by the JSON file named in ``$ARRCURVE_CONFIG`` (or ``path``)."""
    path = path or os.environ.get(CONFIG_ENV)
    cfg = RunConfig()
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ArrangementError(f"cannot read config {path}: {exc}") from exc
        unknown = set(data) - set(asdict(cfg))
        if unknown:
            raise ArrangementError(f"unknown config keys: {sorted(unknown)}")
        cfg = RunConfig(**{**asdict(cfg), **data})
    return cfg.validate()


def build_arrangement(args) -> Arrangement:
    fam = args.family
    if fam == "file":
        if not args.path:
            raise ArrangementError("--family file needs --path")
        try:
            with open(args.path) as fh:
                a = Arrangement.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise ArrangementError(f"cannot read {args.path}: {exc}") from exc
    elif fam == "h3":
        a = families.h3()
    elif fam == "dihedral":
        a = families.dihedral(_need(args.m, "--m"))
    else:
        n = _need(args.n, "--n")
        a = {"braid": families.braid, "typeB": families.type_b, "boolean": families.boolean}[fam](n)
    if args.essentialize and not a.is_essential:
        a, _ = essentialize(a)
    return a


def _need(value, flag):
    if value is None:
        raise ArrangementError(f"this family needs {flag}")
    return value


# ---------------------------------------------------------------------- commands


def _face(z, text):
    return z.face(text)


def cmd_poset(a, args, cfg):
    poset = intersection_poset(a)
    return {"flats": [f.to_json() for f in poset.flats]}


def cmd_irreducibles(a, args, cfg):
    return {"irreducible": [f.to_json() for f in irreducible_flats(a)]}


def cmd_nested(a, args, cfg):
    full, i0 = complex_of_irreducibles(a)
    if args.dot:
        return i0.to_dot()
    return {"I": {**full.to_json(), "f_vector": list(full.f_vector())},
            "I0": {**i0.to_json(), "f_vector": list(i0.f_vector())}}


def cmd_zonotope(a, args, cfg):
    z = zonotope(a, cfg.chamber_cap)
    if args.dot:
        return z.to_dot()
    return z.to_json()


def cmd_salvetti(a, args, cfg):
    zonotope(a, cfg.chamber_cap)
    s = salvetti_complex(a)
    out = {"f_vector": list(s.f_vector()), "euler_characteristic": s.euler_characteristic()}
    if args.cells:
        out.update(s.to_json())
    return out


def cmd_normalform(a, args, cfg):
    g = groupoid(a)
    word = parse_path(g.z, args.word)
    if not word:
        raise ArrangementError("empty path")
    _check_length(word, cfg)
    f = g.morphism(word)
    out = {"morphism": f.to_json()}
    if f.is_positive:
        out["normal_form"] = f.positive.to_json()
    pos, neg = g.pn_normal_form(f)
    out["pn"] = {"a": pos.to_json(), "b": neg.to_json()}
    return out


def _check_length(word, cfg):
    if len(word) > cfg.word_length_cap:
        raise CapExceededError(f"path longer than word_length_cap={cfg.word_length_cap}")


def _two_paths(g, args, cfg):
    lhs, rhs = parse_path(g.z, args.lhs), parse_path(g.z, args.rhs)
    _check_length(lhs, cfg)
    _check_length(rhs, cfg)
    if not lhs or not rhs:
        raise ArrangementError("paths must be nonempty")
    return g.morphism(lhs), g.morphism(rhs)


def cmd_equal(a, args, cfg):
    g = groupoid(a)
    f1, f2 = _two_paths(g, args, cfg)
    if f1.source != f2.source or f1.target != f2.target:
        return {"equal": False, "reason": "different endpoints"}
    return {"equal": g.equal(f1, f2)}


def cmd_commute(a, args, cfg):
    g = groupoid(a)
    if args.faces:
        f1, f2 = (_face(g.z, t) for t in args.faces)
        common = sorted(set(f1.vertices) & set(f2.vertices))
        base = g.z.parse_chamber(args.base) if args.base else (common[0] if common else 0)
        brute = g.commute(g.dehn_twist(base, f1), g.dehn_twist(base, f2))
        return {"base": base, "commute": brute, "predicate": g.commute_standard_predicate(f1, f2)}
    f1, f2 = _two_paths(g, args, cfg)
    return {"commute": g.commute(f1, f2)}


def cmd_twist_standardize(a, args, cfg):
    g = groupoid(a)
    z = g.z
    face = _face(z, args.face)
    base = z.parse_chamber(args.base)
    twist = g.dehn_twist(base, face)
    if args.conjugator:
        word = parse_path(z, args.conjugator)
        _check_length(word, cfg)
        h = g.morphism(word) if word else g.unit(base)
        if h.source != base or h.target != base:
            raise ArrangementError("conjugator must be a loop at the base chamber")
        twist = g.conjugate(h, twist)
    b, out_face = g.standardize(twist, face)
    return {"twist": twist.to_json(), "b": b.to_json(), "face": sign_string(out_face.covector),
            "vertex": b.target}


def cmd_blowup_faces(a, args, cfg):
    return blowup_faces(a).to_json()


def cmd_homology(a, args, cfg):
    _, i0 = complex_of_irreducibles(a)
    return homology(i0).to_json()


def cmd_verify_wedge(a, args, cfg):
    return verify_wedge(a)


def cmd_embed_check(a, args, cfg):
    zonotope(a, cfg.chamber_cap)
    times = [Fraction(t) for t in args.times.split(",")] if args.times else None
    report = embedding_check(a) if times is None else embedding_check(a, times)
    return report


def cmd_garside_selftest(a, args, cfg):
    zonotope(a, cfg.chamber_cap)
    return garside_selftest(a, cfg.word_length_cap, cfg.sample_count, cfg.seed)


COMMANDS = {
    "poset": cmd_poset,
    "irreducibles": cmd_irreducibles,
    "nested": cmd_nested,
    "zonotope": cmd_zonotope,
    "salvetti": cmd_salvetti,
    "normalform": cmd_normalform,
    "equal": cmd_equal,
    "commute": cmd_commute,
    "twist-standardize": cmd_twist_standardize,
    "blowup-faces": cmd_blowup_faces,
    "homology": cmd_homology,
    "verify-wedge": cmd_verify_wedge,
    "embed-check": cmd_embed_check,
    "garside-selftest": cmd_garside_selftest,
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arrcurve", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--family", required=True,
                       choices=["braid", "typeB", "dihedral", "boolean", "h3", "file"])
        p.add_argument("--n", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--path", help="arrangement JSON file for --family file")
        p.add_argument("--no-essentialize", dest="essentialize", action="store_false")
        if name in ("nested", "zonotope"):
            p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
        if name == "salvetti":
            p.add_argument("--cells", action="store_true", help="include the cell list")
        if name == "normalform":
            p.add_argument("--word", required=True, help='path literal, e.g. "c0>c1,-c2>c1"')
        if name in ("equal", "commute"):
            p.add_argument("--lhs")
            p.add_argument("--rhs")
        if name == "commute":
            p.add_argument("--faces", nargs=2, metavar="COVECTOR",
                           help="compare the standard twists of two faces instead")
            p.add_argument("--base")
        if name == "twist-standardize":
            p.add_argument("--face", required=True)
            p.add_argument("--base", required=True)
            p.add_argument("--conjugator", default="")
        if name == "embed-check":
            p.add_argument("--times", help="comma-separated interpolation times")
    return parser


def run(argv=None, out=sys.stdout) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        a = build_arrangement(args)
        if args.command in ("equal",) and not (args.lhs and args.rhs):
            raise ArrangementError("equal needs --lhs and --rhs")
        if args.command == "commute" and not args.faces and not (args.lhs and args.rhs):
            raise ArrangementError("commute needs --lhs/--rhs or --faces")
        result = COMMANDS[args.command](a, args, cfg)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, str):
        out.write(result)
        return 0
    doc = {"schema": f"arrcurve.{args.command}/{SCHEMA_VERSION}", "arrangement": a.content_hash,
           "result": result}
    out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
