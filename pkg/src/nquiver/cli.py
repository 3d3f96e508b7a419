"""Command-line surface over the text file format.

Exit codes: 0 on success, 1 when a loaded document or a law run fails a
mathematical check, 2 for usage and parse problems.  Reports go to
stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import quiver as quiver_mod
from .errors import (
    NonCommutingSquare,
    ParseError,
    QuiverRepError,
)
from .fileformat import (
    Document,
    emit,
    emit_morphism,
    parse,
)
from .laws import LAWS, TrialConfig, run_all, run_law
from .linalg import QQ, FieldSpec
from .nrep import (
    NRep,
    NRepMorphism,
    ncanonical_decomposition,
    ncokernel,
    ndirect_sum,
    nhom_basis,
    nindec_status,
    nkernel,
)
from .rep import (
    Rep,
    RepMorphism,
    canonical_decomposition,
    cokernel,
    direct_sum,
    hom_basis,
    indec_status,
    kernel,
)

CHECK_ORDER = (
    "ji_equals_f",
    "kernel_annihilates",
    "cokernel_annihilates",
    "image_dims_are_ranks",
    "j_is_mono",
    "image_is_kernel_of_cokernel",
)


class _Usage(Exception):
    """Bad invocation or unreadable/unparseable input: exit 2."""


class _CheckFailed(Exception):
    """A mathematical check failed on valid input: exit 1."""


def _load(path: str) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc}") from exc
    try:
        return parse(text)
    except NonCommutingSquare as exc:
        raise _CheckFailed(f"{path}: {exc}") from exc
    except ParseError as exc:
        raise _Usage(f"{path}: {exc}") from exc


def _resolve(doc: Document, name: str, kinds: str = "object"):
    hit_r = name in doc.reps
    hit_n = name in doc.nreps
    if hit_r and hit_n:
        raise _Usage(f"{name!r} names both a rep and an nrep")
    if hit_r:
        return doc.reps[name]
    if hit_n:
        return doc.nreps[name]
    raise _Usage(f"no rep or nrep named {name!r} in the document")


def _resolve_morphism(doc: Document, name: str):
    if name not in doc.morphisms:
        raise _Usage(f"no morphism named {name!r} in the document")
    return doc.morphisms[name]


def _quiver_name(doc: Document, q) -> str:
    for qname, cand in doc.quivers.items():
        if cand is q:
            return qname
    for qname, cand in doc.quivers.items():
        if cand == q:
            return qname
    raise _Usage("object's quiver is not named in the document")


def _object_doc(doc: Document, name: str, obj) -> Document:
    """Standalone document for one computed object, reusing quiver names."""
    out = Document(field=doc.field)
    if isinstance(obj, Rep):
        qn = _quiver_name(doc, obj.quiver)
        out.quivers[qn] = obj.quiver
        out.reps[name] = obj
    else:
        for q in obj.quivers:
            out.quivers.setdefault(_quiver_name(doc, q), q)
        for m, comp in enumerate(obj.components, start=1):
            out.reps[f"{name}{m}"] = comp
        out.nreps[name] = obj
    return out


def _dims_line(label: str, obj) -> str:
    if isinstance(obj, Rep):
        body = " ".join(f"{v}={obj.dims[v]}" for v in obj.quiver.vertices)
    else:
        parts = []
        for m in range(1, obj.n + 1):
            comp = obj.level(m)
            parts.append(
                f"[{m}] " + " ".join(f"{v}={comp.dims[v]}" for v in comp.quiver.vertices)
            )
        body = "  ".join(parts)
    return f"{label} dims: {body}"


# ----------------------------------------------------------------- commands


def _cmd_validate(args) -> int:
    doc = _load(args.file)
    bad = []
    for name, q in doc.quivers.items():
        report = quiver_mod.validate(q)
        notes = []
        if not report.connected:
            notes.append("NOT connected")
            bad.append(f"quiver {name} is not connected")
        if not report.acyclic:
            notes.append("cyclic")
            bad.append(f"quiver {name} has a directed cycle")
        if not notes:
            notes = ["connected", "acyclic"]
        print(
            f"quiver {name}: {len(q.vertices)} vertices, "
            f"{len(q.arrows)} arrows; " + ", ".join(notes)
        )
    for name, rep in doc.reps.items():
        qn = _quiver_name(doc, rep.quiver)
        print(f"rep {name} on {qn}: total dim {rep.dim_total}")
    for name, x in doc.nreps.items():
        qns = ", ".join(_quiver_name(doc, q) for q in x.quivers)
        print(f"nrep {name} on ({qns}): {x.n} levels, total dim {x.dim_total}")
    for name in doc.morphisms:
        src, tgt = doc.morphism_refs[name]
        print(f"morphism {name} : {src} -> {tgt}: squares commute")
    if bad:
        raise _CheckFailed("; ".join(bad))
    print("ok")
    return 0


def _cmd_hom(args) -> int:
    doc = _load(args.file)
    a = _resolve(doc, args.src)
    b = _resolve(doc, args.dst)
    if isinstance(a, Rep) != isinstance(b, Rep):
        raise _Usage("--from and --to must both be reps or both be nreps")
    try:
        basis = hom_basis(a, b) if isinstance(a, Rep) else nhom_basis(a, b)
    except QuiverRepError as exc:
        raise _Usage(str(exc)) from exc
    print(f"dim = {len(basis)}")
    for i, f in enumerate(basis, start=1):
        print()
        print(emit_morphism(f"b{i}", f, args.src, args.dst))
    return 0


def _morphism_and_kind(doc, name):
    f = _resolve_morphism(doc, name)
    return f, isinstance(f, RepMorphism)


def _cmd_ker(args) -> int:
    doc = _load(args.file)
    f, is_rep = _morphism_and_kind(doc, args.morphism)
    K, _ = kernel(f) if is_rep else nkernel(f)
    print(emit(_object_doc(doc, "K", K)), end="")
    return 0


def _cmd_coker(args) -> int:
    doc = _load(args.file)
    f, is_rep = _morphism_and_kind(doc, args.morphism)
    C, _ = cokernel(f) if is_rep else ncokernel(f)
    print(emit(_object_doc(doc, "C", C)), end="")
    return 0


def _cmd_canon(args) -> int:
    doc = _load(args.file)
    f, is_rep = _morphism_and_kind(doc, args.morphism)
    dec = canonical_decomposition(f) if is_rep else ncanonical_decomposition(f)
    print(_dims_line("K", dec.K))
    print(_dims_line("I", dec.I))
    print(_dims_line("C", dec.C))
    for key in CHECK_ORDER:
        print(f"{key}: {'pass' if dec.checks[key] else 'FAIL'}")
    if not dec.verified:
        raise _CheckFailed("canonical decomposition checks failed")
    return 0


def _cmd_dirsum(args) -> int:
    doc = _load(args.file)
    names = [s.strip() for s in args.of.split(",")]
    if len(names) != 2 or not all(names):
        raise _Usage("--of expects exactly two comma-separated names")
    a = _resolve(doc, names[0])
    b = _resolve(doc, names[1])
    if isinstance(a, Rep) != isinstance(b, Rep):
        raise _Usage("--of expects two reps or two nreps")
    try:
        total = direct_sum(a, b)[0] if isinstance(a, Rep) else ndirect_sum(a, b)[0]
    except QuiverRepError as exc:
        raise _Usage(str(exc)) from exc
    print(emit(_object_doc(doc, args.out, total)), end="")
    return 0


def _cmd_indec(args) -> int:
    doc = _load(args.file)
    x = _resolve(doc, args.object)
    try:
        if isinstance(x, Rep):
            result = indec_status(x, budget=args.budget, seed=args.seed)
        else:
            result = nindec_status(x, budget=args.budget, seed=args.seed)
    except QuiverRepError as exc:
        raise _Usage(str(exc)) from exc
    print(f"status: {result.status.name}")
    print(f"end_dim: {result.end_dim}")
    print(f"certificate: {result.certificate}")
    if result.witness is not None:
        print("witness:")
        print(emit_morphism("e", result.witness, args.object, args.object))
    if result.summands is not None:
        dims = " ".join(str(s.dim_total) for s in result.summands)
        print(f"summand dims: {dims}")
    return 0


_FIELD_RE = re.compile(r"^GF\((\d+)\)$")


def _parse_field(text: str) -> FieldSpec:
    if text == "QQ":
        return QQ
    m = _FIELD_RE.match(text)
    if m:
        try:
            return FieldSpec.gf(int(m.group(1)))
        except ValueError as exc:
            raise _Usage(str(exc)) from exc
    raise _Usage(f"unrecognized field {text!r}: expected QQ or GF(p)")


def _cmd_axioms(args) -> int:
    try:
        cfg = TrialConfig(
            field=_parse_field(args.field), trials=args.trials, seed=args.seed
        )
    except ValueError as exc:
        raise _Usage(str(exc)) from exc
    laws = (args.law,) if args.law else LAWS
    verdicts = [run_law(law, cfg) for law in laws]
    failed = False
    for v in verdicts:
        print(v.report())
        for failure in v.failures:
            failed = True
            print(
                f"{v.law} trial {failure.trial} (seed {failure.seed}): "
                f"{failure.message}",
                file=sys.stderr,
            )
            if failure.counterexample:
                print(failure.counterexample, file=sys.stderr)
    if failed:
        raise _CheckFailed("law failures above")
    print("all laws pass")
    return 0


# -------------------------------------------------------------------- driver


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nquiver",
        description="Exact-arithmetic toolkit for quiver representations "
        "and n-representations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a document and print reports")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("hom", help="morphism-space dimension and basis")
    p.add_argument("file")
    p.add_argument("--from", dest="src", required=True, metavar="A")
    p.add_argument("--to", dest="dst", required=True, metavar="B")
    p.set_defaults(fn=_cmd_hom)

    p = sub.add_parser("ker", help="kernel object of a named morphism")
    p.add_argument("file")
    p.add_argument("--morphism", required=True, metavar="F")
    p.set_defaults(fn=_cmd_ker)

    p = sub.add_parser("coker", help="cokernel object of a named morphism")
    p.add_argument("file")
    p.add_argument("--morphism", required=True, metavar="F")
    p.set_defaults(fn=_cmd_coker)

    p = sub.add_parser("canon", help="kernel/image/cokernel decomposition")
    p.add_argument("file")
    p.add_argument("--morphism", required=True, metavar="F")
    p.set_defaults(fn=_cmd_canon)

    p = sub.add_parser("dirsum", help="direct sum of two named objects")
    p.add_argument("file")
    p.add_argument("--of", required=True, metavar="A,B")
    p.add_argument("--out", required=True, metavar="NAME")
    p.set_defaults(fn=_cmd_dirsum)

    p = sub.add_parser("indec", help="indecomposability status of an object")
    p.add_argument("file")
    p.add_argument("--object", required=True, metavar="A")
    p.add_argument("--budget", type=int, default=4096)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_indec)

    p = sub.add_parser("axioms", help="run the randomized law harness")
    p.add_argument("--field", default="GF(5)")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--law", choices=LAWS, default=None)
    p.set_defaults(fn=_cmd_axioms)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _CheckFailed as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 1
    except QuiverRepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    entry()
