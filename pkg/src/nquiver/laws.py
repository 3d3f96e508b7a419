"""Randomized harness for the categorical laws of the n-representation layer.

Every law here is a theorem: over any field, hom sets are abelian
groups, composition is biadditive, direct sums are biproducts, kernels
and cokernels satisfy their universal properties, and every morphism
factors K -> X -> I -> Y -> C.  The harness samples random objects and
morphisms (morphisms as field-coefficient combinations of a hom basis,
so every sample is valid by construction) and asserts the exact
equalities.  A failure is therefore an implementation bug, and the
counterexample is serialized in the text file format so it replays.

`brute_hom_count` is the independent small-instance oracle: it counts
morphisms by enumerating every candidate component tuple and running
each through the square-checking constructors, never consulting the
linear-system solver, so the two routes check each other.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import linalg
from .errors import (
    CandidateNotAnnihilating,
    EndpointMismatch,
    NonCommutingSquare,
    NoSolution,
    NotInjective,
    RationalsNotSupportedForExhaustive,
    TooLarge,
)
from .fileformat import Document, emit
from .linalg import FieldSpec, Matrix
from .nrep import (
    NRep,
    NRepMorphism,
    ncanonical_decomposition,
    ncokernel,
    ndirect_sum,
    nhom_basis,
    nkernel,
)
from .quiver import Quiver, arrow_pairs
from .rep import Rep

LAWS = (
    "hom_abelian_group",
    "composition_biadditive",
    "biproduct_identities",
    "kernel_universal",
    "cokernel_universal",
    "canonical_ji_eq_f",
    "canonical_image_ker_coker",
    "hom_additivity_dirsum",
    "rank_nullity",
)


@dataclass(frozen=True)
class TrialConfig:
    field: FieldSpec = FieldSpec.gf(5)
    max_vertices: int = 4
    max_arrows: int = 5
    max_dim: int = 3
    levels: tuple[int, ...] = (2, 3)
    trials: int = 200
    seed: int = 42

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_arrows < 1 or self.max_dim < 1:
            raise ValueError("all bounds must be at least 1")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.levels or any(n < 1 for n in self.levels):
            raise ValueError("levels must be nonempty positive integers")


@dataclass
class LawFailure:
    trial: int
    seed: int
    message: str
    counterexample: str  # file-format text, replayable


@dataclass
class Verdict:
    law: str
    trials: int
    failures: list[LawFailure] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def report(self) -> str:
        status = "pass" if self.passed else f"FAIL ({len(self.failures)})"
        return f"{self.law}: {self.trials} trials, {status}"


def _trial_seed(seed: int, law: str, trial: int) -> int:
    digest = hashlib.blake2b(
        f"{seed}:{law}:{trial}".encode(), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big")


# ----------------------------------------------------------------- generators


def _rand_scalar(rng: random.Random, field: FieldSpec):
    if field.p is None:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return rng.randrange(field.p)


def random_quiver(rng: random.Random, cfg: TrialConfig, tag: str = "v") -> Quiver:
    nv = rng.randint(1, cfg.max_vertices)
    vertices = [f"{tag}{i + 1}" for i in range(nv)]
    na = rng.randint(0, cfg.max_arrows)
    arrows = [
        (f"{tag}a{i + 1}", rng.choice(vertices), rng.choice(vertices))
        for i in range(na)
    ]
    return Quiver(vertices, arrows)


def _random_quiver_tuple(rng: random.Random, cfg: TrialConfig) -> tuple[Quiver, ...]:
    n = rng.choice(cfg.levels)
    return tuple(random_quiver(rng, cfg, tag=f"l{m + 1}") for m in range(n))


def _random_nrep_on(
    rng: random.Random, quivers: tuple[Quiver, ...], cfg: TrialConfig
) -> NRep:
    field = cfg.field
    comps = []
    for q in quivers:
        dims = {v: rng.randint(0, cfg.max_dim) for v in q.vertices}
        maps = {}
        for ar in q.arrows:
            nr, nc = dims[ar.target], dims[ar.source]
            if nr and nc:
                maps[ar.name] = [
                    [_rand_scalar(rng, field) for _ in range(nc)]
                    for _ in range(nr)
                ]
        comps.append(Rep(q, field, dims, maps))
    connectors = []
    for i in range(len(quivers) - 1):
        level = {}
        for g1, g2 in arrow_pairs(quivers[i], quivers[i + 1]):
            nr = comps[i + 1].dims[g2.source]
            nc = comps[i].dims[g1.target]
            if nr and nc:
                level[(g1.name, g2.name)] = [
                    [_rand_scalar(rng, field) for _ in range(nc)]
                    for _ in range(nr)
                ]
        connectors.append(level)
    return NRep(quivers, comps, connectors)


def random_nrep(cfg: TrialConfig, seed: int) -> NRep:
    """Deterministic random n-representation for the given seed."""
    rng = random.Random(seed)
    return _random_nrep_on(rng, _random_quiver_tuple(rng, cfg), cfg)


def _random_morphism(
    rng: random.Random, a: NRep, b: NRep, basis: list | None = None
) -> NRepMorphism:
    """Random element of Hom(a, b); the zero morphism when Hom = 0."""
    if basis is None:
        basis = nhom_basis(a, b)
    f = NRepMorphism.zero(a, b)
    for g in basis:
        c = _rand_scalar(rng, a.field)
        if c != 0:
            f = f + g.scale(c)
    return f


# -------------------------------------------------------------- serialization


def _serialize(field: FieldSpec, nreps: dict, morphisms: dict | None = None) -> str:
    """Counterexample text: named nreps and morphisms in the file format."""
    doc = Document(field=field)
    qnames: dict[int, str] = {}
    for xname, x in nreps.items():
        for q in x.quivers:
            if id(q) not in qnames:
                name = f"Q{len(qnames) + 1}"
                qnames[id(q)] = name
                doc.quivers[name] = q
        for m, comp in enumerate(x.components, start=1):
            if not any(existing is comp for existing in doc.reps.values()):
                doc.reps[f"{xname}_{m}"] = comp
        doc.nreps[xname] = x
    for fname, (f, src, tgt) in (morphisms or {}).items():
        doc.morphisms[fname] = f
        doc.morphism_refs[fname] = (src, tgt)
    return emit(doc)


# ----------------------------------------------------------------------- laws


def _law_hom_abelian_group(rng, cfg):
    qs = _random_quiver_tuple(rng, cfg)
    x = _random_nrep_on(rng, qs, cfg)
    y = _random_nrep_on(rng, qs, cfg)
    basis = nhom_basis(x, y)
    f = _random_morphism(rng, x, y, basis)
    g = _random_morphism(rng, x, y, basis)
    h = _random_morphism(rng, x, y, basis)
    zero = NRepMorphism.zero(x, y)
    ok = (
        f + g == g + f
        and (f + g) + h == f + (g + h)
        and f + zero == f
        and f + (-f) == zero
    )
    if ok:
        return None
    return (
        "hom set is not an abelian group",
        _serialize(
            cfg.field,
            {"X": x, "Y": y},
            {"f": (f, "X", "Y"), "g": (g, "X", "Y"), "h": (h, "X", "Y")},
        ),
    )


def _law_composition_biadditive(rng, cfg):
    qs = _random_quiver_tuple(rng, cfg)
    w = _random_nrep_on(rng, qs, cfg)
    x = _random_nrep_on(rng, qs, cfg)
    y = _random_nrep_on(rng, qs, cfg)
    z = _random_nrep_on(rng, qs, cfg)
    e = _random_morphism(rng, w, x)
    basis = nhom_basis(x, y)
    f = _random_morphism(rng, x, y, basis)
    g = _random_morphism(rng, x, y, basis)
    h = _random_morphism(rng, y, z)
    ok = h @ (f + g) == h @ f + h @ g and (f + g) @ e == f @ e + g @ e
    if ok:
        return None
    return (
        "composition is not biadditive",
        _serialize(
            cfg.field,
            {"W": w, "X": x, "Y": y, "Z": z},
            {
                "e": (e, "W", "X"),
                "f": (f, "X", "Y"),
                "g": (g, "X", "Y"),
                "h": (h, "Y", "Z"),
            },
        ),
    )


def _law_biproduct_identities(rng, cfg):
    qs = _random_quiver_tuple(rng, cfg)
    x = _random_nrep_on(rng, qs, cfg)
    y = _random_nrep_on(rng, qs, cfg)
    total, (i1, i2), (p1, p2) = ndirect_sum(x, y)
    ok = (
        p1 @ i1 == NRepMorphism.identity(x)
        and p2 @ i2 == NRepMorphism.identity(y)
        and (p1 @ i2).is_zero()
        and (p2 @ i1).is_zero()
        and i1 @ p1 + i2 @ p2 == NRepMorphism.identity(total)
    )
    if ok:
        return None
    return (
        "direct sum is not a biproduct",
        _serialize(cfg.field, {"X": x, "Y": y, "S": total}),
    )


def _law_kernel_universal(rng, cfg):
    qs = _random_quiver_tuple(rng, cfg)
    x = _random_nrep_on(rng, qs, cfg)
    y = _random_nrep_on(rng, qs, cfg)
    f = _random_morphism(rng, x, y)
    K, incl = nkernel(f)
    t = _random_nrep_on(rng, qs, cfg)
    u = _random_morphism(rng, t, K)
    g = incl @ u  # satisfies f.g = 0 by construction
    if not (f @ g).is_zero():
        return (
            "kernel inclusion does not annihilate",
            _serialize(cfg.field, {"X": x, "Y": y}, {"f": (f, "X", "Y")}),
        )
    try:
        hcomps = [
            {
                v: linalg.solve_through(incl.comps[li].comps[v], g.comps[li].comps[v])
                for v in qs[li].vertices
            }
            for li in range(len(qs))
        ]
        h = NRepMorphism(t, K, hcomps)
    except (NoSolution, NotInjective, NonCommutingSquare) as exc:
        return (
            f"no mediating morphism through the kernel: {exc}",
            _serialize(cfg.field, {"X": x, "Y": y, "T": t}, {"f": (f, "X", "Y")}),
        )
    # incl is mono, so the solution is unique and must be u itself
    if incl @ h != g or h != u:
        return (
            "mediating morphism through the kernel is wrong or not unique",
            _serialize(cfg.field, {"X": x, "Y": y, "T": t}, {"f": (f, "X", "Y")}),
        )
    return None


def _law_cokernel_universal(rng, cfg):
    qs = _random_quiver_tuple(rng, cfg)
    x = _random_nrep_on(rng, qs, cfg)
    y = _random_nrep_on(rng, qs, cfg)
    f = _random_morphism(rng, x, y)
    C, proj = ncokernel(f)
    t = _random_nrep_on(rng, qs, cfg)
    u = _random_morphism(rng, C, t)
    g = u @ proj  # satisfies g.f = 0 by construction
    if not (g @ f).is_zero():
        return (
            "cokernel projection does not annihilate",
            _serialize(cfg.field, {"X": x, "Y": y}, {"f": (f, "X", "Y")}),
        )
    try:
        hcomps = [
            {
                v: linalg.solve_through(
                    proj.comps[li].comps[v].transpose(),
                    g.comps[li].comps[v].transpose(),
                ).transpose()
                for v in qs[li].vertices
            }
            for li in range(len(qs))
        ]
        h = NRepMorphism(C, t, hcomps)
    except (NoSolution, NotInjective, NonCommutingSquare) as exc:
        return (
            f"no mediating morphism through the cokernel: {exc}",
            _serialize(cfg.field, {"X": x, "Y": y, "T": t}, {"f": (f, "X", "Y")}),
        )
    if h @ proj != g or h != u:
        return (
            "mediating morphism through the cokernel is wrong or not unique",
            _serialize(cfg.field, {"X": x, "Y": y, "T": t}, {"f": (f, "X", "Y")}),
        )
    return None


def _law_canonical_ji_eq_f(rng, cfg):
    qs = _random_quiver_tuple(rng, cfg)
    x = _random_nrep_on(rng, qs, cfg)
    y = _random_nrep_on(rng, qs, cfg)
    f = _random_morphism(rng, x, y)
    dec = ncanonical_decomposition(f)
    if dec.j @ dec.iota == f and dec.checks["ji_equals_f"]:
        return None
    return (
        "canonical decomposition does not recompose",
        _serialize(cfg.field, {"X": x, "Y": y}, {"f": (f, "X", "Y")}),
    )


def _law_canonical_image_ker_coker(rng, cfg):
    qs = _random_quiver_tuple(rng, cfg)
    x = _random_nrep_on(rng, qs, cfg)
    y = _random_nrep_on(rng, qs, cfg)
    f = _random_morphism(rng, x, y)
    dec = ncanonical_decomposition(f)
    ok = (dec.c @ dec.j).is_zero()
    for li in range(len(qs)):
        for v in qs[li].vertices:
            dim_i = dec.I.components[li].dims[v]
            ok = ok and dim_i == linalg.rank(f.comps[li].comps[v])
            ok = ok and dim_i == y.components[li].dims[v] - linalg.rank(
                dec.c.comps[li].comps[v]
            )
            ok = ok and linalg.rank(dec.j.comps[li].comps[v]) == dim_i
    if ok:
        return None
    return (
        "image object is not the kernel of the cokernel",
        _serialize(cfg.field, {"X": x, "Y": y}, {"f": (f, "X", "Y")}),
    )


def _law_hom_additivity_dirsum(rng, cfg):
    qs = _random_quiver_tuple(rng, cfg)
    x = _random_nrep_on(rng, qs, cfg)
    y = _random_nrep_on(rng, qs, cfg)
    z = _random_nrep_on(rng, qs, cfg)
    total, _, _ = ndirect_sum(x, y)
    ok = len(nhom_basis(total, z)) == len(nhom_basis(x, z)) + len(
        nhom_basis(y, z)
    ) and len(nhom_basis(z, total)) == len(nhom_basis(z, x)) + len(
        nhom_basis(z, y)
    )
    if ok:
        return None
    return (
        "hom dimension is not additive over direct sums",
        _serialize(cfg.field, {"X": x, "Y": y, "Z": z}),
    )


def _law_rank_nullity(rng, cfg):
    qs = _random_quiver_tuple(rng, cfg)
    x = _random_nrep_on(rng, qs, cfg)
    y = _random_nrep_on(rng, qs, cfg)
    f = _random_morphism(rng, x, y)
    K, _ = nkernel(f)
    C, _ = ncokernel(f)
    ok = True
    for li in range(len(qs)):
        for v in qs[li].vertices:
            r = linalg.rank(f.comps[li].comps[v])
            ok = ok and K.components[li].dims[v] == x.components[li].dims[v] - r
            ok = ok and C.components[li].dims[v] == y.components[li].dims[v] - r
    if ok:
        return None
    return (
        "kernel/cokernel dimensions break rank-nullity",
        _serialize(cfg.field, {"X": x, "Y": y}, {"f": (f, "X", "Y")}),
    )


_LAW_FNS = {
    "hom_abelian_group": _law_hom_abelian_group,
    "composition_biadditive": _law_composition_biadditive,
    "biproduct_identities": _law_biproduct_identities,
    "kernel_universal": _law_kernel_universal,
    "cokernel_universal": _law_cokernel_universal,
    "canonical_ji_eq_f": _law_canonical_ji_eq_f,
    "canonical_image_ker_coker": _law_canonical_image_ker_coker,
    "hom_additivity_dirsum": _law_hom_additivity_dirsum,
    "rank_nullity": _law_rank_nullity,
}


def run_law(law: str, cfg: TrialConfig) -> Verdict:
    """Run one law for cfg.trials independent trials; failures are data."""
    if law not in _LAW_FNS:
        raise ValueError(f"unknown law {law!r}; known: {', '.join(LAWS)}")
    fn = _LAW_FNS[law]
    verdict = Verdict(law=law, trials=cfg.trials)
    for trial in range(cfg.trials):
        tseed = _trial_seed(cfg.seed, law, trial)
        rng = random.Random(tseed)
        outcome = fn(rng, cfg)
        if outcome is not None:
            message, text = outcome
            verdict.failures.append(
                LawFailure(
                    trial=trial, seed=tseed, message=message, counterexample=text
                )
            )
    return verdict


def run_all(cfg: TrialConfig, laws=LAWS) -> list[Verdict]:
    return [run_law(law, cfg) for law in laws]


# --------------------------------------------------------------------- oracle


def brute_hom_count(a: NRep, b: NRep, max_unknowns: int = 16) -> int:
    """Count all morphisms a -> b by exhaustive enumeration over GF(p).

    Every candidate component tuple is materialized and pushed through
    the square-checking constructors; the hom-basis solver is never
    consulted, making this an independent check of the linear-system
    route (the count must equal p ** dim Hom).
    """
    if a.quivers != b.quivers:
        raise EndpointMismatch("objects live on different quiver tuples")
    if a.field != b.field:
        raise EndpointMismatch("objects live over different fields")
    p = a.field.p
    if p is None:
        raise RationalsNotSupportedForExhaustive(
            "exhaustive enumeration needs a finite field"
        )
    slots = []
    for li in range(a.n):
        for v in a.quivers[li].vertices:
            nr = b.components[li].dims[v]
            nc = a.components[li].dims[v]
            if nr and nc:
                slots.append((li, v, nr, nc))
    unknowns = sum(nr * nc for _, _, nr, nc in slots)
    if unknowns > max_unknowns:
        raise TooLarge(f"{unknowns} unknowns exceed the cap of {max_unknowns}")
    if p**unknowns > 2**20:
        raise TooLarge(f"{p}^{unknowns} candidates exceed the enumeration cap")
    count = 0
    for assignment in itertools.product(range(p), repeat=unknowns):
        pos = 0
        comps = [dict() for _ in range(a.n)]
        for li, v, nr, nc in slots:
            block = assignment[pos : pos + nr * nc]
            pos += nr * nc
            comps[li][v] = [
                list(block[r * nc : (r + 1) * nc]) for r in range(nr)
            ]
        try:
            NRepMorphism(a, b, comps)
        except NonCommutingSquare:
            continue
        count += 1
    return count


def verify_universal(
    kind: str,
    f: NRepMorphism,
    candidate_obj: NRep,
    candidate_arrow: NRepMorphism,
    probes: int = 20,
    seed: int = 0,
) -> Verdict:
    """Probe the kernel/cokernel universal property of an arbitrary candidate.

    For `kernel`, candidate_arrow: K' -> X must satisfy f . arrow = 0;
    probes g with f . g = 0 are drawn both through the candidate and
    through the true kernel, and each must factor uniquely through the
    candidate.  `cokernel` is the exact dual.
    """
    if kind not in ("kernel", "cokernel"):
        raise ValueError("kind must be 'kernel' or 'cokernel'")
    rng = random.Random(seed)
    cfg = TrialConfig(field=f.source.field)
    qs = f.source.quivers
    verdict = Verdict(law=f"{kind}_universal", trials=probes)

    if kind == "kernel":
        if candidate_arrow.target != f.source or candidate_arrow.source != candidate_obj:
            raise EndpointMismatch("candidate arrow must map the candidate into the source")
        if not (f @ candidate_arrow).is_zero():
            raise CandidateNotAnnihilating("f does not vanish on the candidate")
        true_K, true_incl = nkernel(f)
        mono = all(
            linalg.rank(candidate_arrow.comps[li].comps[v])
            == candidate_obj.components[li].dims[v]
            for li in range(len(qs))
            for v in qs[li].vertices
        )
        for probe in range(probes):
            t = _random_nrep_on(rng, qs, cfg)
            if probe % 2 == 0:
                g = candidate_arrow @ _random_morphism(rng, t, candidate_obj)
            else:
                g = true_incl @ _random_morphism(rng, t, true_K)
            try:
                hcomps = [
                    {
                        v: linalg.solve_through(
                            candidate_arrow.comps[li].comps[v],
                            g.comps[li].comps[v],
                        )
                        for v in qs[li].vertices
                    }
                    for li in range(len(qs))
                ]
                h = NRepMorphism(t, candidate_obj, hcomps)
            except (NoSolution, NotInjective, NonCommutingSquare) as exc:
                verdict.failures.append(
                    LawFailure(probe, seed, f"probe does not factor: {exc}", "")
                )
                continue
            if candidate_arrow @ h != g:
                verdict.failures.append(
                    LawFailure(probe, seed, "factorization does not recompose", "")
                )
            elif not mono:
                verdict.failures.append(
                    LawFailure(
                        probe,
                        seed,
                        "candidate arrow is not mono: mediating morphism not unique",
                        "",
                    )
                )
        return verdict

    if candidate_arrow.source != f.target or candidate_arrow.target != candidate_obj:
        raise EndpointMismatch("candidate arrow must map the target onto the candidate")
    if not (candidate_arrow @ f).is_zero():
        raise CandidateNotAnnihilating("the candidate does not annihilate f")
    true_C, true_proj = ncokernel(f)
    epi = all(
        linalg.rank(candidate_arrow.comps[li].comps[v])
        == candidate_obj.components[li].dims[v]
        for li in range(len(qs))
        for v in qs[li].vertices
    )
    for probe in range(probes):
        t = _random_nrep_on(rng, qs, cfg)
        if probe % 2 == 0:
            g = _random_morphism(rng, candidate_obj, t) @ candidate_arrow
        else:
            g = _random_morphism(rng, true_C, t) @ true_proj
        try:
            hcomps = [
                {
                    v: linalg.solve_through(
                        candidate_arrow.comps[li].comps[v].transpose(),
                        g.comps[li].comps[v].transpose(),
                    ).transpose()
                    for v in qs[li].vertices
                }
                for li in range(len(qs))
            ]
            h = NRepMorphism(candidate_obj, t, hcomps)
        except (NoSolution, NotInjective, NonCommutingSquare) as exc:
            verdict.failures.append(
                LawFailure(probe, seed, f"probe does not factor: {exc}", "")
            )
            continue
        if h @ candidate_arrow != g:
            verdict.failures.append(
                LawFailure(probe, seed, "factorization does not recompose", "")
            )
        elif not epi:
            verdict.failures.append(
                LawFailure(
                    probe,
                    seed,
                    "candidate arrow is not epi: mediating morphism not unique",
                    "",
                )
            )
    return verdict
