"""Representations of a single quiver and their abelian-category operations.

A Rep assigns a dimension to every vertex and a matrix to every arrow; a
RepMorphism is a vertex-indexed family of matrices whose squares all
commute; this is enforced at construction, so invalid diagrams are
unrepresentable downstream.  Hom spaces are computed by flattening all
commuting-square conditions into one linear system and taking its
nullspace; kernels and cokernels are computed vertex-wise with induced
arrow maps, and both return ordinary Rep objects in deterministic bases.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from typing import Mapping, Sequence

from . import linalg
from .errors import (
    EndpointMismatch,
    FieldMismatch,
    NonCommutingSquare,
    QuiverMismatch,
    ShapeMismatch,
    ZeroRep,
)
from .linalg import FieldSpec, Matrix
from .quiver import Quiver


class Rep:
    """A representation: dims per vertex, a matrix per arrow.

    Missing dims default to 0; missing arrow matrices default to zero
    matrices of the forced shape.  Matrix values may be given as Matrix
    objects or raw row lists.
    """

    __slots__ = ("quiver", "field", "dims", "maps")

    def __init__(
        self,
        quiver: Quiver,
        field: FieldSpec,
        dims: Mapping[str, int] | None = None,
        maps: Mapping[str, object] | None = None,
    ):
        dims = dict(dims or {})
        maps = dict(maps or {})
        for v in dims:
            if not quiver.has_vertex(v):
                raise QuiverMismatch(f"dim given for unknown vertex {v!r}")
        for a in maps:
            if not quiver.has_arrow(a):
                raise QuiverMismatch(f"map given for unknown arrow {a!r}")
        full_dims: dict[str, int] = {}
        for v in quiver.vertices:
            d = int(dims.get(v, 0))
            if d < 0:
                raise ValueError(f"negative dimension at vertex {v!r}")
            full_dims[v] = d
        full_maps: dict[str, Matrix] = {}
        for a in quiver.arrows:
            want = (full_dims[a.target], full_dims[a.source])
            m = maps.get(a.name)
            if m is None:
                m = Matrix.zeros(field, *want)
            elif not isinstance(m, Matrix):
                m = Matrix(field, m)
            if m.field != field:
                raise FieldMismatch(f"map {a.name!r} is over {m.field}, rep over {field}")
            if m.shape != want:
                raise ShapeMismatch(
                    f"map {a.name!r} has shape {m.shape}, expected {want}"
                )
            full_maps[a.name] = m
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "dims", full_dims)
        object.__setattr__(self, "maps", full_maps)

    def __setattr__(self, name, value):
        raise AttributeError("Rep is immutable")

    @classmethod
    def zero(cls, quiver: Quiver, field: FieldSpec) -> "Rep":
        return cls(quiver, field)

    @property
    def dim_total(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.dim_total == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rep):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.field == other.field
            and self.dims == other.dims
            and self.maps == other.maps
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Rep({self.field}, dims={self.dims})"


def _first_deviation(diff: Matrix) -> tuple[tuple[int, int], object]:
    for i in range(diff.nrows):
        for j in range(diff.ncols):
            v = diff.entry(i, j)
            if v != 0:
                return (i, j), v
    raise ValueError("no deviation in a zero matrix")


class RepMorphism:
    """A morphism of representations; commuting squares checked eagerly."""

    __slots__ = ("source", "target", "comps")

    def __init__(
        self,
        source: Rep,
        target: Rep,
        comps: Mapping[str, object] | None = None,
    ):
        if source.quiver != target.quiver:
            raise QuiverMismatch("morphism endpoints live on different quivers")
        if source.field != target.field:
            raise FieldMismatch("morphism endpoints live over different fields")
        q = source.quiver
        field = source.field
        comps = dict(comps or {})
        for v in comps:
            if not q.has_vertex(v):
                raise QuiverMismatch(f"component given for unknown vertex {v!r}")
        full: dict[str, Matrix] = {}
        for v in q.vertices:
            want = (target.dims[v], source.dims[v])
            m = comps.get(v)
            if m is None:
                if want[0] and want[1]:
                    raise ShapeMismatch(
                        f"missing component at vertex {v!r} "
                        f"(both end spaces are nonzero)"
                    )
                m = Matrix.zeros(field, *want)
            elif not isinstance(m, Matrix):
                m = Matrix(field, m)
            if m.field != field:
                raise FieldMismatch(f"component {v!r} over {m.field}")
            if m.shape != want:
                raise ShapeMismatch(
                    f"component at vertex {v!r} has shape {m.shape}, expected {want}"
                )
            full[v] = m
        for a in q.arrows:
            lhs = full[a.target] @ source.maps[a.name]
            rhs = target.maps[a.name] @ full[a.source]
            diff = lhs - rhs
            if not diff.is_zero():
                entry, dev = _first_deviation(diff)
                raise NonCommutingSquare(f"arrow {a.name!r}", entry, dev)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "comps", full)

    def __setattr__(self, name, value):
        raise AttributeError("RepMorphism is immutable")

    @classmethod
    def identity(cls, x: Rep) -> "RepMorphism":
        return cls(
            x, x, {v: Matrix.identity(x.field, x.dims[v]) for v in x.quiver.vertices}
        )

    @classmethod
    def zero(cls, source: Rep, target: Rep) -> "RepMorphism":
        return cls(
            source,
            target,
            {
                v: Matrix.zeros(source.field, target.dims[v], source.dims[v])
                for v in source.quiver.vertices
            },
        )

    def __matmul__(self, other: "RepMorphism") -> "RepMorphism":
        """Composition self after other."""
        if not isinstance(other, RepMorphism):
            return NotImplemented
        if other.target != self.source:
            raise EndpointMismatch("morphisms do not compose")
        return RepMorphism(
            other.source,
            self.target,
            {v: self.comps[v] @ other.comps[v] for v in self.comps},
        )

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        if not isinstance(other, RepMorphism):
            return NotImplemented
        if other.source != self.source or other.target != self.target:
            raise EndpointMismatch("morphisms have different endpoints")
        return RepMorphism(
            self.source,
            self.target,
            {v: self.comps[v] + other.comps[v] for v in self.comps},
        )

    def __sub__(self, other: "RepMorphism") -> "RepMorphism":
        if not isinstance(other, RepMorphism):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "RepMorphism":
        return self.scale(-1)

    def scale(self, c) -> "RepMorphism":
        return RepMorphism(
            self.source, self.target, {v: m.scale(c) for v, m in self.comps.items()}
        )

    def __pow__(self, n: int) -> "RepMorphism":
        if self.source != self.target:
            raise EndpointMismatch("power of a non-endomorphism")
        return RepMorphism(
            self.source, self.target, {v: m**n for v, m in self.comps.items()}
        )

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps.values())

    def is_identity(self) -> bool:
        return self.source == self.target and self == RepMorphism.identity(self.source)

    def total_rank(self) -> int:
        return sum(linalg.rank(m) for m in self.comps.values())

    def inverse(self) -> "RepMorphism":
        """Inverse of an isomorphism (NotInjective if any component is singular)."""
        return RepMorphism(
            self.target,
            self.source,
            {v: linalg.inverse(m) for v, m in self.comps.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.comps == other.comps
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"RepMorphism({self.source!r} -> {self.target!r})"


def morphism_check(source: Rep, target: Rep, comps) -> RepMorphism:
    """Constructor alias: returns the morphism iff every square commutes."""
    return RepMorphism(source, target, comps)


def _emit_square(
    rows: list,
    ncols: int,
    zero,
    off_u: int,
    shape_u: tuple[int, int],
    P: Matrix,
    off_s: int,
    shape_s: tuple[int, int],
    R: Matrix,
):
    """Append the equations of U.P - R.S = 0 to a coefficient row list.

    U (shape_u, unknown at off_u) and S (shape_s, unknown at off_s) are
    flattened row-major.  Accumulates with += so U and S may be the same
    unknown block (loops, endomorphism systems).
    """
    a_, b_ = shape_u
    d_, c_ = shape_s
    prows = P.to_rows()
    rrows = R.to_rows()
    for i in range(a_):
        for j in range(c_):
            row = [zero] * ncols
            for k in range(b_):
                row[off_u + i * b_ + k] += prows[k][j]
            for l in range(d_):
                row[off_s + l * c_ + j] -= rrows[i][l]
            rows.append(row)


def _hom_layout(a: Rep, b: Rep) -> tuple[dict[str, int], int]:
    """Offsets of the unknown blocks f_v (shape b.dims[v] x a.dims[v])."""
    offsets: dict[str, int] = {}
    n = 0
    for v in a.quiver.vertices:
        offsets[v] = n
        n += b.dims[v] * a.dims[v]
    return offsets, n


def _component_equations(
    rows: list, ncols: int, zero, a: Rep, b: Rep, offsets: Mapping[str, int], base: int
):
    for ar in a.quiver.arrows:
        _emit_square(
            rows,
            ncols,
            zero,
            base + offsets[ar.target],
            (b.dims[ar.target], a.dims[ar.target]),
            a.maps[ar.name],
            base + offsets[ar.source],
            (b.dims[ar.source], a.dims[ar.source]),
            b.maps[ar.name],
        )


def _unflatten_comps(a: Rep, b: Rep, offsets, column, base: int) -> dict[str, Matrix]:
    comps = {}
    for v in a.quiver.vertices:
        nr, nc = b.dims[v], a.dims[v]
        off = base + offsets[v]
        rows = [
            [column[off + i * nc + j] for j in range(nc)] for i in range(nr)
        ]
        comps[v] = Matrix(a.field, rows) if rows else Matrix.zeros(a.field, nr, nc)
    return comps


def _check_hom_pair(a: Rep, b: Rep):
    if a.quiver != b.quiver:
        raise QuiverMismatch("hom between representations of different quivers")
    if a.field != b.field:
        raise FieldMismatch("hom between representations over different fields")


def hom_basis(a: Rep, b: Rep) -> list[RepMorphism]:
    """Deterministic basis of Hom(a, b).

    Flattens every commuting-square condition into one linear system over
    the vertex-map entries (ordered by vertex declaration, row-major) and
    reads the nullspace basis back as morphisms.
    """
    _check_hom_pair(a, b)
    offsets, n = _hom_layout(a, b)
    zero = a.field.zero()
    rows: list = []
    _component_equations(rows, n, zero, a, b, offsets, 0)
    system = Matrix(a.field, rows) if rows else Matrix.zeros(a.field, 0, n)
    basis = linalg.nullspace_basis(system)
    out = []
    for k in range(basis.ncols):
        column = [basis.entry(i, k) for i in range(basis.nrows)]
        out.append(RepMorphism(a, b, _unflatten_comps(a, b, offsets, column, 0)))
    return out


def direct_sum(
    a: Rep, b: Rep
) -> tuple[Rep, tuple[RepMorphism, RepMorphism], tuple[RepMorphism, RepMorphism]]:
    """Biproduct: block-diagonal maps plus canonical injections/projections."""
    _check_hom_pair(a, b)
    field = a.field
    q = a.quiver
    dims = {v: a.dims[v] + b.dims[v] for v in q.vertices}
    maps = {
        ar.name: linalg.block_diag(field, [a.maps[ar.name], b.maps[ar.name]])
        for ar in q.arrows
    }
    total = Rep(q, field, dims, maps)
    i1 = i2 = p1 = p2 = None
    inj1, inj2, pr1, pr2 = {}, {}, {}, {}
    for v in q.vertices:
        na, nb = a.dims[v], b.dims[v]
        ia = Matrix.identity(field, na)
        ib = Matrix.identity(field, nb)
        inj1[v] = linalg.vstack([ia, Matrix.zeros(field, nb, na)])
        inj2[v] = linalg.vstack([Matrix.zeros(field, na, nb), ib])
        pr1[v] = linalg.hstack([ia, Matrix.zeros(field, na, nb)])
        pr2[v] = linalg.hstack([Matrix.zeros(field, nb, na), ib])
    i1 = RepMorphism(a, total, inj1)
    i2 = RepMorphism(b, total, inj2)
    p1 = RepMorphism(total, a, pr1)
    p2 = RepMorphism(total, b, pr2)
    return total, (i1, i2), (p1, p2)


def kernel(f: RepMorphism) -> tuple[Rep, RepMorphism]:
    """Vertex-wise nullspaces with restricted arrow maps; returns (K, inclusion)."""
    src = f.source
    q = src.quiver
    zeta = {v: linalg.nullspace_basis(f.comps[v]) for v in q.vertices}
    kdims = {v: zeta[v].ncols for v in q.vertices}
    kmaps = {}
    for ar in q.arrows:
        kmaps[ar.name] = linalg.solve_through(
            zeta[ar.target], src.maps[ar.name] @ zeta[ar.source]
        )
    K = Rep(q, src.field, kdims, kmaps)
    incl = RepMorphism(K, src, zeta)
    return K, incl


def _cokernel_pieces(f: RepMorphism):
    """Per-vertex (projection, section) pairs for target / image(f)."""
    tgt = f.target
    out = {}
    for v in tgt.quiver.vertices:
        image = linalg.colspace_basis(f.comps[v])
        out[v] = linalg.quotient_projection(image, tgt.dims[v])
    return out


def _cokernel_with_sections(
    f: RepMorphism,
) -> tuple[Rep, RepMorphism, dict[str, Matrix]]:
    tgt = f.target
    q = tgt.quiver
    pieces = _cokernel_pieces(f)
    cdims = {v: pieces[v][0].nrows for v in q.vertices}
    cmaps = {}
    for ar in q.arrows:
        pi_t = pieces[ar.target][0]
        sigma_s = pieces[ar.source][1]
        reduced = pi_t @ tgt.maps[ar.name]
        # independence of the section choice: pi.mu must annihilate im(f)
        if not (reduced @ f.comps[ar.source]).is_zero():
            raise AssertionError(
                f"cokernel map at arrow {ar.name!r} is not well defined"
            )
        cmaps[ar.name] = reduced @ sigma_s
    C = Rep(q, tgt.field, cdims, cmaps)
    proj = RepMorphism(tgt, C, {v: pieces[v][0] for v in q.vertices})
    sections = {v: pieces[v][1] for v in q.vertices}
    return C, proj, sections


def cokernel(f: RepMorphism) -> tuple[Rep, RepMorphism]:
    """Vertex-wise quotients by the image, induced arrow maps; returns (C, projection)."""
    C, proj, _ = _cokernel_with_sections(f)
    return C, proj


@dataclass
class CanonicalDecomposition:
    """The factorization K -> X -> I -> Y -> C of a morphism f: X -> Y.

    k includes the kernel, iota projects onto the image object
    I = Coker(k), j embeds I into the target, c projects onto the
    cokernel.  `checks` records the named verification outcomes; the
    fields hold Rep or NRep values depending on which layer built it.
    """

    K: object
    k: object
    I: object
    iota: object
    j: object
    C: object
    c: object
    checks: dict = dataclass_field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(self.checks.values())


def canonical_decomposition(f: RepMorphism) -> CanonicalDecomposition:
    """K --k--> X --iota--> I --j--> Y --c--> C with j.iota = f."""
    K, k = kernel(f)
    I, iota = cokernel(k)
    q = f.source.quiver
    # j is the unique solution of j.iota = f; iota is epi, so solve transposed
    jcomps = {
        v: linalg.solve_through(
            iota.comps[v].transpose(), f.comps[v].transpose()
        ).transpose()
        for v in q.vertices
    }
    j = RepMorphism(I, f.target, jcomps)
    C, c = cokernel(f)
    checks = {
        "ji_equals_f": j @ iota == f,
        "kernel_annihilates": (f @ k).is_zero(),
        "cokernel_annihilates": (c @ f).is_zero(),
        "image_dims_are_ranks": all(
            I.dims[v] == linalg.rank(f.comps[v]) for v in q.vertices
        ),
        "j_is_mono": all(
            linalg.rank(j.comps[v]) == I.dims[v] for v in q.vertices
        ),
        "image_is_kernel_of_cokernel": (c @ j).is_zero()
        and all(
            I.dims[v] == f.target.dims[v] - linalg.rank(c.comps[v])
            for v in q.vertices
        ),
    }
    return CanonicalDecomposition(K=K, k=k, I=I, iota=iota, j=j, C=C, c=c, checks=checks)


class IndecStatus(Enum):
    INDECOMPOSABLE = "indecomposable"
    DECOMPOSABLE = "decomposable"
    UNKNOWN = "unknown"


@dataclass
class IndecResult:
    status: IndecStatus
    end_dim: int
    certificate: str
    witness: object | None = None  # nontrivial idempotent endomorphism
    summands: tuple | None = None  # (ker(e), ker(id - e)) as objects


def _rand_scalar(rng: random.Random, field: FieldSpec):
    if field.p is None:
        from fractions import Fraction

        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return rng.randrange(field.p)


def _combo(basis, coeffs):
    out = None
    for b, c in zip(basis, coeffs):
        if c == 0:
            continue
        term = b.scale(c)
        out = term if out is None else out + term
    return out


def _idempotent_result(x, e, kernel_fn, ident, end_dim, certificate) -> IndecResult:
    ker_e, _ = kernel_fn(e)
    ker_rest, _ = kernel_fn(ident - e)
    return IndecResult(
        status=IndecStatus.DECOMPOSABLE,
        end_dim=end_dim,
        certificate=certificate,
        witness=e,
        summands=(ker_e, ker_rest),
    )


def _idempotent_search(
    x,
    endos,
    *,
    kernel_fn,
    decomp_fn,
    identity_fn,
    budget: int,
    seed: int,
) -> IndecResult:
    """Shared decision procedure behind indec_status and its n-level twin.

    dim End = 1 certifies indecomposability outright.  Over GF(p) with
    p^dimEnd within budget, every endomorphism is enumerated and tested
    for being a nontrivial idempotent, a complete decision.  Otherwise a
    Fitting search runs: basis elements first, then random combinations;
    f^N (N = total dimension) with proper stable rank yields an
    idempotent through the canonical decomposition of f^N.
    """
    field = x.field
    d = len(endos)
    ident = identity_fn(x)
    total = x.dim_total
    if d == 1:
        return IndecResult(
            status=IndecStatus.INDECOMPOSABLE,
            end_dim=1,
            certificate="endomorphism space is 1-dimensional",
        )
    if field.p is not None and field.p**d <= budget:
        for coeffs in itertools.product(range(field.p), repeat=d):
            e = _combo(endos, coeffs)
            if e is None or e.is_zero() or e == ident:
                continue
            if e @ e == e:
                return _idempotent_result(
                    x,
                    e,
                    kernel_fn,
                    ident,
                    d,
                    "nontrivial idempotent found by enumeration",
                )
        return IndecResult(
            status=IndecStatus.INDECOMPOSABLE,
            end_dim=d,
            certificate=(
                f"no nontrivial idempotent among all {field.p}^{d} endomorphisms"
            ),
        )
    rng = random.Random(seed)
    for trial in range(budget):
        if trial < d:
            f = endos[trial]
        else:
            f = _combo(
                endos, [_rand_scalar(rng, field) for _ in range(d)]
            )
        if f is None or f.is_zero():
            continue
        g = f ** max(total, 1)
        r = g.total_rank()
        if not (0 < r < total):
            continue
        dec = decomp_fn(g)
        # e = j . (iota j)^(-1) . iota is idempotent with im(e) = im(g)
        u = dec.iota @ dec.j
        e = dec.j @ u.inverse() @ dec.iota
        if e @ e == e and not e.is_zero() and e != ident:
            return _idempotent_result(
                x,
                e,
                kernel_fn,
                ident,
                d,
                "Fitting splitting from a sampled endomorphism",
            )
    return IndecResult(
        status=IndecStatus.UNKNOWN,
        end_dim=d,
        certificate=f"budget of {budget} samples exhausted",
    )


def indec_status(x: Rep, budget: int = 4096, seed: int = 0) -> IndecResult:
    """Tri-state indecomposability decision via End(x); see _idempotent_search."""
    if x.is_zero():
        raise ZeroRep("indecomposability is undefined for the zero representation")
    endos = hom_basis(x, x)
    return _idempotent_search(
        x,
        endos,
        kernel_fn=kernel,
        decomp_fn=canonical_decomposition,
        identity_fn=RepMorphism.identity,
        budget=budget,
        seed=seed,
    )
