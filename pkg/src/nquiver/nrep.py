"""n-representations: a chain of quiver representations tied by connectors.

An NRep holds one representation per quiver in a tuple plus, for every
adjacent pair of levels, one connector matrix per pair of arrows
(gamma, delta) with gamma in the lower quiver and delta in the upper:
the connector maps the lower component's space at t(gamma) into the
upper component's space at s(delta).  Morphisms add one commuting
square per connector on top of the per-level squares; all squares are
enforced at construction.  Kernels, cokernels, direct sums, and the
canonical decomposition are computed level-wise with induced
connectors, and indecomposability reuses the endomorphism search of the
single-quiver layer.

Levels are numbered 1..n in the public API and messages; internal lists
are 0-based.  Connector level m (2..n) sits between components m-1 and m.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from . import linalg
from .errors import (
    ComponentQuiverMismatch,
    EndpointMismatch,
    FieldMismatch,
    IndexOutOfRange,
    NonCommutingSquare,
    QuiverMismatch,
    ShapeMismatch,
    ZeroNRep,
)
from .linalg import Matrix
from .quiver import Quiver, arrow_pairs
from .rep import (
    CanonicalDecomposition,
    IndecResult,
    Rep,
    RepMorphism,
    _cokernel_with_sections,
    _component_equations,
    _emit_square,
    _first_deviation,
    _idempotent_search,
    _unflatten_comps,
    direct_sum,
    kernel,
)

ConnKey = tuple[str, str]


class NRep:
    """A tuple of representations joined by connector matrices.

    `components[i]` is a Rep of `quivers[i]`; `connectors[i]` maps each
    (lower arrow name, upper arrow name) pair between levels i+1 and i+2
    to its matrix.  Absent connector entries zero-fill.
    """

    __slots__ = ("quivers", "field", "components", "connectors")

    def __init__(
        self,
        quivers: Sequence[Quiver],
        components: Sequence[Rep],
        connectors: Sequence[Mapping[ConnKey, object]] | None = None,
    ):
        quivers = tuple(quivers)
        components = tuple(components)
        if not quivers:
            raise ValueError("an n-representation needs at least one level")
        if len(components) != len(quivers):
            raise ComponentQuiverMismatch(
                f"{len(components)} components for {len(quivers)} quivers"
            )
        field = components[0].field
        for i, (q, comp) in enumerate(zip(quivers, components), start=1):
            if comp.quiver != q:
                raise ComponentQuiverMismatch(
                    f"component at level {i} is not a representation of its quiver"
                )
            if comp.field != field:
                raise FieldMismatch(f"component at level {i} is over {comp.field}")
        n = len(quivers)
        given: list[dict[ConnKey, object]] = [dict() for _ in range(n - 1)]
        if connectors is not None:
            supplied = list(connectors)
            if len(supplied) != n - 1:
                raise ShapeMismatch(
                    f"{len(supplied)} connector levels for {n} components"
                )
            given = [dict(lvl or {}) for lvl in supplied]
        full: list[dict[ConnKey, Matrix]] = []
        for i in range(n - 1):
            pairs = arrow_pairs(quivers[i], quivers[i + 1])
            valid_keys = {(g1.name, g2.name) for g1, g2 in pairs}
            for key in given[i]:
                if key not in valid_keys:
                    raise QuiverMismatch(
                        f"connector for unknown arrow pair {key!r} "
                        f"at level {i + 2}"
                    )
            level: dict[ConnKey, Matrix] = {}
            for g1, g2 in pairs:
                key = (g1.name, g2.name)
                want = (
                    components[i + 1].dims[g2.source],
                    components[i].dims[g1.target],
                )
                m = given[i].get(key)
                if m is None:
                    m = Matrix.zeros(field, *want)
                elif not isinstance(m, Matrix):
                    m = Matrix(field, m)
                if m.field != field:
                    raise FieldMismatch(
                        f"connector {key!r} at level {i + 2} is over {m.field}"
                    )
                if m.shape != want:
                    raise ShapeMismatch(
                        f"connector {key!r} at level {i + 2} has shape "
                        f"{m.shape}, expected {want}"
                    )
                level[key] = m
            full.append(level)
        object.__setattr__(self, "quivers", quivers)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "connectors", tuple(full))

    def __setattr__(self, name, value):
        raise AttributeError("NRep is immutable")

    @property
    def n(self) -> int:
        return len(self.quivers)

    @property
    def dim_total(self) -> int:
        return sum(c.dim_total for c in self.components)

    def is_zero(self) -> bool:
        return self.dim_total == 0

    def level(self, m: int) -> Rep:
        """Component at level m (1-based)."""
        if not 1 <= m <= self.n:
            raise IndexOutOfRange(f"level {m} outside 1..{self.n}")
        return self.components[m - 1]

    def connector(self, m: int, lower_arrow: str, upper_arrow: str) -> Matrix:
        """Connector at level m (2-based: between components m-1 and m)."""
        if not 2 <= m <= self.n:
            raise IndexOutOfRange(f"connector level {m} outside 2..{self.n}")
        key = (lower_arrow, upper_arrow)
        try:
            return self.connectors[m - 2][key]
        except KeyError:
            raise QuiverMismatch(f"no arrow pair {key!r} at level {m}") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, NRep):
            return NotImplemented
        return (
            self.quivers == other.quivers
            and self.field == other.field
            and self.components == other.components
            and self.connectors == other.connectors
        )

    __hash__ = None

    def __repr__(self) -> str:
        dims = [c.dims for c in self.components]
        return f"NRep({self.field}, n={self.n}, dims={dims})"


def nrep_check(quivers, components, connectors=None) -> NRep:
    """Constructor alias: validates shapes and zero-fills absent connectors."""
    return NRep(quivers, components, connectors)


def _check_pair(a: NRep, b: NRep):
    if a.quivers != b.quivers:
        raise QuiverMismatch("n-representations live on different quiver tuples")
    if a.field != b.field:
        raise FieldMismatch("n-representations live over different fields")


class NRepMorphism:
    """A level-indexed family of Rep morphisms with commuting connector squares."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source: NRep, target: NRep, comps: Sequence):
        _check_pair(source, target)
        comps = list(comps)
        if len(comps) != source.n:
            raise EndpointMismatch(
                f"{len(comps)} level maps for {source.n} levels"
            )
        built: list[RepMorphism] = []
        for i, f in enumerate(comps):
            if isinstance(f, RepMorphism):
                if f.source != source.components[i] or f.target != target.components[i]:
                    raise EndpointMismatch(
                        f"level {i + 1} map does not match the components"
                    )
            else:
                f = RepMorphism(source.components[i], target.components[i], f)
            built.append(f)
        for i in range(source.n - 1):
            for g1, g2 in arrow_pairs(source.quivers[i], source.quivers[i + 1]):
                key = (g1.name, g2.name)
                lhs = built[i + 1].comps[g2.source] @ source.connectors[i][key]
                rhs = target.connectors[i][key] @ built[i].comps[g1.target]
                diff = lhs - rhs
                if not diff.is_zero():
                    entry, dev = _first_deviation(diff)
                    raise NonCommutingSquare(
                        f"connector {key!r} at level {i + 2}", entry, dev
                    )
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "comps", tuple(built))

    def __setattr__(self, name, value):
        raise AttributeError("NRepMorphism is immutable")

    @classmethod
    def identity(cls, x: NRep) -> "NRepMorphism":
        return cls(x, x, [RepMorphism.identity(c) for c in x.components])

    @classmethod
    def zero(cls, source: NRep, target: NRep) -> "NRepMorphism":
        return cls(
            source,
            target,
            [
                RepMorphism.zero(s, t)
                for s, t in zip(source.components, target.components)
            ],
        )

    def __matmul__(self, other: "NRepMorphism") -> "NRepMorphism":
        if not isinstance(other, NRepMorphism):
            return NotImplemented
        if other.target != self.source:
            raise EndpointMismatch("morphisms do not compose")
        return NRepMorphism(
            other.source,
            self.target,
            [g @ f for g, f in zip(self.comps, other.comps)],
        )

    def __add__(self, other: "NRepMorphism") -> "NRepMorphism":
        if not isinstance(other, NRepMorphism):
            return NotImplemented
        if other.source != self.source or other.target != self.target:
            raise EndpointMismatch("morphisms have different endpoints")
        return NRepMorphism(
            self.source,
            self.target,
            [f + g for f, g in zip(self.comps, other.comps)],
        )

    def __sub__(self, other: "NRepMorphism") -> "NRepMorphism":
        if not isinstance(other, NRepMorphism):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "NRepMorphism":
        return self.scale(-1)

    def scale(self, c) -> "NRepMorphism":
        return NRepMorphism(self.source, self.target, [f.scale(c) for f in self.comps])

    def __pow__(self, n: int) -> "NRepMorphism":
        if self.source != self.target:
            raise EndpointMismatch("power of a non-endomorphism")
        return NRepMorphism(self.source, self.target, [f**n for f in self.comps])

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.comps)

    def is_identity(self) -> bool:
        return self.source == self.target and all(f.is_identity() for f in self.comps)

    def total_rank(self) -> int:
        return sum(f.total_rank() for f in self.comps)

    def inverse(self) -> "NRepMorphism":
        return NRepMorphism(self.target, self.source, [f.inverse() for f in self.comps])

    def __eq__(self, other) -> bool:
        if not isinstance(other, NRepMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.comps == other.comps
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"NRepMorphism(n={self.source.n})"


def nmorphism_check(source: NRep, target: NRep, comps) -> NRepMorphism:
    """Constructor alias: the morphism iff all component and connector squares commute."""
    return NRepMorphism(source, target, comps)


def compose(g: NRepMorphism, f: NRepMorphism) -> NRepMorphism:
    return g @ f


def add(f: NRepMorphism, g: NRepMorphism) -> NRepMorphism:
    return f + g


def scale(lam, f: NRepMorphism) -> NRepMorphism:
    return f.scale(lam)


def nhom_basis(a: NRep, b: NRep) -> list[NRepMorphism]:
    """Deterministic basis of the space of morphisms a -> b.

    One linear system stacks every per-level commuting-square equation
    with every connector-square equation; unknowns are the entries of
    the level maps, ordered by level, then vertex declaration order,
    row-major within each block.
    """
    _check_pair(a, b)
    zero = a.field.zero()
    offsets: dict[tuple[int, str], int] = {}
    n = 0
    for li in range(a.n):
        for v in a.quivers[li].vertices:
            offsets[(li, v)] = n
            n += b.components[li].dims[v] * a.components[li].dims[v]
    rows: list = []
    for li in range(a.n):
        level_off = {v: offsets[(li, v)] for v in a.quivers[li].vertices}
        _component_equations(
            rows, n, zero, a.components[li], b.components[li], level_off, 0
        )
    for li in range(a.n - 1):
        for g1, g2 in arrow_pairs(a.quivers[li], a.quivers[li + 1]):
            key = (g1.name, g2.name)
            _emit_square(
                rows,
                n,
                zero,
                offsets[(li + 1, g2.source)],
                (
                    b.components[li + 1].dims[g2.source],
                    a.components[li + 1].dims[g2.source],
                ),
                a.connectors[li][key],
                offsets[(li, g1.target)],
                (
                    b.components[li].dims[g1.target],
                    a.components[li].dims[g1.target],
                ),
                b.connectors[li][key],
            )
    system = Matrix(a.field, rows) if rows else Matrix.zeros(a.field, 0, n)
    basis = linalg.nullspace_basis(system)
    out = []
    for kcol in range(basis.ncols):
        column = [basis.entry(i, kcol) for i in range(basis.nrows)]
        comps = []
        for li in range(a.n):
            level_off = {v: offsets[(li, v)] for v in a.quivers[li].vertices}
            cd = _unflatten_comps(
                a.components[li], b.components[li], level_off, column, 0
            )
            comps.append(RepMorphism(a.components[li], b.components[li], cd))
        out.append(NRepMorphism(a, b, comps))
    return out


def ndirect_sum(
    a: NRep, b: NRep
) -> tuple[NRep, tuple[NRepMorphism, NRepMorphism], tuple[NRepMorphism, NRepMorphism]]:
    """Level-wise biproduct with block-diagonal connectors."""
    _check_pair(a, b)
    totals, inj1, inj2, pr1, pr2 = [], [], [], [], []
    for ca, cb in zip(a.components, b.components):
        total, (i1, i2), (p1, p2) = direct_sum(ca, cb)
        totals.append(total)
        inj1.append(i1)
        inj2.append(i2)
        pr1.append(p1)
        pr2.append(p2)
    connectors = []
    for li in range(a.n - 1):
        level = {
            key: linalg.block_diag(a.field, [a.connectors[li][key], b.connectors[li][key]])
            for key in a.connectors[li]
        }
        connectors.append(level)
    total = NRep(a.quivers, totals, connectors)
    return (
        total,
        (NRepMorphism(a, total, inj1), NRepMorphism(b, total, inj2)),
        (NRepMorphism(total, a, pr1), NRepMorphism(total, b, pr2)),
    )


def nkernel(f: NRepMorphism) -> tuple[NRep, NRepMorphism]:
    """Level-wise kernels; connectors restrict through the inclusions."""
    src = f.source
    pieces = [kernel(fm) for fm in f.comps]
    kcomps = [K for K, _ in pieces]
    incls = [z for _, z in pieces]
    connectors = []
    for li in range(src.n - 1):
        level = {}
        for key, psi in src.connectors[li].items():
            g1t = src.quivers[li].arrow(key[0]).target
            g2s = src.quivers[li + 1].arrow(key[1]).source
            # psi maps ker into ker because the connector square for f commutes
            level[key] = linalg.solve_through(
                incls[li + 1].comps[g2s], psi @ incls[li].comps[g1t]
            )
        connectors.append(level)
    K = NRep(src.quivers, kcomps, connectors)
    return K, NRepMorphism(K, src, incls)


def ncokernel(f: NRepMorphism) -> tuple[NRep, NRepMorphism]:
    """Level-wise cokernels; connectors descend through chosen sections."""
    tgt = f.target
    pieces = [_cokernel_with_sections(fm) for fm in f.comps]
    ccomps = [C for C, _, _ in pieces]
    projs = [p for _, p, _ in pieces]
    sections = [s for _, _, s in pieces]
    connectors = []
    for li in range(tgt.n - 1):
        level = {}
        for key, psi in tgt.connectors[li].items():
            g1t = tgt.quivers[li].arrow(key[0]).target
            g2s = tgt.quivers[li + 1].arrow(key[1]).source
            reduced = projs[li + 1].comps[g2s] @ psi
            # independence of the section: the reduced map must kill im(f)
            if not (reduced @ f.comps[li].comps[g1t]).is_zero():
                raise AssertionError(
                    f"cokernel connector {key!r} at level {li + 2} "
                    f"is not well defined"
                )
            level[key] = reduced @ sections[li][g1t]
        connectors.append(level)
    C = NRep(tgt.quivers, ccomps, connectors)
    return C, NRepMorphism(tgt, C, projs)


def ncanonical_decomposition(f: NRepMorphism) -> CanonicalDecomposition:
    """K --k--> X --iota--> I --j--> Y --c--> C with j.iota = f, level-wise."""
    K, k = nkernel(f)
    I, iota = ncokernel(k)
    jcomps = []
    for li in range(f.source.n):
        comps = {
            v: linalg.solve_through(
                iota.comps[li].comps[v].transpose(),
                f.comps[li].comps[v].transpose(),
            ).transpose()
            for v in f.source.quivers[li].vertices
        }
        jcomps.append(RepMorphism(I.components[li], f.target.components[li], comps))
    j = NRepMorphism(I, f.target, jcomps)
    C, c = ncokernel(f)
    ranks = {
        (li, v): linalg.rank(f.comps[li].comps[v])
        for li in range(f.source.n)
        for v in f.source.quivers[li].vertices
    }
    checks = {
        "ji_equals_f": j @ iota == f,
        "kernel_annihilates": (f @ k).is_zero(),
        "cokernel_annihilates": (c @ f).is_zero(),
        "image_dims_are_ranks": all(
            I.components[li].dims[v] == r for (li, v), r in ranks.items()
        ),
        "j_is_mono": all(
            linalg.rank(j.comps[li].comps[v]) == I.components[li].dims[v]
            for li in range(f.source.n)
            for v in f.source.quivers[li].vertices
        ),
        "image_is_kernel_of_cokernel": (c @ j).is_zero()
        and all(
            I.components[li].dims[v]
            == f.target.components[li].dims[v] - linalg.rank(c.comps[li].comps[v])
            for li in range(f.source.n)
            for v in f.source.quivers[li].vertices
        ),
    }
    return CanonicalDecomposition(K=K, k=k, I=I, iota=iota, j=j, C=C, c=c, checks=checks)


def nindec_status(x: NRep, budget: int = 4096, seed: int = 0) -> IndecResult:
    """Tri-state indecomposability over the endomorphism space of x."""
    if x.is_zero():
        raise ZeroNRep(
            "indecomposability is undefined for the zero n-representation"
        )
    endos = nhom_basis(x, x)
    return _idempotent_search(
        x,
        endos,
        kernel_fn=nkernel,
        decomp_fn=ncanonical_decomposition,
        identity_fn=NRepMorphism.identity,
        budget=budget,
        seed=seed,
    )


def embed_component(quivers: Sequence[Quiver], j: int, v: Rep) -> NRep:
    """The n-representation with v at level j (1-based) and zero elsewhere."""
    quivers = tuple(quivers)
    if not 1 <= j <= len(quivers):
        raise IndexOutOfRange(f"level {j} outside 1..{len(quivers)}")
    if v.quiver != quivers[j - 1]:
        raise QuiverMismatch(f"rep is not a representation of the level-{j} quiver")
    comps = [
        v if i == j - 1 else Rep.zero(q, v.field) for i, q in enumerate(quivers)
    ]
    return NRep(quivers, comps)


def truncate(x: NRep, m: int) -> NRep:
    """First m levels (1-based) with their connectors."""
    if not 1 <= m <= x.n:
        raise IndexOutOfRange(f"level {m} outside 1..{x.n}")
    return NRep(x.quivers[:m], x.components[:m], x.connectors[: m - 1])
