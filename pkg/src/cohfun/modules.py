"""Finitely presented modules over the base ring, and their morphisms.

A module is stored as a cokernel presentation: ``gens`` generators and a
relation matrix whose *columns* are relations.  A morphism is a matrix on
generators, taken modulo the target's relations; well-definedness and
equality are decided exactly by linear solving.  Kernels, cokernels, Hom
groups, tensor products and direct sums are all computed from Smith
normal form via the lattice primitives in ``linalg``.

Object equality is identity of presentation.  Isomorphism is a separate,
coarser test through canonical forms (free rank plus invariant factors).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .linalg import (
    BaseRing,
    Matrix,
    block_diag,
    express,
    hstack,
    kron,
    preimage_lattice,
    smith_normal_form,
    solve_matrix,
    unvec,
    vec,
    vstack,
)


@dataclass(frozen=True)
class FpModule:
    """coker(rels : ring^m -> ring^gens), with its canonical form cached."""

    ring: BaseRing
    gens: int
    rels: Matrix
    rank: int = field(init=False, compare=False, repr=False)
    invariant_factors: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.rels.ring != self.ring:
            raise ValueError("relation matrix ring mismatch")
        if self.rels.rows != self.gens:
            raise ValueError(
                f"relation matrix has {self.rels.rows} rows for {self.gens} generators"
            )
        diag = smith_normal_form(self.rels).diag
        object.__setattr__(self, "rank", self.gens - len(diag))
        object.__setattr__(
            self,
            "invariant_factors",
            tuple(d for d in diag if not self.ring.is_unit(d)),
        )

    @staticmethod
    def free(ring: BaseRing, n: int) -> "FpModule":
        return FpModule(ring, n, Matrix.zeros(ring, n, 0))

    @staticmethod
    def zero(ring: BaseRing) -> "FpModule":
        return FpModule.free(ring, 0)

    @staticmethod
    def cyclic(ring: BaseRing, d: int) -> "FpModule":
        return FpModule(ring, 1, Matrix.from_rows(ring, [[d]]))

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    @property
    def is_free(self) -> bool:
        return self.rels.is_zero

    @property
    def is_finite(self) -> bool:
        if self.ring.is_field:
            return True
        return self.rank == 0

    def cardinality(self) -> int | None:
        """Number of elements, or None when infinite."""
        if self.ring.is_field:
            return self.ring.p ** self.rank
        if self.rank > 0:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= abs(d)
        return n

    def describe(self) -> str:
        return render_group(self.ring, self.rank, self.invariant_factors)


def render_group(ring: BaseRing, rank: int, factors: tuple[int, ...]) -> str:
    """Canonical group string: "0" | "Z^r" | "Z/d" joined by " + ".

    Over a prime field every module is ring^rank; as an abelian group
    that is rank copies of Z/p, which is how it is rendered so the same
    grammar covers both rings.
    """
    parts: list[str] = []
    if ring.is_field:
        parts.extend([f"Z/{ring.p}"] * rank)
    else:
        if rank:
            parts.append(f"Z^{rank}")
        parts.extend(f"Z/{d}" for d in factors)
    return " + ".join(parts) if parts else "0"


def canonical_form(a: FpModule) -> tuple[int, tuple[int, ...]]:
    """Free rank and invariant factors d_1 | d_2 | ... (no unit factors)."""
    return a.rank, a.invariant_factors


def isomorphic(a: FpModule, b: FpModule) -> bool:
    return a.ring == b.ring and canonical_form(a) == canonical_form(b)


@dataclass(frozen=True, eq=False)
class ModMorphism:
    """Morphism of presentations: a (target.gens x source.gens) matrix.

    It acts on generator-coordinate columns by left multiplication.
    Construction checks well-definedness: mat @ rels_source must land in
    the column span of rels_target.  Equality is modulo the target's
    relations, so it is *not* entry-wise equality of matrices.
    """

    source: FpModule
    target: FpModule
    mat: Matrix

    def __post_init__(self) -> None:
        if self.source.ring != self.target.ring or self.mat.ring != self.source.ring:
            raise ValueError("ring mismatch in morphism")
        if self.mat.rows != self.target.gens or self.mat.cols != self.source.gens:
            raise ValueError(
                f"morphism matrix is {self.mat.rows}x{self.mat.cols}, expected "
                f"{self.target.gens}x{self.source.gens}"
            )
        if solve_matrix(self.target.rels, self.mat @ self.source.rels) is None:
            raise ValueError("ill-defined morphism: image of relations is not a relation")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModMorphism):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return solve_matrix(self.target.rels, self.mat - other.mat) is not None

    __hash__ = None  # semantic equality is coarser than the raw data

    def __add__(self, other: "ModMorphism") -> "ModMorphism":
        self._same_endpoints(other)
        return ModMorphism(self.source, self.target, self.mat + other.mat)

    def __sub__(self, other: "ModMorphism") -> "ModMorphism":
        self._same_endpoints(other)
        return ModMorphism(self.source, self.target, self.mat - other.mat)

    def __neg__(self) -> "ModMorphism":
        return ModMorphism(self.source, self.target, -self.mat)

    def scale(self, c: int) -> "ModMorphism":
        return ModMorphism(self.source, self.target, self.mat.scale(c))

    @property
    def is_zero(self) -> bool:
        return solve_matrix(self.target.rels, self.mat) is not None

    def _same_endpoints(self, other: "ModMorphism") -> None:
        if self.source != other.source or self.target != other.target:
            raise ValueError("morphism endpoints differ")

    def key(self) -> tuple:
        """Raw presentation data; usable as a cache key (finer than ==)."""
        return (self.source, self.target, self.mat)


def identity_mor(a: FpModule) -> ModMorphism:
    return ModMorphism(a, a, Matrix.identity(a.ring, a.gens))


def zero_mor(a: FpModule, b: FpModule) -> ModMorphism:
    return ModMorphism(a, b, Matrix.zeros(a.ring, b.gens, a.gens))


def compose_mor(psi: ModMorphism, phi: ModMorphism) -> ModMorphism:
    """psi after phi; endpoints are matched by presentation identity."""
    if phi.target != psi.source:
        raise ValueError("composition endpoint mismatch")
    return ModMorphism(phi.source, psi.target, psi.mat @ phi.mat)


def kernel_mor(phi: ModMorphism) -> tuple[FpModule, ModMorphism]:
    """Kernel with its inclusion; the inclusion is mono by construction.

    Generators are lattice generators of {x : phi(x) == 0 in target};
    relations are the coefficient vectors landing in the source's
    relation span.
    """
    ktilde = preimage_lattice(phi.mat, phi.target.rels)
    rels = preimage_lattice(ktilde, phi.source.rels)
    k = FpModule(phi.source.ring, ktilde.cols, rels)
    return k, ModMorphism(k, phi.source, ktilde)


def cokernel_mor(phi: ModMorphism) -> tuple[FpModule, ModMorphism]:
    """Cokernel: adjoin the image columns to the target's relations."""
    c = FpModule(phi.target.ring, phi.target.gens, hstack(phi.target.rels, phi.mat))
    return c, ModMorphism(phi.target, c, Matrix.identity(phi.target.ring, phi.target.gens))


def image_mor(phi: ModMorphism) -> tuple[FpModule, ModMorphism]:
    """Image as a submodule of the target, with its inclusion."""
    rels = preimage_lattice(phi.mat, phi.target.rels)
    im = FpModule(phi.source.ring, phi.source.gens, rels)
    return im, ModMorphism(im, phi.target, phi.mat)


def coimage_mor(phi: ModMorphism) -> tuple[FpModule, ModMorphism]:
    """Coimage source/ker(phi), with the projection from the source."""
    _, incl = kernel_mor(phi)
    return cokernel_mor(incl)


def is_mono(phi: ModMorphism) -> bool:
    return kernel_mor(phi)[0].is_zero


def is_epi(phi: ModMorphism) -> bool:
    return cokernel_mor(phi)[0].is_zero


def is_iso(phi: ModMorphism) -> bool:
    return is_mono(phi) and is_epi(phi)


def factor_through_kernel(phi: ModMorphism, psi: ModMorphism) -> ModMorphism | None:
    """Given phi∘psi == 0, a lift of psi through the kernel inclusion."""
    k, incl = kernel_mor(phi)
    coeff = express(incl.mat, phi.source.rels, psi.mat)
    if coeff is None:
        return None
    return ModMorphism(psi.source, k, coeff)


@dataclass(frozen=True, eq=False)
class HomGroup:
    """Hom(source, target) as a finitely presented abelian group.

    ``reps`` realizes each generator as a genuine morphism; ``coords``
    and ``from_coords`` convert between morphisms and coordinate columns
    (mutually inverse modulo the group's relations).
    """

    source: FpModule
    target: FpModule
    group: FpModule
    reps: tuple[ModMorphism, ...]
    gen_mat: Matrix  # vec'd generator matrices, one column per generator

    def coords(self, phi: ModMorphism) -> Matrix:
        if phi.source != self.source or phi.target != self.target:
            raise ValueError("morphism does not belong to this Hom group")
        zero_rels = kron(self.target.rels, Matrix.identity(self.source.ring, self.source.gens))
        c = express(self.gen_mat, zero_rels, vec(phi.mat))
        if c is None:
            raise ValueError("morphism is not generated; Hom group is inconsistent")
        return c

    def from_coords(self, coeffs: Matrix) -> ModMorphism:
        if coeffs.rows != self.group.gens or coeffs.cols != 1:
            raise ValueError("bad coordinate column")
        col = self.gen_mat @ coeffs
        mat = unvec(self.source.ring, col, self.target.gens, self.source.gens)
        return ModMorphism(self.source, self.target, mat)


def _hom_group_uncached(a: FpModule, b: FpModule) -> HomGroup:
    ring = a.ring
    na, ma = a.gens, a.rels.cols
    nb, mb = b.gens, b.rels.cols
    n = nb * na
    ident_na = Matrix.identity(ring, na)
    if a.is_free and ma == 0:
        # Hom(ring^na, B) is B^na on the nose; skip the kernel computation.
        gen_mat = Matrix.identity(ring, n)
        rels = kron(b.rels, ident_na)
    else:
        # {T : T @ rels_a == rels_b @ W} as a sublattice of Z^(nb*na),
        # via vec(T @ rels_a) == kron(I, rels_a^T) vec(T).
        cond = kron(Matrix.identity(ring, nb), a.rels.transpose())
        modw = kron(b.rels, Matrix.identity(ring, ma))
        gen_mat = preimage_lattice(cond, modw)
        rels = preimage_lattice(gen_mat, kron(b.rels, ident_na))
    group = FpModule(ring, gen_mat.cols, rels)
    reps = tuple(
        ModMorphism(a, b, unvec(ring, gen_mat.col(j), nb, na)) for j in range(gen_mat.cols)
    )
    return HomGroup(source=a, target=b, group=group, reps=reps, gen_mat=gen_mat)


@lru_cache(maxsize=None)
def _hom_group_cached(a: FpModule, b: FpModule) -> HomGroup:
    return _hom_group_uncached(a, b)


def hom_group(a: FpModule, b: FpModule) -> HomGroup:
    if a.ring != b.ring:
        raise ValueError("Hom between modules over different rings")
    return _hom_group_cached(a, b)


def tensor_module(a: FpModule, b: FpModule) -> FpModule:
    """Tensor product; generator (i, j) sits at flat index i*b.gens + j."""
    if a.ring != b.ring:
        raise ValueError("tensor of modules over different rings")
    ring = a.ring
    rels = hstack(
        kron(a.rels, Matrix.identity(ring, b.gens)),
        kron(Matrix.identity(ring, a.gens), b.rels),
    )
    return FpModule(ring, a.gens * b.gens, rels)


def direct_sum(
    a: FpModule, b: FpModule
) -> tuple[FpModule, ModMorphism, ModMorphism, ModMorphism, ModMorphism]:
    """Biproduct with (inj_a, inj_b, proj_a, proj_b)."""
    if a.ring != b.ring:
        raise ValueError("direct sum of modules over different rings")
    ring = a.ring
    s = FpModule(ring, a.gens + b.gens, block_diag(a.rels, b.rels))
    za = Matrix.zeros(ring, a.gens, b.gens)
    zb = Matrix.zeros(ring, b.gens, a.gens)
    ia, ib = Matrix.identity(ring, a.gens), Matrix.identity(ring, b.gens)
    inj_a = ModMorphism(a, s, vstack(ia, zb))
    inj_b = ModMorphism(b, s, vstack(za, ib))
    proj_a = ModMorphism(s, a, hstack(ia, za))
    proj_b = ModMorphism(s, b, hstack(zb, ib))
    return s, inj_a, inj_b, proj_a, proj_b


def free_presentation(a: FpModule) -> tuple[ModMorphism, ModMorphism]:
    """The stored presentation ring^m -> ring^n -> a -> 0, read off directly."""
    ring = a.ring
    cover = FpModule.free(ring, a.gens)
    syz = FpModule.free(ring, a.rels.cols)
    d = ModMorphism(syz, cover, a.rels)
    pi = ModMorphism(cover, a, Matrix.identity(ring, a.gens))
    return d, pi


def lift_through_epi(phi: ModMorphism, e: ModMorphism) -> ModMorphism:
    """A lift of phi through the epimorphism e, for free phi.source.

    Solves e∘lam == phi column by column; existence is guaranteed by
    projectivity of free modules.
    """
    if not phi.source.is_free:
        raise ValueError("lift_through_epi requires a free source")
    if phi.target != e.target:
        raise ValueError("lift_through_epi: targets differ")
    if not is_epi(e):
        raise ValueError("lift_through_epi: e is not an epimorphism")
    coeff = express(e.mat, e.target.rels, phi.mat)
    if coeff is None:
        raise ValueError("lift failed although e is epi; inconsistent presentations")
    return ModMorphism(phi.source, e.source, coeff)
