"""Independent brute-force verification layer.

Nothing here trusts the Hom-group machinery it is checking: finite
modules are enumerated element by element, Hom sets by filtering all
generator-image assignments, and group types are recovered by counting
solutions of p^j * x == 0.  Exactness of functor sequences is decided
pointwise on a probe battery with exact two-sided subgroup membership.

Random instance generation is seeded and splits its stream per case
index, so runs are reproducible bit for bit.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from .linalg import BaseRing, Matrix, express, hstack, preimage_lattice, solve_matrix
from .modules import (
    FpModule,
    ModMorphism,
    canonical_form,
    cokernel_mor,
    compose_mor,
    hom_group,
    identity_mor,
    image_mor,
    is_iso,
    is_mono,
    smith_normal_form,
    zero_mor,
)
from .functors import (
    CoherentFunctor,
    NatMorphism,
    coker_nat,
    compose_nat,
    evaluate,
    evaluate_mor,
    evaluate_nat,
    four_term,
    identity_nat,
    injective_resolution,
    inj_stabilize,
    is_inj_stable,
    is_injective_functor,
    is_proj_stable,
    is_representable,
    is_zero_functor,
    ker_nat,
    l0_functor,
    nat_group,
    proj_stabilize,
    r0_functor,
    w_mor,
    w_of,
    yoneda_embed,
    yoneda_mor,
    zero_nat,
)
from .formats import instance_payload

DEFAULT_ENUM_CAP = 4096


@dataclass(frozen=True)
class ProbeBattery:
    """The modules every pointwise check is evaluated at."""

    probes: tuple[FpModule, ...]
    seed: int = 0
    case_count: int = 100

    def __post_init__(self) -> None:
        if not self.probes:
            raise ValueError("probe battery must be nonempty")
        ring = self.probes[0].ring
        if any(p.ring != ring for p in self.probes):
            raise ValueError("probe battery mixes rings")

    @property
    def ring(self) -> BaseRing:
        return self.probes[0].ring


def default_battery(ring: BaseRing, seed: int = 0, case_count: int = 100) -> ProbeBattery:
    if ring.is_field:
        probes = tuple(FpModule.free(ring, n) for n in (1, 2, 3))
    else:
        z_sum_c2 = FpModule(ring, 2, Matrix.from_rows(ring, [[0], [2]]))
        probes = (
            FpModule.free(ring, 1),
            FpModule.cyclic(ring, 2),
            FpModule.cyclic(ring, 3),
            FpModule.cyclic(ring, 4),
            FpModule.cyclic(ring, 6),
            z_sum_c2,
            FpModule.cyclic(ring, 8),
            FpModule.cyclic(ring, 9),
        )
    return ProbeBattery(probes=probes, seed=seed, case_count=case_count)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named check over many cases."""

    name: str
    passed: bool
    cases: int
    failures: tuple[dict, ...] = ()
    seconds: float = 0.0
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" [{self.note}]" if self.note else ""
        return f"{status} {self.name} (cases={self.cases}){extra}"


# ---------------------------------------------------------------------------
# element-level enumeration


class _Elements:
    """Explicit element table of a finite module (or F_p vector space)."""

    def __init__(self, module: FpModule, cap: int = DEFAULT_ENUM_CAP):
        ring = module.ring
        snf = smith_normal_form(module.rels)
        if ring.is_field:
            moduli = [1] * len(snf.diag) + [ring.p] * (module.gens - len(snf.diag))
        else:
            if module.rank:
                raise ValueError(
                    f"cannot enumerate an infinite module (free rank {module.rank})"
                )
            moduli = list(snf.diag)
        order = 1
        for m in moduli:
            order *= m
        if order > cap:
            raise ValueError(f"module order {order} exceeds enumeration cap {cap}")
        self.module = module
        self.ring = ring
        self.moduli = tuple(moduli)
        self.order = order
        self._u = snf.u
        self._u_inv = solve_matrix(snf.u, Matrix.identity(ring, module.gens))

    def all(self) -> list[tuple[int, ...]]:
        return [tuple(z) for z in itertools.product(*(range(m) for m in self.moduli))]

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.moduli)

    def add(self, z1, z2) -> tuple[int, ...]:
        return tuple((a + b) % m for a, b, m in zip(z1, z2, self.moduli))

    def smul(self, c: int, z) -> tuple[int, ...]:
        return tuple((c * a) % m for a, m in zip(z, self.moduli))

    def from_gencoords(self, col: Matrix) -> tuple[int, ...]:
        z = self._u @ col
        return tuple(z.entries[i][0] % m for i, m in enumerate(self.moduli))

    def to_gencoords(self, z) -> Matrix:
        return self._u_inv @ Matrix.column(self.ring, list(z))


def _enum_homs(src: FpModule, elems: _Elements, cap: int) -> list[tuple]:
    """All morphisms src -> elems.module as flat element tuples.

    A morphism is one element per generator, filtered by the relations;
    the flat tuple concatenates the element coordinates.
    """
    n = src.gens
    if elems.order ** n > cap:
        raise ValueError(
            f"Hom enumeration size {elems.order}^{n} exceeds cap {cap}"
        )
    rel_cols = [
        [src.rels.entries[i][j] for i in range(n)] for j in range(src.rels.cols)
    ]
    out = []
    for assignment in itertools.product(elems.all(), repeat=n):
        ok = True
        for col in rel_cols:
            acc = elems.zero()
            for c, z in zip(col, assignment):
                if c:
                    acc = elems.add(acc, elems.smul(c, z))
            if any(acc):
                ok = False
                break
        if ok:
            out.append(tuple(x for z in assignment for x in z))
    return out


def _flat_group_invariants(
    elements: list[tuple], moduli: tuple[int, ...]
) -> tuple[int, ...]:
    """Invariant factors of a finite group given as flat tuples.

    Determined purely by counting solutions of p^j * x == 0, prime by
    prime, so the answer owes nothing to Smith normal form.
    """

    def smul(c, z):
        return tuple((c * a) % m for a, m in zip(z, moduli))

    n = len(elements)
    if n <= 1:
        return ()
    factors_by_prime: dict[int, list[int]] = {}
    rest = n
    p = 2
    primes = []
    while p * p <= rest:
        if rest % p == 0:
            primes.append(p)
            while rest % p == 0:
                rest //= p
        p += 1
    if rest > 1:
        primes.append(rest)
    for p in primes:
        lam = [0]
        j = 1
        while True:
            cnt = sum(1 for z in elements if not any(smul(p ** j, z)))
            e = 0
            while p ** e < cnt:
                e += 1
            if p ** e != cnt:
                raise AssertionError("non-group count in invariant recovery")
            lam.append(e)
            if len(lam) > 2 and lam[-1] == lam[-2]:
                break
            j += 1
        mu = [lam[i] - lam[i - 1] for i in range(1, len(lam))]
        exps = []
        for i, m_geq in enumerate(mu):
            nxt = mu[i + 1] if i + 1 < len(mu) else 0
            exps.extend([i + 1] * (m_geq - nxt))
        factors_by_prime[p] = sorted(exps, reverse=True)
    width = max(len(v) for v in factors_by_prime.values())
    invariants = []
    for k in range(width):
        d = 1
        for p, exps in factors_by_prime.items():
            if k < len(exps):
                d *= p ** exps[k]
        invariants.append(d)
    return tuple(reversed(invariants))


def _type_module(ring: BaseRing, order: int, factors: tuple[int, ...]) -> FpModule:
    if ring.is_field:
        dim = 0
        while ring.p ** dim < order:
            dim += 1
        return FpModule.free(ring, dim)
    return FpModule(ring, len(factors), Matrix.diagonal(ring, list(factors)))


def brute_hom(a: FpModule, b: FpModule, cap: int = DEFAULT_ENUM_CAP) -> FpModule:
    """Hom(a, b) by full enumeration of generator images."""
    elems = _Elements(b, cap)
    homs = _enum_homs(a, elems, cap)
    moduli = elems.moduli * a.gens
    return _type_module(a.ring, len(homs), _flat_group_invariants(homs, moduli))


def brute_eval(f: CoherentFunctor, a: FpModule, cap: int = DEFAULT_ENUM_CAP) -> FpModule:
    """F(a) by literal enumeration and an explicit set quotient.

    Enumerates Hom(X, a) and Hom(Y, a), forms the precomposition image,
    and reads the quotient's type off coset representatives; the result
    is isomorphic to evaluate(f, a) but shares none of its machinery.
    """
    elems = _Elements(a, cap)
    x, y = f.pres.source, f.pres.target
    homs_x = _enum_homs(x, elems, cap)
    homs_y = _enum_homs(y, elems, cap)
    moduli = elems.moduli * x.gens
    width = len(elems.moduli)

    fcols = [
        [f.pres.mat.entries[j][i] for j in range(y.gens)] for i in range(x.gens)
    ]

    def precompose(h: tuple) -> tuple:
        hparts = [h[j * width : (j + 1) * width] for j in range(y.gens)]
        out = []
        for col in fcols:
            acc = elems.zero()
            for c, z in zip(col, hparts):
                if c:
                    acc = elems.add(acc, elems.smul(c, z))
            out.extend(acc)
        return tuple(out)

    image = sorted({precompose(h) for h in homs_y})

    def add_flat(z1, z2):
        return tuple((p + q) % m for p, q, m in zip(z1, z2, moduli))

    def coset_key(z):
        return min(add_flat(z, s) for s in image)

    cosets = sorted({coset_key(z) for z in homs_x})

    def smul(c, z):
        # scalar action on coset representatives
        return coset_key(tuple((c * p) % m for p, m in zip(z, moduli)))

    elements = cosets
    n = len(elements)
    if n <= 1:
        factors: tuple[int, ...] = ()
    else:
        factors_by_prime: dict[int, list[int]] = {}
        rest = n
        p = 2
        primes = []
        while p * p <= rest:
            if rest % p == 0:
                primes.append(p)
                while rest % p == 0:
                    rest //= p
            p += 1
        if rest > 1:
            primes.append(rest)
        zero_key = coset_key(tuple(0 for _ in moduli))
        for p in primes:
            lam = [0]
            j = 1
            while True:
                cnt = sum(1 for z in elements if smul(p ** j, z) == zero_key)
                e = 0
                while p ** e < cnt:
                    e += 1
                if p ** e != cnt:
                    raise AssertionError("non-group count in quotient recovery")
                lam.append(e)
                if len(lam) > 2 and lam[-1] == lam[-2]:
                    break
                j += 1
            mu = [lam[i] - lam[i - 1] for i in range(1, len(lam))]
            exps = []
            for i, m_geq in enumerate(mu):
                nxt = mu[i + 1] if i + 1 < len(mu) else 0
                exps.extend([i + 1] * (m_geq - nxt))
            factors_by_prime[p] = sorted(exps, reverse=True)
        width_f = max(len(v) for v in factors_by_prime.values())
        inv = []
        for k in range(width_f):
            d = 1
            for p, exps in factors_by_prime.items():
                if k < len(exps):
                    d *= p ** exps[k]
            inv.append(d)
        factors = tuple(d for d in reversed(inv) if d > 1)
    return _type_module(f.ring, len(cosets), factors)


# ---------------------------------------------------------------------------
# pointwise exactness


def _exact_at(
    mid: FpModule, incoming: Matrix, outgoing: Matrix, next_rels: Matrix
) -> bool:
    """image == kernel inside mid, by two-sided generator membership."""
    if solve_matrix(next_rels, outgoing @ incoming) is None:
        return False
    kernel = preimage_lattice(outgoing, next_rels)
    return solve_matrix(hstack(incoming, mid.rels), kernel) is not None


def check_exact(maps: list[NatMorphism], battery: ProbeBattery) -> CheckReport:
    """Pointwise exactness at every interior position, on every probe."""
    start = time.perf_counter()
    for first, second in zip(maps, maps[1:]):
        if first.target != second.source:
            raise ValueError("complex maps are not composable")
    failures = []
    for pi, probe in enumerate(battery.probes):
        comps = [evaluate_nat(m, probe) for m in maps]
        for pos in range(len(maps) - 1):
            mid = comps[pos].target
            if not _exact_at(
                mid, comps[pos].mat, comps[pos + 1].mat, comps[pos + 1].target.rels
            ):
                failures.append(
                    {
                        "probe": f"probe[{pi}]={probe.describe()}",
                        "position": pos,
                        "instance": instance_payload(list(maps), ring=battery.ring),
                    }
                )
    return CheckReport(
        name="exactness",
        passed=not failures,
        cases=len(battery.probes),
        failures=tuple(failures),
        seconds=time.perf_counter() - start,
    )


def padded_complex(maps: list[NatMorphism]) -> list[NatMorphism]:
    """Close a complex with zero functors so ends are checked too."""
    ring = maps[0].source.ring
    z = yoneda_embed(FpModule.zero(ring))
    return [zero_nat(z, maps[0].source)] + list(maps) + [zero_nat(maps[-1].target, z)]


def module_sequence_exact(
    mors: list[ModMorphism], left_zero: bool = True, right_zero: bool = True
) -> bool:
    """Exactness of a (padded) sequence in the base category."""
    seq = list(mors)
    if left_zero:
        seq.insert(0, zero_mor(FpModule.zero(seq[0].source.ring), seq[0].source))
    if right_zero:
        seq.append(zero_mor(seq[-1].target, FpModule.zero(seq[-1].target.ring)))
    for first, second in zip(seq, seq[1:]):
        if not _exact_at(first.target, first.mat, second.mat, second.target.rels):
            return False
    return True


# ---------------------------------------------------------------------------
# seeded random generation


@dataclass(frozen=True)
class Bounds:
    gens: int = 4
    rels: int = 4
    entry: int = 4


def _stream(seed, *tags) -> random.Random:
    return random.Random(":".join(["cohfun", str(seed)] + [str(t) for t in tags]))


def random_module(rng: random.Random, ring: BaseRing, bounds: Bounds) -> FpModule:
    gens = rng.randrange(0, bounds.gens + 1)
    rels = rng.randrange(0, bounds.rels + 1)
    data = [
        [rng.randrange(-bounds.entry, bounds.entry + 1) for _ in range(rels)]
        for _ in range(gens)
    ]
    return FpModule(ring, gens, Matrix.from_rows(ring, data, cols=rels))


def random_morphism(
    rng: random.Random, a: FpModule, b: FpModule, bounds: Bounds
) -> ModMorphism:
    h = hom_group(a, b)
    coeffs = [rng.randrange(-bounds.entry, bounds.entry + 1) for _ in range(h.group.gens)]
    return h.from_coords(Matrix.column(a.ring, coeffs))


def random_functor(rng: random.Random, ring: BaseRing, bounds: Bounds) -> CoherentFunctor:
    a = random_module(rng, ring, bounds)
    b = random_module(rng, ring, bounds)
    return CoherentFunctor(random_morphism(rng, a, b, bounds))


def random_nat(
    rng: random.Random, f: CoherentFunctor, g: CoherentFunctor, bounds: Bounds
) -> NatMorphism:
    ng = nat_group(f, g)
    coeffs = [rng.randrange(-bounds.entry, bounds.entry + 1) for _ in range(ng.group.gens)]
    return ng.from_coords(Matrix.column(f.ring, coeffs))


@dataclass(frozen=True, eq=False)
class ShortExactSequence:
    """0 -> sub -> mid -> quot -> 0 of coherent functors."""

    sub: CoherentFunctor
    mid: CoherentFunctor
    quot: CoherentFunctor
    incl: NatMorphism
    proj: NatMorphism


def random_ses(rng: random.Random, ring: BaseRing, bounds: Bounds) -> ShortExactSequence:
    f = random_functor(rng, ring, bounds)
    g = random_functor(rng, ring, bounds)
    alpha = random_nat(rng, f, g, bounds)
    quot, proj = coker_nat(alpha)
    sub, incl = ker_nat(proj)
    return ShortExactSequence(sub=sub, mid=g, quot=quot, incl=incl, proj=proj)


def random_instance(kind: str, seed: int, ring: BaseRing | None = None, bounds: Bounds | None = None):
    """Deterministic seeded instance of the requested kind."""
    ring = ring or BaseRing.integers()
    bounds = bounds or Bounds()
    rng = _stream(seed, kind)
    if kind == "module":
        return random_module(rng, ring, bounds)
    if kind == "morphism":
        a = random_module(rng, ring, bounds)
        b = random_module(rng, ring, bounds)
        return random_morphism(rng, a, b, bounds)
    if kind == "functor":
        return random_functor(rng, ring, bounds)
    if kind == "nat":
        f = random_functor(rng, ring, bounds)
        g = random_functor(rng, ring, bounds)
        return random_nat(rng, f, g, bounds)
    if kind == "ses":
        return random_ses(rng, ring, bounds)
    raise ValueError(f"unknown instance kind {kind!r}")


def random_finite_module(
    rng: random.Random, ring: BaseRing, max_order: int = 36
) -> FpModule:
    """A random finite module of bounded order with a scrambled presentation."""
    chains = []
    for k in (1, 2, 3):
        for chain in itertools.product(range(2, max_order + 1), repeat=k):
            ok = all(chain[i + 1] % chain[i] == 0 for i in range(k - 1))
            order = 1
            for d in chain:
                order *= d
            if ok and order <= max_order:
                chains.append(chain)
    chain = list(rng.choice(chains))
    n = len(chain)
    m = Matrix.diagonal(ring, chain)
    rows = [list(r) for r in m.entries]
    for _ in range(4):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            c = rng.randrange(-2, 3)
            for t in range(n):
                rows[i][t] += c * rows[j][t]
    cols = [list(c) for c in zip(*rows)]
    for _ in range(4):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            c = rng.randrange(-2, 3)
            for t in range(n):
                cols[i][t] += c * cols[j][t]
    scrambled = Matrix.from_rows(ring, [list(r) for r in zip(*cols)], cols=n)
    return FpModule(ring, n, scrambled)


# ---------------------------------------------------------------------------
# the named checks


def _run(name: str, cases: int, body) -> CheckReport:
    """Run a per-case body; a returned dict is a failure payload."""
    start = time.perf_counter()
    failures = []
    for idx in range(cases):
        payload = body(idx)
        if payload is not None:
            payload["case"] = idx
            failures.append(payload)
    note = "no cases" if cases == 0 else ""
    return CheckReport(
        name=name,
        passed=not failures,
        cases=cases,
        failures=tuple(failures),
        seconds=time.perf_counter() - start,
        note=note,
    )


def _small_battery(battery: ProbeBattery, cap: int = 4) -> list[FpModule]:
    return list(battery.probes[:cap])


def check_snf_contract(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    def body(idx):
        rng = _stream(seed, "snf", idx)
        r, c = rng.randrange(0, 7), rng.randrange(0, 7)
        m = Matrix.from_rows(
            ring,
            [[rng.randrange(-9, 10) for _ in range(c)] for _ in range(r)],
            cols=c,
        )
        from .linalg import det, smith_normal_form as snf

        res = snf(m)
        ok = (res.u @ m @ res.v) == res.s
        if ring.is_field:
            ok = ok and all(d == 1 for d in res.diag)
            ok = ok and det(res.u) != 0 and det(res.v) != 0
        else:
            ok = ok and all(b % a == 0 for a, b in zip(res.diag, res.diag[1:]))
            ok = ok and all(d > 0 for d in res.diag)
            ok = ok and abs(det(res.u)) == 1 and abs(det(res.v)) == 1
        ok = ok and snf(res.s).diag == res.diag
        if not ok:
            return {"matrix": m.to_lists()}
        return None

    return _run("snf-contract", cases, body)


def _lattice_contains(columns: list[list[int]], b: list[int]) -> bool:
    """Membership of b in the integer column lattice, by greedy reduction.

    Independent of the Smith machinery: plain column echelon with gcd
    steps, then division against the pivots.
    """

    def xgcd(a, b):
        x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
        while ng:
            q = g // ng
            x, nx = nx, x - q * nx
            y, ny = ny, y - q * ny
            g, ng = ng, g - q * ng
        return x, y, g

    cols = [c[:] for c in columns if any(c)]
    n = len(b)
    # echelonize: pivot per row index
    pivots: dict[int, list[int]] = {}
    for vec in cols:
        v = vec[:]
        for i in range(n):
            if not v[i]:
                continue
            if i not in pivots:
                pivots[i] = v
                v = None
                break
            w = pivots[i]
            x, y, g = xgcd(w[i], v[i])
            neww = [x * a + y * c2 for a, c2 in zip(w, v)]
            newv = [(w[i] // g) * c2 - (v[i] // g) * a for a, c2 in zip(w, v)]
            pivots[i] = neww
            v = newv
        # fully reduced vectors vanish
    r = b[:]
    for i in range(n):
        if r[i]:
            if i not in pivots:
                return False
            q, rem = divmod(r[i], pivots[i][i])
            if rem:
                return False
            r = [a - q * c2 for a, c2 in zip(r, pivots[i])]
    return all(x == 0 for x in r)


def check_solve_oracle(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    from .linalg import solve_linear

    def field_solvable(m: Matrix, b: Matrix) -> bool:
        # small enough to try every coefficient vector
        p = ring.p
        for coeffs in itertools.product(range(p), repeat=m.cols):
            if (m @ Matrix.column(ring, list(coeffs))) == b:
                return True
        return False

    def body(idx):
        rng = _stream(seed, "solve", idx)
        r, c = rng.randrange(0, 4), rng.randrange(0, 4)
        m = Matrix.from_rows(
            ring,
            [[rng.randrange(-3, 4) for _ in range(c)] for _ in range(r)],
            cols=c,
        )
        b = Matrix.column(ring, [rng.randrange(-3, 4) for _ in range(r)])
        got = solve_linear(m, b)
        if ring.is_field:
            expected = field_solvable(m, b)
        else:
            cols = [[m.entries[i][j] for i in range(r)] for j in range(c)]
            expected = _lattice_contains(cols, [b.entries[i][0] for i in range(r)])
        if (got is not None) != expected:
            return {"matrix": m.to_lists(), "b": b.to_lists()}
        if got is not None:
            x, basis = got
            if (m @ x) != b:
                return {"matrix": m.to_lists(), "b": b.to_lists(), "x": x.to_lists()}
            if basis.cols and not (m @ basis).is_zero:
                return {"matrix": m.to_lists(), "basis": basis.to_lists()}
        return None

    return _run("solve-oracle", cases, body)


def check_hom_oracle(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    def body(idx):
        rng = _stream(seed, "homoracle", idx)
        a = random_finite_module(rng, ring)
        b = random_finite_module(rng, ring)
        lhs = canonical_form(hom_group(a, b).group)
        rhs = canonical_form(brute_hom(a, b, cap=50000))
        if lhs != rhs:
            return {
                "instance": instance_payload([a, b], ring=ring),
                "hom_group": list(lhs[1]),
                "brute": list(rhs[1]),
            }
        return None

    return _run("hom-oracle", cases, body)


def check_brute_eval_agreement(
    ring: BaseRing, seed: int, cases: int, battery: ProbeBattery
) -> CheckReport:
    small = Bounds(gens=2, rels=2, entry=3)

    def body(idx):
        rng = _stream(seed, "bruteeval", idx)
        f = random_functor(rng, ring, small)
        probe = battery.probes[rng.randrange(len(battery.probes))]
        try:
            want = brute_eval(f, probe, cap=DEFAULT_ENUM_CAP)
        except ValueError:
            return None  # oversized draw; outside the oracle's stated domain
        got = evaluate(f, probe)
        if canonical_form(want) != canonical_form(got):
            return {
                "instance": instance_payload(f),
                "probe": probe.describe(),
                "evaluate": got.describe(),
                "brute": want.describe(),
            }
        return None

    return _run("brute-eval-agreement", cases, body)


def check_yoneda(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    def body(idx):
        rng = _stream(seed, "yoneda", idx)
        bounds = Bounds()
        x = random_module(rng, ring, bounds)
        f = random_functor(rng, ring, bounds)
        lhs = nat_group(yoneda_embed(x), f).group
        rhs = evaluate(f, x)
        if canonical_form(lhs) != canonical_form(rhs):
            return {
                "instance": instance_payload([x, f], ring=ring),
                "nat": lhs.describe(),
                "value": rhs.describe(),
            }
        return None

    return _run("yoneda", cases, body)


def check_coyoneda(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    def body(idx):
        rng = _stream(seed, "coyoneda", idx)
        bounds = Bounds()
        f = random_functor(rng, ring, bounds)
        x = random_module(rng, ring, bounds)
        lhs = nat_group(f, yoneda_embed(x)).group
        wf, _ = w_of(f)
        rhs = hom_group(x, wf).group
        if canonical_form(lhs) != canonical_form(rhs):
            return {
                "instance": instance_payload([f, x], ring=ring),
                "nat": lhs.describe(),
                "hom": rhs.describe(),
            }
        return None

    return _run("coyoneda", cases, body)


def check_representable_values(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    """Nat(F, (A,-)) matches (A,-) evaluated at w(F), naturally in both slots."""

    def theta(alpha: NatMorphism) -> ModMorphism:
        f = alpha.source
        wf, kf = w_of(f)
        coeff = express(kf.mat, f.source_module.rels, alpha.a.mat)
        return ModMorphism(alpha.a.source, wf, coeff)

    def body(idx):
        rng = _stream(seed, "ref-values", idx)
        bounds = Bounds(gens=3, rels=3, entry=3)
        f = random_functor(rng, ring, bounds)
        a = random_module(rng, ring, bounds)
        g = yoneda_embed(a)
        wf, _ = w_of(f)
        lhs = nat_group(f, g)
        if canonical_form(lhs.group) != canonical_form(evaluate(g, wf)):
            return {"instance": instance_payload([f, a], ring=ring)}
        # naturality in the first slot: precompose with a random beta
        f2 = random_functor(rng, ring, bounds)
        beta = random_nat(rng, f2, f, bounds)
        for gamma in lhs.reps:
            left = theta(compose_nat(gamma, beta))
            right = compose_mor(w_mor(beta), theta(gamma))
            if left != right:
                return {"instance": instance_payload([f, f2, a], ring=ring)}
        # naturality in the second slot: postcompose with Hom of m
        a2 = random_module(rng, ring, bounds)
        m = random_morphism(rng, a2, a, bounds)
        gmor = yoneda_mor(m)  # (A,-) -> (A2,-)
        for gamma in lhs.reps:
            left = theta(compose_nat(gmor, gamma))
            right = compose_mor(theta(gamma), m)
            if left != right:
                return {"instance": instance_payload([f, a, m], ring=ring)}
        return None

    return _run("representable-values", cases, body)


def check_adjunction(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    def body(idx):
        rng = _stream(seed, "adjunction", idx)
        bounds = Bounds()
        f = random_functor(rng, ring, bounds)
        a = random_module(rng, ring, bounds)
        g = yoneda_embed(a)
        r0, _ = r0_functor(f)
        lhs = nat_group(f, g).group
        rhs = nat_group(r0, g).group
        if canonical_form(lhs) != canonical_form(rhs):
            return {"instance": instance_payload([f, a], ring=ring)}
        return None

    return _run("adjunction", cases, body)


def check_four_term(
    ring: BaseRing, seed: int, cases: int, battery: ProbeBattery
) -> CheckReport:
    def body(idx):
        rng = _stream(seed, "fourterm", idx)
        f = random_functor(rng, ring, Bounds())
        ft = four_term(f)
        if not w_of(ft.f0)[0].is_zero or not w_of(ft.f1)[0].is_zero:
            return {"instance": instance_payload(f), "reason": "w(F0) or w(F1) nonzero"}
        rep = check_exact(padded_complex([ft.iota, ft.phi, ft.rho]), battery)
        if not rep.passed:
            return {"instance": instance_payload(f), "reason": "exactness"}
        return None

    return _run("four-term", cases, body)


def check_w_exactness(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    def body(idx):
        rng = _stream(seed, "wexact", idx)
        ses = random_ses(rng, ring, Bounds(gens=3, rels=3, entry=3))
        wq = w_mor(ses.proj)  # w(quot) -> w(mid)
        wi = w_mor(ses.incl)  # w(mid) -> w(sub)
        if not module_sequence_exact([wq, wi]):
            return {"instance": instance_payload([ses.incl, ses.proj], ring=ring)}
        return None

    return _run("w-exactness", cases, body)


def check_w_presentation_independence(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    """Presentations of the same functor give isomorphic kernels.

    Two moves produce honestly equal functors: block sum with an
    identity (padding both X and Y), and stacking redundant target
    coordinates s∘f on top of f.
    """

    def body(idx):
        rng = _stream(seed, "wpres", idx)
        bounds = Bounds(gens=3, rels=3, entry=3)
        f = random_functor(rng, ring, bounds)
        wf, _ = w_of(f)
        w_pad = random_module(rng, ring, bounds)
        from .linalg import block_diag
        from .modules import direct_sum as dsum

        sx, _, _, _, _ = dsum(f.source_module, w_pad)
        sy, _, _, _, _ = dsum(f.target_module, w_pad)
        padded = CoherentFunctor(
            ModMorphism(sx, sy, block_diag(f.pres.mat, Matrix.identity(ring, w_pad.gens)))
        )
        expect_rank = wf.rank
        got, _ = w_of(padded)
        if canonical_form(got) != canonical_form(wf):
            return {"instance": instance_payload(f), "move": "block-identity"}
        s = random_morphism(rng, f.target_module, random_module(rng, ring, bounds), bounds)
        from .linalg import vstack as vs
        from .modules import direct_sum as ds2

        sy2, _, _, _, _ = ds2(f.target_module, s.target)
        stacked = CoherentFunctor(
            ModMorphism(
                f.source_module, sy2, vs(f.pres.mat, compose_mor(s, f.pres).mat)
            )
        )
        got2, _ = w_of(stacked)
        if canonical_form(got2) != canonical_form(wf):
            return {"instance": instance_payload(f), "move": "redundant-rows"}
        return None

    return _run("w-presentation-independence", cases, body)


def check_vanishing(ring: BaseRing, seed: int, cases: int, battery: ProbeBattery) -> CheckReport:
    def body(idx):
        rng = _stream(seed, "vanishing", idx)
        f = random_functor(rng, ring, Bounds())
        wf, _ = w_of(f)
        stable = is_inj_stable(f)
        if stable != wf.is_zero:
            return {"instance": instance_payload(f), "reason": "w-vs-stable"}
        if stable != is_mono(f.pres):
            return {"instance": instance_payload(f), "reason": "mono-vs-stable"}
        if stable:
            st = inj_stabilize(f)
            for probe in _small_battery(battery):
                if canonical_form(evaluate(st, probe)) != canonical_form(evaluate(f, probe)):
                    return {"instance": instance_payload(f), "reason": "stabilization-changed-F"}
        return None

    return _run("vanishing", cases, body)


def _canonical_epi(f: CoherentFunctor) -> NatMorphism:
    """The presentation epimorphism (X, -) -> F."""
    x = f.source_module
    return NatMorphism(
        source=yoneda_embed(x),
        target=f,
        a=identity_mor(x),
        b=zero_mor(f.target_module, FpModule.zero(f.ring)),
    )


def check_representables_projective(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    def body(idx):
        rng = _stream(seed, "projective", idx)
        bounds = Bounds(gens=3, rels=3, entry=3)
        f = random_functor(rng, ring, bounds)
        g = random_functor(rng, ring, bounds)
        alpha = random_nat(rng, f, g, bounds)
        quot, proj = coker_nat(alpha)  # epi G -> quot
        x = random_module(rng, ring, bounds)
        y = yoneda_embed(x)
        gamma = random_nat(rng, y, quot, bounds)
        # lift gamma through proj: solve in the Nat groups
        ng_mid = nat_group(y, g)
        ng_q = nat_group(y, quot)
        cols = [ng_q.coords(compose_nat(proj, rep)) for rep in ng_mid.reps]
        comp = hstack(*cols) if cols else Matrix.zeros(ring, ng_q.group.gens, 0)
        coeff = express(comp, ng_q.group.rels, ng_q.coords(gamma))
        if coeff is None:
            return {"instance": instance_payload([y, quot], ring=ring), "reason": "no lift"}
        lifted = ng_mid.from_coords(coeff)
        if compose_nat(proj, lifted) != gamma:
            return {"instance": instance_payload([y, quot], ring=ring), "reason": "bad lift"}
        return None

    return _run("representables-projective", cases, body)


def _splits_off_presentation(f: CoherentFunctor) -> bool:
    """Projectivity via the canonical epi (X,-) -> F admitting a section."""
    epi = _canonical_epi(f)
    y = epi.source
    nfy = nat_group(f, y)
    nff = nat_group(f, f)
    cols = [nff.coords(compose_nat(epi, rep)) for rep in nfy.reps]
    comp = hstack(*cols) if cols else Matrix.zeros(f.ring, nff.group.gens, 0)
    return express(comp, nff.group.rels, nff.coords(identity_nat(f))) is not None


def _random_module_ses(rng, ring: BaseRing, bounds: Bounds):
    a = random_module(rng, ring, bounds)
    b = random_module(rng, ring, bounds)
    phi = random_morphism(rng, a, b, bounds)
    im, incl = image_mor(phi)
    quot, proj = cokernel_mor(incl)
    return incl, proj


def check_equivalence(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    """representable == projective(split test); representables are left exact."""

    def body(idx):
        rng = _stream(seed, "equivalence", idx)
        bounds = Bounds(gens=3, rels=3, entry=3)
        f = random_functor(rng, ring, bounds)
        rep = is_representable(f)
        if rep != _splits_off_presentation(f):
            return {"instance": instance_payload(f), "reason": "representable-vs-projective"}
        if rep:
            for k in range(3):
                incl, proj = _random_module_ses(rng, ring, bounds)
                fi = evaluate_mor(f, incl)
                fp = evaluate_mor(f, proj)
                if not is_mono(fi):
                    return {"instance": instance_payload(f), "reason": "not left exact (mono)"}
                if not _exact_at(fi.target, fi.mat, fp.mat, fp.target.rels):
                    return {"instance": instance_payload(f), "reason": "not left exact (middle)"}
        return None

    return _run("equivalence", cases, body)


def check_functoriality(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    def body(idx):
        rng = _stream(seed, "functorial", idx)
        bounds = Bounds(gens=3, rels=3, entry=3)
        f = random_functor(rng, ring, bounds)
        a = random_module(rng, ring, bounds)
        b = random_module(rng, ring, bounds)
        c = random_module(rng, ring, bounds)
        phi = random_morphism(rng, a, b, bounds)
        psi = random_morphism(rng, b, c, bounds)
        lhs = evaluate_mor(f, compose_mor(psi, phi))
        rhs = compose_mor(evaluate_mor(f, psi), evaluate_mor(f, phi))
        if lhs != rhs:
            return {"instance": instance_payload([f, phi, psi], ring=ring), "reason": "evaluate_mor"}
        if evaluate_mor(f, identity_mor(a)) != identity_mor(evaluate(f, a)):
            return {"instance": instance_payload([f, a], ring=ring), "reason": "evaluate_mor id"}
        g = random_functor(rng, ring, bounds)
        h = random_functor(rng, ring, bounds)
        al = random_nat(rng, f, g, bounds)
        be = random_nat(rng, g, h, bounds)
        lhsw = w_mor(compose_nat(be, al))
        rhsw = compose_mor(w_mor(al), w_mor(be))
        if lhsw != rhsw:
            return {"instance": instance_payload([f, g, h], ring=ring), "reason": "w_mor"}
        # unit is natural in F
        _, unit_f = r0_functor(f)
        _, unit_g = r0_functor(g)
        r0_alpha = yoneda_mor(w_mor(al))
        if compose_nat(r0_alpha, unit_f) != compose_nat(unit_g, al):
            return {"instance": instance_payload([f, g], ring=ring), "reason": "unit naturality"}
        return None

    return _run("functoriality", cases, body)


def check_stabilization(ring: BaseRing, seed: int, cases: int) -> CheckReport:
    def body(idx):
        rng = _stream(seed, "stabilize", idx)
        f = random_functor(rng, ring, Bounds(gens=3, rels=3, entry=3))
        l0, counit = l0_functor(f)
        for n in (1, 2, 3):
            free = FpModule.free(ring, n)
            comp = evaluate_nat(counit, free)
            if not is_iso(comp):
                return {"instance": instance_payload(f), "reason": f"counit not iso at rank {n}"}
            if not evaluate(proj_stabilize(f), free).is_zero:
                return {"instance": instance_payload(f), "reason": f"stabilization alive at rank {n}"}
        one = FpModule.free(ring, 1)
        if is_proj_stable(f) != evaluate(f, one).is_zero:
            return {"instance": instance_payload(f), "reason": "is_proj_stable mismatch"}
        return None

    return _run("stabilization", cases, body)


def check_resolutions(
    ring: BaseRing, seed: int, cases: int, battery: ProbeBattery
) -> CheckReport:
    def body(idx):
        rng = _stream(seed, "resolve", idx)
        f = random_functor(rng, ring, Bounds())
        res = injective_resolution(f)
        for term in res.terms:
            if not is_injective_functor(term):
                return {"instance": instance_payload(f), "reason": "term not injective"}
        rep = check_exact(padded_complex(list(res.maps)), battery)
        if not rep.passed:
            return {"instance": instance_payload(f), "reason": "resolution not exact"}
        return None

    return _run("resolutions", cases, body)


def check_semisimple_collapse(seed: int, cases: int, p: int = 5) -> CheckReport:
    ring = BaseRing.prime_field(p)

    def body(idx):
        rng = _stream(seed, "semisimple", idx)
        f = random_functor(rng, ring, Bounds())
        if not is_representable(f):
            return {"instance": instance_payload(f), "reason": "not representable"}
        _, unit = r0_functor(f)
        if not (is_zero_functor(ker_nat(unit)[0]) and is_zero_functor(coker_nat(unit)[0])):
            return {"instance": instance_payload(f), "reason": "unit not iso"}
        return None

    return _run("semisimple-collapse", cases, body)


def verify_theorems(
    battery: ProbeBattery | None = None,
    ring: BaseRing | None = None,
    seed: int = 0,
    cases: int = 100,
) -> list[CheckReport]:
    """Run the full invariant suite; all-pass is the acceptance gate."""
    ring = ring or (battery.ring if battery else BaseRing.integers())
    battery = battery or default_battery(ring, seed=seed, case_count=cases)
    heavy = max(1, cases // 4) if cases else 0
    reports = [
        check_snf_contract(ring, seed, 10 * cases),
        check_solve_oracle(ring, seed, 2 * cases),
        check_yoneda(ring, seed, cases),
        check_coyoneda(ring, seed, cases),
        check_representable_values(ring, seed, max(1, cases // 2) if cases else 0),
        check_adjunction(ring, seed, cases),
        check_four_term(ring, seed, heavy, battery),
        check_w_exactness(ring, seed, heavy),
        check_w_presentation_independence(ring, seed, cases),
        check_vanishing(ring, seed, cases, battery),
        check_representables_projective(ring, seed, heavy),
        check_equivalence(ring, seed, heavy),
        check_functoriality(ring, seed, heavy),
        check_stabilization(ring, seed, heavy),
        check_resolutions(ring, seed, heavy, battery),
    ]
    if not ring.is_field:
        reports.insert(2, check_hom_oracle(ring, seed, cases))
        reports.insert(
            3, check_brute_eval_agreement(ring, seed, 3 * cases, battery)
        )
    else:
        reports.append(check_semisimple_collapse(seed, cases, p=ring.p))
    return reports
