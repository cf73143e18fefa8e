"""Command line front end.

A workspace is one self-contained JSON file declaring the ring and named
modules, morphisms, functors and transformations; every command reads
the workspace, runs one operation, and prints a deterministic report
(canonical group strings, explicit witness matrices).  Timing goes to
stderr so stdout is byte-stable across runs.

Exit codes: 0 success / all checks pass, 1 check failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .linalg import BaseRing
from .modules import FpModule, ModMorphism
from .functors import (
    CoherentFunctor,
    NatMorphism,
    evaluate,
    four_term,
    injective_resolution,
    inj_stabilize,
    is_inj_stable,
    is_injective_functor,
    is_proj_stable,
    is_representable,
    is_zero_functor,
    l0_functor,
    nat_group,
    proj_stabilize,
    r0_functor,
    w_of,
)
from . import oracle
from .formats import (
    instance_into,
    PayloadBuilder,
    matrix_from_obj,
    render_matrix,
    ring_from_str,
)


class WorkspaceError(ValueError):
    """Input problem; maps to exit code 2 and names the offending field."""


@dataclass
class Workspace:
    ring: BaseRing
    modules: dict[str, FpModule] = field(default_factory=dict)
    morphisms: dict[str, ModMorphism] = field(default_factory=dict)
    functors: dict[str, CoherentFunctor] = field(default_factory=dict)
    nats: dict[str, NatMorphism] = field(default_factory=dict)

    def module(self, name: str) -> FpModule:
        if name not in self.modules:
            raise WorkspaceError(f"unknown module {name!r}")
        return self.modules[name]

    def functor(self, name: str) -> CoherentFunctor:
        if name not in self.functors:
            raise WorkspaceError(f"unknown functor {name!r}")
        return self.functors[name]


def _no_duplicates(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise WorkspaceError(f"duplicate name {key!r}")
        seen[key] = value
    return seen


def parse_workspace(text: str) -> Workspace:
    """Parse and fully validate one workspace file."""
    try:
        raw = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(raw, dict):
        raise WorkspaceError("workspace must be a JSON object")
    unknown = set(raw) - {"ring", "modules", "morphisms", "functors", "nats"}
    if unknown:
        raise WorkspaceError(f"unknown top-level fields {sorted(unknown)}")
    if "ring" not in raw:
        raise WorkspaceError("workspace is missing the ring declaration")
    try:
        ring = ring_from_str(raw["ring"])
    except ValueError as exc:
        raise WorkspaceError(str(exc)) from None
    ws = Workspace(ring=ring)

    for name, spec in (raw.get("modules") or {}).items():
        where = f"modules.{name}"
        if not isinstance(spec, dict) or set(spec) != {"gens", "rels"}:
            raise WorkspaceError(f"{where}: expected fields gens, rels")
        gens = spec["gens"]
        if not isinstance(gens, int) or gens < 0:
            raise WorkspaceError(f"{where}.gens: expected a nonnegative integer")
        rels = matrix_from_obj(ring, spec["rels"], where=f"{where}.rels")
        if rels.rows != gens:
            raise WorkspaceError(
                f"{where}: relation matrix has {rels.rows} rows for {gens} generators"
            )
        ws.modules[name] = FpModule(ring, gens, rels)

    for name, spec in (raw.get("morphisms") or {}).items():
        where = f"morphisms.{name}"
        if not isinstance(spec, dict) or set(spec) != {"source", "target", "mat"}:
            raise WorkspaceError(f"{where}: expected fields source, target, mat")
        for end in ("source", "target"):
            if spec[end] not in ws.modules:
                raise WorkspaceError(f"{where}.{end}: unknown module {spec[end]!r}")
        mat = matrix_from_obj(ring, spec["mat"], where=f"{where}.mat")
        try:
            ws.morphisms[name] = ModMorphism(
                ws.modules[spec["source"]], ws.modules[spec["target"]], mat
            )
        except ValueError as exc:
            raise WorkspaceError(f"{where}: {exc}") from None

    for name, spec in (raw.get("functors") or {}).items():
        where = f"functors.{name}"
        if not isinstance(spec, dict) or set(spec) != {"pres"}:
            raise WorkspaceError(f"{where}: expected field pres")
        if spec["pres"] not in ws.morphisms:
            raise WorkspaceError(f"{where}.pres: unknown morphism {spec['pres']!r}")
        ws.functors[name] = CoherentFunctor(ws.morphisms[spec["pres"]])

    for name, spec in (raw.get("nats") or {}).items():
        where = f"nats.{name}"
        if not isinstance(spec, dict) or set(spec) != {"source", "target", "a", "b"}:
            raise WorkspaceError(f"{where}: expected fields source, target, a, b")
        for end in ("source", "target"):
            if spec[end] not in ws.functors:
                raise WorkspaceError(f"{where}.{end}: unknown functor {spec[end]!r}")
        src = ws.functors[spec["source"]]
        tgt = ws.functors[spec["target"]]
        a = matrix_from_obj(ring, spec["a"], where=f"{where}.a")
        b = matrix_from_obj(ring, spec["b"], where=f"{where}.b")
        try:
            ws.nats[name] = NatMorphism(
                source=src,
                target=tgt,
                a=ModMorphism(tgt.source_module, src.source_module, a),
                b=ModMorphism(tgt.target_module, src.target_module, b),
            )
        except ValueError as exc:
            raise WorkspaceError(f"{where}: {exc}") from None
    return ws


def render_workspace(ws: Workspace) -> str:
    """Canonical text; parse(render(ws)) reproduces ws exactly."""
    builder = PayloadBuilder(ws.ring)
    builder.modules = dict(ws.modules)
    builder._module_names = {m: n for n, m in ws.modules.items()}
    builder.morphisms = dict(ws.morphisms)
    builder._morphism_names = {phi.key(): n for n, phi in ws.morphisms.items()}
    builder.functors = dict(ws.functors)
    builder._functor_names = {f._key(): n for n, f in ws.functors.items()}
    builder.nats = dict(ws.nats)
    return json.dumps(builder.to_dict(), indent=2, sort_keys=True) + "\n"


def _describe(module: FpModule) -> str:
    return module.describe()


def _battery_from_spec(ring: BaseRing, spec: str | None, seed: int, cases: int):
    if not spec:
        return oracle.default_battery(ring, seed=seed, case_count=cases)
    probes = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        summands = [s.strip() for s in item.split("+")]
        total = FpModule.zero(ring)
        from .modules import direct_sum

        for s in summands:
            if s == "Z":
                part = FpModule.free(ring, 1)
            elif s.startswith("Z^"):
                part = FpModule.free(ring, int(s[2:]))
            elif s.startswith("Z/"):
                if ring.is_field:
                    raise WorkspaceError(f"battery item {s!r} is not defined over {ring}")
                part = FpModule.cyclic(ring, int(s[2:]))
            else:
                raise WorkspaceError(f"bad battery item {s!r}")
            total = direct_sum(total, part)[0]
        probes.append(total)
    return oracle.ProbeBattery(probes=tuple(probes), seed=seed, case_count=cases)


def _print_exactness(maps, battery, out) -> bool:
    report = oracle.check_exact(oracle.padded_complex(maps), battery)
    out.write(f"exactness: {'pass' if report.passed else 'FAIL'}\n")
    return report.passed


def run_command(ws: Workspace, args, out, battery) -> int:
    """Execute one subcommand against the workspace; returns exit code."""
    cmd = args.command
    if cmd == "eval":
        f = ws.functor(args.functor)
        a = ws.module(args.module)
        out.write(f"{args.functor}({args.module}) = {_describe(evaluate(f, a))}\n")
        return 0
    if cmd == "nat":
        f, g = ws.functor(args.functor), ws.functor(args.other)
        ng = nat_group(f, g)
        out.write(f"Nat({args.functor}, {args.other}) = {_describe(ng.group)}\n")
        for i, rep in enumerate(ng.reps):
            out.write(f"gen {i}: a = {render_matrix(rep.a.mat)}, b = {render_matrix(rep.b.mat)}\n")
        return 0
    if cmd == "w":
        f = ws.functor(args.functor)
        wf, k = w_of(f)
        out.write(f"w({args.functor}) = {_describe(wf)}\n")
        out.write(f"k: w({args.functor}) -> X = {render_matrix(k.mat)}\n")
        return 0
    if cmd == "fourterm":
        f = ws.functor(args.functor)
        ft = four_term(f)
        out.write(f"w({args.functor}) = {_describe(ft.wf)}\n")
        out.write(f"k = {render_matrix(ft.k.mat)}\n")
        out.write(f"F0: presented by v = {render_matrix(ft.v.mat)} on {_describe(ft.coim)}\n")
        out.write(f"F1: presented by k on {_describe(ft.wf)}\n")
        for probe in battery.probes:
            row = " -> ".join(
                _describe(evaluate(g, probe))
                for g in (ft.f0, f, ft.r0, ft.f1)
            )
            out.write(f"at {_describe(probe)}: 0 -> {row} -> 0\n")
        ok = _print_exactness([ft.iota, ft.phi, ft.rho], battery, out)
        return 0 if ok else 1
    if cmd == "r0":
        f = ws.functor(args.functor)
        r0, unit = r0_functor(f)
        wf = r0.pres.source
        out.write(f"R0({args.functor}) = Hom({_describe(wf)}, -)\n")
        out.write(f"unit a-component = {render_matrix(unit.a.mat)}\n")
        return 0
    if cmd == "l0":
        f = ws.functor(args.functor)
        l0, counit = l0_functor(f)
        out.write(f"L0({args.functor}) = {_describe(evaluate(f, FpModule.free(ws.ring, 1)))} tensor -\n")
        out.write(f"counit a-component = {render_matrix(counit.a.mat)}\n")
        out.write(f"counit b-component = {render_matrix(counit.b.mat)}\n")
        return 0
    if cmd == "stab-inj":
        f = ws.functor(args.functor)
        st = inj_stabilize(f)
        out.write(f"stable({args.functor}) presented by {render_matrix(st.pres.mat)}\n")
        out.write(f"injectively stable: {'true' if is_inj_stable(f) else 'false'}\n")
        for probe in battery.probes:
            out.write(f"at {_describe(probe)}: {_describe(evaluate(st, probe))}\n")
        return 0
    if cmd == "stab-proj":
        f = ws.functor(args.functor)
        st = proj_stabilize(f)
        out.write(f"stabilization presented by {render_matrix(st.pres.mat)}\n")
        out.write(f"projectively stable: {'true' if is_proj_stable(f) else 'false'}\n")
        for probe in battery.probes:
            out.write(f"at {_describe(probe)}: {_describe(evaluate(st, probe))}\n")
        return 0
    if cmd == "resolve":
        f = ws.functor(args.functor)
        res = injective_resolution(f)
        names = ["I0", "I1", "I2"]
        for name, term in zip(names, res.terms):
            pres = term.pres
            out.write(
                f"{name}: {_describe(pres.source)} -> {_describe(pres.target)}"
                f" via {render_matrix(pres.mat)}\n"
            )
        out.write(f"map F->I0 a-component: {render_matrix(res.maps[0].a.mat)}\n")
        out.write(f"map I0->I1 a-component: {render_matrix(res.maps[1].a.mat)}\n")
        out.write(f"map I1->I2 a-component: {render_matrix(res.maps[2].a.mat)}\n")
        length = 0
        for idx, term in enumerate(res.terms):
            if not is_zero_functor(term):
                length = idx
        out.write(f"length: {length}\n")
        for probe in battery.probes:
            row = " -> ".join(_describe(evaluate(t, probe)) for t in res.terms)
            out.write(f"at {_describe(probe)}: 0 -> {_describe(evaluate(f, probe))} -> {row} -> 0\n")
        ok = _print_exactness(list(res.maps), battery, out)
        return 0 if ok else 1
    if cmd == "is-rep":
        f = ws.functor(args.functor)
        out.write("true\n" if is_representable(f) else "false\n")
        return 0
    if cmd == "is-inj":
        f = ws.functor(args.functor)
        out.write("true\n" if is_injective_functor(f) else "false\n")
        return 0
    if cmd == "check":
        reports = oracle.verify_theorems(
            battery=battery, ring=battery.ring, seed=battery.seed, cases=battery.case_count
        )
        failed = False
        for rep in reports:
            out.write(rep.line() + "\n")
            sys.stderr.write(f"{rep.name}: {rep.seconds:.2f}s\n")
            if not rep.passed:
                failed = True
                for failure in rep.failures[:3]:
                    out.write(f"  counterexample: {json.dumps(failure, sort_keys=True)}\n")
        return 1 if failed else 0
    if cmd == "random":
        inst = oracle.random_instance(args.kind, args.seed, ring=battery.ring)
        builder = PayloadBuilder(battery.ring)
        if isinstance(inst, oracle.ShortExactSequence):
            instance_into(builder, inst.incl)
            instance_into(builder, inst.proj)
        else:
            instance_into(builder, inst)
        out.write(json.dumps(builder.to_dict(), indent=2, sort_keys=True) + "\n")
        return 0
    raise WorkspaceError(f"unknown command {cmd!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohfun",
        description="Exact computations with coherent functors over f.p. modules.",
    )
    parser.add_argument("--input", help="workspace JSON file")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    parser.add_argument("--cases", type=int, default=100, help="cases per randomized check")
    parser.add_argument("--battery", help="comma list of probes, e.g. Z,Z/2,Z+Z/2")
    parser.add_argument("--ring", default=None, help="Z or Fp:<prime> (when no input file)")
    sub = parser.add_subparsers(dest="command", required=True)

    def f_cmd(name, help_text, extra=()):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("functor")
        for extra_name in extra:
            p.add_argument(extra_name)
        return p

    f_cmd("eval", "evaluate a functor at a module", extra=("module",))
    f_cmd("nat", "the group of natural transformations", extra=("other",))
    f_cmd("w", "the module the functor's reflection represents")
    f_cmd("fourterm", "the four-term exact sequence")
    f_cmd("r0", "the representable reflection and its unit")
    f_cmd("l0", "the tensor coreflection and its counit")
    f_cmd("stab-inj", "the injective stabilization")
    f_cmd("stab-proj", "the projective stabilization")
    f_cmd("resolve", "an injective resolution of length at most 2")
    f_cmd("is-rep", "representability test")
    f_cmd("is-inj", "injectivity test")
    sub.add_parser("check", help="run the randomized verification suite")
    rnd = sub.add_parser("random", help="emit a seeded random instance")
    rnd.add_argument("--kind", required=True, choices=["module", "morphism", "functor", "nat", "ses"])
    rnd.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.input:
            with open(args.input, "r", encoding="utf-8") as handle:
                ws = parse_workspace(handle.read())
            ring = ws.ring
            if args.ring is not None and ring_from_str(args.ring) != ring:
                raise WorkspaceError("--ring conflicts with the workspace ring")
        else:
            ring = ring_from_str(args.ring) if args.ring else BaseRing.integers()
            ws = Workspace(ring=ring)
        battery = _battery_from_spec(ring, args.battery, args.seed, args.cases)
        return run_command(ws, args, out, battery)
    except WorkspaceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
