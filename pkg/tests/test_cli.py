import io
import json
from pathlib import Path

import pytest

from cohfun.cli import WorkspaceError, main, parse_workspace, render_workspace

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

QUOTIENT_COMMANDS = ["w F", "fourterm F", "r0 F", "l0 F", "stab-inj F", "is-rep F"]
YONEDA_COMMANDS = ["resolve G", "is-inj G", "w G", "eval G C2", "nat G G"]


def run_cli(argv) -> tuple[int, str]:
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def run_script(fixture: str, commands) -> str:
    chunks = []
    for command in commands:
        code, text = run_cli(["--input", str(DATA / fixture)] + command.split())
        assert code == 0, (command, text)
        chunks.append(text + f"::cmd {command} done\n")
    return "".join(chunks)


class TestParsing:
    def test_minimal_workspace(self):
        ws = parse_workspace(
            json.dumps(
                {
                    "ring": "Z",
                    "modules": {"A": {"gens": 1, "rels": {"rows": 1, "cols": 1, "data": [2]}}},
                }
            )
        )
        assert ws.modules["A"].describe() == "Z/2"

    def test_ill_defined_morphism_named(self):
        text = json.dumps(
            {
                "ring": "Z",
                "modules": {
                    "A": {"gens": 1, "rels": {"rows": 1, "cols": 1, "data": [2]}},
                    "B": {"gens": 1, "rels": {"rows": 1, "cols": 1, "data": [3]}},
                },
                "morphisms": {
                    "bad": {
                        "source": "A",
                        "target": "B",
                        "mat": {"rows": 1, "cols": 1, "data": [1]},
                    }
                },
            }
        )
        with pytest.raises(WorkspaceError, match="morphisms.bad.*ill-defined"):
            parse_workspace(text)

    def test_unknown_reference_named(self):
        text = json.dumps(
            {
                "ring": "Z",
                "morphisms": {
                    "f": {"source": "A", "target": "A", "mat": {"rows": 0, "cols": 0, "data": []}}
                },
            }
        )
        with pytest.raises(WorkspaceError, match="unknown module 'A'"):
            parse_workspace(text)

    def test_syntax_error_positioned(self):
        with pytest.raises(WorkspaceError, match="line 2"):
            parse_workspace('{\n  "ring": Z\n}')

    def test_duplicate_names_rejected(self):
        text = '{"ring": "Z", "modules": {"A": {"gens": 0, "rels": {"rows": 0, "cols": 0, "data": []}}, "A": {"gens": 0, "rels": {"rows": 0, "cols": 0, "data": []}}}}'
        with pytest.raises(WorkspaceError, match="duplicate"):
            parse_workspace(text)

    def test_dimension_mismatch_named(self):
        text = json.dumps(
            {
                "ring": "Z",
                "modules": {"A": {"gens": 2, "rels": {"rows": 1, "cols": 1, "data": [2]}}},
            }
        )
        with pytest.raises(WorkspaceError, match="modules.A"):
            parse_workspace(text)

    def test_functor_only_workspace_valid(self):
        ws = parse_workspace((DATA / "worked_quotient.json").read_text())
        assert set(ws.functors) == {"F"}

    def test_roundtrip_is_identity_on_canonical_text(self):
        ws = parse_workspace((DATA / "worked_quotient.json").read_text())
        text = render_workspace(ws)
        again = parse_workspace(text)
        assert render_workspace(again) == text


class TestCommands:
    def test_eval_zero_functor(self, tmp_path):
        workspace = {
            "ring": "Z",
            "modules": {
                "A": {"gens": 1, "rels": {"rows": 1, "cols": 1, "data": [4]}},
                "Z1": {"gens": 1, "rels": {"rows": 1, "cols": 0, "data": []}},
            },
            "morphisms": {
                "ident": {"source": "Z1", "target": "Z1", "mat": {"rows": 1, "cols": 1, "data": [1]}}
            },
            "functors": {"F": {"pres": "ident"}},
        }
        path = tmp_path / "ws.json"
        path.write_text(json.dumps(workspace))
        code, text = run_cli(["--input", str(path), "eval", "F", "A"])
        assert code == 0
        assert text == "F(A) = 0\n"

    def test_w_command(self):
        code, text = run_cli(["--input", str(DATA / "worked_quotient.json"), "w", "F"])
        assert code == 0
        assert "w(F) = Z^1" in text
        assert "[[2]]" in text

    def test_resolve_reports_length_two(self):
        code, text = run_cli(["--input", str(DATA / "worked_yoneda.json"), "resolve", "G"])
        assert code == 0
        assert "length: 2" in text
        assert "exactness: pass" in text

    def test_unknown_functor_exit_2(self):
        code, _ = run_cli(["--input", str(DATA / "worked_quotient.json"), "w", "Nope"])
        assert code == 2

    def test_missing_file_exit_2(self):
        code, _ = run_cli(["--input", "/definitely/not/here.json", "w", "F"])
        assert code == 2

    def test_check_passes_small(self):
        code, text = run_cli(["--cases", "2", "check"])
        assert code == 0
        assert all(line.startswith("PASS") for line in text.strip().splitlines())

    def test_check_zero_cases_vacuous(self):
        code, text = run_cli(["--cases", "0", "check"])
        assert code == 0
        assert "no cases" in text

    def test_random_deterministic(self):
        code1, text1 = run_cli(["random", "--kind", "functor", "--seed", "5"])
        code2, text2 = run_cli(["random", "--kind", "functor", "--seed", "5"])
        assert code1 == code2 == 0
        assert text1 == text2
        parse_workspace(text1)

    def test_random_over_field(self):
        code, text = run_cli(["--ring", "Fp:5", "random", "--kind", "module", "--seed", "3"])
        assert code == 0
        assert json.loads(text)["ring"] == "Fp:5"

    def test_battery_flag(self):
        code, text = run_cli(
            ["--input", str(DATA / "worked_quotient.json"), "--battery", "Z,Z/4", "stab-inj", "F"]
        )
        assert code == 0
        assert "at Z^1: 0" in text and "at Z/4: 0" in text
        assert "Z/8" not in text

    def test_every_operation_reachable(self):
        # each library operation has a subcommand
        from cohfun.cli import build_parser

        parser = build_parser()
        sub = next(
            a for a in parser._actions if isinstance(a, __import__("argparse")._SubParsersAction)
        )
        assert set(sub.choices) == {
            "eval", "nat", "w", "fourterm", "r0", "l0", "stab-inj", "stab-proj",
            "resolve", "is-rep", "is-inj", "check", "random",
        }


class TestGolden:
    def test_worked_quotient_golden(self):
        got = run_script("worked_quotient.json", QUOTIENT_COMMANDS)
        assert got == (GOLDEN / "worked_quotient.txt").read_text()

    def test_worked_yoneda_golden(self):
        got = run_script("worked_yoneda.json", YONEDA_COMMANDS)
        assert got == (GOLDEN / "worked_yoneda.txt").read_text()

    def test_byte_identical_across_runs(self):
        first = run_script("worked_quotient.json", QUOTIENT_COMMANDS)
        second = run_script("worked_quotient.json", QUOTIENT_COMMANDS)
        assert first == second
