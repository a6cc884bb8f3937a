import json

import pytest
from click.testing import CliRunner

from tests.conftest import algebra_path
from weilab_main import main

EXAMPLE_ONE = str(algebra_path("example1"))


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, [str(a) for a in args])


class TestQueries:
    def test_info(self, runner):
        result = invoke(runner, "info", EXAMPLE_ONE)
        assert result.exit_code == 0
        assert "dim=9 order=4 width=2 socle_dim=2 ma_dim=3 ideal_dim=6" in result.output

    def test_info_json(self, runner):
        result = invoke(runner, "info", EXAMPLE_ONE, "--json")
        data = json.loads(result.output)
        assert data['algebra'] == "example1"
        assert (data['dim'], data['order'], data['width']) == (9, 4, 2)
        assert data['width_deficit'] is False

    def test_basis(self, runner):
        result = invoke(runner, "basis", EXAMPLE_ONE)
        assert "basis (dim 9): 1, x, y, x^2, x*y, y^2, x^3, x^2*y, y^3" in result.output

    @pytest.mark.parametrize("poly, expected", [
        ("y^4", "-x^2*y"),
        ("x*y^2", "-x^3"),
        ("x^2*y + y^4", "0"),
    ])
    def test_normal_form(self, runner, poly, expected):
        result = invoke(runner, "nf", EXAMPLE_ONE, poly)
        assert result.exit_code == 0
        assert result.output.strip() == expected

    def test_multable(self, runner):
        result = invoke(runner, "multable", EXAMPLE_ONE)
        assert "y * y^3 = -x^2*y" in result.output
        assert "x * y^2 = -x^3" in result.output

    def test_socle(self, runner):
        result = invoke(runner, "socle", EXAMPLE_ONE)
        assert "socle = span{x^3, x^2*y} (dim 2)" in result.output
        assert "MA = span{1, x^3, x^2*y} (dim 3)" in result.output


class TestClassification:
    def test_classify_json(self, runner):
        result = invoke(runner, "classify", EXAMPLE_ONE, "--json")
        data = json.loads(result.output)
        assert data['verdict'] == "Unknown"
        kinds = [c['kind'] for c in data['certificates']]
        assert kinds == ["Monomial", "Homogeneous", "WeightGrading", "Dwindlable", "OrderTheorem",
                         "DerivationKernelTrivial"]
        assert data['certificates'][-1]['witness'] == {'kernel_dim': 3, 'refined_dim': 2}

    def test_classify_text(self, runner):
        result = invoke(runner, "classify", EXAMPLE_ONE, "--weight-bound", 5)
        assert result.output.strip().splitlines()[-1] == "verdict: Unknown"

    def test_counterexample(self, runner):
        result = invoke(runner, "classify", algebra_path("counterexample"), "--no-prop4")
        assert result.exit_code == 0
        assert "verdict: Trivial" in result.output

    def test_weights(self, runner):
        result = invoke(runner, "weights", EXAMPLE_ONE)
        assert "weights: none within bound 16" in result.output
        assert "weight lattice dim 0" in result.output

    def test_fixed(self, runner):
        result = invoke(runner, "fixed", EXAMPLE_ONE)
        assert result.exit_code == 0
        assert "K = span{1, x^3, x^2*y} (dim 3)" in result.output
        assert "K' = span{1, x^2*y} (dim 2), status: upper bound" in result.output
        assert "sign automorphisms: (1, 1), (-1, 1)" in result.output

    def test_conjecture(self, runner):
        result = invoke(runner, "conjecture", EXAMPLE_ONE)
        assert "K' in MA: yes" in result.output
        assert "conjecture: CertifiedYes" in result.output

    def test_derivations_agree_with_json(self, runner):
        text = invoke(runner, "derivations", EXAMPLE_ONE).output
        data = json.loads(invoke(runner, "derivations", EXAMPLE_ONE, "--json").output)
        assert f"Der(A) dim {data['dim']}" in text
        assert sum(1 for line in text.splitlines() if line.startswith("D") and ": D(x) = " in line) == data['dim']

    def test_fixed_json_matches_text(self, runner):
        data = json.loads(invoke(runner, "fixed", EXAMPLE_ONE, "--json").output)
        assert data['refined'] == {'dim': 2, 'basis': ["1", "x^2*y"]}
        assert data['status'] == "UpperBoundOnly"


class TestAutomorphisms:
    def test_reflection(self, runner):
        result = invoke(runner, "aut-verify", EXAMPLE_ONE, "--map", "x -> -x; y -> y")
        assert result.exit_code == 0
        for line in ["well-defined: yes", "det = -1", "automorphism: yes",
                     "orientation preserving: no", "unipotent: no"]:
            assert line in result.output

    def test_not_well_defined(self, runner):
        result = invoke(runner, "aut-verify", EXAMPLE_ONE, "--map", "y -> -y", "--json")
        data = json.loads(result.output)
        assert data['well_defined'] is False
        assert data['automorphism'] is False
        assert 'linear_part' not in data

    def test_bad_map(self, runner):
        result = invoke(runner, "aut-verify", EXAMPLE_ONE, "--map", "x -> w")
        assert result.exit_code == 1
        assert "error:" in result.output

    def test_map_is_required(self, runner):
        assert invoke(runner, "aut-verify", EXAMPLE_ONE).exit_code == 2

    def test_constraints_export(self, runner, tmp_path):
        target = tmp_path / "constraints.txt"
        result = invoke(runner, "aut-constraints", EXAMPLE_ONE, "--export", target)
        assert result.exit_code == 0
        assert "unknowns: 16 (4 in the linear part)" in result.output
        lines = target.read_text(encoding="utf-8").splitlines()
        assert lines and all(line.startswith("0 = ") for line in lines)
        assert f"equations: {len(lines)}" in result.output


class TestErrors:
    def test_missing_file(self, runner, tmp_path):
        result = invoke(runner, "info", tmp_path / "absent.weil")
        assert result.exit_code == 1
        assert "error:" in result.output
        assert "File not found" in result.output

    def test_bad_spec_line(self, runner, tmp_path):
        path = tmp_path / "bad.weil"
        path.write_text("vars: x y\norder: 4\ngen: x^2 + w\n", encoding="utf-8")
        result = invoke(runner, "info", path)
        assert result.exit_code == 1
        assert f"{path}:3:" in result.output

    def test_non_local(self, runner, tmp_path):
        path = tmp_path / "unit.weil"
        path.write_text("vars: x\norder: 3\ngen: 1 + x\n", encoding="utf-8")
        assert invoke(runner, "info", path).exit_code == 1

    def test_bad_polynomial(self, runner):
        result = invoke(runner, "nf", EXAMPLE_ONE, "x^+")
        assert result.exit_code == 1
        assert "error:" in result.output

    def test_unknown_command(self, runner):
        assert invoke(runner, "frobnicate").exit_code == 2

    def test_invalid_weight_bound(self, runner):
        assert invoke(runner, "classify", EXAMPLE_ONE, "--weight-bound", 0).exit_code == 2

    def test_invalid_scan_count(self, runner):
        assert invoke(runner, "scan", "--count", 0).exit_code == 2


class TestScan:
    ARGS = ("scan", "--seed", 5, "--count", 4, "--r", 3)

    def test_deterministic(self, runner):
        first = invoke(runner, *self.ARGS)
        second = invoke(runner, *self.ARGS)
        assert first.exit_code == 0
        assert first.output == second.output
        assert "seed 5: 4 instances" in first.output
        assert first.output.splitlines()[0].split() == ["index", "dim", "ord", "wid", "verdict", "certs",
                                                        "dimK'", "status", "dimMA", "conjecture"]

    def test_json_file(self, runner, tmp_path):
        target = tmp_path / "scan.json"
        result = invoke(runner, *self.ARGS, "--json", target)
        assert result.exit_code == 0
        data = json.loads(target.read_text(encoding="utf-8"))
        assert data['config']['seed'] == 5
        assert data['summary']['instances'] == 4
        assert len(data['records']) == 4
        assert 'elapsed_ms' not in data['records'][0]
        for record in data['records']:
            assert record['spec']['order'] == 3

    def test_timings_column(self, runner):
        result = invoke(runner, *self.ARGS, "--timings")
        assert result.output.splitlines()[0].split()[-1] == "ms"
