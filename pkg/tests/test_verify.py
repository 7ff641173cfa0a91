import json
from pathlib import Path

import pytest

from spinlab import module_verify
from spinlab.config import Config
from spinlab.quantum import ValidationError
from spinlab.spinlab import main

ROOT = Path(__file__).parents[1]
CONFIG = str(ROOT / "config.ini")

BELL_CLAIM = """\
---
name: bell_at_sixty_degrees
kind: bell_lhs
params:
  theta_ab: 1.0471975511965976
  theta_bc: 1.0471975511965976
expected: -0.125
stated: -0.25
tolerance: 1.0e-12
"""

PURITY_CLAIMS = """\
---
name: pure
kind: purity_pure
expected: 1.0
tolerance: 1.0e-12
---
name: mixed_claimed_pure
kind: purity_mixed
expected: 1.0
tolerance: 1.0e-3
"""


def verify(tmp_path, claims: str) -> tuple[int, Path]:
    claims_file = tmp_path / "claims.yaml"
    claims_file.write_text(claims, encoding="utf-8")
    output = tmp_path / "verify.json"
    code = main(["-c", CONFIG, "verify", "--claims", str(claims_file), "--output", str(output)])
    return code, output


def test_passing_claim_reports_stated_discrepancy(tmp_path):
    code, output = verify(tmp_path, BELL_CLAIM)
    assert code == 0
    result = json.loads(output.read_text(encoding="utf-8"))
    (claim,) = result["claims"]
    assert claim["passed"]
    assert claim["computed"] == pytest.approx(-0.125, abs=1e-12)
    assert claim["stated"] == -0.25
    assert result["failed"] == []
    assert result["summary"][0] == "1 of 1 claims passed"
    assert any("stated -0.25, computed -0.125" in line for line in result["summary"])


def test_failing_claim_exits_3(tmp_path):
    code, output = verify(tmp_path, PURITY_CLAIMS)
    assert code == 3
    result = json.loads(output.read_text(encoding="utf-8"))
    assert result["failed"] == ["mixed_claimed_pure"]
    assert "failed: mixed_claimed_pure" in result["summary"]
    assert [c["computed"] for c in result["claims"]] == pytest.approx([1.0, 0.5], abs=1e-12)


def test_unknown_kind_exits_2(tmp_path):
    code, output = verify(
        tmp_path, "name: x\nkind: no_such_kind\nexpected: 0\ntolerance: 0\n"
    )
    assert code == 2
    assert not output.exists()


def test_missing_fields_rejected(tmp_path):
    path = tmp_path / "claims.yaml"
    path.write_text("name: x\nkind: purity_pure\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        module_verify.load_claims(str(path))


def test_malformed_yaml_rejected(tmp_path):
    path = tmp_path / "claims.yaml"
    path.write_text("name: [unclosed\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        module_verify.load_claims(str(path))


def test_missing_file_rejected(tmp_path):
    with pytest.raises(ValidationError):
        module_verify.load_claims(str(tmp_path / "absent.yaml"))


def test_relative_claims_path_resolves_from_checkout(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    path = module_verify.resolve_claims_file("claims/spin_claims.yaml")
    assert path == ROOT / "claims" / "spin_claims.yaml"


def test_shipped_claims_cover_registered_kinds():
    claims = module_verify.load_claims(str(ROOT / "claims" / "spin_claims.yaml"))
    assert {c["kind"] for c in claims} == set(module_verify.CLAIM_KINDS)


@pytest.mark.parametrize(
    ("kind", "params", "expected"),
    [
        ("z_diagonal_gap", {}, 0.0),
        ("discriminate_pure", {}, 1.0),
        ("discriminate_mixed", {}, 0.5),
        ("entanglement_singlet", {}, 1.0),
        ("factorize_defect", {"alphas": [0, 0, 1, 0]}, 0.0),
        ("classical_anticorrelated_minimum", {}, 0.0),
        ("born_z_grid", {"points": 5}, 0.0),
    ],
)
def test_claim_kinds(kind, params, expected):
    assert module_verify.CLAIM_KINDS[kind](params, Config()) == pytest.approx(expected, abs=1e-12)


def test_shipped_claims_all_pass(tmp_path):
    output = tmp_path / "verify.json"
    code = main(["-c", CONFIG, "verify", "--output", str(output)])
    result = json.loads(output.read_text(encoding="utf-8"))
    assert result["failed"] == []
    assert code == 0
