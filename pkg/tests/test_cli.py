"""Command-line front end: outputs, exit codes, determinism, diagnostics."""

import json
from fractions import Fraction

from blocklie.cli import main
from blocklie.modules import IntermediateSpec, build_window, extend_trivially


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bracket_command(capsys):
    code, out, _ = run(
        capsys,
        "bracket", "--variant", "B",
        "--x", '{"alpha":2,"level":0}',
        "--y", '{"alpha":-2,"level":0}',
    )
    assert code == 0
    assert out.strip() == "-4*L_{0,0} + C"


def test_bracket_rejects_bad_operand(capsys):
    code, _, err = run(capsys, "bracket", "--variant", "B", "--x", '{"nope": 1}', "--y", '{"alpha":1}')
    assert code == 2
    assert "alpha" in err


def test_module_irreducible_exit_zero_on_agreement(capsys):
    code, out, _ = run(
        capsys, "module", "--family", "Aab", "--a", "0", "--b", "1", "--range", "-8:8", "irreducible"
    )
    assert code == 0
    assert "bruteforce=false criterion=false" in out


def test_module_irreducibility_grid(capsys):
    code, out, _ = run(
        capsys, "module", "--family", "Aab", "--a", "0,1/2", "--b", "0,2", "--range", "-8:8", "irreducible"
    )
    assert code == 0
    assert out.count("bruteforce=") == 4
    assert "a=0 b=0: bruteforce=false criterion=false" in out
    assert "a=1/2 b=2: bruteforce=true criterion=true" in out


def test_module_grid_rejected_for_single_value_actions(capsys):
    code, _, err = run(
        capsys, "module", "--family", "Aab", "--a", "0,1", "--b", "2", "--range", "-8:8", "spanning"
    )
    assert code == 2
    assert "grids" in err


def test_module_negative_parameters(capsys):
    code, out, _ = run(
        capsys, "module", "--family", "Aab", "--a", "-3/2", "--b", "2", "--range", "-8:8", "irreducible"
    )
    assert code == 0
    assert "bruteforce=true criterion=true" in out


def test_verma_dims_output(capsys):
    code, out, _ = run(capsys, "verma", "--n", "1", "--depth", "3", "dims")
    assert code == 0
    assert out.strip() == "2, 5, 10"


def test_verma_singular_with_inline_lambda(capsys):
    code, out, _ = run(capsys, "verma", "--n", "1", "--depth", "2", "singular", "--lam", "1/2,2/3", "--c", "0")
    assert code == 0
    assert "singular vectors through depth 2: 0" in out


def test_axioms_command(capsys):
    code, out, _ = run(capsys, "axioms", "--variant", "Vir", "--degree", "5", "--vir-degree", "4")
    assert code == 0
    assert "c0=1/2" in out


def test_lemmas_default_passes_strict_flags_discrepancy(capsys):
    code, _, _ = run(capsys, "lemmas")
    assert code == 0
    strict_code, _, _ = run(capsys, "lemmas", "--strict")
    assert strict_code == 1  # the recorded leading-coefficient mismatch


def test_report_determinism(tmp_path, capsys):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert run(capsys, "lemmas", "--out", str(first))[0] == 0
    assert run(capsys, "lemmas", "--out", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()


def test_classify_module_file(tmp_path, capsys):
    window = extend_trivially(build_window(IntermediateSpec("Aab", Fraction(1, 2), Fraction(2)), -4, 4), 1)
    path = tmp_path / "mod.json"
    path.write_text(json.dumps(window.to_json()))
    code, out, _ = run(capsys, "classify", "--module-file", str(path))
    assert code == 0
    assert out.strip() == "intermediate-series"


def test_classify_reports_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"variant": "B"}')
    code, _, err = run(capsys, "classify", "--module-file", str(path))
    assert code == 2
    assert "offset" in err


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"degree": 3, "vir_degree": 2}')
    code, out, _ = run(
        capsys, "axioms", "--config", str(cfg), "--variant", "Vir", "--vir-degree", "4", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["config"]["degree"] == 3  # from the config file
    assert payload["vir_consistency"]["pairs"] == 81  # flag value 4 wins


def test_out_of_variant_key_diagnostic(capsys):
    code, _, err = run(
        capsys, "bracket", "--variant", "Q:1:2",
        "--x", '{"alpha":1,"level":0}', "--y", '{"alpha":1,"level":1}',
    )
    assert code == 2
    assert "not valid" in err


def test_spanning_and_extension_commands(capsys):
    code, out, _ = run(
        capsys, "module", "--family", "Aab", "--a", "1/2", "--b", "2", "--range", "-8:8", "spanning"
    )
    assert code == 0 and "spans" in out
    code, out, _ = run(
        capsys, "module", "--family", "Aab", "--a", "1/2", "--b", "2", "--range", "-9:9",
        "--level-cap", "1", "extension",
    )
    assert code == 0
    assert "dimension: 0" in out


def test_intertwiner_command(capsys):
    code, out, _ = run(
        capsys, "module", "--family", "Aab", "--a", "1/2", "--b", "1", "--to-b", "0",
        "--range", "-6:6", "intertwiner",
    )
    assert code == 0 and "found" in out


def test_unwritable_report_path(capsys):
    code, _, err = run(capsys, "verma", "--n", "1", "--depth", "2", "dims", "--out", "/no-such-dir/report.json")
    assert code == 1
    assert "cannot write report" in err


def test_worker_pool_matches_serial(monkeypatch, capsys):
    monkeypatch.setenv("BLOCKLIE_WORKERS", "3")
    code_par, out_par, _ = run(capsys, "lemmas", "--format", "json")
    monkeypatch.delenv("BLOCKLIE_WORKERS")
    code_ser, out_ser, _ = run(capsys, "lemmas", "--format", "json")
    assert code_par == code_ser == 0
    assert out_par == out_ser
