import argparse
import json

import numpy as np
import pytest

from experiments import (ExperimentConfig, RegimeWarning, load_config, preset_configs, run_experiment, save_config,
                         validate)
from simulate import add_config_args, cli
from utils import default_workers
from utils.errors import UsageError


def _small_config(tmp_path, **overrides):
    values = dict(name="small", total_time=4.0, step_size=0.05, noise_std=0.025, ensemble_size=3, batch_size=2,
                  output_dir=str(tmp_path / "small"))
    values.update(overrides)
    return ExperimentConfig(**values)


def test_step_count_must_be_integral():
    assert ExperimentConfig(total_time=1.0, step_size=0.1).n_steps == 10
    with pytest.raises(UsageError):
        ExperimentConfig(total_time=1.0, step_size=0.3)
    with pytest.raises(UsageError):
        ExperimentConfig(variant="swap_chain")
    with pytest.raises(UsageError):
        ExperimentConfig(observables=["n1"], spectrum_observable="sigma2")


def test_validate_warns_on_large_noise():
    config = ExperimentConfig(total_time=1.0, step_size=0.05, noise_std=0.1)
    with pytest.warns(RegimeWarning):
        diagnostics = validate(config)
    assert len(diagnostics) == 1
    assert validate(config.replace(noise_std=0.025)) == []


def test_config_files(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("name: layered\nU:\n  value: 2.0\nvariant: cnot_chain\ntotal_time: 1\nstep_size: 0.1\n")
    config = load_config(path)
    assert config.U == 2.0 and config.variant == "cnot_chain" and config.n_steps == 10

    saved = save_config(config, tmp_path / "config.json")
    assert load_config(saved).to_dict() == config.to_dict()

    path.write_text("name: broken\nsteps: 10\n")
    with pytest.raises(UsageError):
        load_config(path)
    path.write_text("- just\n- a list\n")
    with pytest.raises(UsageError):
        load_config(path)


def test_replace_ignores_unset_overrides():
    config = ExperimentConfig(total_time=1.0, step_size=0.1)
    assert config.replace(U=None, seed=4).seed == 4
    assert config.replace(U=None).U == 1.0


def test_run_experiment_outputs(tmp_path):
    config = _small_config(tmp_path)
    result = run_experiment(config, workers=1, progress=False)
    out = tmp_path / "small"
    for name in ("manifest.json", "trajectories.csv", "spectrum.csv", "summary.json"):
        assert (out / name).exists(), name
    assert (out / "metrics" / "version_0" / "metrics.csv").exists()

    header = (out / "trajectories.csv").read_text().splitlines()[0].split(",")
    assert header[:3] == ["t", "faulty_circuit.n1", "faulty_circuit.n1.sem"]
    assert "ideal_exact.sigma2" in header and "ideal_exact.sigma2.sem" not in header
    table = np.loadtxt(out / "trajectories.csv", delimiter=",", skiprows=1)
    assert table.shape[0] == config.n_steps + 1

    summary = json.loads((out / "summary.json").read_text())
    assert summary["disorder_conserves_particle_number"]
    assert set(summary["backends"]) == {"faulty_circuit", "effective_hamiltonian", "ideal_exact"}
    assert summary["max_difference_ratio"] is not None
    assert np.allclose(result.mean["faulty_circuit"]["N"], 2.0, atol=1e-10)
    assert np.all(result.standard_error["faulty_circuit"]["n1"][1:] > 0)

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["run_ids"] == [0, 3] and manifest["program"]["noise"]["std_dev"] == 0.025


def test_rerun_from_manifest_is_identical(tmp_path):
    first = _small_config(tmp_path, ensemble_size=2, backends=["faulty_circuit", "ideal_exact"])
    run_experiment(first, progress=False)
    again = load_config(tmp_path / "small" / "manifest.json").replace(output_dir=str(tmp_path / "again"))
    run_experiment(again, progress=False)
    for name in ("trajectories.csv", "spectrum.csv"):
        assert (tmp_path / "small" / name).read_bytes() == (tmp_path / "again" / name).read_bytes()


def test_ensemble_independent_of_batching(tmp_path):
    single = run_experiment(_small_config(tmp_path, batch_size=3, backends=["faulty_circuit"]), progress=False)
    split = run_experiment(_small_config(tmp_path, batch_size=1, backends=["faulty_circuit"],
                                         output_dir=str(tmp_path / "split")), progress=False)
    for name in ("n1", "sigma2", "N"):
        assert np.allclose(single.mean["faulty_circuit"][name], split.mean["faulty_circuit"][name], atol=1e-12)


def test_presets():
    fig4, = preset_configs("fig4", "results")
    assert fig4.noise_std == pytest.approx(0.025) and fig4.n_steps == 20000
    fig6 = preset_configs("fig6", "results", ensemble_size=10)
    assert [c.noise_std for c in fig6] == pytest.approx([0.005, 0.0125, 0.025, 0.05])
    fig8 = preset_configs("fig8", "results", step_sizes=(0.05, 0.2), relative_std=0.5)
    assert len(fig8) == 6
    assert {c.temporal_mode for c in fig8} == {"quasi_static"}
    assert {c.variant for c in fig8} == {"cz_chain", "cnot_chain", "iswap_chain"}
    assert all(c.initial_state == [1] for c in fig8)
    assert all(c.noise_std == pytest.approx(0.5 * c.step_size) for c in fig8)
    defaults = {c.variant: c.noise_std for c in preset_configs("fig8", "results", step_sizes=(0.05,))}
    assert defaults == pytest.approx({"cz_chain": 0.005, "iswap_chain": 0.005, "cnot_chain": 0.1})
    with pytest.raises(UsageError):
        preset_configs("fig8", "results", relative_std={"cz_chain": 0.1})
    with pytest.raises(UsageError):
        preset_configs("fig5", "results")
    with pytest.raises(UsageError):
        preset_configs("fig4", "results", step_sizes=(0.1,))


def test_default_workers(monkeypatch):
    monkeypatch.setenv("TROTTERDISORDER_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("TROTTERDISORDER_WORKERS", "none")
    with pytest.raises(UsageError):
        default_workers()


def test_cli_exit_codes(tmp_path, capsys):
    assert cli(["budget", "--fidelity", "0.99", "1.0"]) == 0
    out = capsys.readouterr().out
    assert "7.07" in out and "inf" in out
    assert cli(["budget", "--fidelity", "1.5"]) == 1
    assert cli(["validate", "--total_time", "1", "--step_size", "0.3"]) == 1
    assert cli(["validate", "--total_time", "1", "--step_size", "0.1"]) == 0
    assert cli(["transmogrify"]) == 1
    assert cli(["budget", "--fidelity", "0.99", "--log_level", "chatty"]) == 1


def test_cli_hopping_help():
    parser = argparse.ArgumentParser()
    add_config_args(parser)
    helps = {action.dest: action.help for action in parser._actions}
    assert helps["t1"].startswith("Inter-site hopping on modes (1,2) and (3,4)")
    assert helps["t2"].startswith("On-site spin flip on modes (2,3) and (1,4)")


def test_cli_simulate(tmp_path):
    out = tmp_path / "cli"
    code = cli(["simulate", "--total_time", "2", "--step_size", "0.05", "--ensemble_size", "2", "--workers", "1",
                "--progress", "False", "--output_dir", str(out)])
    assert code == 0
    assert load_config(out / "manifest.json").ensemble_size == 2


if __name__ == '__main__':
    test_step_count_must_be_integral()
    test_presets()
