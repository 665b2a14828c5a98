#!/usr/bin/env python3
"""Smoke test for the gridfreq_py extension module.

Builds the cdylib with cargo if needed, stages it as an importable module,
and exercises the main types and operations end to end. Run from anywhere:

    python3 python/smoke_test.py [--release]
"""

import argparse
import math
import shutil
import subprocess
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def build_extension(release: bool) -> Path:
    profile = "release" if release else "debug"
    cmd = ["cargo", "build", "-p", "gridfreq-py"]
    if release:
        cmd.append("--release")
    subprocess.run(cmd, cwd=REPO_ROOT, check=True)

    built = REPO_ROOT / "target" / profile / "libgridfreq_py.so"
    if not built.exists():  # e.g. macOS
        built = REPO_ROOT / "target" / profile / "libgridfreq_py.dylib"
    staging = REPO_ROOT / "python" / "_build"
    staging.mkdir(exist_ok=True)
    module = staging / "gridfreq_py.so"
    shutil.copy2(built, module)
    return staging


def approx(actual, expected, tol, label):
    if abs(actual - expected) > tol:
        raise AssertionError(f"{label}: got {actual}, want {expected} +/- {tol}")
    print(f"  {label}: {actual:.6g} (expected {expected:.6g})")


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--release", action="store_true", help="build with --release")
    args = parser.parse_args()

    sys.path.insert(0, str(build_extension(args.release)))
    import gridfreq_py as gf

    print(f"gridfreq_py {gf.__version__}")

    sg, vsm, ess = gf.SgParams(), gf.VsmParams(), gf.EssParams()

    print("energy accounting:")
    report = gf.energy_report(sg, vsm, ess, 0.375)
    approx(report.delta_e_hd, 0.75, 1e-12, "delta_e_hd")
    approx(report.delta_e_gov, 1.125, 1e-12, "delta_e_gov")
    approx(report.delta_e_vsm, 1.875, 1e-12, "delta_e_vsm")
    approx(report.delta_soc, 0.2757, 5e-5, "delta_soc")

    model = gf.build_system(sg, vsm)
    via_fv = gf.energy_report_via_final_value(model, ess, 0.375)
    approx(via_fv.delta_e_vsm, report.delta_e_vsm, 1e-9, "final-value route")

    print("transfer functions:")
    assert model.g_f.evaluate(0j) == 0j, "g_f must vanish at s = 0"
    s = 1 + 1j
    balance = (
        model.tf_p_sg.evaluate(s) + model.tf_p_hd.evaluate(s) + model.tf_p_gov.evaluate(s)
    )
    assert abs(balance - 1) < 1e-12, f"power balance off: {balance}"
    print(f"  power balance at s = 1+1j: |sum - 1| = {abs(balance - 1):.2e}")

    lowpass = gf.TransferFunction([1.0], [1.0, 0.3])
    approx(lowpass.bandwidth(), 1 / 0.3, 1e-5, "first-order bandwidth")
    approx(lowpass.magnitude_db(1 / 0.3), 20 * math.log10(1 / math.sqrt(2)), 1e-9, "corner gain dB")
    assert lowpass.is_stable()

    print("loop bandwidths:")
    primary, secondary, soc = gf.estimate_bandwidths(sg, vsm, ess)
    approx(primary, 40 / 7.5, 1e-12, "primary")
    approx(secondary, 0.125, 1e-12, "secondary")
    approx(soc, 0.4 / 6.8, 1e-12, "soc")
    bw = gf.bandwidth_report(sg, vsm, ess)
    assert bw.separation_ok, "table1 must satisfy the separation rule"
    approx(bw.soc_measured, bw.soc_analytic, 1e-4 * bw.soc_analytic, "soc measured vs analytic")

    print("simulation (SG only, 60 s):")
    result = gf.run_simulation(gf.Scenario(no_vsm=True, duration=60.0))
    approx(result.metrics.nadir_hz, 57.87, 0.3, "nadir")
    approx(result.metrics.nadir_time_s, 10.47, 0.3, "nadir time")
    assert result.metrics.max_power_balance_residual < 1e-6

    print("simulation (VSM with recovery, 400 s):")
    result = gf.run_simulation(gf.Scenario(duration=400.0))
    approx(result.metrics.nadir_hz, 59.34, 0.15, "nadir")
    approx(result.metrics.soc_final, 0.5, 0.005, "soc_final")
    settling = result.metrics.soc_settling_time_s
    assert settling is not None and 60.0 <= settling <= 150.0, f"settling {settling}"
    print(f"  soc settling: {settling:.1f} s")
    assert len(result) == len(result.frequency_hz) == len(result.soc)

    try:
        gf.SgParams(h_sg=0.0)
    except ValueError as err:
        print(f"  invalid parameter rejected: {err}")
    else:
        raise AssertionError("SgParams(h_sg=0) should raise ValueError")

    print("smoke test OK")


if __name__ == "__main__":
    main()
