"""Regenerate the golden fixtures from the simulation CLI.

Everything here goes through `python3 -m vortexed` subprocesses, so the
fixtures are exactly what a user's pipeline would produce.  Small system
(N = 4) to keep regeneration under a couple of minutes.

    python3 plotscripts/fixtures/regen.py
"""
import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

HERE = pathlib.Path(__file__).resolve().parent
BASE = ["--n", "4", "--a", "0.03", "--seed", "1"]


def run(args, out_dir):
    cmd = [sys.executable, "-m", "vortexed", *args, "--out-dir", str(out_dir)]
    print(" ".join(cmd[2:]))
    subprocess.run(cmd, check=True, stdout=subprocess.DEVNULL)


def main():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)

        # 200-point single-level sweep and a coarser two-level one
        run(["sweep", *BASE, "--g", "0.5", "--n-ll", "1",
             "--omega-lo", "0.80", "--omega-hi", "0.99",
             "--omega-steps", "200"], tmp / "s1")
        shutil.copy(tmp / "s1" / "sweep.csv", HERE / "sweep_ll1.csv")
        run(["sweep", *BASE, "--g", "0.5", "--n-ll", "2",
             "--omega-lo", "0.80", "--omega-hi", "0.99",
             "--omega-steps", "60"], tmp / "s2")
        shutil.copy(tmp / "s2" / "sweep.csv", HERE / "sweep_ll2.csv")

        # ground states: at the single-level crossing, and deep condensate
        run(["critical", *BASE, "--g", "0.5", "--n-ll", "1",
             "--omega-lo", "0.85", "--omega-hi", "0.99"], tmp / "c0")
        omega_c = json.loads((tmp / "c0" / "critical.json").read_text())["omega_c"]
        run(["ground-state", *BASE, "--g", "0.5", "--n-ll", "1",
             "--omega", f"{omega_c:.17g}"], tmp / "g1")
        shutil.copy(tmp / "g1" / "metrology.json", HERE / "metrology_crossing.json")
        run(["ground-state", *BASE, "--g", "0.5", "--n-ll", "1",
             "--omega", "0.30"], tmp / "g2")
        shutil.copy(tmp / "g2" / "metrology.json", HERE / "metrology_condensate.json")

        # per-coupling artifacts for the two grid figures; at N = 4 the
        # g = 0.4 crossing sits above 0.99, so the grid starts at 0.7
        for g in ("0.7", "1.0", "1.3"):
            run(["compare-levels", *BASE, "--g", g, "--levels", "1,2",
                 "--omega-lo", "0.70", "--omega-hi", "0.99"], tmp / f"cmp{g}")
            shutil.copy(tmp / f"cmp{g}" / "compare.json",
                        HERE / f"compare_g{g}.json")
            for n_ll in ("1", "2"):
                run(["critical", *BASE, "--g", g, "--n-ll", n_ll,
                     "--omega-lo", "0.70", "--omega-hi", "0.99"],
                    tmp / f"cr{g}_{n_ll}")
                shutil.copy(tmp / f"cr{g}_{n_ll}" / "critical.json",
                            HERE / f"critical_g{g}_ll{n_ll}.json")
    print("fixtures regenerated")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
