"""Solve exported models with HiGHS and compare against the internal solver."""
import os
import re
import subprocess
import sys

import highspy


def internal_optimum(drp, instance, objective):
    out = subprocess.run([drp, "solve", "--instance", instance, "--objective", objective, "--gap", "1e-9"],
                         check=True, capture_output=True, text=True).stdout
    return float(re.search(r"status optimal UP (\S+)", out).group(1))


def highs_optimum(path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 1e-9)
    h.readModel(path)
    h.run()
    if h.modelStatusToString(h.getModelStatus()) != "Optimal":
        raise SystemExit(f"HiGHS status {h.modelStatusToString(h.getModelStatus())} on {path}")
    return h.getInfo().objective_function_value


def main():
    drp, instance, work = sys.argv[1:4]
    os.makedirs(work, exist_ok=True)
    failures = 0
    for objective in ("R", "E", "RE"):
        expect = internal_optimum(drp, instance, objective)
        for fmt in ("mps", "lp"):
            path = os.path.join(work, f"model_{objective}.{fmt}")
            subprocess.run([drp, "export", "--instance", instance, "--objective", objective, "--export", fmt,
                            "--out", path], check=True)
            got = highs_optimum(path)
            ok = abs(got - expect) <= 1e-6 * max(1.0, abs(expect))
            failures += not ok
            print(f"{'ok' if ok else 'MISMATCH'} {objective} {fmt}: internal {expect:.9g} HiGHS {got:.9g}")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
