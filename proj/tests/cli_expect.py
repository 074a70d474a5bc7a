"""Runs the foliatk binary over the shipped scenes and checks exit codes."""

import json
import os
import subprocess
import sys
import tempfile

BIN, SCENES = sys.argv[1], sys.argv[2]

# (arguments, expected exit code, expected verdict or None)
CASES = [
    (["check-involutive", "--scene", "so3.json"], 0, "pass"),
    (["check-srf", "--scene", "rotation.json"], 0, "pass"),
    (["check-srf", "--scene", "rotation_scaled.json"], 1, "fail"),
    (["killing-connection", "--scene", "killing.json"], 0, "pass"),
    (["lift-ideal", "--scene", "so3.json"], 0, "pass"),
    (["closure-check", "--scene", "so3.json"], 0, "pass"),
    (["closure-check", "--scene", "xpx.json"], 0, "pass"),
    (["normalizer-check", "--scene", "so3.json", "--candidate", "energy"], 0, "pass"),
    (["normalizer-check", "--scene", "so3.json", "--candidate", "translation"], 1, "fail"),
    (["normalizer-check", "--scene", "xpx.json", "--candidate", "translation"], 1, "fail"),
    (["reduced-bracket", "--scene", "so3.json", "--candidate", "energy", "--candidate", "radius"], 0, "pass"),
    (["point-report", "--scene", "so3.json", "--point", "1,0,0"], 0, "pass"),
    (["point-report", "--scene", "order_k3_n3.json"], 0, "pass"),
    (["module-equal", "--scene", "rotation_scaled.json"], 1, "fail"),
    (["check-riemannian", "--scene", "submersion_r3_r2.json"], 0, "pass"),
    (["check-riemannian", "--scene", "submersion_scaled.json"], 1, "fail"),
    (["phi-pi", "--scene", "submersion_r3_r2.json"], 0, "pass"),
    (["pullback", "--scene", "composition.json"], 0, "pass"),
    (["poisson-defect", "--scene", "submersion_r3_r2.json"], 0, "pass"),
    (["metric-defect", "--scene", "submersion_r3_r2.json"], 0, "pass"),
    (["integrability", "--scene", "submersion_r3_r2.json"], 1, "fail"),
    (["integrability", "--scene", "submersion_euclid.json"], 0, "pass"),
    (["morita-span", "--scene", "morita_reflexive.json"], 0, "pass"),
    (["morita-span", "--scene", "morita_two_projections.json"], 0, "pass"),
    (["morita-span", "--scene", "morita_mismatch.json"], 1, "fail"),
    (["flow-monitor", "--scene", "so3.json"], 0, "pass"),
    (["flow-monitor", "--scene", "xpx.json"], 1, "fail"),
    (["geodesic-check", "--scene", "rotation_r3.json"], 0, "pass"),
    (["geodesic-check", "--scene", "rotation_scaled_r3.json"], 0, "pass"),
    (["check-srf", "--scene", "so3.json", "--order", "lex"], 0, "pass"),
    # usage and input errors
    (["bogus", "--scene", "so3.json"], 2, None),
    (["check-srf"], 2, None),
    (["check-srf", "--scene", "missing.json"], 2, None),
    (["check-srf", "--scene", "so3.json", "--order", "deglex"], 2, None),
    (["point-report", "--scene", "so3.json", "--point", "1,x"], 2, None),
    (["point-report", "--scene", "so3.json", "--point", "1,0"], 2, "error"),
    (["phi-pi", "--scene", "rotation.json"], 2, "error"),
    (["flow-monitor", "--scene", "so3.json", "--dt", "0"], 2, "error"),
    (["normalizer-check", "--scene", "so3.json", "--candidate", "absent"], 2, "error"),
]


def resolve(args):
    out = list(args)
    if "--scene" in out:
        i = out.index("--scene") + 1
        out[i] = os.path.join(SCENES, out[i])
    return out


def main():
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for n, (args, code, verdict) in enumerate(CASES):
            report = os.path.join(tmp, f"r{n}.json")
            proc = subprocess.run([BIN, *resolve(args), "--json-out", report], capture_output=True, text=True)
            ok = proc.returncode == code
            got = None
            if verdict is not None:
                try:
                    with open(report) as fh:
                        got = json.load(fh)["verdict"]
                except (OSError, ValueError, KeyError):
                    got = None
                ok = ok and got == verdict
            status = "ok" if ok else "MISMATCH"
            print(f"{status}: {' '.join(args)} -> exit {proc.returncode} (want {code}), verdict {got}")
            if not ok:
                failures += 1
                sys.stderr.write(proc.stderr)
        # stdout mode produces the same bytes as --json-out
        args = resolve(["check-srf", "--scene", "so3.json"])
        a = subprocess.run([BIN, *args], capture_output=True, text=True).stdout
        b = subprocess.run([BIN, *args], capture_output=True, text=True).stdout
        path = os.path.join(tmp, "same.json")
        subprocess.run([BIN, *args, "--json-out", path], capture_output=True)
        with open(path) as fh:
            c = fh.read()
        same = a == b == c
        print(("ok" if same else "MISMATCH") + ": reports are byte-identical across runs and outputs")
        failures += not same
    print(f"{len(CASES) + 1 - failures}/{len(CASES) + 1} CLI checks passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
