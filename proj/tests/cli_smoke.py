"""End-to-end checks of the gpt-tomo binary: flags, exit codes, seeding."""

import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = []


def run(*args, env_seed=None):
    env = dict(os.environ)
    env.pop("GPT_TOMO_SEED", None)
    if env_seed is not None:
        env["GPT_TOMO_SEED"] = str(env_seed)
    proc = subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
    out = None
    if proc.stdout.strip():
        try:
            out = json.loads(proc.stdout)
        except json.JSONDecodeError:
            pass
    return proc.returncode, out


def check(name, cond):
    print(("ok  " if cond else "FAIL") + " " + name)
    if not cond:
        failures.append(name)


code, out = run("decompose", "--theory", "two-rebit")
check("decompose exit 0", code == 0)
check("decompose dims", out["dims"] == {"total": 10, "ab_tensor": 9,
                                        "ab_tensor_dual": 9, "h_state": 1,
                                        "h_effect": 1, "local_a": 3, "local_b": 3})

code, out = run("classify", "--theory", "two-rebit", "--state", "omega-plus")
check("classify exit 0", code == 0)
check("classify flags", (out["separable"], out["has_tl"], out["has_tnl"]) ==
      (False, False, True))

code, out = run("demo", "locc-decode", "--bit", "1")
check("locc exit 0", code == 0)
check("locc probabilities", abs(out["joint_probs"]["p01"] - 0.5) < 1e-12 and
      abs(out["joint_probs"]["p10"] - 0.5) < 1e-12)
check("locc decoded", out["decoded"] == 1)

code, _ = run("classify", "--theory", "no-such")
check("unknown theory exits 1", code == 1)

code, _ = run("classify", "--theory", "two-rebit", "--bogus-flag")
check("unknown flag exits 1", code == 1)

code, _ = run("demo", "secret-share", "--theory", "bct")
check("failed verdict exits 2", code == 2)

# The environment seed overrides the flag.
_, a = run("demo", "bell", "--seed", "99", env_seed=5)
_, b = run("demo", "bell", "--seed", "5")
a.pop("generated_at"); b.pop("generated_at")
check("env seed overrides flag", a == b)

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "out.json")
    code, _ = run("validate", "--theory", "bct", "--output", path)
    with open(path) as f:
        saved = json.load(f)
    check("output file written", code == 0 and saved["all_pass"] is True)

sys.exit(1 if failures else 0)
