"""The pure-Python kernel must be a drop-in replacement for the compiled one."""

import json
import os
import subprocess
import sys


def run_with_env(pure: bool, code: str) -> str:
    env = dict(os.environ)
    if pure:
        env["TENSEC_PURE_PYTHON"] = "1"
    else:
        env.pop("TENSEC_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", code],
                         capture_output=True, text=True, env=env)
    assert out.returncode == 0, out.stderr
    return out.stdout


PROBE = """
import json
from tensec.numeric import KERNEL_BACKEND
from tensec.fixtures import DESARGUES_POS, DESARGUES_NEG
from tensec.framework import self_stress_basis
from tensec.numeric import scalar_to_string
basis = self_stress_basis(DESARGUES_POS)
print(json.dumps({
    "backend": KERNEL_BACKEND,
    "dim_pos": len(basis),
    "dim_neg": len(self_stress_basis(DESARGUES_NEG)),
    "weights": {f"{u}-{v}": scalar_to_string(x)
                for (u, v), x in basis[0].weights.items()},
}))
"""


def test_fallback_selected_and_results_identical():
    compiled = json.loads(run_with_env(False, PROBE))
    pure = json.loads(run_with_env(True, PROBE))
    assert pure["backend"] == "python"
    assert {k: v for k, v in pure.items() if k != "backend"} == \
           {k: v for k, v in compiled.items() if k != "backend"}
