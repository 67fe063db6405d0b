"""Composite state spaces, holistic decompositions, entanglement
classification and information-protocol demos.

The heavy lifting happens in the compiled extension ``_gpttomo``; this wrapper
parses its JSON payloads into plain dictionaries.
"""

import json

try:
    from . import _gpttomo as _core  # packaged layout
except ImportError:  # pragma: no cover - build-tree layout
    import _gpttomo as _core

__version__ = _core.__version__
SCHEMA_VERSION = _core.SCHEMA_VERSION
DEFAULT_SEED = _core.DEFAULT_SEED

composite_names = _core.composite_names
named_states = _core.named_states
projector_tl = _core.projector_tl
projector_tnl = _core.projector_tnl
min_eigenvalue_symmetric = _core.min_eigenvalue_symmetric
iota_embed = _core.iota_embed


def run(verb, theory="", state="", state_json="", demo="", bit=0, bit_x=0,
        bit_y=0, seed=None):
    """Dispatches a command; returns (exit_code, output_dict)."""
    payload = json.loads(_core.run_json(
        verb, theory, state, state_json, demo, bit, bit_x, bit_y,
        DEFAULT_SEED if seed is None else seed))
    return payload["exit_code"], payload["output"]


def decompose(theory):
    code, out = run("decompose", theory=theory)
    if code != 0:
        raise RuntimeError(out.get("error", "decompose failed"))
    return out


def validate(theory):
    _, out = run("validate", theory=theory)
    return out


def classify(theory, state="", state_json=""):
    code, out = run("classify", theory=theory, state=state, state_json=state_json)
    if code != 0:
        raise RuntimeError(out.get("error", "classify failed"))
    return out


def projector_laws(theory):
    _, out = run("report", theory=theory)
    return out


def demo(name, theory="", state="", bit=0, bit_x=0, bit_y=0, seed=None):
    return run("demo", theory=theory, state=state, demo=name, bit=bit,
               bit_x=bit_x, bit_y=bit_y, seed=seed)
