"""Tensor-structured precoding for planar massive MIMO arrays."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import MimoError, run_experiment


def run(kind, config=None, fmt="json"):
    """Run an experiment; ``config`` may be a dict or a JSON string.

    Returns a parsed dict for ``fmt="json"`` and the CSV text otherwise.
    """
    if config is None:
        text = "{}"
    elif isinstance(config, str):
        text = config
    else:
        text = _json.dumps(config)
    out = run_experiment(kind, text, fmt)
    return _json.loads(out) if fmt == "json" else out


__all__ = ["run", "run_experiment", "MimoError"]
