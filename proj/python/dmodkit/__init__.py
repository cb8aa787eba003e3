"""Python front end for the dmodkit C++ library."""

import json

from ._core import UsageError, __version__, bf_dims, length_bound, run_job_text

__all__ = ["UsageError", "__version__", "bf_dims", "length_bound", "run_job", "bs_solve"]


def run_job(job):
    """Run a job given as a dict. Returns (status, report dict)."""
    status, text = run_job_text(json.dumps(job))
    return status, json.loads(text)


def bs_solve(f, level=6, sdeg=1, bdeg=3, group=None):
    job = {
        "subcommand": "bs",
        "operation": "solve",
        "params": {"f": f, "level": level, "sdeg": sdeg, "bdeg": bdeg},
    }
    if group is not None:
        job["group"] = group
    _, report = run_job(job)
    return report["result"]
