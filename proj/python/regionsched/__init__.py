"""Python surface of the region-algorithm scheduler.

The heavy lifting happens in the C++ extension `_regionsched`; this package
adds dict-level convenience on top of its JSON-string API.
"""

import json as _json
from fractions import Fraction as _Fraction

from regionsched._regionsched import (  # noqa: F401
    CapExceeded,
    ParamDomainError,
    SchedulerError,
    bench_random,
    check_condition1,
    competitive_ratio,
    condition1_value,
    default_params,
    gen_alpha_beta_lb,
    gen_levels,
    gen_random_slack,
    oracle,
    run,
    slack_violations,
    validate_instance,
    verify,
)

__all__ = [
    "CapExceeded",
    "ParamDomainError",
    "SchedulerError",
    "bench_random",
    "check_condition1",
    "competitive_ratio",
    "condition1_value",
    "default_params",
    "gen_alpha_beta_lb",
    "gen_levels",
    "gen_random_slack",
    "oracle",
    "run",
    "slack_violations",
    "validate_instance",
    "verify",
    "frac",
    "make_instance",
    "run_dict",
    "oracle_dict",
]


def frac(text):
    """Exact value of a rational string like '3/4'."""
    return _Fraction(text)


def make_instance(jobs, epsilon="1"):
    """Build instance JSON from [(id, r, p, d[, w]), ...] tuples."""
    entries = []
    for job in jobs:
        entry = {"id": job[0], "r": str(job[1]), "p": str(job[2]), "d": str(job[3])}
        if len(job) > 4:
            entry["w"] = str(job[4])
        entries.append(entry)
    return _json.dumps({"epsilon": str(epsilon), "jobs": entries})


def run_dict(instance_json, **kwargs):
    return _json.loads(run(instance_json, **kwargs))


def oracle_dict(instance_json, **kwargs):
    return _json.loads(oracle(instance_json, **kwargs))
