"""Default resource caps. Each one can be overridden with a ``CTXGRAPH_`` environment variable."""

import os


def env_int(name, default):
    raw = os.environ.get("CTXGRAPH_" + name)
    if raw is None or raw == "":
        return default
    return int(raw)


def env_float(name, default):
    raw = os.environ.get("CTXGRAPH_" + name)
    if raw is None or raw == "":
        return default
    return float(raw)


def max_product_vertices():
    return env_int("MAX_VERTICES", 20000)


def isomorphism_cap():
    return env_int("ISO_CAP", 16)


def clique_budget_seconds():
    return env_float("CLIQUE_BUDGET_SECONDS", 600.0)


def threads():
    return env_int("THREADS", os.cpu_count() or 1)
