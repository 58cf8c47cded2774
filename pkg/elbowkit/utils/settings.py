"""
Runtime configuration and numeric defaults
"""
import os

import psutil

# curve validation
MONOTONE_REL_TOL = 1e-9
MONOTONE_ABS_FLOOR = 1e-12

# tie detection on cost vectors
TIE_REL_TOL = 1e-9
TIE_ABS_FLOOR = 1e-12

# continuous tangent solver
TANGENT_TOL = 1e-10
TANGENT_MAX_ITER = 200

# model fitting
RSS_FLOOR = 1e-300
AR_BURN_IN = 500
AR_OVERFLOW_GUARD = 1e12
POLY_INPUT_RANGE = (-5.0, 5.0)
KMEANS_MAX_ITER = 300

# experiments
DEFAULT_RUNS = 1000
DEFAULT_RESTARTS = 200
REPORT_SCHEMA_VERSION = 1


def worker_count(requested: int = None) -> int:
    """Number of worker threads, capped by ELBOWKIT_THREADS"""
    count = requested if requested is not None else (psutil.cpu_count(logical=True) or 1)
    cap = os.getenv('ELBOWKIT_THREADS', '').strip()
    if cap.isdigit():
        count = min(count, int(cap))
    return max(1, count)
