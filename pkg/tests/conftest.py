"""Session fixtures: the shared fuzz corpus and its per-instance statistics.

The corpus drives several acceptance criteria, so it is generated once
and the expensive per-instance sweeps (scalar identity, Ricci bound over
every L-frame direction, plane bound over every frame pair) are done in
a single pass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pytest

import gssf as G

CORPUS_SIZE = 10_000
CONSTRAINTS = ("none", "minimal", "c_compatible", "minimal_and_c_compatible")


def corpus_config(index: int) -> G.GeneratorConfig:
    n = 1 + index % 6
    m = n + index % 2
    return G.GeneratorConfig(
        seed=20_000 + index, n=n, m=m, sigma_scale=1.0,
        constraint=CONSTRAINTS[index % 4],
    )


@dataclass
class CorpusStats:
    points: list
    identity_rel: np.ndarray       # per instance
    ricci_min_slack: np.ndarray    # per instance, min over L-frame directions
    ricci_defect_gap: np.ndarray   # per instance, max |slack - defect sum|
    delta_min_slack: np.ndarray    # per instance, min over frame plane pairs (inf if none)


@pytest.fixture(scope="session")
def corpus() -> CorpusStats:
    points = []
    identity_rel = np.zeros(CORPUS_SIZE)
    ricci_min = np.full(CORPUS_SIZE, np.inf)
    defect_gap = np.zeros(CORPUS_SIZE)
    delta_min = np.full(CORPUS_SIZE, np.inf)

    for index in range(CORPUS_SIZE):
        point = G.random_instance(corpus_config(index))
        points.append(point)
        n = point.n

        identity = G.scalar_identity_check(point)
        identity_rel[index] = identity.abs_diff / max(
            1.0, abs(identity.lhs), abs(identity.rhs)
        )

        for i in range(n):
            report = G.ricci_bound(point, point.tangent.matrix[i], "general")
            ricci_min[index] = min(ricci_min[index], report.slack)
            defect_gap[index] = max(
                defect_gap[index], abs(report.slack - report.defect_sum())
            )

        for i in range(n):
            for j in range(i + 1, n):
                report = G.delta_bound(
                    point, point.tangent.matrix[i], point.tangent.matrix[j]
                )
                delta_min[index] = min(delta_min[index], report.slack)

    return CorpusStats(
        points=points,
        identity_rel=identity_rel,
        ricci_min_slack=ricci_min,
        ricci_defect_gap=defect_gap,
        delta_min_slack=delta_min,
    )
