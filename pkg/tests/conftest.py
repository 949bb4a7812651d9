import math
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from streetwalker import (
    StrategyConfig,
    gen_corridor,
    run,
    shortest_path,
)


L_SHAPE = [(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0),
           (0.0, 2.0)]

UNIT_SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]


def corridor_case(k, side):
    """One corridor sweep instance: logical offset 2**k + 1 in steps, scaled
    geometrically so the wedge is above the generator's minimum depth."""
    logical = 2.0 ** k + 1.0
    u = max(1.0, 16.0 / logical)
    street = gen_corridor(side * logical * u)
    return street, logical, u


@pytest.fixture(scope="session")
def corridor_sweep():
    """Deterministic runs over offsets 2**k + 1 step, k=0..8, both sides."""
    rows = []
    for k in range(9):
        for side in (1, -1):
            street, logical, u = corridor_case(k, side)
            geo = shortest_path(street).length
            traj = run(street, StrategyConfig(kind="deterministic",
                                              base_step=u))
            rows.append({
                "k": k,
                "side": side,
                "logical": logical,
                "u": u,
                "street": street,
                "geo": geo,
                "traj": traj,
                "ratio": traj.total_length / geo,
            })
    return rows


@pytest.fixture(scope="session")
def worst_corridor(corridor_sweep):
    return max(corridor_sweep, key=lambda r: r["ratio"])
