"""Online hitting of unit balls and hypercubes with integer grid points.

A library plus CLI workbench: exact rational geometry over the integer grid,
filter sublattices, three online hitting algorithms (best-point,
nearest-center, randomized iterative reweighting), adaptive lower-bound
adversaries, an exact offline optimum oracle, and hypercube equivalence
classes, all checkable mechanically at desk scale.
"""

from .adversary import (
    BallGame,
    GameReport,
    HypercubeGame,
    IntervalGame,
    InvalidMoveError,
    OffScriptError,
    play,
)
from .equivalence import CubeSignature, classes_containing, decompose, signature, type_of
from .filters import FilterLattice, ball_filter, covering_certificate, cube_filter, filter_points_in, is_member
from .geometry import (
    BALL,
    CUBE,
    IntPoint,
    RatPoint,
    UnitObject,
    ball,
    best_point,
    contains,
    cube,
    integer_points_in,
    object_points,
    precedes,
    rat_point,
)
from .instances import InstanceFile, cluster_instance, random_instance, read_instance, write_instance
from .online import (
    EmptyFilterSetError,
    HitterState,
    StepOutcome,
    bpa_step,
    nc_step,
    new_state,
    rir_step,
    run,
)
from .oracle import CapExceededError, Instance, competitive_ratio, greedy_hitting_set, opt_hitting_set
from .suites import nc_bound

__version__ = "0.1.0"
