"""q-deformed Aomoto complexes of real line arrangements, computed exactly."""

from pathlib import Path

from .arrangement import Arrangement, Line, intersection_points, load_arrangement, parse_arrangement
from .chambers import auto_flag, decompose, enumerate_chambers, separating_weight
from .osalg import aomoto_cohomology_dims, aomoto_matrices, build_os, is_canonically_qdeformable
from .qcomplex import RootOfUnity, assemble, milnor_spectrum, read_degree_fixture, specialize
from .qring import QNum, evaluate, gamma, mul, qint

FIXTURES = Path(__file__).parent / "fixtures"

__version__ = "0.1.0"
