"""Densest subgraphs of disk intersection graphs without materializing edges.

The library exposes three layers:

* geometry: `Disk`, `Instance`, the exact closed-disk predicate, generators
  and instance file I/O;
* machinery: pair enumeration (`all_pairs`), grid range reporting
  (`ReportIndex`), and the approximate count / near-uniform sampling
  hierarchy (`SampleTree`);
* densest-subgraph solvers: exact oracles on explicit graphs
  (`brute_densest`, `exact_densest`, `charikar_peel`) and the two
  approximation pipelines on implicit disk graphs (`densest_disks_2eps`,
  `densest_disks_1eps`).
"""

from .approx1 import (DegreeTable, EdgeSample, densest_disks_1eps,
                      estimate_degrees, sample_edges)
from .approx2 import densest_disks_2eps
from .density import (DensityResult, ExplicitGraph, brute_densest,
                      charikar_peel, density_of, exact_densest,
                      subsolver_densest)
from .geom import (Disk, Instance, five_disk_instance, generate, intersects,
                   read_instance, write_instance)
from .pairs import PairList, all_pairs, all_pairs_naive
from .report import ReportIndex, ReportOutcome
from .rngutil import SeedBank, substream
from .sampletree import EstimateSample, SampleTree

__version__ = "0.1.0"

__all__ = [
    "Disk", "Instance", "intersects", "generate", "read_instance",
    "write_instance", "five_disk_instance",
    "PairList", "all_pairs", "all_pairs_naive",
    "ReportIndex", "ReportOutcome",
    "SampleTree", "EstimateSample",
    "ExplicitGraph", "DensityResult", "density_of", "brute_densest",
    "exact_densest", "charikar_peel", "subsolver_densest",
    "densest_disks_2eps", "densest_disks_1eps",
    "DegreeTable", "EdgeSample", "estimate_degrees", "sample_edges",
    "SeedBank", "substream",
]
