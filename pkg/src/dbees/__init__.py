"""Word sense disambiguation with bee colony optimisation (D-Bees)."""

from .baselines import SaConfig, mfs_solve, random_sense_solve, simulated_annealing_solve
from .bco import BeeAgent, HiveConfig, RunResult, run_dbees
from .inventory import (
    InventoryError,
    ProblemInstance,
    Sense,
    SenseInventory,
    Target,
    WordEntry,
    compute_ic,
    load_instance,
    load_instance_file,
    load_inventory,
    load_inventory_file,
    load_key,
    load_key_file,
    lowest_common_subsumer,
    order_by_pos,
)
from .kernels import BACKEND
from .objective import CapExceeded, brute_force_solve, context_disambiguate, context_score, total_pairwise_quality
from .relatedness import Relatedness, relatedness
from .scorer import EvalReport, f_measure, score

__version__ = "0.1.0"
