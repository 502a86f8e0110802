from argparse import Namespace
import os

from matchstream.algorithms.oracles import OracleBudget
from matchstream.constants import (
    DEFAULT_MEM_C,
    DEFAULT_MEM_LOGK,
    DEFAULT_SEED,
    ORACLE_MAX_EDGES,
    ORACLE_MAX_VERTICES,
    THREADS_ENV_VAR,
)
from matchstream.stream import MemoryMeter
from matchstream.validation import (
    validate_memory_args,
    validate_oracle_budget,
    validate_seed,
    validate_threads,
)


class Config:
    """
    Class to manage CLI config options
    - Seed
    - Worker threads
    - Memory meter
    - Oracle budget
    """

    def __init__(self, args: Namespace) -> None:
        # Setup seed
        if "seed" in args and args.seed is not None:
            self.seed = args.seed
        else:
            self.seed = DEFAULT_SEED
        validate_seed(self.seed)

        # Setup worker threads
        if "threads" in args and args.threads:
            self.threads = args.threads
        elif THREADS_ENV_VAR in os.environ:
            self.threads = validate_threads(os.environ[THREADS_ENV_VAR])
        else:
            self.threads = os.cpu_count() or 1
        self.threads = validate_threads(self.threads)

        # Setup memory meter
        self.strict_memory = "strict_memory" in args and bool(args.strict_memory)
        if "mem_c" in args and args.mem_c is not None:
            self.mem_c = args.mem_c
        else:
            self.mem_c = DEFAULT_MEM_C
        if "mem_logk" in args and args.mem_logk is not None:
            self.mem_logk = args.mem_logk
        else:
            self.mem_logk = DEFAULT_MEM_LOGK
        validate_memory_args(self.mem_c, self.mem_logk)

        # Setup oracle budget
        max_vertices = ORACLE_MAX_VERTICES
        max_edges = ORACLE_MAX_EDGES
        if "oracle_max_vertices" in args and args.oracle_max_vertices is not None:
            max_vertices = args.oracle_max_vertices
        if "oracle_max_edges" in args and args.oracle_max_edges is not None:
            max_edges = args.oracle_max_edges
        validate_oracle_budget(max_vertices, max_edges)
        self.oracle_budget = OracleBudget(max_vertices, max_edges)

    def make_meter(self, n: int) -> MemoryMeter:
        return MemoryMeter(n, self.mem_c, self.mem_logk, self.strict_memory)
