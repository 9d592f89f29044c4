"""Brute-force exact point counting and point listing.

The variety attached to a forest and a coefficient map has one equation per
vertex t:

    x_t * x'_t = 1 + alpha_t * prod over neighbors s of x_s

Enumeration runs over x-assignments only: with r_t the right-hand side, a
vertex contributes a factor 1 when x_t != 0 (x'_t is determined), a factor
q when x_t = 0 and r_t = 0 (x'_t is free), and 0 otherwise.  The weighted
scan is executed by the compiled kernel when it was built (preferred), or
by the NumPy fallback; a slow scalar path covers fields too large for
lookup tables.

Also provided: the unions of the normal-form type-A varieties over
invertible (Y) and over all (Z) leading coefficients, and the exhaustive
check that dropping the first equation fibers Z(n+1) over Z(n) in lines.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _countpy
from .coeffs import CoeffMap
from .errors import BudgetExceeded, UnsupportedType
from .forests import Forest, dynkin, normal_form_slots
from .gf import Field, FieldElement

try:
    from . import _countcore as _ext
except ImportError:  # extension not built; NumPy fallback takes over
    _ext = None

EXTENSION_AVAILABLE = _ext is not None
DEFAULT_BUDGET = 10**9
TABLE_MAX_Q = 1024
_PARALLEL_THRESHOLD = 1 << 18


def default_budget() -> int:
    env = os.environ.get("CLUSTERCOUNT_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class VarietyInstance:
    """A forest, a coefficient map on its vertices, and the base field."""

    forest: Forest
    coeffs: CoeffMap
    field: Field

    def __post_init__(self):
        if set(self.coeffs.values) != set(self.forest.vertices):
            raise ValueError("coefficient vertices do not match the forest")
        if self.coeffs.field != self.field:
            raise ValueError("coefficient field does not match the instance field")

    @property
    def n(self) -> int:
        return self.forest.n_vertices

    def descriptor(self) -> str:
        alphas = ",".join(str(self.coeffs.get(v)) for v in self.forest.vertices)
        return (f"forest[{self.n}v/{len(self.forest.edges)}e]"
                f"(alpha=[{alphas}]) over {self.field!r}")


@dataclass(frozen=True)
class PointRecord:
    """One solution: the x and x' values per vertex."""

    x: dict[int, FieldElement]
    xp: dict[int, FieldElement]

    def key(self) -> tuple:
        vs = sorted(self.x)
        return (tuple(self.x[v].code for v in vs),
                tuple(self.xp[v].code for v in vs))


@dataclass(frozen=True)
class CountReport:
    descriptor: str
    q: int
    method: str
    count: int
    branch: str | None = None
    elapsed_ms: float = 0.0
    engine: str | None = None

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("negative count")


def estimate_ops(n: int, q: int) -> int:
    """Cost model for the budget precondition: n * q^n elementary steps."""
    return max(1, n) * q**n


def _check_budget(n: int, q: int, budget: int | None) -> int:
    budget = default_budget() if budget is None else budget
    est = estimate_ops(n, q)
    if est > budget:
        raise BudgetExceeded(est, budget)
    return est


# ---------------------------------------------------------------------------
# kernel dispatch
# ---------------------------------------------------------------------------

def _prepare_arrays(instance: VarietyInstance):
    vs = list(instance.forest.vertices)
    index = {v: i for i, v in enumerate(vs)}
    alpha = np.array([instance.coeffs.enc(v) for v in vs], dtype=np.int64)
    nbr_off = [0]
    nbr = []
    for v in vs:
        nbr.extend(index[u] for u in instance.forest.adjacency[v])
        nbr_off.append(len(nbr))
    return (alpha,
            np.array(nbr_off, dtype=np.int64),
            np.array(nbr, dtype=np.int64))


def _fits_tables(field: Field, n: int) -> bool:
    if field.q > TABLE_MAX_Q:
        return False
    # total count is < q^(n + ceil(n/2)); stay far inside uint64/int64
    return field.q ** (n + (n + 1) // 2) < 2**62


def _pick_engine(engine: str, field: Field, n: int) -> str:
    if engine == "auto":
        if _fits_tables(field, n):
            return "ext" if EXTENSION_AVAILABLE else "numpy"
        return "scalar"
    if engine == "ext" and not EXTENSION_AVAILABLE:
        raise RuntimeError("compiled kernel not available; build the extension "
                           "or use engine='numpy'")
    if engine in ("ext", "numpy") and not _fits_tables(field, n):
        raise RuntimeError("instance does not fit the table-driven kernels; "
                           "use engine='scalar'")
    if engine not in ("ext", "numpy", "scalar"):
        raise ValueError(f"unknown engine {engine!r}")
    return engine


def _count_scalar(instance: VarietyInstance, lo: int, hi: int) -> int:
    """Reference scan with per-element field arithmetic; exact for any field."""
    fld = instance.field
    q = fld.q
    vs = list(instance.forest.vertices)
    n = len(vs)
    if n == 0:
        return hi - lo
    index = {v: i for i, v in enumerate(vs)}
    alpha = [instance.coeffs.enc(v) for v in vs]
    nbrs = [[index[u] for u in instance.forest.adjacency[v]] for v in vs]
    total = 0
    x = [0] * n
    rem = lo
    for t in range(n - 1, -1, -1):
        x[t] = rem % q
        rem //= q
    for _ in range(lo, hi):
        weight = 1
        for t in range(n):
            prod = alpha[t]
            for j in nbrs[t]:
                prod = fld.mul_enc(prod, x[j])
            r = fld.add_enc(prod, 1)
            if x[t] != 0:
                continue
            if r == 0:
                weight *= q
            else:
                weight = 0
                break
        total += weight
        t = n - 1
        while t >= 0:
            x[t] += 1
            if x[t] < q:
                break
            x[t] = 0
            t -= 1
    return total


def _count_range(instance: VarietyInstance, engine: str, lo: int, hi: int) -> int:
    if engine == "scalar":
        return _count_scalar(instance, lo, hi)
    alpha, nbr_off, nbr = _prepare_arrays(instance)
    mul = instance.field.mul_table()
    plus_one = instance.field.plus_one_table()
    n, q = instance.n, instance.field.q
    if engine == "ext":
        return _ext.count_block(n, q, np.ascontiguousarray(mul.ravel()),
                                plus_one, alpha, nbr_off, nbr, lo, hi)
    return _countpy.count_block(n, q, mul, plus_one, alpha, nbr_off, nbr, lo, hi)


def _worker(args):
    instance, engine, lo, hi = args
    return _count_range(instance, engine, lo, hi)


def brute_count(instance: VarietyInstance, *, budget: int | None = None,
                jobs: int = 1, engine: str = "auto") -> CountReport:
    """Exact number of points, by weighted scan of the qⁿ x-assignments."""
    start = time.perf_counter()
    n, q = instance.n, instance.field.q
    _check_budget(n, q, budget)
    chosen = _pick_engine(engine, instance.field, n)
    space = q**n
    if jobs > 1 and space >= _PARALLEL_THRESHOLD:
        bounds = [space * i // jobs for i in range(jobs + 1)]
        chunks = [(instance, chosen, bounds[i], bounds[i + 1])
                  for i in range(jobs) if bounds[i] < bounds[i + 1]]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            total = sum(pool.map(_worker, chunks))
    else:
        total = _count_range(instance, chosen, 0, space)
    elapsed = (time.perf_counter() - start) * 1000
    assert total < q ** (2 * n) + 1
    return CountReport(instance.descriptor(), q, "brute", total,
                       elapsed_ms=elapsed, engine=chosen)


# ---------------------------------------------------------------------------
# point listing
# ---------------------------------------------------------------------------

def brute_points(instance: VarietyInstance, *, budget: int | None = None):
    """Yield every point, lexicographically in the x-assignment (vertex order,
    then encoding order), with free x' slots expanded innermost."""
    fld = instance.field
    q = fld.q
    vs = list(instance.forest.vertices)
    n = len(vs)
    _check_budget(n, q, budget)
    if n == 0:
        yield PointRecord({}, {})
        return
    alpha = [instance.coeffs.enc(v) for v in vs]
    nbrs = [[vs.index(u) for u in instance.forest.adjacency[v]] for v in vs]
    inv = fld.inv_table()
    for xs in itertools.product(range(q), repeat=n):
        xp = [0] * n
        free = []
        ok = True
        for t in range(n):
            prod = alpha[t]
            for j in nbrs[t]:
                prod = fld.mul_enc(prod, xs[j])
            r = fld.add_enc(prod, 1)
            if xs[t] != 0:
                xp[t] = fld.mul_enc(r, inv[xs[t]])
            elif r == 0:
                free.append(t)
            else:
                ok = False
                break
        if not ok:
            continue
        x_elems = {v: FieldElement(fld, xs[i]) for i, v in enumerate(vs)}
        for combo in itertools.product(range(q), repeat=len(free)):
            xp_full = list(xp)
            for slot, val in zip(free, combo):
                xp_full[slot] = val
            yield PointRecord(x_elems,
                              {v: FieldElement(fld, xp_full[i])
                               for i, v in enumerate(vs)})


# ---------------------------------------------------------------------------
# normal-form type A instances and their unions over the leading coefficient
# ---------------------------------------------------------------------------

def normal_form_instance(field: Field, dynkin_type: str, rank: int,
                         params: tuple = (), allow_zero: bool = False) -> VarietyInstance:
    """Instance with the given parameters on the normal-form slots, 1 elsewhere."""
    f = dynkin(dynkin_type, rank)
    slots = normal_form_slots(dynkin_type, rank)
    if len(params) != len(slots):
        raise UnsupportedType(
            f"{dynkin_type}_{rank} normal form takes {len(slots)} parameter(s), "
            f"got {len(params)}")
    values: dict[int, object] = {v: 1 for v in f.vertices}
    for slot, val in zip(slots, params):
        values[slot] = val
    return VarietyInstance(f, CoeffMap.make(field, values, allow_zero), field)


def count_Y(n: int, field: Field, *, budget: int | None = None,
            engine: str = "auto") -> CountReport:
    """Points of the union over invertible leading coefficients of the
    normal-form A_n varieties.  For n = 0 this is the punctured line, q - 1."""
    start = time.perf_counter()
    q = field.q
    if n == 0:
        total = q - 1
    else:
        f = dynkin("A", n)
        total = 0
        for a in range(1, q):
            values = {v: 1 for v in f.vertices}
            values[1] = a
            inst = VarietyInstance(f, CoeffMap.make(field, values), field)
            total += brute_count(inst, budget=budget, engine=engine).count
    elapsed = (time.perf_counter() - start) * 1000
    return CountReport(f"Y_A{n} over {field!r}", q, "brute", total,
                       elapsed_ms=elapsed)


def count_Z(n: int, field: Field, *, budget: int | None = None,
            engine: str = "auto") -> CountReport:
    """Points of the union over ALL leading coefficients (zero included)."""
    if n < 1:
        raise ValueError("Z is defined for n >= 1")
    start = time.perf_counter()
    q = field.q
    total = 0
    for a in range(q):
        f = dynkin("A", n)
        values = {v: 1 for v in f.vertices}
        values[1] = a
        inst = VarietyInstance(f, CoeffMap.make(field, values, allow_zero=True),
                               field)
        total += brute_count(inst, budget=budget, engine=engine).count
    elapsed = (time.perf_counter() - start) * 1000
    return CountReport(f"Z_A{n} over {field!r}", q, "brute", total,
                       elapsed_ms=elapsed)


# ---------------------------------------------------------------------------
# the line fibration of Z(n+1) over Z(n)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FibrationReport:
    n: int
    q: int
    ok: bool
    surjective: bool
    fiber_size: int | None
    total_points: int
    witness: tuple | None = None
    detail: str = ""


def _z_points(n: int, field: Field, budget):
    """Points of Z_A(n) as tuples (alpha, x tuple, x' tuple), encodings."""
    f = dynkin("A", n)
    vs = list(f.vertices)
    out = set()
    for a in range(field.q):
        values = {v: 1 for v in vs}
        values[1] = a
        inst = VarietyInstance(f, CoeffMap.make(field, values, allow_zero=True),
                               field)
        for rec in brute_points(inst, budget=budget):
            out.add((a,
                     tuple(rec.x[v].code for v in vs),
                     tuple(rec.xp[v].code for v in vs)))
    return out


def check_z_fibration(n: int, field: Field, *,
                      budget: int | None = None) -> FibrationReport:
    """Project Z_A(n+1) onto Z_A(n) by dropping the first equation: the first
    x-variable becomes the leading coefficient and indices shift down.
    Verifies the image is inside Z_A(n), the map is onto, and every fiber
    has exactly q points."""
    q = field.q
    source = _z_points(n + 1, field, budget)
    target = _z_points(n, field, budget)
    fibers: dict[tuple, int] = {t: 0 for t in target}
    for (a, xs, xps) in source:
        image = (xs[0], xs[1:], xps[1:])
        if image not in fibers:
            return FibrationReport(n, q, False, False, None, len(source),
                                   witness=(a, xs, xps),
                                   detail="projected point leaves the target")
        fibers[image] += 1
    sizes = set(fibers.values())
    surjective = 0 not in sizes
    ok = sizes == {q}
    witness = None
    if not ok:
        bad = next(t for t, c in fibers.items() if c != q)
        witness = (bad, fibers[bad])
    return FibrationReport(n, q, ok, surjective, q if ok else None,
                           len(source), witness=witness,
                           detail="" if ok else "fiber size mismatch")
