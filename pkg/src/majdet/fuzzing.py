"""Seeded random instance generation and batch fuzzing.

Every trial draws from its own substream: the trial seed is a splitmix-style
mix of (master seed, trial index), so reports are deterministic regardless of
execution order and removing one trial never perturbs another. For the
false-inequality ids the known reference counterexample is injected as trial
0, so the recorded violation never depends on random search luck; random
block scales are additionally biased apart for those ids, the regime the
violations live in. No shrinking is performed: violating instances are
stored verbatim and can be replayed in isolation.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

import numpy as np

from . import refdata
from .blocks import Partition, validate_partition
from .catalog import (
    EVALUATOR_IDS,
    INEQUALITY_IDS,
    InequalityVerdict,
    Instance,
    run_check,
)
from .errors import BadConfig, ResampleExhausted, UnknownInequality
from .linalg import eigvals_sym
from .orders import DEFAULT_TOL

_MASK64 = (1 << 64) - 1

# Default exponent grids for the parametrized ids when no explicit p is given.
# det-power and thm32 act on spectra only, so large p is safe at any
# conditioning; commuted-power forms the matrix powers C^p and D^p, whose
# condition numbers are kappa^p, so its grid stops at p = 2 to stay inside
# the Cholesky near-singular rejection envelope.
P_GRIDS = {
    "det-power": (0.0, 0.5, 1.0, 2.0, 3.0),
    "abs-power": (0.0, 0.5, 1.0, 2.0, 3.0),
    "commuted-power": (0.0, 0.5, 1.0, 2.0),
    "thm32": (1.0, 2.0, 3.0),
    "neg-power": (-0.5, -1.0, -2.0, -3.0),
}

# Ids whose statement is false in general: biased generation plus a trial-0
# injection of the reference counterexample.
FALSE_IDS = frozenset(EVALUATOR_IDS)

# Conditioning caps for the false-family block ids, as
# (C cap, D-block cap, block scale bias in decades). These statements need
# squared inverses, matrix powers, or singular values of explicit products,
# which square or cube the working condition number; the caps keep every
# derived object within double-precision resolution while still reaching the
# strongly-unequal-block-scale regime the known violations live in.
_FALSE_BLOCK_CAPS = {
    "inv-square-sum": (None, 1e3, 1.5),
    "commuted-power": (None, 1e3, 1.5),
    "neg-power": (None, 1e3, 1.5),
    "abs-power": (1e3, 1e2, 1.0),
    "sv-weak-log": (1e2, 1e2, 1.0),
}


class GenStyle(enum.Enum):
    SPECTRAL = "spectral"
    GRAM = "gram"


@dataclass(frozen=True)
class GenConfig:
    """Instance-generator configuration; (seed, trial) fully determines a draw."""

    n: int
    partition: Partition | None = None
    m: int = 2
    style: GenStyle = GenStyle.SPECTRAL
    kappa_max: float = 1e6
    entry_scale: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise BadConfig(f"dimension must be >= 1, got {self.n}")
        if self.kappa_max < 1.0:
            raise BadConfig(f"condition cap must be >= 1, got {self.kappa_max}")
        if self.m < 1:
            raise BadConfig(f"matrix count must be >= 1, got {self.m}")
        if self.partition is not None:
            validate_partition(self.partition.sizes, self.n)

    def part(self) -> Partition:
        return self.partition if self.partition is not None else Partition((self.n,))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "partition": list(self.part().sizes),
            "m": self.m,
            "style": self.style.value,
            "kappa_max": self.kappa_max,
            "entry_scale": self.entry_scale,
            "seed": self.seed,
        }


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(master: int, trial: int) -> int:
    """Per-trial substream seed: a pure function of (master seed, trial index)."""
    return _splitmix64((master & _MASK64) ^ _splitmix64(trial & _MASK64))


def trial_rng(cfg: GenConfig, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_seed(cfg.seed, trial)))


def _random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def sample_pd(rng: np.random.Generator, n: int, style: GenStyle = GenStyle.SPECTRAL,
              kappa_max: float = 1e6, entry_scale: float = 1.0) -> np.ndarray:
    """One random symmetric PD matrix with condition number <= kappa_max.

    SPECTRAL: orthogonal conjugation of log-uniform eigenvalues in
    [1, kappa_max], times entry_scale. GRAM: G G^T + 1e-3*n*I with Gaussian
    G, resampled (up to 100 times) until the condition cap holds.
    """
    if style is GenStyle.SPECTRAL:
        lam = np.exp(rng.uniform(0.0, np.log(kappa_max), size=n)) if kappa_max > 1.0 \
            else np.ones(n)
        q = _random_orthogonal(rng, n)
        a = (q * lam) @ q.T * entry_scale
        return (a + a.T) / 2.0
    for _ in range(100):
        g = rng.standard_normal((n, n)) * entry_scale
        a = g @ g.T + 1e-3 * n * np.eye(n)
        a = (a + a.T) / 2.0
        w = eigvals_sym(a)
        if w[0] <= kappa_max * w[-1]:
            return a
    raise ResampleExhausted(f"no draw met kappa_max={kappa_max:g} in 100 attempts")


def gen_pd(cfg: GenConfig, trial: int) -> np.ndarray:
    """The PD matrix for (cfg, trial); bit-identical across calls."""
    rng = trial_rng(cfg, trial)
    return sample_pd(rng, cfg.n, cfg.style, cfg.kappa_max, cfg.entry_scale)


def _injected_instance(inequality: str, p: float | None) -> Instance | None:
    """Reference counterexample injected as trial 0 for the false ids."""
    if inequality in ("inv-square-sum", "abs-power", "commuted-power", "sv-weak-log"):
        part = refdata.INV_SQ_PART
        return Instance(
            partition=part,
            c=refdata.INV_SQ_C.copy(),
            d_blocks=tuple(
                refdata.INV_SQ_D[lo:hi, lo:hi].copy() for lo, hi in part.offsets()
            ),
            p=p,
        )
    if inequality == "neg-power":
        part = refdata.NEG_POWER_PART
        return Instance(
            partition=part,
            c=refdata.NEG_POWER_C.copy(),
            d_blocks=tuple(
                refdata.NEG_POWER_D[lo:hi, lo:hi].copy() for lo, hi in part.offsets()
            ),
            p=p,
        )
    if inequality == "matic-general-d":
        return Instance(partition=refdata.MATIC_GEN_PART,
                        c=refdata.MATIC_GEN_C.copy(), d=refdata.MATIC_GEN_D.copy(), p=p)
    if inequality == "weak-log-general-d":
        return Instance(partition=refdata.WLOG_PART,
                        c=refdata.WLOG_C.copy(), d=refdata.WLOG_D.copy(), p=p)
    return None


def build_instance(inequality: str, cfg: GenConfig, trial: int,
                   p: float | None = None) -> Instance:
    """Draw the instance for one trial (or return the injected counterexample)."""
    if inequality not in INEQUALITY_IDS:
        raise UnknownInequality(f"unknown inequality id {inequality!r}")
    if trial == 0 and inequality in FALSE_IDS:
        injected = _injected_instance(inequality, p)
        if injected is not None:
            return injected
    rng = trial_rng(cfg, trial)
    n = cfg.n
    part = cfg.part()

    def draw(size: int, cap: float | None = None) -> np.ndarray:
        kappa = cfg.kappa_max if cap is None else min(cfg.kappa_max, cap)
        return sample_pd(rng, size, cfg.style, kappa, cfg.entry_scale)

    if inequality in ("choi", "thm32", "open-q"):
        mats = tuple(draw(n) for _ in range(cfg.m))
        return Instance(partition=part, mats=mats, p=p)
    if inequality == "lemma31":
        a = draw(n)
        size = int(rng.integers(1, n + 1))
        idx = tuple(sorted(rng.choice(n, size=size, replace=False).tolist()))
        return Instance(c=a, idx=idx)
    if inequality in ("ky-fan", "fischer-tail"):
        return Instance(partition=part, c=draw(n))
    if inequality in ("matic-general-d", "weak-log-general-d"):
        return Instance(partition=part, c=draw(n), d=draw(n), p=p)

    # block-diagonal D family
    c_cap, d_cap, bias = _FALSE_BLOCK_CAPS.get(inequality, (None, None, 0.0))
    c = draw(n, c_cap)
    blocks = []
    for size in part.sizes:
        blk = draw(size, d_cap)
        if bias:
            # hunt in the regime of strongly unequal block scales
            blk = blk * 10.0 ** rng.uniform(-bias, bias)
        blocks.append(blk)
    return Instance(partition=part, c=c, d_blocks=tuple(blocks), p=p)


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    verdict: InequalityVerdict
    instance: dict | None = None

    def to_json(self) -> dict:
        return {
            "trial": self.trial,
            "seed": self.seed,
            "verdict": self.verdict.to_json(),
            "instance": self.instance,
        }


@dataclass(frozen=True)
class FuzzReport:
    inequality: str
    trials: int
    holds: int
    violations: int
    worst_margin: float
    config: GenConfig
    records: tuple[TrialRecord, ...]
    wall_time: float

    def to_json(self) -> dict:
        return {
            "inequality": self.inequality,
            "trials": self.trials,
            "holds": self.holds,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "config": self.config.to_json(),
            "violating": [r.to_json() for r in self.records],
            "wall_time": self.wall_time,
        }


def _ps_for(inequality: str, p: float | None):
    if p is not None:
        return (p,)
    return P_GRIDS.get(inequality, (None,))


def run_trial(inequality: str, cfg: GenConfig, trial: int, p: float | None = None,
              tol: float = DEFAULT_TOL) -> tuple[InequalityVerdict, Instance]:
    """Evaluate one trial; for parametrized ids without an explicit p, the
    whole default grid is evaluated and the worst-margin verdict is kept."""
    worst: InequalityVerdict | None = None
    worst_inst: Instance | None = None
    for pv in _ps_for(inequality, p):
        inst = build_instance(inequality, cfg, trial, p=pv)
        verdict = run_check(inequality, inst, tol)
        if worst is None or verdict.margin < worst.margin:
            worst, worst_inst = verdict, inst
    return worst, worst_inst


def fuzz(inequality: str, cfg: GenConfig, trials: int, p: float | None = None,
         tol: float = DEFAULT_TOL, keep_instances: bool = False) -> FuzzReport:
    """Run seeded trials of one inequality and fold the records into a report.

    The report content is a pure function of (inequality, cfg, trials, p,
    tol) apart from the wall_time field. Instances are serialized only for
    violations unless keep_instances is set.
    """
    if inequality not in INEQUALITY_IDS:
        raise UnknownInequality(f"unknown inequality id {inequality!r}")
    if trials < 1:
        raise BadConfig(f"trials must be >= 1, got {trials}")
    t0 = time.perf_counter()
    holds = 0
    violations = 0
    worst_margin = float("inf")
    kept: list[TrialRecord] = []
    for trial in range(trials):
        verdict, inst = run_trial(inequality, cfg, trial, p=p, tol=tol)
        worst_margin = min(worst_margin, verdict.margin)
        if verdict.holds:
            holds += 1
        else:
            violations += 1
        if not verdict.holds or keep_instances:
            kept.append(TrialRecord(
                trial=trial,
                seed=derive_seed(cfg.seed, trial),
                verdict=verdict,
                instance=inst.to_json(),
            ))
    return FuzzReport(
        inequality=inequality,
        trials=trials,
        holds=holds,
        violations=violations,
        worst_margin=worst_margin,
        config=cfg,
        records=tuple(kept),
        wall_time=time.perf_counter() - t0,
    )


def replay(inequality: str, record: TrialRecord | dict,
           tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """Re-run a stored trial record's instance through the catalog in isolation."""
    payload = record.instance if isinstance(record, TrialRecord) else record["instance"]
    return run_check(inequality, Instance.from_json(payload), tol)
