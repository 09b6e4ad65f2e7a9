"""One checker per inequality family, each returning a structured verdict.

Theorem-family checks (expected to hold on every valid instance):
  main-thm       lambda(C1^-1 D1 (+) ... (+) Ck^-1 Dk) weak-log-majorized by lambda(C^-1 D)
  matic          prod det(I + Ci^-1 Di) <= det(I + C^-1 D)
  det-power      prod det(I + (Ci^-1 Di)^p) <= det(I + (C^-1 D)^p), p >= 0
  choi           prod_j det(sum_i inv(Ai_block_j)) <= det(sum_i inv(Ai))
  thm32          weak majorization between the p-th powers of those spectra, p >= 1
  lemma31        inv of a principal submatrix <= principal submatrix of the inverse
  fischer-tail   tail eigenvalue products of C dominated by those of Diag C
  ky-fan         lambda(Diag C) majorized by lambda(C)

Evaluator ids (statements that are false in general, or open; violations are
data, never errors):
  abs-power, commuted-power, inv-square-sum, neg-power, matic-general-d,
  weak-log-general-d, sv-weak-log, open-q

Determinant comparisons run in the log domain, and det(I + C^-1 D) is always
computed as det(C + D)/det(C) through Cholesky log-determinants (explicit
inverses appear only where singular values of the actual product are the
object of study).
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from . import exact
from .blocks import Partition, diag_blocks, direct_sum, principal_submatrix
from .errors import (
    BadExponent,
    DimensionMismatch,
    IndexOutOfRange,
    NegativePower,
    UnknownInequality,
)
from .linalg import (
    as_square,
    eig_pd_product,
    eigvals_sym,
    frobenius,
    logdet_pd,
    pd_inverse,
    singular_values,
    sym_power,
    symmetrize,
)
from .orders import DEFAULT_TOL, OrderKind, OrderReport, check_order, sort_desc

INEQUALITY_IDS = (
    "main-thm",
    "matic",
    "det-power",
    "abs-power",
    "commuted-power",
    "inv-square-sum",
    "neg-power",
    "matic-general-d",
    "weak-log-general-d",
    "sv-weak-log",
    "choi",
    "thm32",
    "open-q",
    "lemma31",
    "fischer-tail",
    "ky-fan",
)

# Statements checked as theorems: a violation is a bug, not a finding.
THEOREM_IDS = frozenset(
    {"main-thm", "matic", "det-power", "choi", "thm32", "lemma31", "fischer-tail", "ky-fan"}
)
# Statements evaluated without any expectation.
EVALUATOR_IDS = frozenset(
    {"abs-power", "commuted-power", "inv-square-sum", "neg-power",
     "matic-general-d", "weak-log-general-d", "sv-weak-log"}
)
OPEN_IDS = frozenset({"open-q"})


@dataclass(frozen=True)
class Fingerprint:
    n: int
    partition: tuple[int, ...] | None
    digest: str

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "partition": list(self.partition) if self.partition else None,
            "digest": self.digest,
        }


@dataclass(frozen=True)
class InequalityVerdict:
    """Both sides of an inequality plus the verdict.

    For determinant/product comparisons, lhs and rhs are the linear-domain
    values, margin is log(rhs) - log(lhs), and tol is the absolute log-domain
    tolerance actually applied, so holds == (margin >= -tol). For
    majorization-type checks the embedded OrderReport carries per-prefix
    margins and drives the verdict; margin is then the worst prefix margin.
    """

    inequality: str
    lhs: float | None
    rhs: float | None
    margin: float
    holds: bool
    tol: float
    fingerprint: Fingerprint
    order: OrderReport | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "inequality": self.inequality,
            "holds": self.holds,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "tol": self.tol,
            "fingerprint": self.fingerprint.to_json(),
            "order": self.order.to_json() if self.order else None,
            "detail": self.detail,
        }


@dataclass(frozen=True, eq=False)
class Instance:
    """Inputs for one inequality check; only the fields the id needs are set."""

    partition: Partition | None = None
    c: np.ndarray | None = None
    d_blocks: tuple[np.ndarray, ...] | None = None
    d: np.ndarray | None = None
    mats: tuple[np.ndarray, ...] | None = None
    idx: tuple[int, ...] | None = None
    p: float | None = None
    m: int | None = None

    def to_json(self) -> dict:
        out: dict = {}
        if self.partition is not None:
            out["partition"] = list(self.partition.sizes)
        if self.c is not None:
            out["c"] = self.c.tolist()
        if self.d_blocks is not None:
            out["d_blocks"] = [b.tolist() for b in self.d_blocks]
        if self.d is not None:
            out["d"] = self.d.tolist()
        if self.mats is not None:
            out["mats"] = [m.tolist() for m in self.mats]
        if self.idx is not None:
            out["idx"] = list(self.idx)
        if self.p is not None:
            out["p"] = self.p
        if self.m is not None:
            out["m"] = self.m
        return out

    @classmethod
    def from_json(cls, payload: dict) -> "Instance":
        return cls(
            partition=Partition(tuple(payload["partition"])) if "partition" in payload else None,
            c=np.array(payload["c"], dtype=float) if "c" in payload else None,
            d_blocks=tuple(np.array(b, dtype=float) for b in payload["d_blocks"])
            if "d_blocks" in payload else None,
            d=np.array(payload["d"], dtype=float) if "d" in payload else None,
            mats=tuple(np.array(m, dtype=float) for m in payload["mats"])
            if "mats" in payload else None,
            idx=tuple(payload["idx"]) if "idx" in payload else None,
            p=payload.get("p"),
            m=payload.get("m"),
        )


def _exp_safe(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _digest(parts) -> str:
    h = hashlib.sha256()
    for part in parts:
        if isinstance(part, np.ndarray):
            h.update(np.ascontiguousarray(part, dtype=float).tobytes())
        else:
            h.update(repr(part).encode())
        h.update(b"|")
    return h.hexdigest()[:16]


def _fingerprint(n: int, partition: Partition | None, *payload) -> Fingerprint:
    sizes = partition.sizes if partition is not None else None
    return Fingerprint(n=n, partition=sizes, digest=_digest(payload))


def _scalar_verdict(inequality: str, llhs: float, lrhs: float, tol: float,
                    fingerprint: Fingerprint, detail: dict | None = None) -> InequalityVerdict:
    margin = lrhs - llhs
    tol_eff = tol * max(1.0, abs(llhs), abs(lrhs))
    return InequalityVerdict(
        inequality=inequality,
        lhs=_exp_safe(llhs),
        rhs=_exp_safe(lrhs),
        margin=margin,
        holds=margin >= -tol_eff,
        tol=tol_eff,
        fingerprint=fingerprint,
        detail={"log_lhs": llhs, "log_rhs": lrhs, **(detail or {})},
    )


def _order_verdict(inequality: str, kind: OrderKind, x, y, tol: float,
                   fingerprint: Fingerprint, detail: dict | None = None,
                   pad: bool = False) -> InequalityVerdict:
    report = check_order(kind, x, y, tol=tol, pad=pad)
    return InequalityVerdict(
        inequality=inequality,
        lhs=None,
        rhs=None,
        margin=report.worst_margin(),
        holds=report.holds,
        tol=tol,
        fingerprint=fingerprint,
        order=report,
        detail=detail or {},
    )


def _check_block_shapes(c: np.ndarray, d_blocks, part: Partition):
    if c.shape[0] != part.n:
        raise DimensionMismatch(f"C is {c.shape[0]}x{c.shape[0]}, partition needs {part.n}")
    if len(d_blocks) != part.k:
        raise DimensionMismatch(f"{len(d_blocks)} D blocks for a {part.k}-block partition")
    for blk, size in zip(d_blocks, part.sizes):
        if blk.shape[0] != size:
            raise DimensionMismatch(f"D block is {blk.shape[0]}x{blk.shape[0]}, expected {size}")


def product_spectra(c, d_blocks, part: Partition) -> tuple[np.ndarray, np.ndarray]:
    """(concatenated per-block spectra of Ci^-1 Di, spectrum of C^-1 D)."""
    cm = as_square(c)
    dbs = [as_square(b) for b in d_blocks]
    _check_block_shapes(cm, dbs, part)
    c_blocks = diag_blocks(cm, part)
    per_block = [eig_pd_product(pd_inverse(cb), db) for cb, db in zip(c_blocks, dbs)]
    x = sort_desc(np.concatenate(per_block))
    y = eig_pd_product(pd_inverse(cm), direct_sum(dbs))
    return x, y


def check_main_theorem(c, d_blocks, part: Partition, tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """Weak log majorization of the blockwise spectrum by the full spectrum."""
    x, y = product_spectra(c, d_blocks, part)
    fp = _fingerprint(part.n, part, c, *d_blocks)
    return _order_verdict("main-thm", OrderKind.WEAK_LOG_MAJORIZE, x, y, tol, fp)


def _logdet_ratio_blocks(c_blocks, d_blocks) -> float:
    """sum_i [logdet(Ci + Di) - logdet(Ci)]."""
    return sum(
        logdet_pd(symmetrize(cb + db)) - logdet_pd(cb)
        for cb, db in zip(c_blocks, d_blocks)
    )


def check_matic(c, d_blocks, part: Partition, tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """prod det(I + Ci^-1 Di) <= det(I + C^-1 D) for block-diagonal D."""
    cm = as_square(c)
    dbs = [as_square(b) for b in d_blocks]
    _check_block_shapes(cm, dbs, part)
    c_blocks = diag_blocks(cm, part)
    llhs = _logdet_ratio_blocks(c_blocks, dbs)
    d_full = direct_sum(dbs)
    lrhs = logdet_pd(symmetrize(cm + d_full)) - logdet_pd(cm)
    fp = _fingerprint(part.n, part, cm, *dbs)
    return _scalar_verdict("matic", llhs, lrhs, tol, fp)


def _assemble_exact_blocks(d_blocks_exact, part: Partition):
    n = part.n
    full = [[0 for _ in range(n)] for _ in range(n)]
    for (lo, _hi), db in zip(part.offsets(), d_blocks_exact):
        for i, row in enumerate(db):
            for j, v in enumerate(row):
                full[lo + i][lo + j] = v
    return exact.rational_matrix(full)


def matic_exact(c_exact, d_blocks_exact, part: Partition):
    """Exact rational sides of the matic comparison: (blockwise product, full),
    each side as det(C + D)/det(C)."""
    terms = []
    for (lo, hi), db in zip(part.offsets(), d_blocks_exact):
        cb = exact.submatrix(c_exact, lo, hi)
        terms.append(exact.det_exact(exact.mat_add(cb, db)) / exact.det_exact(cb))
    lhs = math.prod(terms)
    d_full = _assemble_exact_blocks(d_blocks_exact, part)
    rhs = exact.det_exact(exact.mat_add(c_exact, d_full)) / exact.det_exact(c_exact)
    return lhs, rhs


def check_det_power(c, d_blocks, part: Partition, p: float,
                    tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """prod det(I + (Ci^-1 Di)^p) <= det(I + (C^-1 D)^p) for p >= 0.

    Sides are evaluated as sums of log1p(lambda^p) over the product spectra;
    the matrix power is never formed.
    """
    if p < 0:
        raise NegativePower(f"p = {p}; use the neg-power evaluator for p < 0")
    x, y = product_spectra(c, d_blocks, part)
    llhs = float(np.sum(np.log1p(x**p)))
    lrhs = float(np.sum(np.log1p(y**p)))
    fp = _fingerprint(part.n, part, c, *d_blocks, p)
    return _scalar_verdict("det-power", llhs, lrhs, tol, fp, detail={"p": p})


def identity_abs_square(c, d_blocks, part: Partition,
                        tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """Equality check: det(I + |C^-1 D|^2) = det(D^-2 + C^-2) * det(D)^2,
    globally and blockwise, to relative tolerance.

    The two sides travel independent computation paths (singular values of
    the explicit product vs Cholesky log-determinants). margin is minus the
    worst normalized residual, so holds == (margin >= -tol).
    """
    cm = as_square(c)
    dbs = [as_square(b) for b in d_blocks]
    _check_block_shapes(cm, dbs, part)
    c_blocks = diag_blocks(cm, part)
    d_full = direct_sum(dbs)

    def sides(cmat, dmat) -> tuple[float, float]:
        s = singular_values(pd_inverse(cmat) @ dmat)
        left = float(np.sum(np.log1p(s**2)))
        ic = pd_inverse(cmat)
        idm = pd_inverse(dmat)
        right = logdet_pd(symmetrize(idm @ idm + ic @ ic)) + 2.0 * logdet_pd(dmat)
        return left, right

    lg, rg = sides(cm, d_full)
    lb, rb = 0.0, 0.0
    for cb, db in zip(c_blocks, dbs):
        bl, br = sides(cb, db)
        lb += bl
        rb += br
    res_global = abs(lg - rg) / max(1.0, abs(lg), abs(rg))
    res_block = abs(lb - rb) / max(1.0, abs(lb), abs(rb))
    worst = max(res_global, res_block)
    fp = _fingerprint(part.n, part, cm, *dbs)
    return InequalityVerdict(
        inequality="identity-abs-square",
        lhs=_exp_safe(lg),
        rhs=_exp_safe(rg),
        margin=-worst,
        holds=worst <= tol,
        tol=tol,
        fingerprint=fp,
        detail={
            "log_lhs_global": lg, "log_rhs_global": rg,
            "log_lhs_blocks": lb, "log_rhs_blocks": rb,
            "residual_global": res_global, "residual_blockwise": res_block,
        },
    )


def _block_inverse_sums(mats, part: Partition) -> list[np.ndarray]:
    """Per position j: sum_i inv(block_j(Ai))."""
    sums = [np.zeros((s, s)) for s in part.sizes]
    for a in mats:
        for j, blk in enumerate(diag_blocks(a, part)):
            sums[j] = sums[j] + pd_inverse(blk)
    return [symmetrize(s) for s in sums]


def _full_inverse_sum(mats) -> np.ndarray:
    total = np.zeros_like(mats[0])
    for a in mats:
        total = total + pd_inverse(a)
    return symmetrize(total)


def _check_choi_shapes(mats, part: Partition):
    if not mats:
        raise DimensionMismatch("need at least one matrix")
    for a in mats:
        if a.shape[0] != part.n:
            raise DimensionMismatch(f"matrix is {a.shape[0]}x{a.shape[0]}, partition needs {part.n}")


def check_choi(mats, part: Partition, tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """prod_j det(sum_i inv(Ai_block_j)) <= det(sum_i inv(Ai))."""
    ms = [as_square(a) for a in mats]
    _check_choi_shapes(ms, part)
    llhs = sum(logdet_pd(s) for s in _block_inverse_sums(ms, part))
    lrhs = logdet_pd(_full_inverse_sum(ms))
    fp = _fingerprint(part.n, part, *ms)
    return _scalar_verdict("choi", llhs, lrhs, tol, fp, detail={"m": len(ms)})


def _choi_spectra(mats, part: Partition) -> tuple[np.ndarray, np.ndarray]:
    ms = [as_square(a) for a in mats]
    _check_choi_shapes(ms, part)
    block_spec = np.concatenate([eigvals_sym(s) for s in _block_inverse_sums(ms, part)])
    x = sort_desc(block_spec)
    y = eigvals_sym(_full_inverse_sum(ms))
    return x, y


def check_thm32(mats, part: Partition, p: float, tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """Weak majorization of the blockwise inverse-sum spectrum by the full one,
    both raised entrywise to p >= 1."""
    if p < 1:
        raise BadExponent(f"p = {p}; the weak majorization is stated for p >= 1")
    x, y = _choi_spectra(mats, part)
    fp = _fingerprint(part.n, part, *[as_square(a) for a in mats], p)
    return _order_verdict("thm32", OrderKind.WEAK_MAJORIZE, x**p, y**p, tol, fp,
                          detail={"p": p, "m": len(mats)})


def check_open_q(mats, part: Partition, tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """Weak log majorization between the same spectra as thm32 at p = 1.

    Open in general (proved only for 2x2 with two 1x1 blocks); this records
    the empirical verdict and asserts nothing.
    """
    x, y = _choi_spectra(mats, part)
    fp = _fingerprint(part.n, part, *[as_square(a) for a in mats])
    return _order_verdict("open-q", OrderKind.WEAK_LOG_MAJORIZE, x, y, tol, fp,
                          detail={"m": len(mats)})


def check_lemma31(a, idx, tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """inv([A]) <= [inv(A)] in the Loewner order, for a principal submatrix [.]."""
    am = as_square(a)
    indices = tuple(int(i) for i in idx)
    sub_inv = pd_inverse(principal_submatrix(am, indices))
    inv_sub = principal_submatrix(pd_inverse(am), indices)
    diff = symmetrize(inv_sub - sub_inv)
    w = eigvals_sym(diff)
    lam_min = float(w[-1]) if w.size else 0.0
    margin = lam_min / max(1.0, frobenius(diff))
    fp = _fingerprint(am.shape[0], None, am, indices)
    return InequalityVerdict(
        inequality="lemma31",
        lhs=None,
        rhs=None,
        margin=margin,
        holds=margin >= -tol,
        tol=tol,
        fingerprint=fp,
        detail={"idx": list(indices), "lambda_min": lam_min, "fro_norm": frobenius(diff)},
    )


def _tail_logsum(sorted_desc: np.ndarray, m: int) -> float:
    # m is 1-based: product over positions m..n
    return float(np.sum(np.log(sorted_desc[m - 1:])))


def check_fischer_tail(c, part: Partition, m: int | None = None,
                       tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """Tail products prod_{i>=m} lambda_i(C) <= prod_{i>=m} lambda_i(Diag C).

    m = 1 is the Fischer inequality det(C) <= prod det(Ci); m = None checks
    every m and reports the worst margin.
    """
    cm = as_square(c)
    if cm.shape[0] != part.n:
        raise DimensionMismatch(f"matrix is {cm.shape[0]}x{cm.shape[0]}, partition needs {part.n}")
    n = part.n
    if m is not None and not 1 <= m <= n:
        raise IndexOutOfRange(f"m = {m} out of range 1..{n}")
    lam_full = eigvals_sym(cm)
    lam_diag = sort_desc(np.concatenate([eigvals_sym(b) for b in diag_blocks(cm, part)]))
    ms = range(1, n + 1) if m is None else [int(m)]
    worst_norm = math.inf
    worst = (0.0, 0.0, 1)
    per_m = {}
    for mm in ms:
        llhs = _tail_logsum(lam_full, mm)
        lrhs = _tail_logsum(lam_diag, mm)
        scale = max(1.0, abs(llhs), abs(lrhs))
        per_m[mm] = lrhs - llhs
        normed = (lrhs - llhs) / scale
        if normed < worst_norm:
            worst_norm = normed
            worst = (llhs, lrhs, mm)
    llhs, lrhs, worst_m = worst
    fp = _fingerprint(part.n, part, cm, m)
    verdict = _scalar_verdict("fischer-tail", llhs, lrhs, tol, fp,
                              detail={"worst_m": worst_m,
                                      "margins_by_m": {str(k): v for k, v in per_m.items()}})
    return verdict


def check_kyfan(c, part: Partition, tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """lambda(Diag C) majorized by lambda(C) (equal traces, dominated prefixes)."""
    cm = as_square(c)
    if cm.shape[0] != part.n:
        raise DimensionMismatch(f"matrix is {cm.shape[0]}x{cm.shape[0]}, partition needs {part.n}")
    x = sort_desc(np.concatenate([eigvals_sym(b) for b in diag_blocks(cm, part)]))
    y = eigvals_sym(cm)
    fp = _fingerprint(part.n, part, cm)
    return _order_verdict("ky-fan", OrderKind.MAJORIZE, x, y, tol, fp)


# ---------------------------------------------------------------------------
# Evaluators for statements that are false in general.

def _eval_abs_power(inst: Instance, tol: float) -> InequalityVerdict:
    if inst.p is None or inst.p < 0:
        raise BadExponent("abs-power needs p >= 0")
    cm = as_square(inst.c)
    dbs = [as_square(b) for b in inst.d_blocks]
    part = inst.partition
    _check_block_shapes(cm, dbs, part)
    c_blocks = diag_blocks(cm, part)
    p = inst.p
    llhs = 0.0
    for cb, db in zip(c_blocks, dbs):
        s = singular_values(pd_inverse(cb) @ db)
        llhs += float(np.sum(np.log1p(s**p)))
    s_full = singular_values(pd_inverse(cm) @ direct_sum(dbs))
    lrhs = float(np.sum(np.log1p(s_full**p)))
    fp = _fingerprint(part.n, part, cm, *dbs, p)
    return _scalar_verdict("abs-power", llhs, lrhs, tol, fp, detail={"p": p})


def _eval_commuted_power(inst: Instance, tol: float) -> InequalityVerdict:
    if inst.p is None or inst.p < 0:
        raise BadExponent("commuted-power needs p >= 0")
    cm = as_square(inst.c)
    dbs = [as_square(b) for b in inst.d_blocks]
    part = inst.partition
    _check_block_shapes(cm, dbs, part)
    p = inst.p
    cp_blocks = [sym_power(b, p) for b in diag_blocks(cm, part)]
    dp_blocks = [sym_power(b, p) for b in dbs]
    llhs = _logdet_ratio_blocks(cp_blocks, dp_blocks)
    cp = sym_power(cm, p)
    dp = direct_sum(dp_blocks)
    lrhs = logdet_pd(symmetrize(cp + dp)) - logdet_pd(cp)
    fp = _fingerprint(part.n, part, cm, *dbs, p)
    return _scalar_verdict("commuted-power", llhs, lrhs, tol, fp, detail={"p": p})


def _inv_square(a: np.ndarray) -> np.ndarray:
    inv = pd_inverse(a)
    return symmetrize(inv @ inv)


def _eval_inv_square_sum(inst: Instance, tol: float) -> InequalityVerdict:
    cm = as_square(inst.c)
    dbs = [as_square(b) for b in inst.d_blocks]
    part = inst.partition
    _check_block_shapes(cm, dbs, part)
    llhs = sum(
        logdet_pd(symmetrize(_inv_square(db) + _inv_square(cb)))
        for cb, db in zip(diag_blocks(cm, part), dbs)
    )
    lrhs = logdet_pd(symmetrize(_inv_square(direct_sum(dbs)) + _inv_square(cm)))
    fp = _fingerprint(part.n, part, cm, *dbs)
    return _scalar_verdict("inv-square-sum", llhs, lrhs, tol, fp)


def inv_square_sum_exact(c_exact, d_blocks_exact, part: Partition):
    """Exact rational sides of inv-square-sum: (blockwise product, full det)."""
    def inv_sq(m):
        inv = exact.inverse_exact(m)
        return exact.mat_mul(inv, inv)

    terms = []
    for (lo, hi), db in zip(part.offsets(), d_blocks_exact):
        cb = exact.submatrix(c_exact, lo, hi)
        terms.append(exact.det_exact(exact.mat_add(inv_sq(db), inv_sq(cb))))
    lhs = math.prod(terms)
    d_full = _assemble_exact_blocks(d_blocks_exact, part)
    rhs = exact.det_exact(exact.mat_add(inv_sq(d_full), inv_sq(c_exact)))
    return lhs, rhs


def _eval_neg_power(inst: Instance, tol: float) -> InequalityVerdict:
    if inst.p is None or inst.p >= 0:
        raise BadExponent("neg-power needs p < 0")
    x, y = product_spectra(inst.c, inst.d_blocks, inst.partition)
    p = inst.p
    llhs = float(np.sum(np.log1p(x**p)))
    lrhs = float(np.sum(np.log1p(y**p)))
    part = inst.partition
    fp = _fingerprint(part.n, part, inst.c, *inst.d_blocks, p)
    return _scalar_verdict("neg-power", llhs, lrhs, tol, fp, detail={"p": p})


def _general_d_parts(inst: Instance):
    cm = as_square(inst.c)
    dm = as_square(inst.d)
    part = inst.partition
    if cm.shape != dm.shape:
        raise DimensionMismatch(f"{cm.shape} vs {dm.shape}")
    if cm.shape[0] != part.n:
        raise DimensionMismatch(f"matrix is {cm.shape[0]}x{cm.shape[0]}, partition needs {part.n}")
    return cm, dm, diag_blocks(cm, part), diag_blocks(dm, part), part


def _eval_matic_general_d(inst: Instance, tol: float) -> InequalityVerdict:
    cm, dm, c_blocks, d_blocks, part = _general_d_parts(inst)
    llhs = _logdet_ratio_blocks(c_blocks, d_blocks)
    lrhs = logdet_pd(symmetrize(cm + dm)) - logdet_pd(cm)
    fp = _fingerprint(part.n, part, cm, dm)
    return _scalar_verdict("matic-general-d", llhs, lrhs, tol, fp)


def _eval_weak_log_general_d(inst: Instance, tol: float) -> InequalityVerdict:
    cm, dm, c_blocks, d_blocks, part = _general_d_parts(inst)
    per_block = [eig_pd_product(pd_inverse(cb), db) for cb, db in zip(c_blocks, d_blocks)]
    x = sort_desc(np.concatenate(per_block))
    y = eig_pd_product(pd_inverse(cm), dm)
    fp = _fingerprint(part.n, part, cm, dm)
    return _order_verdict("weak-log-general-d", OrderKind.WEAK_LOG_MAJORIZE, x, y, tol, fp)


def _eval_sv_weak_log(inst: Instance, tol: float) -> InequalityVerdict:
    cm = as_square(inst.c)
    dbs = [as_square(b) for b in inst.d_blocks]
    part = inst.partition
    _check_block_shapes(cm, dbs, part)
    per_block = [
        singular_values(pd_inverse(cb) @ db)
        for cb, db in zip(diag_blocks(cm, part), dbs)
    ]
    x = sort_desc(np.concatenate(per_block))
    y = singular_values(pd_inverse(cm) @ direct_sum(dbs))
    fp = _fingerprint(part.n, part, cm, *dbs)
    return _order_verdict("sv-weak-log", OrderKind.WEAK_LOG_MAJORIZE, x, y, tol, fp)


_EVALUATORS = {
    "abs-power": _eval_abs_power,
    "commuted-power": _eval_commuted_power,
    "inv-square-sum": _eval_inv_square_sum,
    "neg-power": _eval_neg_power,
    "matic-general-d": _eval_matic_general_d,
    "weak-log-general-d": _eval_weak_log_general_d,
    "sv-weak-log": _eval_sv_weak_log,
}


def evaluate_general(inequality: str, inst: Instance, tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """Evaluate one of the no-expectation statements; violation is data, not error."""
    try:
        fn = _EVALUATORS[inequality]
    except KeyError:
        raise UnknownInequality(f"{inequality!r} is not an evaluator id") from None
    return fn(inst, tol)


def run_check(inequality: str, inst: Instance, tol: float = DEFAULT_TOL) -> InequalityVerdict:
    """Dispatch any catalog id on an Instance; the single entry point used by
    the fuzzer and the CLI."""
    if inequality in _EVALUATORS:
        return evaluate_general(inequality, inst, tol)
    if inequality == "main-thm":
        return check_main_theorem(inst.c, inst.d_blocks, inst.partition, tol)
    if inequality == "matic":
        return check_matic(inst.c, inst.d_blocks, inst.partition, tol)
    if inequality == "det-power":
        if inst.p is None:
            raise BadExponent("det-power needs p")
        return check_det_power(inst.c, inst.d_blocks, inst.partition, inst.p, tol)
    if inequality == "choi":
        return check_choi(inst.mats, inst.partition, tol)
    if inequality == "thm32":
        if inst.p is None:
            raise BadExponent("thm32 needs p")
        return check_thm32(inst.mats, inst.partition, inst.p, tol)
    if inequality == "open-q":
        return check_open_q(inst.mats, inst.partition, tol)
    if inequality == "lemma31":
        return check_lemma31(inst.c, inst.idx, tol)
    if inequality == "fischer-tail":
        return check_fischer_tail(inst.c, inst.partition, inst.m, tol)
    if inequality == "ky-fan":
        return check_kyfan(inst.c, inst.partition, tol)
    raise UnknownInequality(f"unknown inequality id {inequality!r}")
