"""Structure constants of the 625-component sheaf algebra and its Frobenius pairing.

For an admissible exponent matrix N the degree-5 sheaf algebra decomposes
into 625 line-bundle components indexed by the index set I, and the product
of the components at a and b lands in the component at a+b with coefficient

    zeta^{E(a,b)} * (product of the coordinate x_i over the carry positions)

where E(a,b) = sum_{i>j} n_ij a_i b_j mod 5.  The exponent E is bilinear in
the digit vectors, which is exactly why the product is associative: the
scalar parts satisfy the cocycle identity E(a,b) + E(a+b,c) =
E(b,c) + E(a,b+c), and the carry monomials are associative by the carry
bookkeeping of the index monoid.  Each carry contributes one degree-1
coordinate factor, matching the weight drop |a| + |b| - |a+b|.

The Frobenius pairing is multiplication followed by projection onto the top
component at (4,4,4,4,4); the complementary pair (a, top - a) never carries,
so the pairing matrix has exactly one nonzero entry per row and column and
that entry is a pure root of unity.  For admissible N (zero row sums) the
pairing is symmetric; over arbitrary skew matrices, elementwise symmetry of
the 625 antidiagonal pairs is equivalent to all row sums being equal mod 5.

Exponents are stored as a (625, 625) int8 array and realized as field
elements only at API boundaries.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np

from . import indices
from .cyclotomic import CycNum, Mod5, ZERO, root_power
from .errors import BudgetExceededError, PreconditionError
from .indices import CarryVector, MultiIndex
from .qmatrix import QMatrix, is_admissible

__all__ = [
    "StructureTable",
    "PairingMatrix",
    "AssociativityReport",
    "CyCertificate",
    "exponent_matrix",
    "build_table",
    "verify_associativity",
    "frobenius_pairing",
    "is_symmetric_pairing",
    "cy_certificate",
]

# deterministic linearity witnesses: the zero index plus the first 24
# weight-1 indices in lex order
_WITNESS_COUNT = 25


def exponent_matrix(N: QMatrix) -> np.ndarray:
    """The (625, 625) array E(a,b) = sum_{i>j} n_ij a_i b_j mod 5.

    Low-level helper: no admissibility requirement, any integer matrix
    works.  Values are exact (small integers via float64 BLAS, then reduced).
    """
    t = indices.tables()
    lower = np.tril(np.asarray(N.entries if isinstance(N, QMatrix) else N,
                               dtype=np.float64), -1)
    a = t.idx.astype(np.float64)
    e = (a @ lower) @ a.T
    return (np.rint(e).astype(np.int64) % 5).astype(np.int8)


def _as_position(a) -> int:
    if isinstance(a, (int, np.integer)):
        pos = int(a)
        if not 0 <= pos < 625:
            raise ValueError("index position out of range: %d" % pos)
        return pos
    digits = tuple(int(d) for d in (a.digits if isinstance(a, MultiIndex) else a))
    try:
        return indices.tables().index_of[digits]
    except KeyError:
        raise ValueError("not an element of the index set: %r" % (digits,))


class StructureTable:
    """The full 625x625 multiplication data for one admissible matrix.

    Normally the target and carry arrays are shared read-only views from the
    index module; tables loaded from JSON own their (validated) copies.
    """

    __slots__ = ("source_matrix", "exp", "sum_idx", "carry", "ncarry", "code4")

    def __init__(self, source_matrix: QMatrix, exp: np.ndarray,
                 sum_idx: Optional[np.ndarray] = None,
                 carry: Optional[np.ndarray] = None):
        shared = indices.tables()
        self.source_matrix = source_matrix
        self.exp = exp
        self.sum_idx = shared.sum_idx if sum_idx is None else sum_idx
        self.carry = shared.carry if carry is None else carry
        if carry is None:
            self.ncarry = shared.ncarry
            self.code4 = shared.code4
        else:
            self.ncarry = self.carry.sum(axis=2).astype(np.int8)
            self.code4 = self.carry.astype(np.uint16) @ (4 ** np.arange(5, dtype=np.uint16))
        self.exp.setflags(write=False)

    # -- element access --------------------------------------------------

    def coeff_exponent(self, a, b) -> Mod5:
        return Mod5(int(self.exp[_as_position(a), _as_position(b)]))

    def coefficient(self, a, b) -> CycNum:
        """The scalar part zeta^{E(a,b)} as a field element."""
        return root_power(self.coeff_exponent(a, b))

    def entry(self, a, b) -> Tuple[Mod5, CarryVector, MultiIndex]:
        """(coefficient exponent, carry vector, target index) at (a, b)."""
        i, j = _as_position(a), _as_position(b)
        shared = indices.tables()
        target = MultiIndex(tuple(int(d) for d in shared.idx[self.sum_idx[i, j]]))
        carry = CarryVector(tuple(bool(f) for f in self.carry[i, j]))
        return Mod5(int(self.exp[i, j])), carry, target

    def replace_exponent(self, a, b, new_exp: int) -> "StructureTable":
        """Copy of the table with one exponent overwritten (fault injection)."""
        exp = self.exp.copy()
        exp[_as_position(a), _as_position(b)] = int(new_exp) % 5
        return StructureTable(self.source_matrix, exp,
                              sum_idx=None if self.sum_idx is indices.tables().sum_idx else self.sum_idx,
                              carry=None if self.carry is indices.tables().carry else self.carry)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        shared = indices.tables()
        digits = shared.idx.tolist()
        exp = self.exp.tolist()
        sum_idx = self.sum_idx.tolist()
        carry = self.carry.tolist()
        entries = []
        for i in range(625):
            a_dig = digits[i]
            exp_row = exp[i]
            sum_row = sum_idx[i]
            carry_row = carry[i]
            for j in range(625):
                entries.append({
                    "a": a_dig,
                    "b": digits[j],
                    "target": digits[sum_row[j]],
                    "exp": exp_row[j],
                    "carry": carry_row[j],
                })
        return {"source_matrix": self.source_matrix.to_json(), "entries": entries}

    @classmethod
    def from_json(cls, data: dict) -> "StructureTable":
        matrix = QMatrix.from_json(data["source_matrix"])
        if not is_admissible(matrix):
            raise PreconditionError("table source matrix is not admissible")
        entries = data["entries"]
        if len(entries) != 625 * 625:
            raise PreconditionError("table must cover all 625^2 ordered pairs, got %d"
                                    % len(entries))
        shared = indices.tables()
        index_of = shared.index_of
        exp = np.full((625, 625), -1, dtype=np.int8)
        sum_idx = np.zeros((625, 625), dtype=np.int32)
        carry = np.zeros((625, 625, 5), dtype=bool)
        for rec in entries:
            i = index_of.get(tuple(rec["a"]))
            j = index_of.get(tuple(rec["b"]))
            k = index_of.get(tuple(rec["target"]))
            if i is None or j is None or k is None:
                raise PreconditionError("table entry uses an index outside the index set: %r"
                                        % (rec,))
            e = int(rec["exp"])
            if not 0 <= e <= 4:
                raise PreconditionError("coefficient exponent out of range: %r" % (rec,))
            flags = rec["carry"]
            if len(flags) != 5:
                raise PreconditionError("carry vector must have 5 flags: %r" % (rec,))
            exp[i, j] = e
            sum_idx[i, j] = k
            carry[i, j] = [bool(f) for f in flags]
        if (exp < 0).any():
            raise PreconditionError("table is missing entries for some ordered pairs")
        return cls(matrix, exp, sum_idx=sum_idx, carry=carry)


def build_table(N: QMatrix) -> StructureTable:
    """Structure table of an admissible matrix; rejects non-admissible input."""
    if not is_admissible(N):
        raise PreconditionError("build_table requires an admissible matrix")
    N = N if isinstance(N, QMatrix) else QMatrix(N)
    return StructureTable(N, exponent_matrix(N))


# ---------------------------------------------------------------------------
# associativity verification


@dataclass
class AssociativityReport:
    ok: bool
    mode: str
    checks: int
    violations: List[dict] = field(default_factory=list)
    elapsed: float = 0.0
    seed: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = {
            "ok": self.ok,
            "mode": self.mode,
            "checks": self.checks,
            "violations": self.violations,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out


_MAX_RECORDED_VIOLATIONS = 20


def _digits_at(pos: int) -> List[int]:
    return [int(d) for d in indices.tables().idx[pos]]


def _violation(kind: str, a: int, b: int, c: Optional[int], lhs, rhs) -> dict:
    out = {
        "kind": kind,
        "a": _digits_at(a),
        "b": _digits_at(b),
        "lhs": int(lhs),
        "rhs": int(rhs),
    }
    if c is not None:
        out["c"] = _digits_at(c)
    return out


def _find_cocycle_violation(table: StructureTable, a: int, b: int) -> Optional[dict]:
    """Search c such that the stored exponents violate the cocycle at (a, b, c)."""
    exp = table.exp.astype(np.int16)
    s = table.sum_idx
    for x, y in ((a, b), (b, a)):
        lhs = exp[x, y] + exp[s[x, y], :]
        rhs = exp[y, :] + exp[x, s[y, :]]
        bad = np.nonzero((lhs - rhs) % 5)[0]
        if bad.size:
            c = int(bad[0])
            return _violation("cocycle", x, y, c, lhs[c] % 5, rhs[c] % 5)
    return None


def _verify_exact_bilinear(table: StructureTable, report: AssociativityReport) -> None:
    shared = indices.tables()

    # the cap applies to the report as a whole, not per section
    def record(violation: dict) -> None:
        if len(report.violations) < _MAX_RECORDED_VIOLATIONS:
            report.violations.append(violation)

    expected = exponent_matrix(table.source_matrix)
    mism = np.argwhere(table.exp != expected)
    report.checks += 625 * 625
    for i, j in mism[:_MAX_RECORDED_VIOLATIONS]:
        triple = _find_cocycle_violation(table, int(i), int(j))
        record(
            triple if triple is not None else
            _violation("bilinear-form", int(i), int(j), None,
                       table.exp[i, j], expected[i, j])
        )
    if mism.size:
        report.ok = False

    # target and carry data must match the index monoid exactly
    if table.sum_idx is not shared.sum_idx:
        report.checks += 625 * 625
        bad = np.argwhere(table.sum_idx != shared.sum_idx)
        for i, j in bad[:_MAX_RECORDED_VIOLATIONS]:
            record(_violation(
                "target", int(i), int(j), None,
                table.sum_idx[i, j], shared.sum_idx[i, j]))
        if bad.size:
            report.ok = False
    else:
        report.checks += 625 * 625
    if table.carry is not shared.carry:
        report.checks += 625 * 625
        if not np.array_equal(table.carry, shared.carry):
            bad = np.argwhere((table.carry != shared.carry).any(axis=2))
            for i, j in bad[:_MAX_RECORDED_VIOLATIONS]:
                record(_violation(
                    "carry", int(i), int(j), None,
                    int(table.code4[i, j]), int(shared.code4[i, j])))
            report.ok = False
    else:
        report.checks += 625 * 625

    # linearity witnesses on the stored exponents: additive in each slot
    exp = table.exp.astype(np.int16)
    s = table.sum_idx
    for c in range(_WITNESS_COUNT):
        bc = s[:, c]
        lhs = exp[:, bc]
        rhs = exp + exp[:, c][:, None]
        col_bad = np.argwhere((lhs - rhs) % 5 != 0)
        ac = s[c, :]
        lhs2 = exp[ac, :]
        rhs2 = exp + exp[c, :][None, :]
        row_bad = np.argwhere((lhs2 - rhs2) % 5 != 0)
        report.checks += 2 * 625 * 625
        for i, j in col_bad[:2]:
            record(_violation(
                "linearity", int(i), int(j), c, lhs[i, j] % 5, rhs[i, j] % 5))
        for i, j in row_bad[:2]:
            record(_violation(
                "linearity", int(i), int(j), c, lhs2[i, j] % 5, rhs2[i, j] % 5))
        if col_bad.size or row_bad.size:
            report.ok = False


def _full_triple_rows(table: StructureTable, rows: Iterable[int],
                      report: AssociativityReport) -> int:
    """Check all triples (a, b, c) with a in rows; returns number of checks."""
    exp = table.exp.astype(np.int16)
    s = table.sum_idx
    code4 = table.code4
    checks = 0
    for a in rows:
        ab = s[a]
        lhs = exp[a][:, None] + exp[ab, :]
        rhs = exp + exp[a][s]
        bad = np.argwhere((lhs - rhs) % 5 != 0)
        lhs_c = code4[a][:, None] + code4[ab, :]
        rhs_c = code4 + code4[a][s]
        bad_c = np.argwhere(lhs_c != rhs_c)
        checks += 2 * 625 * 625
        if bad.size or bad_c.size:
            report.ok = False
            for b, c in bad[:_MAX_RECORDED_VIOLATIONS]:
                if len(report.violations) < _MAX_RECORDED_VIOLATIONS:
                    report.violations.append(_violation(
                        "cocycle", a, int(b), int(c),
                        lhs[b, c] % 5, rhs[b, c] % 5))
            for b, c in bad_c[:_MAX_RECORDED_VIOLATIONS]:
                if len(report.violations) < _MAX_RECORDED_VIOLATIONS:
                    report.violations.append(_violation(
                        "carry", a, int(b), int(c),
                        int(lhs_c[b, c]), int(rhs_c[b, c])))
    return checks


def _verify_full_triple(table: StructureTable, report: AssociativityReport,
                        budget_seconds: Optional[float], threads: int) -> None:
    start = time.monotonic()
    block = 16
    blocks = [range(lo, min(lo + block, 625)) for lo in range(0, 625, block)]

    def out_of_budget() -> bool:
        return budget_seconds is not None and time.monotonic() - start > budget_seconds

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_full_triple_rows, table, rows, report)
                       for rows in blocks]
            for fut in futures:
                report.checks += fut.result()
                if out_of_budget():
                    for other in futures:
                        other.cancel()
                    raise BudgetExceededError(
                        "full-triple verification exceeded %.3f s" % budget_seconds)
    else:
        for rows in blocks:
            if out_of_budget():
                raise BudgetExceededError(
                    "full-triple verification exceeded %.3f s" % budget_seconds)
            report.checks += _full_triple_rows(table, rows, report)


def _verify_sampled(table: StructureTable, n: int, seed: int,
                    report: AssociativityReport) -> None:
    rng = np.random.default_rng(seed)
    abc = rng.integers(0, 625, size=(3, n))
    a, b, c = abc
    exp = table.exp.astype(np.int16)
    s = table.sum_idx
    code4 = table.code4
    ab = s[a, b]
    bc = s[b, c]
    lhs = exp[a, b] + exp[ab, c]
    rhs = exp[b, c] + exp[a, bc]
    bad = np.nonzero((lhs - rhs) % 5)[0]
    lhs_c = code4[a, b].astype(np.int32) + code4[ab, c]
    rhs_c = code4[b, c].astype(np.int32) + code4[a, bc]
    bad_c = np.nonzero(lhs_c != rhs_c)[0]
    report.checks += 2 * n
    for t in bad[:_MAX_RECORDED_VIOLATIONS]:
        report.violations.append(_violation(
            "cocycle", int(a[t]), int(b[t]), int(c[t]),
            lhs[t] % 5, rhs[t] % 5))
    for t in bad_c[:_MAX_RECORDED_VIOLATIONS]:
        if len(report.violations) < _MAX_RECORDED_VIOLATIONS:
            report.violations.append(_violation(
                "carry", int(a[t]), int(b[t]), int(c[t]),
                int(lhs_c[t]), int(rhs_c[t])))
    if bad.size or bad_c.size:
        report.ok = False


def parse_mode(mode: str) -> Tuple[str, Optional[int]]:
    """Normalize a verification mode string; returns (kind, sample count)."""
    m = mode.strip()
    if m in ("exact-bilinear", "exact"):
        return "exact-bilinear", None
    if m in ("full-triple", "full"):
        return "full-triple", None
    for open_, close in (("sampled(", ")"), ("sampled=", "")):
        if m.startswith(open_) and m.endswith(close):
            body = m[len(open_):len(m) - len(close)]
            try:
                n = int(body.replace("_", ""))
            except ValueError:
                break
            if n <= 0:
                raise PreconditionError("sample count must be positive: %r" % mode)
            return "sampled", n
    raise PreconditionError(
        "unknown verification mode %r (use exact-bilinear, full-triple, or sampled(n))"
        % mode)


def verify_associativity(table: StructureTable, mode: str = "exact-bilinear",
                         seed: Optional[int] = None,
                         budget_seconds: Optional[float] = None,
                         threads: int = 1) -> AssociativityReport:
    """Check the associativity laws of a structure table.

    exact-bilinear: compares the stored exponents against the bilinear form
    of the source matrix on all 625^2 pairs (with linearity witnesses) and
    the stored targets/carries against the index monoid; bilinearity plus
    carry associativity imply the cocycle identity on all triples.
    full-triple: evaluates both sides of the cocycle and carry identities on
    all 625^3 triples; honors budget_seconds.
    sampled(n): evaluates n uniformly random triples; requires a seed.

    Returns a truthy/falsy report carrying the violating triples, if any.
    """
    kind, count = parse_mode(mode)
    report = AssociativityReport(ok=True, mode=kind, checks=0)
    start = time.monotonic()
    if kind == "exact-bilinear":
        _verify_exact_bilinear(table, report)
    elif kind == "full-triple":
        _verify_full_triple(table, report, budget_seconds, threads)
    else:
        if seed is None:
            raise PreconditionError("sampled verification requires an explicit seed")
        report.seed = int(seed)
        report.mode = "sampled(%d)" % count
        _verify_sampled(table, count, int(seed), report)
    report.elapsed = time.monotonic() - start
    return report


# ---------------------------------------------------------------------------
# Frobenius pairing


class PairingMatrix:
    """The 625x625 pairing with one nonzero root-of-unity entry per row.

    Row a pairs with the complementary column comp(a) = (4,4,4,4,4) - a and
    the entry there is zeta^{exps[a]}; everything else is zero.
    """

    __slots__ = ("exps", "comp")

    def __init__(self, exps: np.ndarray, comp: np.ndarray):
        self.exps = exps
        self.comp = comp

    def entry(self, a, b) -> CycNum:
        i, j = _as_position(a), _as_position(b)
        if j != int(self.comp[i]):
            return ZERO
        return root_power(int(self.exps[i]))

    def nonzero_column(self, a) -> MultiIndex:
        i = _as_position(a)
        return MultiIndex(tuple(int(d) for d in indices.tables().idx[self.comp[i]]))

    def is_perfect(self) -> bool:
        """Exactly one nonzero entry per row and per column."""
        cols = np.sort(self.comp)
        return bool((cols == np.arange(625)).all())

    def is_symmetric(self) -> bool:
        return bool((self.exps == self.exps[self.comp]).all())


def frobenius_pairing(table: StructureTable) -> PairingMatrix:
    """Project multiplication onto the top component (4,4,4,4,4).

    The complementary pair never carries (digits sum to exactly 4), so each
    entry is the pure root of unity with the stored exponent.
    """
    shared = indices.tables()
    rows = np.arange(625)
    comp = shared.comp.astype(np.int64)
    assert not table.carry[rows, comp].any(), "complementary pairs never carry"
    exps = table.exp[rows, comp].copy()
    return PairingMatrix(exps, comp)


def is_symmetric_pairing(table: StructureTable) -> bool:
    """True iff the pairing entry at (a, comp(a)) equals the one at (comp(a), a)
    for all 625 indices; for skew source matrices this is equivalent to all
    row sums being equal mod 5, hence always true on admissible tables."""
    return frobenius_pairing(table).is_symmetric()


# ---------------------------------------------------------------------------
# certificate


@dataclass
class CyCertificate:
    source_matrix: QMatrix
    associativity: AssociativityReport
    nondegenerate: bool
    symmetric: bool
    passed: bool
    verdict: str

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "source_matrix": self.source_matrix.to_json(),
            "associativity": self.associativity.to_json(),
            "nondegenerate": self.nondegenerate,
            "symmetric": self.symmetric,
            "passed": self.passed,
            "verdict": self.verdict,
        }


def cy_certificate(source: Union[QMatrix, StructureTable]) -> CyCertificate:
    """Bundle associativity, pairing nondegeneracy, and pairing symmetry.

    Accepts an admissible matrix (a table is built) or a prebuilt table.
    Associativity failures take precedence in the verdict; a sound table
    with a nondegenerate symmetric pairing satisfies the Calabi-Yau pairing
    criterion.
    """
    if isinstance(source, StructureTable):
        table = source
    else:
        table = build_table(source)
    assoc = verify_associativity(table, "exact-bilinear")
    pairing = frobenius_pairing(table)
    nondeg = pairing.is_perfect()
    sym = pairing.is_symmetric()
    if not assoc:
        verdict = "associativity failure"
        passed = False
    elif not nondeg:
        verdict = "pairing degenerate"
        passed = False
    elif not sym:
        verdict = "Frobenius, not symmetric"
        passed = False
    else:
        verdict = "Calabi-Yau pairing criterion satisfied"
        passed = True
    return CyCertificate(
        source_matrix=table.source_matrix,
        associativity=assoc,
        nondegenerate=nondeg,
        symmetric=sym,
        passed=passed,
        verdict=verdict,
    )
