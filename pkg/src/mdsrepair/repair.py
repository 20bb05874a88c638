"""Single-node repair of scalar MDS codes vectorized over a subfield.

A scalar code over GF(p^m) is treated as a vector code by splitting every
symbol into m/s sub-symbols over GF(p^s).  A repair scheme for systematic
node i assigns one nonzero *repair field element* M to each of the beta
equations downloaded from each parity node.  The number of sub-symbols
that must then be fetched from surviving node u is

    gamma_u = rank over GF(p^s) of { M * P_u : every downloaded equation },

where P_u is node u's coefficient at the element's parity.  The scheme is
feasible iff gamma_i is full (= alpha), and its bandwidth is the sum of
all gamma_u (the failed node's own gamma counts the parity downloads).

Two independent evaluation routes are provided: ``gamma_ranks`` works
directly on the field elements, while ``realize_matrices`` +
``gamma_ranks_matrix`` builds the explicit repair vectors from a reference
row and ranks the resulting sub-symbol equation blocks.  They must always
agree; the equivalence is property-tested.  ``recover_node`` runs the
whole download / interference-cancellation / solve pipeline on a real
codeword and counts the bits moved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .codes import CodeSpec, Codeword
from .errors import (
    DimensionMismatch,
    IncompatibleLift,
    IncompatibleSubfield,
    InfeasibleScheme,
    InvalidMatrix,
    ParseError,
    ZeroReference,
)
from .gf import FieldElement, SubfieldSpec, subfield_coords


@dataclass(frozen=True)
class SubpacketizationSpec:
    """A code together with the subfield degree used to vectorize it.

    Derived quantities: beta equations per parity node, alpha = m/s
    sub-symbols stored per node, file size M = k * alpha (all counted in
    GF(p^s) symbols).
    """

    code: CodeSpec
    s: int

    def __post_init__(self):
        m = self.code.field.m
        if self.s < 1 or m % self.s != 0:
            raise IncompatibleSubfield(f"s={self.s} does not divide m={m}")
        if (m // self.s) % self.code.r != 0:
            raise IncompatibleSubfield(
                f"n-k={self.code.r} does not divide m/s={m // self.s}")

    @property
    def beta(self) -> int:
        return self.code.field.m // (self.s * self.code.r)

    @property
    def alpha(self) -> int:
        return self.code.field.m // self.s

    @property
    def file_size(self) -> int:
        return self.code.k * self.alpha

    @property
    def subfield(self) -> SubfieldSpec:
        return self.code.field.subfield(self.s)

    @property
    def symbol_bits(self):
        """Bits per GF(p^s) sub-symbol (exact int for p = 2)."""
        p = self.code.field.p
        return self.s if p == 2 else self.s * math.log2(p)


def make_sub(code: CodeSpec, s: int) -> SubpacketizationSpec:
    return SubpacketizationSpec(code, s)


def baselines(sub: SubpacketizationSpec) -> tuple:
    """(naive, cutset) download counts in GF(p^s) symbols: the full file
    M versus the cut-set bound (n-1) * beta."""
    return sub.file_size, (sub.code.n - 1) * sub.beta


@dataclass(frozen=True)
class RepairScheme:
    """Repair field elements for one failed systematic node.

    elements[l][j] is the element for equation j downloaded from parity
    node k+1+l; all entries must be nonzero.
    """

    sub: SubpacketizationSpec
    failed: int
    elements: tuple

    def __post_init__(self):
        if not 1 <= self.failed <= self.sub.code.k:
            raise ValueError(f"failed node {self.failed} not in [1,{self.sub.code.k}]")
        elements = tuple(tuple(row) for row in self.elements)
        object.__setattr__(self, "elements", elements)
        if (len(elements) != self.sub.code.r
                or any(len(row) != self.sub.beta for row in elements)):
            raise DimensionMismatch(
                f"elements must be (n-k) x beta = {self.sub.code.r} x {self.sub.beta}")
        for row in elements:
            for e in row:
                if not isinstance(e, FieldElement) or e.field != self.sub.code.field:
                    raise ValueError("elements must belong to the code's field")
                if e.is_zero:
                    raise ValueError("repair field elements must be nonzero")

    def flat_exps(self) -> list:
        """Element discrete logs in parity-major order."""
        return [e.exp for row in self.elements for e in row]

    def to_json(self) -> dict:
        code = self.sub.code
        return {
            "code": code.name if code.name else code.to_json(),
            "s": self.sub.s,
            "failed": self.failed,
            "elements": [[e.to_json() for e in row] for row in self.elements],
        }


def scheme_from_json(obj: dict, code: CodeSpec | None = None) -> RepairScheme:
    """Build a scheme from its JSON form.

    The "code" entry may be a bundled-code name (then pass the resolved
    CodeSpec as ``code``) or an inline code object.
    """
    try:
        if code is None:
            if not isinstance(obj.get("code"), dict):
                raise ParseError(
                    f"scheme references code {obj.get('code')!r}; resolve it first")
            code = CodeSpec.from_json(obj["code"])
        sub = make_sub(code, int(obj["s"]))
        elements = tuple(
            tuple(code.field.element(e) for e in row) for row in obj["elements"])
        return RepairScheme(sub, int(obj["failed"]), elements)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad scheme JSON: {exc}") from exc


@dataclass(frozen=True)
class RepairReport:
    """Per-node download counts for one repair scheme, in GF(p^s) symbols."""

    failed: int
    gammas: tuple
    feasible: bool
    total_bw: int
    naive_bw: int
    cutset_bw: int
    symbol_bits: float

    @property
    def interference_bw(self) -> int:
        """Downloads from the surviving systematic nodes only."""
        return self.total_bw - self.gammas[self.failed - 1]

    @property
    def total_bits(self):
        b = self.total_bw * self.symbol_bits
        return int(b) if isinstance(self.symbol_bits, int) else b


class SchemeEvaluator:
    """Precomputed tables for evaluating gamma ranks of raw element-exponent
    tuples against one (code, subfield, failed node) context.

    This is the inner loop of the search module: for p = 2 each gamma is a
    bitmask rank over the field's antilog table, with the failed node
    checked first so infeasible tuples are discarded after one rank.
    """

    def __init__(self, sub: SubpacketizationSpec, failed: int):
        self.sub = sub
        self.failed = failed
        field = sub.code.field
        self.field = field
        self.q1 = field.q - 1
        self.alpha = sub.alpha
        self.s = sub.s
        self.parity_exps = sub.code.parity_exps()
        self.offsets = [t * sub.subfield.exp_step for t in range(sub.s)]
        # flat slot index -> parity column, parity-major like flat_exps()
        self.slot_parity = [l for l in range(sub.code.r) for _ in range(sub.beta)]

    def _gamma(self, flat_exps, u: int) -> int:
        pe = self.parity_exps[u]
        q1 = self.q1
        prods = [(e + pe[l] + off) % q1
                 for e, l in zip(flat_exps, self.slot_parity)
                 for off in self.offsets]
        field = self.field
        if field.p == 2:
            exp_table = field.exp_table
            r = linalg.bit_rank(exp_table[e] for e in prods)
        else:
            rows = np.array([FieldElement(field, e).coords() for e in prods],
                            dtype=np.int64)
            r = linalg.rank_mod_p(rows, field.p)
        return r // self.s

    def gammas(self, flat_exps) -> tuple:
        return tuple(self._gamma(flat_exps, u) for u in range(self.sub.code.k))

    def evaluate(self, flat_exps):
        """(feasible, total).  total is None for infeasible tuples."""
        if self._gamma(flat_exps, self.failed - 1) != self.alpha:
            return False, None
        total = self.alpha
        for u in range(self.sub.code.k):
            if u != self.failed - 1:
                total += self._gamma(flat_exps, u)
        return True, total

    def report(self, gammas) -> RepairReport:
        naive, cutset = baselines(self.sub)
        return RepairReport(
            failed=self.failed,
            gammas=tuple(gammas),
            feasible=gammas[self.failed - 1] == self.alpha,
            total_bw=sum(gammas),
            naive_bw=naive,
            cutset_bw=cutset,
            symbol_bits=self.sub.symbol_bits,
        )


def gamma_ranks(scheme: RepairScheme) -> RepairReport:
    """Evaluate a scheme: gamma per surviving node, feasibility, and
    bandwidth against the naive and cut-set baselines."""
    ev = SchemeEvaluator(scheme.sub, scheme.failed)
    return ev.report(ev.gammas(scheme.flat_exps()))


def lift_scheme(scheme: RepairScheme, a: int) -> RepairScheme:
    """Re-express a scheme over the smaller subfield GF(p^(s/a)).

    Every element M becomes the block M, M*g, ..., M*g^(a-1) with g the
    generator of the original GF(p^s); beta scales by a and every gamma
    scales by exactly a, so bandwidth in bits is unchanged.
    """
    if a < 1 or scheme.sub.s % a != 0:
        raise IncompatibleLift(f"lift factor {a} does not divide s={scheme.sub.s}")
    if a == 1:
        return scheme
    g = scheme.sub.subfield.generator
    new_sub = make_sub(scheme.sub.code, scheme.sub.s // a)
    elements = tuple(
        tuple(e * g ** t for e in row for t in range(a))
        for row in scheme.elements)
    return RepairScheme(new_sub, scheme.failed, elements)


# ---------------------------------------------------------------------------
# explicit repair-matrix realization (the independent rank oracle)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatrixScheme:
    """Explicit repair matrices over GF(p).

    matrices[l] has shape m x (s * beta): one column per downloaded GF(p)
    equation from parity node k+1+l, grouped in blocks of s columns per
    GF(p^s) sub-symbol equation.
    """

    sub: SubpacketizationSpec
    failed: int
    reference: np.ndarray
    matrices: tuple


def realize_matrices(scheme: RepairScheme, reference=None) -> MatrixScheme:
    """Construct the repair matrices from a reference row: the column for
    element M is (reference^T . operator(M))^T, expanded over the subfield
    basis when s > 1."""
    field = scheme.sub.code.field
    if reference is None:
        reference = np.eye(field.m, dtype=np.int64)[0]
    reference = np.asarray(reference, dtype=np.int64) % field.p
    if not reference.any():
        raise ZeroReference("reference vector must be nonzero")
    basis = scheme.sub.subfield.basis()
    mats = []
    for row in scheme.elements:
        cols = []
        for e in row:
            for w in basis:
                cols.append(reference @ (e * w).operator() % field.p)
        mats.append(np.array(cols, dtype=np.int64).T)
    return MatrixScheme(scheme.sub, scheme.failed, reference, tuple(mats))


def gamma_ranks_matrix(sub: SubpacketizationSpec, failed: int,
                       mat: MatrixScheme) -> RepairReport:
    """Rank the stacked interference blocks (R^l)^T . operator(P_u^l) of an
    explicit matrix scheme over GF(p); counts are converted to GF(p^s)
    symbols.  This route never touches element-level rank computations."""
    field = sub.code.field
    m = field.m
    cols = sub.s * sub.beta
    if len(mat.matrices) != sub.code.r:
        raise DimensionMismatch(
            f"expected {sub.code.r} repair matrices, got {len(mat.matrices)}")
    for R in mat.matrices:
        if R.shape != (m, cols):
            raise DimensionMismatch(
                f"repair matrix shape {R.shape} != ({m},{cols})")
        if not all(R[:, c].any() for c in range(cols)):
            raise InvalidMatrix("repair matrix has a zero column")
    gammas = []
    for u in range(sub.code.k):
        blocks = [
            linalg.matmul_mod_p(R.T, sub.code.parity[u][l].operator(), field.p)
            for l, R in enumerate(mat.matrices)]
        r = linalg.rank_mod_p(np.vstack(blocks), field.p)
        if r % sub.s:
            raise InvalidMatrix(
                f"rank {r} of node {u + 1} block is not a multiple of s={sub.s}")
        gammas.append(r // sub.s)
    naive, cutset = baselines(sub)
    return RepairReport(
        failed=failed,
        gammas=tuple(gammas),
        feasible=gammas[failed - 1] == sub.alpha,
        total_bw=sum(gammas),
        naive_bw=naive,
        cutset_bw=cutset,
        symbol_bits=sub.symbol_bits,
    )


# ---------------------------------------------------------------------------
# end-to-end repair simulation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecoveryResult:
    """Outcome of a simulated repair."""

    element: FieldElement            # the regenerated symbol
    symbols: tuple                   # its alpha GF(p^s) sub-symbols
    downloads: dict                  # node (1-based) -> sub-symbols fetched
    total_symbols: int
    total_bits: float


def recover_node(codeword: Codeword, scheme: RepairScheme,
                 reference=None) -> RecoveryResult:
    """Simulate the repair of the failed node from the other n-1 nodes.

    Each parity sends its beta realized equations applied to its stored
    vector; each surviving systematic node sends the echelon basis of its
    interference block applied to its own vector; interference is
    subtracted and the full-rank useful block is solved for the lost
    coordinates.
    """
    sub, failed = scheme.sub, scheme.failed
    code = sub.code
    field = code.field
    p, m, k = field.p, field.m, code.k
    if codeword.code != code:
        raise ValueError("codeword and scheme use different codes")
    report = gamma_ranks(scheme)
    if not report.feasible:
        raise InfeasibleScheme(
            f"gamma_{failed} = {report.gammas[failed - 1]} < alpha = {sub.alpha}")

    if reference is None:
        reference = np.eye(m, dtype=np.int64)[0]
    reference = np.asarray(reference, dtype=np.int64) % p
    if not reference.any():
        raise ZeroReference("reference vector must be nonzero")

    basis = sub.subfield.basis()
    downloads = {}
    received = []          # the m GF(p) values sent by the parities
    blocks = [np.zeros((0, m), dtype=np.int64) for _ in range(k)]
    rows_per_parity = sub.s * sub.beta
    for l, elem_row in enumerate(scheme.elements):
        V = np.array(
            [reference @ (e * w).operator() % p for e in elem_row for w in basis],
            dtype=np.int64)
        y_l = codeword[k + l].vector()
        received.extend((V @ y_l) % p)
        for u in range(k):
            rows = linalg.matmul_mod_p(V, code.parity[u][l].operator(), p)
            blocks[u] = np.vstack([blocks[u], rows])
        downloads[k + 1 + l] = sub.beta
    received = np.array(received, dtype=np.int64)
    assert received.shape == (rows_per_parity * code.r,) == (m,)

    interference = np.zeros(m, dtype=np.int64)
    for u in range(k):
        if u == failed - 1:
            continue
        rref, pivots = linalg.rref_mod_p(blocks[u], p)
        basis_rows = rref[:len(pivots)]
        fetched = (basis_rows @ codeword[u].vector()) % p
        # rref basis rows have unit pivots, so block = block[:, pivots] @ basis
        coeff = blocks[u][:, pivots]
        interference = (interference + coeff @ fetched) % p
        downloads[u + 1] = len(pivots) // sub.s
    signal = (received - interference) % p
    coords = linalg.solve_mod_p(blocks[failed - 1], signal, p)
    element = field.from_coords(coords)
    total = sum(downloads.values())
    bits = total * sub.symbol_bits
    return RecoveryResult(
        element=element,
        symbols=tuple(subfield_coords(element, sub.subfield)),
        downloads=downloads,
        total_symbols=total,
        total_bits=int(bits) if isinstance(sub.symbol_bits, int) else bits,
    )
