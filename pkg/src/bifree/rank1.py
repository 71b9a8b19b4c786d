"""Systems with rank <= 1 commutation between left and right variables.

A system consists of left variables a_i, right variables b_j in an
implemented probability space (phi, P) with [a_i, b_j] = lam[i, j] * P and
phi(P) = 1.  Its distribution is completely determined by the coefficients
matrix lam together with the two-bands-starting-left moments
phi(a_{i1} .. a_{ip} b_{j1} .. b_{jq}): any other mixed moment is reduced to
those by the right-multiplication recursion implemented here.

Words over the variables are tuples of letters ``(side, label)`` with side
LEFT or RIGHT.  Elements of the reduction space are sparse dicts mapping
canonical IJ-words ``(left_labels, right_labels)`` to coefficients, with
like terms always combined.  Systems are immutable once built; moment
evaluations are pure and parallelizable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .oracle import LEFT, RIGHT, TwoFacedPairRep, basis_vector, state_projector
from .partial_r import TwoBandsTable, biconvolve
from .series import as_fraction

__all__ = [
    "CapExceeded",
    "UnsupportedIndexSets",
    "NotRank1",
    "BandDecomposition",
    "band_decompose",
    "Rank1System",
    "apply_T",
    "mixed_moment",
    "biconvolve_rank1",
    "extract_system",
]


class CapExceeded(LookupError):
    """A required two-bands moment lies outside the stored table."""


class UnsupportedIndexSets(ValueError):
    """The operation is only available for a single left and right variable."""


class NotRank1(ValueError):
    """A commutator fails the lam * P shape where the model is reliable."""


@dataclass(frozen=True)
class BandDecomposition:
    """Maximal same-side intervals of a word, as (side, first, last), 1-based."""

    bands: tuple

    @property
    def starts_left(self):
        return self.bands[0][0] == LEFT if self.bands else None

    @property
    def ends_left(self):
        return self.bands[-1][0] == LEFT if self.bands else None

    def __len__(self):
        return len(self.bands)


def band_decompose(word) -> BandDecomposition:
    """Split a word into its bands; the empty word has zero bands."""
    word = tuple(word)
    bands = []
    start = 0
    for pos in range(1, len(word) + 1):
        if pos == len(word) or word[pos][0] != word[start][0]:
            bands.append((word[start][0], start + 1, pos))
            start = pos
    return BandDecomposition(tuple(bands))


class Rank1System:
    """Coefficients matrix plus two-bands-starting-left moment table.

    ``two_bands`` maps ``(left_labels, right_labels)`` tuples of total length
    at most ``cap`` to exact rationals; the empty word carries phi(1) = 1.
    Lookups beyond the stored range raise, they never default: the recursion
    consumes moments as long as the word it reduces, so silent extrapolation
    would fabricate answers.
    """

    __slots__ = ("left_indices", "right_indices", "lam", "two_bands", "cap")

    def __init__(self, left_indices, right_indices, lam, two_bands, cap):
        self.left_indices = tuple(left_indices)
        self.right_indices = tuple(right_indices)
        if len(set(self.left_indices)) != len(self.left_indices) or len(
            set(self.right_indices)
        ) != len(self.right_indices):
            raise ValueError("index labels must be distinct")
        self.cap = int(cap)
        if self.cap < 0:
            raise ValueError("cap must be nonnegative")
        self.lam = {}
        for (i, j), v in dict(lam).items():
            if i not in self.left_indices or j not in self.right_indices:
                raise ValueError(f"lambda entry for unknown index pair ({i!r}, {j!r})")
            v = as_fraction(v)
            if v:
                self.lam[(i, j)] = v
        self.two_bands = {}
        for (il, jl), v in dict(two_bands).items():
            il, jl = tuple(il), tuple(jl)
            if len(il) + len(jl) > self.cap:
                raise ValueError(f"stored word {il + jl} exceeds cap {self.cap}")
            if any(i not in self.left_indices for i in il) or any(
                j not in self.right_indices for j in jl
            ):
                raise ValueError(f"word {il + jl} uses undeclared indices")
            self.two_bands[(il, jl)] = as_fraction(v)
        if self.two_bands.get(((), ())) != 1:
            raise ValueError("two_bands must contain the empty word with value 1")

    def coefficient(self, i, j) -> Fraction:
        return self.lam.get((i, j), Fraction(0))

    def phi(self, left_labels, right_labels) -> Fraction:
        """Stored two-bands moment phi(a_{i1}..a_{ip} b_{j1}..b_{jq})."""
        key = (tuple(left_labels), tuple(right_labels))
        if len(key[0]) + len(key[1]) > self.cap:
            raise CapExceeded(
                f"moment of length {len(key[0]) + len(key[1])} exceeds cap {self.cap}"
            )
        try:
            return self.two_bands[key]
        except KeyError:
            raise CapExceeded(f"two-bands moment for {key} not stored") from None

    @classmethod
    def from_table(cls, table: TwoBandsTable, lam_value, left_index=0, right_index=0):
        """Single-pair system from a rectangular moment table.

        Stores every phi(a^p b^q) with p <= left order, q <= right order of
        the table; the cap is the sum of the orders, so rectangular lookups
        stay within the diagonal cap discipline.
        """
        i, j = left_index, right_index
        two_bands = {
            ((i,) * p, (j,) * q): table.values[p][q]
            for p in range(table.left_order + 1)
            for q in range(table.right_order + 1)
        }
        return cls(
            (i,), (j,), {(i, j): lam_value}, two_bands, table.left_order + table.right_order
        )

    def table(self, box) -> TwoBandsTable:
        """Rectangular two-bands table of a single-pair system."""
        self._require_single_pair()
        i, j = self.left_indices[0], self.right_indices[0]
        m, n = box
        return TwoBandsTable(
            [[self.phi((i,) * p, (j,) * q) for q in range(n + 1)] for p in range(m + 1)]
        )

    def _require_single_pair(self):
        if len(self.left_indices) != 1 or len(self.right_indices) != 1:
            raise UnsupportedIndexSets(
                "this operation needs exactly one left and one right variable"
            )


def apply_T(system: Rank1System, v: dict, letter) -> dict:
    """Right multiplication by the variable ``letter`` in canonical IJ form.

    A right letter appends to the right block.  A left letter moves to the
    end of the left block, and each right letter it crosses contributes a
    correction -phi(prefix) * lam * (shorter word) from the commutation
    relation.
    """
    side, k = letter
    out: dict = {}
    for (il, jl), coeff in v.items():
        if side == RIGHT:
            _bump(out, (il, jl + (k,)), coeff)
            continue
        _bump(out, (il + (k,), jl), coeff)
        for t, j in enumerate(jl):
            lam = system.coefficient(k, j)
            if lam:
                phi = system.phi(il, jl[:t])
                if phi:
                    _bump(out, ((), jl[t + 1 :]), -coeff * phi * lam)
    return {w: c for w, c in out.items() if c}


def mixed_moment(system: Rank1System, word) -> Fraction:
    """phi of an arbitrary word over the system's variables.

    Applies the right-multiplication operators letter by letter starting
    from the state projector, then evaluates every canonical IJ-word against
    the stored two-bands moments.
    """
    v = {((), ()): Fraction(1)}
    for letter in word:
        side, k = letter
        labels = system.left_indices if side == LEFT else system.right_indices
        if k not in labels:
            raise ValueError(f"letter {letter!r} uses an undeclared index")
        v = apply_T(system, v, letter)
    return sum((c * system.phi(il, jl) for (il, jl), c in v.items()), Fraction(0))


def biconvolve_rank1(s1: Rank1System, s2: Rank1System) -> Rank1System:
    """Bi-free additive convolution of two single-pair systems.

    The coefficients matrices add; the two-bands moments convolve through
    the partial R-transform, one rectangular box per maximal stored word.
    Both systems must store the same collection of words (a rectangle, or
    the full triangle below the cap), and every convolved word needs its
    whole dependency rectangle present; a missing moment raises rather than
    being extrapolated.
    """
    s1._require_single_pair()
    s2._require_single_pair()
    if (
        s1.left_indices != s2.left_indices
        or s1.right_indices != s2.right_indices
    ):
        raise UnsupportedIndexSets("systems must declare the same index labels")
    if s1.cap != s2.cap:
        raise ValueError(f"caps differ: {s1.cap} vs {s2.cap}")
    if set(s1.two_bands) != set(s2.two_bands):
        raise ValueError("systems store different two-bands domains")
    i, j = s1.left_indices[0], s1.right_indices[0]
    degrees = {(len(il), len(jl)) for il, jl in s1.two_bands}
    corners = [
        (p, q)
        for p, q in degrees
        if not any((p, q) != (u, v) and p <= u and q <= v for u, v in degrees)
    ]
    two_bands = {}
    for p, q in sorted(corners):
        out = biconvolve(s1.table((p, q)), s2.table((p, q)))
        for u in range(p + 1):
            for v in range(q + 1):
                two_bands[((i,) * u, (j,) * v)] = out.values[u][v]
    lam = {(i, j): s1.coefficient(i, j) + s2.coefficient(i, j)}
    return Rank1System((i,), (j,), lam, two_bands, s1.cap)


def extract_system(rep: TwoFacedPairRep, cap: int) -> Rank1System:
    """Read a rank <= 1 system off an operator model.

    The coefficient lam[i, j] is the (0, 0) entry of the commutator
    [a_i, b_j]; the full lam * P shape is verified on the model's reliable
    columns and NotRank1 raised otherwise.  Two-bands moments are computed
    directly on the model space for every IJ-word of total length <= cap;
    for truncation-built models the caller must keep cap within the range
    where those moments are exact.
    """
    dim = rep.dim
    proj = state_projector(dim)
    lam = {}
    for i, a in rep.left_ops.items():
        for j, b in rep.right_ops.items():
            comm = a @ b - b @ a
            lam_ij = comm[0, 0]
            delta = comm - lam_ij * proj
            for c in rep.reliable:
                if any(delta[r, c] != 0 for r in range(dim)):
                    raise NotRank1(
                        f"[a_{i}, b_{j}] is not a multiple of the state projector "
                        f"on reliable column {c}"
                    )
            if lam_ij:
                lam[(i, j)] = lam_ij

    left_labels = tuple(sorted(rep.left_ops))
    right_labels = tuple(sorted(rep.right_ops))

    # phi(a_{i1}..a_{ip} b_{j1}..b_{jq}) = row(i-word) . col(j-word), built by
    # extending prefixes of rows and suffixes of columns one operator at a time.
    cols = {(): basis_vector(dim)}
    frontier = {(): basis_vector(dim)}
    for _ in range(cap):
        nxt = {}
        for w, vec in frontier.items():
            for j in right_labels:
                nxt[(j,) + w] = rep.right_ops[j] @ vec
        cols.update(nxt)
        frontier = nxt

    rows = {(): basis_vector(dim)}
    frontier = {(): basis_vector(dim)}
    for _ in range(cap):
        nxt = {}
        for w, vec in frontier.items():
            for i in left_labels:
                nxt[w + (i,)] = vec @ rep.left_ops[i]
        rows.update(nxt)
        frontier = nxt

    two_bands = {}
    for p in range(cap + 1):
        for iw in product(left_labels, repeat=p):
            row = rows[iw]
            for q in range(cap + 1 - p):
                for jw in product(right_labels, repeat=q):
                    two_bands[(iw, jw)] = row @ cols[jw]
    return Rank1System(left_labels, right_labels, lam, two_bands, cap)


def _bump(d: dict, key, value):
    cur = d.get(key)
    d[key] = value if cur is None else cur + value
