"""Brute-force operator models for two-faced pairs.

A factor is a pointed space Q^d with state vector e0 together with left and
right operator families acting on it.  Several factors combine into the
truncated free product of their pointed spaces, on which each factor k acts
by a left representation (touching the first tensor slot) and a right
representation (touching the last slot).  Joint moments of the lifted
variables realize bi-freeness of the factors, so this module serves as an
independent oracle for everything the series machinery claims.

Vectors of the product space are sparse dicts keyed by alternating words
``((factor, coord), ...)``; coords index the complement of the state vector,
1 .. dim-1.  Words longer than ``max_word_len`` are dropped, which is sound
exactly when no operator word longer than that is evaluated: applying one
operator grows a word by at most one letter.

Matrices are numpy object arrays filled with ``fractions.Fraction``.
Representations and product states are read-only after construction (the
basis cache is filled at most once), so evaluations may run in parallel.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .partial_r import TwoBandsTable
from .series import as_fraction

__all__ = [
    "LEFT",
    "RIGHT",
    "FactorMismatch",
    "TruncationUnsound",
    "PointedSpace",
    "TwoFacedPairRep",
    "ProductState",
    "rational_matrix",
    "rational_vector",
    "identity_matrix",
    "state_projector",
    "commutator",
    "gaussian_pair_rep",
    "shift_pair_rep",
    "two_bands_table",
    "sum_two_bands_table",
]

LEFT = "L"
RIGHT = "R"


class FactorMismatch(ValueError):
    """Operator applied with a factor index or shape it does not fit."""


class TruncationUnsound(ValueError):
    """Requested evaluation exceeds the range the truncation keeps exact."""


def rational_vector(entries) -> np.ndarray:
    return np.array([as_fraction(v) for v in entries], dtype=object)


def rational_matrix(rows) -> np.ndarray:
    mat = np.array([[as_fraction(v) for v in row] for row in rows], dtype=object)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("expected a square matrix")
    return mat


def identity_matrix(dim: int) -> np.ndarray:
    mat = np.full((dim, dim), Fraction(0), dtype=object)
    for i in range(dim):
        mat[i, i] = Fraction(1)
    return mat


def zero_matrix(dim: int) -> np.ndarray:
    return np.full((dim, dim), Fraction(0), dtype=object)


def state_projector(dim: int) -> np.ndarray:
    """The rank-one idempotent onto the state vector e0."""
    mat = zero_matrix(dim)
    mat[0, 0] = Fraction(1)
    return mat


def basis_vector(dim: int, i: int = 0) -> np.ndarray:
    vec = np.full(dim, Fraction(0), dtype=object)
    vec[i] = Fraction(1)
    return vec


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


class PointedSpace:
    """Q^dim with state vector e0; coordinates 1 .. dim-1 span the complement."""

    __slots__ = ("dim",)

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError("a pointed space needs dimension >= 1")
        self.dim = dim

    def __repr__(self):
        return f"PointedSpace(dim={self.dim})"


class TwoFacedPairRep:
    """Left and right operator families on one pointed space.

    ``reliable`` lists the basis indices on which commutation identities of
    a truncation-built model can be trusted (None means all of them); it is
    consulted by :func:`bifree.rank1.extract_system`, never by moment
    evaluation.
    """

    __slots__ = ("space", "left_ops", "right_ops", "reliable")

    def __init__(self, space, left_ops, right_ops, reliable=None):
        self.space = space if isinstance(space, PointedSpace) else PointedSpace(space)
        self.left_ops = {k: self._check(m) for k, m in dict(left_ops).items()}
        self.right_ops = {k: self._check(m) for k, m in dict(right_ops).items()}
        if reliable is None:
            self.reliable = tuple(range(self.space.dim))
        else:
            self.reliable = tuple(sorted(set(reliable)))
            if self.reliable and not (
                0 <= self.reliable[0] and self.reliable[-1] < self.space.dim
            ):
                raise ValueError("reliable indices out of range")

    def _check(self, mat):
        mat = mat if isinstance(mat, np.ndarray) else rational_matrix(mat)
        if mat.shape != (self.space.dim, self.space.dim):
            raise FactorMismatch(
                f"operator shape {mat.shape} does not fit dimension {self.space.dim}"
            )
        return mat

    @property
    def dim(self) -> int:
        return self.space.dim

    def operator(self, side, label) -> np.ndarray:
        ops = self.left_ops if side == LEFT else self.right_ops
        try:
            return ops[label]
        except KeyError:
            raise FactorMismatch(f"no {side!r} operator labelled {label!r}") from None

    def moment(self, word) -> Fraction:
        """phi of a product of declared variables on the factor's own space.

        ``word`` lists (side, label) pairs in product order.
        """
        vec = basis_vector(self.dim)
        for side, label in reversed(tuple(word)):
            vec = self.operator(side, label) @ vec
        return vec[0]


class ProductState:
    """Truncated free product of the factors' pointed spaces."""

    __slots__ = ("factors", "max_word_len", "_basis")

    def __init__(self, factors, max_word_len: int):
        self.factors = tuple(factors)
        if not self.factors:
            raise ValueError("need at least one factor")
        if max_word_len < 0:
            raise ValueError("max_word_len must be nonnegative")
        self.max_word_len = max_word_len
        self._basis = None

    def _factor(self, k) -> TwoFacedPairRep:
        if not 0 <= k < len(self.factors):
            raise FactorMismatch(f"no factor {k!r}")
        return self.factors[k]

    def vacuum(self) -> dict:
        return {(): Fraction(1)}

    def expectation(self, vec: dict) -> Fraction:
        return vec.get((), Fraction(0))

    def apply_left(self, k, mat, vec: dict) -> dict:
        """Apply the left representation of factor k's operator ``mat``."""
        factor = self._factor(k)
        mat = factor._check(mat)
        dim = factor.dim
        out: dict = {}
        for word, c in vec.items():
            if word and word[0][0] == k:
                col = mat[:, word[0][1]]
                rest = word[1:]
                if col[0]:
                    _bump(out, rest, c * col[0])
                for r in range(1, dim):
                    if col[r]:
                        _bump(out, ((k, r),) + rest, c * col[r])
            else:
                col = mat[:, 0]
                if col[0]:
                    _bump(out, word, c * col[0])
                if len(word) < self.max_word_len:
                    for r in range(1, dim):
                        if col[r]:
                            _bump(out, ((k, r),) + word, c * col[r])
        return {w: v for w, v in out.items() if v}

    def apply_right(self, k, mat, vec: dict) -> dict:
        """Mirror of :meth:`apply_left`, acting on the last tensor slot."""
        factor = self._factor(k)
        mat = factor._check(mat)
        dim = factor.dim
        out: dict = {}
        for word, c in vec.items():
            if word and word[-1][0] == k:
                col = mat[:, word[-1][1]]
                rest = word[:-1]
                if col[0]:
                    _bump(out, rest, c * col[0])
                for r in range(1, dim):
                    if col[r]:
                        _bump(out, rest + ((k, r),), c * col[r])
            else:
                col = mat[:, 0]
                if col[0]:
                    _bump(out, word, c * col[0])
                if len(word) < self.max_word_len:
                    for r in range(1, dim):
                        if col[r]:
                            _bump(out, word + ((k, r),), c * col[r])
        return {w: v for w, v in out.items() if v}

    def basis(self) -> list:
        """Deterministic basis enumeration: by length, then factor indices,
        then coordinate indices, all lexicographic.  Exponential in
        max_word_len; meant for materializing small product spaces."""
        if self._basis is not None:
            return self._basis
        words = [()]
        nf = len(self.factors)
        for length in range(1, self.max_word_len + 1):
            for fseq in itertools.product(range(nf), repeat=length):
                if any(fseq[i] == fseq[i + 1] for i in range(length - 1)):
                    continue
                ranges = [range(1, self.factors[k].dim) for k in fseq]
                for coords in itertools.product(*ranges):
                    words.append(tuple(zip(fseq, coords)))
        self._basis = words
        return words

    def dim(self) -> int:
        return len(self.basis())

    def _materialize(self, apply_fn, k, mat) -> np.ndarray:
        words = self.basis()
        index = {w: i for i, w in enumerate(words)}
        out = np.full((len(words), len(words)), Fraction(0), dtype=object)
        for j, w in enumerate(words):
            for image, v in apply_fn(k, mat, {w: Fraction(1)}).items():
                out[index[image], j] = v
        return out

    def left_action(self, k, mat) -> np.ndarray:
        """Matrix of the left representation over :meth:`basis`."""
        return self._materialize(self.apply_left, k, mat)

    def right_action(self, k, mat) -> np.ndarray:
        return self._materialize(self.apply_right, k, mat)

    def joint_moment(self, word) -> Fraction:
        """phi of a product of lifted variables.

        ``word`` lists (side, factor, label) triples in product order.  The
        length may not exceed max_word_len: beyond that the truncation could
        leak into the result, so the call refuses instead.
        """
        word = tuple(word)
        if len(word) > self.max_word_len:
            raise TruncationUnsound(
                f"word of length {len(word)} exceeds max_word_len {self.max_word_len}"
            )
        vec = self.vacuum()
        for side, k, label in reversed(word):
            mat = self._factor(k).operator(side, label)
            if side == LEFT:
                vec = self.apply_left(k, mat, vec)
            else:
                vec = self.apply_right(k, mat, vec)
        return self.expectation(vec)

    def apply_sum(self, side, label, vec: dict) -> dict:
        """Apply sum_k (lift of factor k's operator ``label``) on ``side``."""
        out: dict = {}
        for k, factor in enumerate(self.factors):
            mat = factor.operator(side, label)
            image = (
                self.apply_left(k, mat, vec) if side == LEFT else self.apply_right(k, mat, vec)
            )
            for w, v in image.items():
                _bump(out, w, v)
        return {w: v for w, v in out.items() if v}


def _bump(d: dict, key, value):
    cur = d.get(key)
    d[key] = value if cur is None else cur + value


def shift_pair_rep(dim: int, omega) -> TwoFacedPairRep:
    """Pair (a S + b S*, c S + d S*) built from the truncated shift on Q^dim.

    S moves e_i to e_{i+1} and S* back; their commutator is the state
    projector except in the top corner, so commutation identities hold on
    the first dim-1 basis indices and moments of words of length up to
    2*(dim-1) are exact.
    """
    if dim < 2:
        raise ValueError("shift model needs dimension >= 2")
    ((a, b), (c, d)) = omega
    shift = zero_matrix(dim)
    for i in range(dim - 1):
        shift[i + 1, i] = Fraction(1)
    costar = shift.T.copy()
    left = as_fraction(a) * shift + as_fraction(b) * costar
    right = as_fraction(c) * shift + as_fraction(d) * costar
    return TwoFacedPairRep(
        PointedSpace(dim), {0: left}, {0: right}, reliable=range(dim - 1)
    )


def fock_words(hilbert_dim: int, cutoff: int) -> list:
    """Tensor words over range(hilbert_dim) of length <= cutoff, ordered by
    length then lexicographically; the empty word is the vacuum."""
    out = []
    for length in range(cutoff + 1):
        out.extend(itertools.product(range(hilbert_dim), repeat=length))
    return out


def gaussian_pair_rep(h_left, hs_left, h_right, hs_right, fock_cutoff: int) -> TwoFacedPairRep:
    """Field-operator pair on a truncated full Fock space.

    The left variable is l(h_left) + l*(hs_left), the right variable
    r(h_right) + r*(hs_right), with l/r the creation operators on the first
    and last tensor slot and l*/r* the matching annihilations for the exact
    bilinear pairing <u, v> = sum u_i v_i.  The state vector is the vacuum.
    Commutation identities hold below the cutoff layer, and moments of words
    of length up to 2*fock_cutoff are exact.
    """
    if fock_cutoff < 1:
        raise ValueError("fock_cutoff must be >= 1")
    h_left = rational_vector(h_left)
    hs_left = rational_vector(hs_left)
    h_right = rational_vector(h_right)
    hs_right = rational_vector(hs_right)
    hdim = len(h_left)
    if not (len(hs_left) == len(h_right) == len(hs_right) == hdim) or hdim < 1:
        raise ValueError("the four vectors must share one positive dimension")

    words = fock_words(hdim, fock_cutoff)
    index = {w: i for i, w in enumerate(words)}
    dim = len(words)

    left = zero_matrix(dim)
    right = zero_matrix(dim)
    for w, j in index.items():
        if len(w) < fock_cutoff:
            for i in range(hdim):
                if h_left[i]:
                    left[index[(i,) + w], j] += h_left[i]
                if h_right[i]:
                    right[index[w + (i,)], j] += h_right[i]
        if w:
            if hs_left[w[0]]:
                left[index[w[1:]], j] += hs_left[w[0]]
            if hs_right[w[-1]]:
                right[index[w[:-1]], j] += hs_right[w[-1]]

    reliable = [i for i, w in enumerate(words) if len(w) < fock_cutoff]
    return TwoFacedPairRep(PointedSpace(dim), {0: left}, {0: right}, reliable=reliable)


def two_bands_table(rep: TwoFacedPairRep, box, left=0, right=0) -> TwoBandsTable:
    """Moments phi(a^m b^n) of one declared pair on the factor's own space."""
    m, n = box
    a = rep.operator(LEFT, left)
    b = rep.operator(RIGHT, right)
    vec = basis_vector(rep.dim)
    values = [[Fraction(0)] * (n + 1) for _ in range(m + 1)]
    for j in range(n + 1):
        if j:
            vec = b @ vec
        w = vec
        values[0][j] = w[0]
        for i in range(1, m + 1):
            w = a @ w
            values[i][j] = w[0]
    return TwoBandsTable(values)


def sum_two_bands_table(product: ProductState, box, left=0, right=0) -> TwoBandsTable:
    """Moments phi((sum_k a_k)^m (sum_k b_k)^n) of the lifted variable sums.

    The factors must share the operator labels; exactness requires
    m + n <= max_word_len on the whole box.
    """
    m, n = box
    if m + n > product.max_word_len:
        raise TruncationUnsound(
            f"box {box} needs words of length {m + n} but max_word_len is "
            f"{product.max_word_len}"
        )
    values = [[Fraction(0)] * (n + 1) for _ in range(m + 1)]
    vec = product.vacuum()
    for j in range(n + 1):
        if j:
            vec = product.apply_sum(RIGHT, right, vec)
        w = vec
        values[0][j] = product.expectation(w)
        for i in range(1, m + 1):
            w = product.apply_sum(LEFT, left, w)
            values[i][j] = product.expectation(w)
    return TwoBandsTable(values)
