#!/usr/bin/env python
#
# Copyright (c) 2024, The dbcover Authors
#
# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are met:
#
#  - Redistributions of source code must retain the above copyright notice,
#    this list of conditions and the following disclaimer.
#
#  - Redistributions in binary form must reproduce the above copyright notice,
#    this list of conditions and the following disclaimer in the documentation
#    and/or other materials provided with the distribution.
#
#  - Neither the name of the software nor the names of its contributors
#    may be used to endorse or promote products derived from this software
#    without specific prior written permission.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS"
# AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE
# IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE
# ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR CONTRIBUTORS BE
# LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR
# CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF
# SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
# INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN
# CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
# ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED OF THE
# POSSIBILITY OF SUCH DAMAGE.
#

__doc__ = """
Contains the two-dimensional constructions: folding and tiled folding of
sequences, the mutual-shift construction, random arrays completed by patch
strips, and the exhaustive or randomized search for small arrays.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy

from dbcover import config
from dbcover.core import (
    CyclicSequence,
    PeriodicArray,
    TupleIndex,
    array_window_matrix,
    ball_volume,
)
from dbcover.exceptions import (
    ConstructionError,
    InvalidParameter,
    VerificationFailed,
)
from dbcover.logger import log
from dbcover.util import ceil_div
from dbcover.verify import (
    UNREACHED,
    check_budget,
    check_dbca,
    distance_table,
    is_covering,
)

# largest q^(mn) for which search2d keeps a dense ball matrix
BALL_MATRIX_LIMIT = 1 << 12

# cells handled per search batch
BATCH_CELLS = 1 << 22

# rounds of patch strips before random_patch gives up
PATCH_ROUNDS = 32


def _verified(a: PeriodicArray, m: int, n: int, R: int, what: str, **kwargs):
    report = log.coverage(check_dbca(a, m, n, R, **kwargs), what)
    if not report.verified:
        raise VerificationFailed(
            f"{what}: {a.rows}x{a.cols} array is not an ({m},{n},{R})-dBCA", report
        )
    return a


@dataclass(frozen=True)
class FoldPlan:
    """Dimensions of a folded sequence."""

    k: int
    m: int
    n: int
    rows: int
    cols: int
    pad: int

    @classmethod
    def for_sequence(cls, k: int, m: int, n: int):
        if m < 1 or n < 1 or k < 1:
            raise InvalidParameter(f"invalid fold k={k} m={m} n={n}")
        if k % n == 0:
            rows, pad = k // n, 0
        else:
            rows = ceil_div(k, n) + m - 1
            pad = n * ceil_div(k, n) - k
        return cls(k=k, m=m, n=n, rows=rows, cols=2 * n - 1, pad=pad)

    @property
    def area(self):
        return self.rows * self.cols


def _fold_rows(s: CyclicSequence, offset: int, rows: int, n: int):
    # row j holds s_{offset+jn+1} .. s_{offset+jn+2n-1}
    j = numpy.arange(rows)[:, None]
    c = numpy.arange(2 * n - 1)[None, :]
    return s.as_array()[(offset + j * n + 1 + c) % s.k]


def fold(
    s: CyclicSequence,
    m: int,
    n: int,
    R: int,
    window: int = None,
    verify: bool = True,
    **kwargs,
):
    """Folds an (mn, R)-dBCS into an (m, n, R)-dBCA with 2n-1 columns.

    Row j holds s_{jn+1}, ..., s_{jn+2n-1} (indices mod k). When n does not
    divide k, ceil(k/n)+m-1 rows are written, which repeats the start of the
    sequence and leaves its window set unchanged.

    :param s: the sequence.
    :param m: window rows.
    :param n: window cols.
    :param R: radius.
    :param window: declared window length of s; must equal m*n.
    :param verify: verify the result with check_dbca.
    :returns: PeriodicArray.
    """
    if window is not None and window != m * n:
        raise InvalidParameter(
            f"sequence window {window} does not match fold {m}x{n}={m * n}"
        )
    plan = FoldPlan.for_sequence(s.k, m, n)
    a = PeriodicArray(_fold_rows(s, 0, plan.rows, n), s.q)
    log.debug("fold k=%d into %dx%d (pad %d)", s.k, plan.rows, plan.cols, plan.pad)
    if verify:
        _verified(a, m, n, R, "fold", **kwargs)
    return a


@dataclass(frozen=True)
class TilePlan:
    """Dimensions of a tiled fold: t*r blocks of block_rows x block_cols."""

    k: int
    m: int
    n: int
    t: int
    r: int
    kappa: int
    block_rows: int
    block_cols: int

    @classmethod
    def for_sequence(cls, k: int, m: int, n: int, t: int, r: int):
        if t < 1 or r < 1:
            raise InvalidParameter(f"tiling {t}x{r} needs t, r >= 1")
        kappa = ceil_div(k, t * r)
        return cls(
            k=k,
            m=m,
            n=n,
            t=t,
            r=r,
            kappa=kappa,
            block_rows=ceil_div(kappa, n) + m - 1,
            block_cols=2 * n - 1,
        )

    @property
    def rows(self):
        return self.r * self.block_rows

    @property
    def cols(self):
        return self.t * self.block_cols

    @property
    def redundancy(self):
        """Cells per block beyond the kappa segment symbols."""
        return self.block_rows * self.block_cols - self.kappa

    @property
    def redundancy_bound(self):
        """M'(n-1) + (M' - kappa/n) n, as an exact fraction."""
        Mp = self.block_rows
        return Mp * (self.n - 1) + (Mp - Fraction(self.kappa, self.n)) * self.n


def tile_fold(
    s: CyclicSequence,
    m: int,
    n: int,
    R: int,
    t: int,
    r: int,
    verify: bool = True,
    **kwargs,
):
    """Cuts s into t*r segments of kappa = ceil(k/(t*r)) symbols, folds each
    into a non-periodic block and tiles the blocks r high and t wide. Block b
    sits at block row b // t, block col b % t; segments read past their end
    into the parent sequence.

    :returns: PeriodicArray of r*M' x t*(2n-1).
    """
    plan = TilePlan.for_sequence(s.k, m, n, t, r)
    if plan.redundancy > plan.redundancy_bound:
        raise ConstructionError(
            f"block redundancy {plan.redundancy} exceeds {plan.redundancy_bound}"
        )
    cells = numpy.zeros((plan.rows, plan.cols), dtype=numpy.uint8)
    for b in range(t * r):
        block = _fold_rows(s, b * plan.kappa, plan.block_rows, n)
        top = (b // t) * plan.block_rows
        left = (b % t) * plan.block_cols
        cells[top : top + plan.block_rows, left : left + plan.block_cols] = block
    a = PeriodicArray(cells, s.q)
    log.debug(
        "tile k=%d into %d blocks of %dx%d", s.k, t * r, plan.block_rows, plan.block_cols
    )
    if verify:
        _verified(a, m, n, R, "tile", **kwargs)
    return a


def tile_code(code, m: int, n: int, R: int, t: int = 1, verify: bool = True, **kwargs):
    """Folds every member of an (mn, R)-dBCSC into its own non-periodic block
    of ceil(k/n)+m-1 rows by 2n-1 columns and tiles the blocks t per band.
    A band is as tall as its tallest block; cells outside a block are 0.

    :param code: SequenceCode declared with window m*n.
    :param t: blocks per band.
    :returns: PeriodicArray.
    """
    if code.n != m * n:
        raise InvalidParameter(
            f"code window {code.n} does not match tile {m}x{n}={m * n}"
        )
    if t < 1:
        raise InvalidParameter(f"t must be >= 1, got {t}")
    blocks = [
        _fold_rows(s, 0, ceil_div(s.k, n) + m - 1, n) for s in code.members
    ]
    bands = [blocks[i : i + t] for i in range(0, len(blocks), t)]
    heights = [max(b.shape[0] for b in band) for band in bands]
    cells = numpy.zeros((sum(heights), t * (2 * n - 1)), dtype=numpy.uint8)
    top = 0
    for band, height in zip(bands, heights):
        for j, block in enumerate(band):
            left = j * (2 * n - 1)
            cells[top : top + block.shape[0], left : left + block.shape[1]] = block
        top += height
    a = PeriodicArray(cells, code.q)
    log.debug(
        "tile %d members into %d bands: %dx%d", len(blocks), len(bands), a.rows, a.cols
    )
    if verify:
        _verified(a, m, n, R, "tile code", **kwargs)
    return a


def shift_offsets(k: int):
    """Returns the row shifts T_i = i(i+1)/2 mod k of the shift construction,
    with row k repeating row k-1 when k is even.
    """
    offsets = [(i * (i + 1) // 2) % k for i in range(k)]
    if k % 2 == 0:
        offsets.append(offsets[-1])
    return offsets


def shift_construct(s: CyclicSequence, n: int, R: int, verify: bool = True, **kwargs):
    """Stacks the shifts E^{T_i} s of an (n, R)-dBCS into a (2, n, 2R)-dBCA:
    k x k for odd k, (k+1) x k for even k.
    """
    rows = [s.rotate(T).symbols for T in shift_offsets(s.k)]
    a = PeriodicArray(rows, s.q)
    if verify:
        _verified(a, 2, n, 2 * R, "shift", **kwargs)
    return a


@dataclass(frozen=True)
class PatchResult:
    array: PeriodicArray
    n0: int
    uncovered: int
    rounds: int

    @property
    def area(self):
        return self.array.area


def random_width(m: int, n: int, R: int, q: int, M: int):
    """Returns N0 = ceil((q^mn / V) ln(mn V) / M), V = V_q(mn, R), at least n."""
    V = ball_volume(q, m * n, R)
    width = (q ** (m * n) / V) * math.log(m * n * V) / M
    return max(n, math.ceil(width))


def _uncovered(a: PeriodicArray, m: int, n: int, R: int, budget: int = None):
    index = TupleIndex(a.q, m * n)
    dist = distance_table(
        index.encode_many(array_window_matrix(a, m, n)), a.q, m * n, budget, limit=R
    )
    return numpy.flatnonzero(dist == UNREACHED)


def _patch_strips(missing, q: int, m: int, n: int, M: int):
    """Returns columns holding the missing windows, floor(M/m) per n-column
    strip, each strip followed by a zero column.
    """
    blocks = TupleIndex(q, m * n).decode_many(missing).reshape(-1, m, n)
    per_strip = M // m
    strips = []
    for start in range(0, len(blocks), per_strip):
        strip = numpy.zeros((M, n + 1), dtype=numpy.uint8)
        for p, block in enumerate(blocks[start : start + per_strip]):
            strip[p * m : (p + 1) * m, :n] = block
        strips.append(strip)
    return numpy.hstack(strips)


def random_patch(
    m: int,
    n: int,
    R: int,
    q: int,
    M: int,
    seed: int,
    budget: int = None,
    max_rounds: int = PATCH_ROUNDS,
):
    """Draws a uniform random M x N0 array and appends patch strips holding
    every uncovered m x n window until the array is an (m, n, R)-dBCA.

    :param seed: seed of numpy.random.default_rng.
    :returns: PatchResult.
    """
    if M < m:
        raise InvalidParameter(f"M={M} must be >= m={m}")
    if R < 0 or R > m * n:
        raise InvalidParameter(f"radius R={R} outside 0..{m * n}")
    check_budget(q, m * n, budget)
    n0 = random_width(m, n, R, q, M)
    rng = numpy.random.default_rng(seed)
    cells = rng.integers(0, q, size=(M, n0), dtype=numpy.uint8)
    a = PeriodicArray(cells, q)

    missing = _uncovered(a, m, n, R, budget)
    initial = int(missing.size)
    rounds = 0
    while missing.size:
        if rounds >= max_rounds:
            raise ConstructionError(
                f"{missing.size} windows still uncovered after {rounds} rounds"
            )
        rounds += 1
        cells = numpy.hstack([cells, _patch_strips(missing, q, m, n, M)])
        a = PeriodicArray(cells, q)
        missing = _uncovered(a, m, n, R, budget)
        log.debug("patch round %d: %d uncovered", rounds, missing.size)

    log.info(
        "random (%d,%d,%d)-dBCA: N0=%d L=%d final %dx%d",
        m, n, R, n0, initial, a.rows, a.cols,
    )
    return PatchResult(array=a, n0=n0, uncovered=initial, rounds=rounds)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of search2d: status is 'found', 'none' (exhaustive only) or
    'unknown' (randomized trials failed).
    """

    status: str
    array: PeriodicArray = None
    tried: int = 0

    @property
    def found(self):
        return self.status == "found"


class _Coverer(object):
    """Batch covering test for candidate M x N arrays."""

    def __init__(self, m: int, n: int, R: int, q: int, M: int, N: int):
        self.m, self.n, self.R, self.q = m, n, R, q
        self.M, self.N = M, N
        self.index = TupleIndex(q, m * n)
        # flat cell positions of every window, row-major
        ri = (numpy.arange(M)[:, None] + numpy.arange(m)[None, :]) % M
        ci = (numpy.arange(N)[:, None] + numpy.arange(n)[None, :]) % N
        pos = ri[:, None, :, None] * N + ci[None, :, None, :]
        self.positions = pos.reshape(M * N, m * n)
        self.weights = q ** numpy.arange(m * n - 1, -1, -1, dtype=numpy.int64)
        self.ball = None
        if self.index.size <= BALL_MATRIX_LIMIT:
            self.ball = self._ball_matrix()

    def _ball_matrix(self):
        tuples = self.index.decode_many(numpy.arange(self.index.size))
        out = numpy.zeros((self.index.size, self.index.size), dtype=bool)
        step = 256
        for i in range(0, self.index.size, step):
            diff = (tuples[i : i + step, None, :] != tuples[None, :, :]).sum(axis=2)
            out[i : i + step] = diff <= self.R
        return out

    def window_indices(self, cells):
        """cells: (B, M*N) -> (B, M*N) window indices."""
        return cells.astype(numpy.int64)[:, self.positions] @ self.weights

    def covering(self, cells):
        """Returns a bool per candidate row of cells."""
        idx = self.window_indices(cells)
        if self.ball is None:
            return numpy.array(
                [is_covering(row, self.q, self.m * self.n, self.R) for row in idx]
            )
        covered = numpy.zeros((idx.shape[0], self.index.size), dtype=bool)
        for w in range(idx.shape[1]):
            covered |= self.ball[idx[:, w]]
        return covered.all(axis=1)


def exhaustive_search(
    m: int,
    n: int,
    R: int,
    q: int,
    M: int,
    N: int,
    limit: int = None,
    trials: int = None,
    seed: int = 0,
    threads: int = None,
    budget: int = None,
):
    """Looks for an M x N (m, n, R)-dBCA.

    Sweeps all q^(MN) arrays in TupleIndex order when that count is within
    limit (default config.SEARCH_LIMIT) and returns the first hit, or 'none'.
    Otherwise draws random arrays from default_rng(seed) and returns 'unknown'
    when the trials run out.
    A found array is checked with check_dbca before it is returned.

    :returns: SearchResult.
    """
    if M < 1 or N < 1:
        raise InvalidParameter(f"array size {M}x{N} must be at least 1x1")
    check_budget(q, m * n, budget)
    limit = config.SEARCH_LIMIT if limit is None else limit
    trials = config.SEARCH_TRIALS if trials is None else trials
    threads = config.THREADS if threads is None else max(1, threads)
    coverer = _Coverer(m, n, R, q, M, N)
    cands = TupleIndex(q, M * N)
    batch = max(1, BATCH_CELLS // max(coverer.index.size, M * N * m * n))

    if cands.size <= limit:

        def first_hit(start):
            stop = min(start + batch, cands.size)
            cells = cands.decode_many(numpy.arange(start, stop))
            hits = numpy.flatnonzero(coverer.covering(cells))
            return start + int(hits[0]) if hits.size else None

        starts = list(range(0, cands.size, batch))
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for w in range(0, len(starts), threads):
                wave = starts[w : w + threads]
                if threads > 1:
                    hits = list(pool.map(first_hit, wave))
                else:
                    hits = [first_hit(wave[0])]
                hits = [h for h in hits if h is not None]
                if hits:
                    best = min(hits)
                    cells = cands.decode(best)
                    a = PeriodicArray(numpy.array(cells).reshape(M, N), q)
                    _verified(a, m, n, R, "search", budget=budget)
                    return SearchResult("found", a, best + 1)
        return SearchResult("none", None, cands.size)

    rng = numpy.random.default_rng(seed)
    tried = 0
    while tried < trials:
        count = min(batch, trials - tried)
        cells = rng.integers(0, q, size=(count, M * N), dtype=numpy.uint8)
        hits = numpy.flatnonzero(coverer.covering(cells))
        if hits.size:
            tried += int(hits[0]) + 1
            a = PeriodicArray(cells[hits[0]].reshape(M, N), q)
            _verified(a, m, n, R, "search", budget=budget)
            return SearchResult("found", a, tried)
        tried += count
    return SearchResult("unknown", None, tried)
