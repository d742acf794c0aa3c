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
Contains exact covering-radius verification by level-synchronized
multi-source breadth-first expansion over the full tuple space.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy

from dbcover import config
from dbcover.core import (
    CyclicSequence,
    PeriodicArray,
    TupleIndex,
    array_window_matrix,
    sequence_window_matrix,
    sphere_bound,
)
from dbcover.exceptions import BudgetExceeded, InvalidParameter
from dbcover.logger import log

# distance value of tuples not reached by the expansion
UNREACHED = 255

# frontier entries expanded per chunk
CHUNK_SIZE = 1 << 18


@dataclass(frozen=True)
class CoverageReport:
    """Exact coverage of the tuple space by a set of windows."""

    q: int
    m: int
    n: int
    R: int
    Rstar: int
    levels: tuple
    uncovered: int
    witnesses: tuple = field(default=())
    distinct: int = 0
    windows: int = 0

    @property
    def verified(self):
        return self.uncovered == 0

    @property
    def length(self):
        return self.m * self.n

    @property
    def total(self):
        return self.q**self.length

    def label(self):
        if self.m == 1:
            return f"(n={self.n}, R={self.R})"
        return f"(m={self.m}, n={self.n}, R={self.R})"

    def sphere_bound_ok(self):
        """Returns True if the distinct window count reaches the sphere bound.
        Holds for every verified report.
        """
        return self.distinct >= sphere_bound(self.q, self.length, self.R)

    def summary(self):
        """Returns the single-line machine-readable summary."""
        verified = "true" if self.verified else "false"
        return f"verified={verified} Rstar={self.Rstar} uncovered={self.uncovered}"

    def format(self):
        """Returns a human-readable report block."""
        lines = [
            f"coverage {self.label()} q={self.q}",
            f"  windows    {self.windows}",
            f"  distinct   {self.distinct}",
            f"  tuples     {self.total}",
        ]
        for d, count in enumerate(self.levels):
            lines.append(f"  level {d:<4d} {count}")
        lines.append(f"  uncovered  {self.uncovered}")
        lines.append(f"  Rstar      {self.Rstar}")
        lines.append(f"  verified   {'true' if self.verified else 'false'}")
        for w in self.witnesses:
            lines.append("  witness    " + "".join(str(s) for s in w))
        return "\n".join(lines)

    def __str__(self):
        return self.format()


def check_budget(q: int, length: int, budget: int = None):
    """Raises BudgetExceeded if q^length tuples exceed the budget.

    :returns: the tuple space size.
    """
    budget = config.BUDGET if budget is None else budget
    required = q**length
    if required > budget:
        raise BudgetExceeded(required, budget)
    return required


def _expand_chunk(chunk: numpy.ndarray, q: int, weights: numpy.ndarray):
    """Returns every single-symbol substitution of the indices in chunk."""
    out = []
    for w in weights:
        digit = (chunk // w) % q
        for delta in range(1, q):
            out.append(chunk + (((digit + delta) % q) - digit) * w)
    return numpy.concatenate(out)


def distance_table(
    indices,
    q: int,
    length: int,
    budget: int = None,
    limit: int = None,
    threads: int = None,
):
    """Returns the dense distance table of a codeword set: entry t holds the
    Hamming distance from tuple t to the nearest codeword.

    Level 0 holds the codewords; level d+1 holds every single-symbol
    substitution of a level-d tuple not reached before. Frontier chunks may be
    expanded on worker threads; the union of their outputs does not depend on
    the chunking, so results are identical to a sequential run.

    :param indices: TupleIndex values of the codewords.
    :param q: alphabet size.
    :param length: tuple length L.
    :param budget: largest allowed q^L (default config.BUDGET).
    :param limit: stop after this level, leaving UNREACHED entries.
    :param threads: worker count (default config.THREADS).
    :raises BudgetExceeded: if q^L exceeds the budget.
    :returns: uint8 numpy array of size q^L.
    """
    size = check_budget(q, length, budget)
    threads = config.THREADS if threads is None else max(1, threads)
    frontier = numpy.unique(numpy.asarray(indices, dtype=numpy.int64))
    if frontier.size == 0:
        raise InvalidParameter("codeword set is empty")
    if frontier[0] < 0 or frontier[-1] >= size:
        raise InvalidParameter("codeword index outside the tuple space")

    weights = [q**p for p in range(length - 1, -1, -1)]
    dist = numpy.full(size, UNREACHED, dtype=numpy.uint8)
    dist[frontier] = 0
    level = 0

    with ThreadPoolExecutor(max_workers=threads) as pool:
        while frontier.size and (limit is None or level < limit):
            chunks = [
                frontier[i : i + CHUNK_SIZE]
                for i in range(0, frontier.size, CHUNK_SIZE)
            ]
            if threads > 1 and len(chunks) > 1:
                parts = list(pool.map(lambda c: _expand_chunk(c, q, weights), chunks))
            else:
                parts = [_expand_chunk(c, q, weights) for c in chunks]
            candidates = numpy.concatenate(parts)
            fresh = numpy.unique(candidates[dist[candidates] == UNREACHED])
            level += 1
            dist[fresh] = level
            frontier = fresh
            log.debug("level %d reached %d tuples", level, fresh.size)

    return dist


def covering_radius(codewords, q: int, length: int, budget: int = None):
    """Returns the covering radius R* of a codeword set: the largest distance
    from any q-ary tuple of the given length to its nearest codeword.

    :param codewords: iterable of tuples (duplicates are ignored).
    :param q: alphabet size.
    :param length: tuple length.
    :param budget: largest allowed q^length.
    :raises InvalidParameter: if the set is empty.
    :raises BudgetExceeded: if q^length exceeds the budget.
    """
    codewords = list(codewords)
    if not codewords:
        raise InvalidParameter("codeword set is empty")
    check_budget(q, length, budget)
    indices = TupleIndex(q, length).encode_many(codewords)
    return int(distance_table(indices, q, length, budget).max())


def is_covering(indices, q: int, length: int, R: int, budget: int = None):
    """Returns True if every tuple lies within distance R of a codeword.
    Stops the expansion at level R.
    """
    dist = distance_table(indices, q, length, budget, limit=R, threads=1)
    return not bool((dist == UNREACHED).any())


def coverage_report(
    indices,
    q: int,
    length: int,
    R: int,
    m: int = 1,
    n: int = None,
    budget: int = None,
    witness_limit: int = None,
    threads: int = None,
):
    """Builds a CoverageReport from window indices (with multiplicity).

    :param indices: TupleIndex values of all windows.
    :param q: alphabet size.
    :param length: window length m*n.
    :param R: claimed radius.
    :param m: window rows.
    :param n: window cols (default length // m).
    :returns: CoverageReport.
    """
    if R < 0:
        raise InvalidParameter(f"radius R must be >= 0, got {R}")
    n = length // m if n is None else n
    witness_limit = config.WITNESS_LIMIT if witness_limit is None else witness_limit
    indices = numpy.asarray(indices, dtype=numpy.int64)
    dist = distance_table(indices, q, length, budget, threads=threads)
    counts = numpy.bincount(dist, minlength=length + 1)
    levels = tuple(int(c) for c in counts[: min(R, length) + 1])
    levels = levels + (0,) * (R + 1 - len(levels))
    uncovered_idx = numpy.flatnonzero(dist > R)
    witnesses = tuple(
        TupleIndex(q, length).decode(int(i)) for i in uncovered_idx[:witness_limit]
    )
    report = CoverageReport(
        q=q,
        m=m,
        n=n,
        R=R,
        Rstar=int(dist.max()),
        levels=levels,
        uncovered=int(uncovered_idx.size),
        witnesses=witnesses,
        distinct=int(numpy.unique(indices).size),
        windows=int(indices.size),
    )
    if not report.verified:
        log.debug("coverage %s: %s", report.label(), report.summary())
    return report


def check_dbcs(s: CyclicSequence, n: int, R: int, **kwargs):
    """Checks whether s is an (n, R)-dBCS.

    :param s: cyclic sequence.
    :param n: window length.
    :param R: claimed radius.
    :returns: CoverageReport over the k windows of s.
    """
    check_budget(s.q, n, kwargs.get("budget"))
    matrix = sequence_window_matrix(s, n)
    indices = TupleIndex(s.q, n).encode_many(matrix)
    return coverage_report(indices, s.q, n, R, m=1, n=n, **kwargs)


def check_dbca(a: PeriodicArray, m: int, n: int, R: int, **kwargs):
    """Checks whether a is an (m, n, R)-dBCA, windows wrapping both ways."""
    check_budget(a.q, m * n, kwargs.get("budget"))
    matrix = array_window_matrix(a, m, n)
    indices = TupleIndex(a.q, m * n).encode_many(matrix)
    return coverage_report(indices, a.q, m * n, R, m=m, n=n, **kwargs)


def check_dbcsc(code, n: int, R: int, **kwargs):
    """Checks whether a set of sequences is an (n, R)-dBCSC.

    :param code: SequenceCode or iterable of CyclicSequence.
    :returns: CoverageReport over the union of all member windows.
    """
    members = list(getattr(code, "members", code))
    if not members:
        raise InvalidParameter("sequence code is empty")
    q = members[0].q
    if any(s.q != q for s in members):
        raise InvalidParameter("sequence code members use different alphabets")
    check_budget(q, n, kwargs.get("budget"))
    index = TupleIndex(q, n)
    indices = numpy.concatenate(
        [index.encode_many(sequence_window_matrix(s, n)) for s in members]
    )
    return coverage_report(indices, q, n, R, m=1, n=n, **kwargs)
