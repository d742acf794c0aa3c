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
Contains the assembly of linear strings and sequence codes into a single
cyclic sequence by acyclic extension and greedy maximum-overlap merging.
"""

from dataclasses import dataclass, field

import numpy

from dbcover.core import MAX_TEXT_ALPHABET, CyclicSequence
from dbcover.exceptions import InvalidParameter, VerificationFailed
from dbcover.logger import log
from dbcover.util import dedupe_list
from dbcover.verify import check_dbcs


@dataclass(frozen=True)
class MergeStep:
    a: int
    b: int
    overlap: int


@dataclass
class MergeTrace:
    """Log of a greedy merge. Ids 0..count-1 are the deduplicated inputs;
    every merge creates the next id.
    """

    steps: list = field(default_factory=list)
    final_length: int = 0
    input_total: int = 0

    @property
    def saved(self):
        return sum(step.overlap for step in self.steps)


def linearize(s: CyclicSequence, n: int):
    """Returns s followed by its first n-1 symbols (wrapping as often as
    needed), so the linear n-windows equal the cyclic n-windows of s.

    :returns: digit string (tuple of ints when q > 10).
    """
    if n < 1:
        raise InvalidParameter(f"window length n must be >= 1, got {n}")
    symbols = s.symbols + tuple(s[i] for i in range(n - 1))
    if s.q <= MAX_TEXT_ALPHABET:
        return "".join(str(x) for x in symbols)
    return symbols


def _failure(pattern):
    fail = [0] * len(pattern)
    k = 0
    for i in range(1, len(pattern)):
        while k and pattern[i] != pattern[k]:
            k = fail[k - 1]
        if pattern[i] == pattern[k]:
            k += 1
        fail[i] = k
    return fail


def overlap(a, b):
    """Returns the length of the longest proper suffix of a that is a proper
    prefix of b (shorter than both strings).
    """
    limit = min(len(a), len(b)) - 1
    if limit <= 0:
        return 0
    pattern = b[:limit]
    fail = _failure(pattern)
    k = 0
    for c in a[len(a) - limit :]:
        while k and (k == limit or c != pattern[k]):
            k = fail[k - 1]
        if c == pattern[k]:
            k += 1
    return k


def greedy_merge(strings):
    """Merges linear strings into one superstring, always joining the pair
    with the largest suffix-prefix overlap. Ties go to the lexicographically
    smaller merged string, then to the lowest (i, j).

    :param strings: non-empty list of strings or tuples.
    :returns: (merged string, MergeTrace).
    """
    items = dedupe_list(list(strings))
    if not items:
        raise InvalidParameter("nothing to merge")
    trace = MergeTrace(input_total=sum(len(x) for x in items))
    count = len(items)
    ids = list(range(count))
    next_id = count
    active = numpy.ones(count, dtype=bool)
    matrix = numpy.full((count, count), -1, dtype=numpy.int64)
    for i in range(count):
        for j in range(count):
            if i != j:
                matrix[i, j] = overlap(items[i], items[j])

    for _ in range(count - 1):
        live = numpy.flatnonzero(active)
        sub = matrix[numpy.ix_(live, live)]
        best = int(sub.max())
        candidates = []
        for r, c in numpy.argwhere(sub == best):
            i, j = int(live[r]), int(live[c])
            candidates.append((items[i] + items[j][best:], i, j))
        merged, i, j = min(candidates)
        trace.steps.append(MergeStep(ids[i], ids[j], best))
        log.debug("merge %d + %d overlap %d", ids[i], ids[j], best)
        items[i] = merged
        ids[i] = next_id
        next_id += 1
        active[j] = False
        matrix[j, :] = -1
        matrix[:, j] = -1
        for other in numpy.flatnonzero(active):
            other = int(other)
            if other != i:
                matrix[i, other] = overlap(items[i], items[other])
                matrix[other, i] = overlap(items[other], items[i])

    result = items[int(numpy.flatnonzero(active)[0])]
    trace.final_length = len(result)
    return result, trace


def merge_to_dbcs(strings, n: int, R: int, q: int = 2, **kwargs):
    """Greedily merges linear strings, closes the result cyclically and
    verifies it as an (n, R)-dBCS.

    :raises VerificationFailed: with the report, if the closed sequence does
        not verify.
    :returns: (CyclicSequence, MergeTrace).
    """
    merged, trace = greedy_merge(strings)
    symbols = [int(c) for c in merged]
    s = CyclicSequence(symbols, q)
    report = check_dbcs(s, n, R, **kwargs)
    if not report.verified:
        raise VerificationFailed(
            f"merged sequence of length {s.k} is not an ({n},{R})-dBCS", report
        )
    log.info(
        "assembled (%d,%d)-dBCS of length %d from %d symbols",
        n,
        R,
        s.k,
        trace.input_total,
    )
    return s, trace


def dbcsc_to_dbcs(code, n: int = None, R: int = None, **kwargs):
    """Concatenates the members of a sequence code into one verified cyclic
    (n, R)-dBCS.

    :param code: SequenceCode.
    :param n: window length (default code.n).
    :param R: radius (default code.R).
    :returns: CyclicSequence.
    """
    n = code.n if n is None else n
    R = code.R if R is None else R
    strings = [linearize(s, n) for s in code.members]
    s, _ = merge_to_dbcs(strings, n, R, code.q, **kwargs)
    return s
