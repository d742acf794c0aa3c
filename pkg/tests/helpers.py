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
Contains shared helpers for the unit tests: the lib path, temp dirs and an
independent brute-force covering-radius oracle.
"""

import functools
import itertools
import os
import sys
import tempfile

import numpy

LIB_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "lib"))
if LIB_ROOT not in sys.path:
    sys.path.insert(0, LIB_ROOT)


def create_test_root():
    """Creates and returns a temporary directory for test files."""
    return tempfile.mkdtemp(prefix="dbcover-test-")


@functools.lru_cache(maxsize=None)
def all_tuples(q: int, length: int):
    """Returns every q-ary tuple of a given length as a (q^L, L) array. The
    cached array is shared; callers must not modify it.
    """
    return numpy.array(list(itertools.product(range(q), repeat=length)), dtype=numpy.int64)


def naive_covering_radius(codewords, q: int, length: int):
    """Max over all tuples of the min Hamming distance to the codewords,
    computed by direct comparison of every tuple with every codeword.
    """
    words = numpy.array(list(codewords), dtype=numpy.int64).reshape(-1, length)
    space = all_tuples(q, length)
    dist = (space[:, None, :] != words[None, :, :]).sum(axis=2)
    return int(dist.min(axis=1).max())


def brute_ball_volume(q: int, n: int, R: int):
    """Counts the tuples within distance R of the zero tuple."""
    weights = (all_tuples(q, n) != 0).sum(axis=1)
    return int((weights <= R).sum())
