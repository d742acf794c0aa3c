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
Contains the alphabet-generic carriers: cyclic sequences, doubly periodic
arrays, window extraction, ball volumes and the sequence/array file formats.
"""

import math
import os
import re
from dataclasses import dataclass

import numpy

from dbcover.exceptions import InvalidHeader, InvalidParameter, InvalidSymbol
from dbcover.util import ceil_div

# largest alphabet the single-digit text format can hold
MAX_TEXT_ALPHABET = 10

# header field order of the text formats
SEQUENCE_FIELDS = ("q", "n", "R", "k")
ARRAY_FIELDS = ("q", "m", "n", "R", "M", "N")

header_pattern = re.compile(r"^(\w+)=(.*)$")


def _check_alphabet(q: int):
    if not isinstance(q, int) or q < 2:
        raise InvalidParameter(f"alphabet size q must be >= 2, got {q!r}")
    if q > 256:
        raise InvalidParameter(f"alphabet size q={q} exceeds 256")


def _check_symbols(values: numpy.ndarray, q: int):
    bad = numpy.flatnonzero((values < 0) | (values >= q))
    if bad.size:
        pos = int(bad[0])
        raise InvalidSymbol(
            f"symbol {int(values.flat[pos])} at position {pos} is outside 0..{q - 1}"
        )


class TupleIndex(object):
    """Canonical bijection between q-ary tuples of a fixed length and the
    integers 0..q^length-1. Tuples are read most-significant symbol first, so
    flattened m x n windows are indexed row-major. ::

    >>> idx = TupleIndex(2, 5)
    >>> idx.encode((0, 0, 1, 0, 1))
    5
    >>> idx.decode(5)
    (0, 0, 1, 0, 1)
    """

    def __init__(self, q: int, length: int):
        """
        :param q: alphabet size.
        :param length: tuple length L.
        """
        _check_alphabet(q)
        if length < 1:
            raise InvalidParameter(f"tuple length must be >= 1, got {length}")
        self.q = q
        self.length = length
        self.size = q**length

    def __repr__(self):
        return f"<TupleIndex q={self.q} length={self.length}>"

    def encode(self, tup):
        """Returns the index of a single tuple."""
        if len(tup) != self.length:
            raise InvalidParameter(
                f"tuple of length {len(tup)} does not match length {self.length}"
            )
        value = 0
        for s in tup:
            s = int(s)
            if not 0 <= s < self.q:
                raise InvalidSymbol(f"symbol {s} is outside 0..{self.q - 1}")
            value = value * self.q + s
        return value

    def decode(self, index: int):
        """Returns the tuple stored at a given index."""
        if not 0 <= index < self.size:
            raise InvalidParameter(f"index {index} is outside 0..{self.size - 1}")
        out = [0] * self.length
        for i in range(self.length - 1, -1, -1):
            index, out[i] = divmod(index, self.q)
        return tuple(out)

    def encode_many(self, matrix):
        """Encodes every row of a 2-D symbol matrix.

        :param matrix: array-like of shape (count, length).
        :returns: int64 numpy array of indices.
        """
        matrix = numpy.asarray(matrix, dtype=numpy.int64)
        if matrix.ndim != 2 or matrix.shape[1] != self.length:
            raise InvalidParameter(
                f"expected rows of length {self.length}, got shape {matrix.shape}"
            )
        if self.size > numpy.iinfo(numpy.int64).max:
            raise InvalidParameter(
                f"tuple space {self.q}^{self.length} does not fit in int64"
            )
        weights = self.q ** numpy.arange(self.length - 1, -1, -1, dtype=numpy.int64)
        return matrix @ weights

    def decode_many(self, indices):
        """Decodes an array of indices into a (count, length) uint8 matrix."""
        indices = numpy.asarray(indices, dtype=numpy.int64)
        weights = self.q ** numpy.arange(self.length - 1, -1, -1, dtype=numpy.int64)
        return ((indices[:, None] // weights) % self.q).astype(numpy.uint8)


@dataclass(frozen=True)
class WindowSpec:
    """Window shape m x n (m = 1 for sequences) and claimed radius R."""

    m: int
    n: int
    R: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InvalidParameter(f"window {self.m}x{self.n} must be at least 1x1")
        if self.R < 0:
            raise InvalidParameter(f"radius R must be >= 0, got {self.R}")
        if self.R > self.m * self.n:
            raise InvalidParameter(
                f"radius R={self.R} exceeds window size {self.m * self.n}"
            )

    @property
    def length(self):
        """Flattened window length m*n."""
        return self.m * self.n

    def __str__(self):
        if self.m == 1:
            return f"({self.n},{self.R})"
        return f"({self.m},{self.n},{self.R})"


class CyclicSequence(object):
    """An immutable cyclic word s_0..s_{k-1} over the alphabet 0..q-1."""

    def __init__(self, symbols, q: int = 2):
        """
        :param symbols: iterable of symbols (ints or a digit string).
        :param q: alphabet size.
        """
        _check_alphabet(q)
        if isinstance(symbols, str):
            symbols = [int(c, 36) for c in symbols]
        values = numpy.array(list(symbols), dtype=numpy.int64)
        if values.ndim != 1 or values.size < 1:
            raise InvalidParameter("a cyclic sequence needs at least one symbol")
        _check_symbols(values, q)
        self.q = q
        self.symbols = tuple(int(v) for v in values)
        self._array = values.astype(numpy.uint8)
        self._array.setflags(write=False)

    @classmethod
    def from_string(cls, text: str, q: int = 2):
        """Parses a digit string, ignoring whitespace."""
        text = "".join(text.split())
        for pos, c in enumerate(text):
            if not c.isdigit():
                raise InvalidSymbol(f"character {c!r} at position {pos} is not a digit")
        return cls(text, q)

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, i: int):
        return self.symbols[i % len(self.symbols)]

    def __iter__(self):
        return iter(self.symbols)

    def __eq__(self, other):
        if not isinstance(other, CyclicSequence):
            return False
        return self.q == other.q and self.symbols == other.symbols

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.q, self.symbols))

    def __repr__(self):
        text = str(self)
        if len(text) > 40:
            text = text[:37] + "..."
        return f'<CyclicSequence q={self.q} k={len(self)} "{text}">'

    def __str__(self):
        if self.q <= MAX_TEXT_ALPHABET:
            return "".join(str(s) for s in self.symbols)
        return ",".join(str(s) for s in self.symbols)

    @property
    def k(self):
        """Period (length) of the sequence."""
        return len(self.symbols)

    def as_array(self):
        """Returns the symbols as a read-only uint8 numpy array."""
        return self._array

    def rotate(self, j: int):
        """Returns the shift E^j of this sequence: symbol i of the result is
        s_{i+j mod k}.
        """
        j %= self.k
        return CyclicSequence(self.symbols[j:] + self.symbols[:j], self.q)

    def complement(self):
        """Returns the symbol-wise complement q-1-s."""
        return CyclicSequence([self.q - 1 - s for s in self.symbols], self.q)

    def minimal_period(self):
        """Returns the smallest p dividing k with s_{i+p} = s_i for all i."""
        k = self.k
        for p in range(1, k + 1):
            if k % p == 0 and self.symbols == self.symbols[p:] + self.symbols[:p]:
                return p
        return k


class PeriodicArray(object):
    """An immutable doubly periodic M x N array over the alphabet 0..q-1."""

    def __init__(self, cells, q: int = 2):
        """
        :param cells: 2-D array-like of symbols.
        :param q: alphabet size.
        """
        _check_alphabet(q)
        values = numpy.array(cells, dtype=numpy.int64)
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise InvalidParameter(
                f"a periodic array needs a non-empty 2-D grid, got shape {values.shape}"
            )
        _check_symbols(values, q)
        self.q = q
        self.cells = values.astype(numpy.uint8)
        self.cells.setflags(write=False)

    @classmethod
    def from_rows(cls, rows, q: int = 2):
        """Builds an array from digit strings or symbol lists, one per row."""
        grid = []
        for row in rows:
            if isinstance(row, str):
                row = [int(c, 36) for c in row]
            grid.append(list(row))
        widths = set(len(r) for r in grid)
        if len(widths) > 1:
            raise InvalidParameter(f"ragged rows with widths {sorted(widths)}")
        return cls(grid, q)

    def __eq__(self, other):
        if not isinstance(other, PeriodicArray):
            return False
        return self.q == other.q and numpy.array_equal(self.cells, other.cells)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.q, self.cells.shape, self.cells.tobytes()))

    def __repr__(self):
        return f"<PeriodicArray q={self.q} {self.rows}x{self.cols}>"

    def __str__(self):
        sep = "" if self.q <= MAX_TEXT_ALPHABET else ","
        return "\n".join(sep.join(str(v) for v in row) for row in self.cells.tolist())

    @property
    def rows(self):
        return self.cells.shape[0]

    @property
    def cols(self):
        return self.cells.shape[1]

    @property
    def area(self):
        return self.rows * self.cols

    def row(self, i: int):
        """Returns row i (mod M) as a tuple."""
        return tuple(int(v) for v in self.cells[i % self.rows])

    def transpose(self):
        return PeriodicArray(self.cells.T, self.q)


def ball_volume(q: int, n: int, R: int):
    """Returns V_q(n, R), the number of q-ary n-tuples within Hamming
    distance R of a fixed tuple, as an exact integer.

    :param q: alphabet size.
    :param n: tuple length.
    :param R: radius.
    :raises InvalidParameter: if R > n or the sizes are out of range.
    """
    _check_alphabet(q)
    if n < 1:
        raise InvalidParameter(f"length n must be >= 1, got {n}")
    if R < 0 or R > n:
        raise InvalidParameter(f"radius R={R} must satisfy 0 <= R <= n={n}")
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(R + 1))


def sphere_bound(q: int, n: int, R: int):
    """Returns the sphere covering bound ceil(q^n / V_q(n, R))."""
    return ceil_div(q**n, ball_volume(q, n, R))


def sequence_window_matrix(s: CyclicSequence, n: int):
    """Returns a (k, n) uint8 matrix whose row i is the window starting at s_i.
    Windows wrap repeatedly when k < n.
    """
    if n < 1:
        raise InvalidParameter(f"window length n must be >= 1, got {n}")
    k = s.k
    positions = (numpy.arange(k)[:, None] + numpy.arange(n)[None, :]) % k
    return s.as_array()[positions]


def sequence_windows(s: CyclicSequence, n: int):
    """Returns the k length-n windows of s as tuples, duplicates preserved.

    :param s: cyclic sequence.
    :param n: window length.
    :returns: list of n-tuples, tuple i starting at s_i.
    """
    return [tuple(w) for w in sequence_window_matrix(s, n).tolist()]


def array_window_matrix(a: PeriodicArray, m: int, n: int):
    """Returns an (M*N, m*n) uint8 matrix of flattened row-major windows,
    window (i, j) stored at row i*N + j.
    """
    if m < 1 or n < 1:
        raise InvalidParameter(f"window {m}x{n} must be at least 1x1")
    M, N = a.rows, a.cols
    ri = (numpy.arange(M)[:, None] + numpy.arange(m)[None, :]) % M
    ci = (numpy.arange(N)[:, None] + numpy.arange(n)[None, :]) % N
    # shape (M, N, m, n)
    block = a.cells[ri[:, None, :, None], ci[None, :, None, :]]
    return block.reshape(M * N, m * n)


def array_windows(a: PeriodicArray, m: int, n: int):
    """Returns the M*N flattened m x n windows of a, with wraparound."""
    return [tuple(w) for w in array_window_matrix(a, m, n).tolist()]


def _parse_header(line: str, kind: str, fields: tuple):
    tokens = line.split()
    if not tokens or tokens[0] != kind:
        found = tokens[0] if tokens else ""
        raise InvalidHeader(f"header must start with '{kind}', found {found!r}")
    values = {}
    for token in tokens[1:]:
        match = header_pattern.match(token)
        if not match:
            raise InvalidHeader(f"malformed header field {token!r}")
        key, value = match.groups()
        if key not in fields:
            raise InvalidHeader(f"unknown header field {key!r}")
        if key in values:
            raise InvalidHeader(f"duplicate header field {key!r}")
        try:
            values[key] = int(value)
        except ValueError:
            raise InvalidHeader(f"header field {key!r} is not an integer: {value!r}")
    for key in fields:
        if key not in values:
            raise InvalidHeader(f"missing header field {key!r}")
    if not 2 <= values["q"] <= MAX_TEXT_ALPHABET:
        raise InvalidHeader(f"header field 'q' must be in 2..{MAX_TEXT_ALPHABET}")
    return values


def _parse_digits(line: str, q: int, where: str):
    values = []
    for pos, c in enumerate(line):
        if not c.isdigit():
            raise InvalidSymbol(f"{where}: character {c!r} at column {pos} is not a digit")
        v = int(c)
        if v >= q:
            raise InvalidSymbol(f"{where}: symbol {v} at column {pos} is outside 0..{q - 1}")
        values.append(v)
    return values


def format_sequence(s: CyclicSequence, n: int, R: int):
    """Returns the text form of a sequence file."""
    if s.q > MAX_TEXT_ALPHABET:
        raise InvalidParameter(f"text format holds q <= {MAX_TEXT_ALPHABET}, got {s.q}")
    return f"dbcs q={s.q} n={n} R={R} k={s.k}\n{s}\n"


def parse_sequence(text: str):
    """Parses sequence file text.

    :param text: file contents.
    :returns: (CyclicSequence, WindowSpec).
    :raises InvalidHeader: for malformed headers or a symbol count mismatch.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) != 2:
        raise InvalidHeader(f"expected 2 lines (header, symbols), found {len(lines)}")
    header = _parse_header(lines[0], "dbcs", SEQUENCE_FIELDS)
    symbols = _parse_digits(lines[1], header["q"], "line 2")
    if len(symbols) != header["k"]:
        raise InvalidHeader(
            f"header field 'k' is {header['k']} but line 2 holds {len(symbols)} symbols"
        )
    if header["k"] < 1:
        raise InvalidHeader("header field 'k' must be >= 1")
    try:
        spec = WindowSpec(1, header["n"], header["R"])
    except InvalidParameter as err:
        raise InvalidHeader(f"header fields 'n'/'R': {err}")
    return CyclicSequence(symbols, header["q"]), spec


def read_sequence(path: str):
    """Reads a sequence file, returns (CyclicSequence, WindowSpec)."""
    with open(path, "r", encoding="utf-8") as f:
        return parse_sequence(f.read())


def write_sequence(path: str, s: CyclicSequence, n: int, R: int):
    """Writes a sequence file."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_sequence(s, n, R))
    return path


def format_array(a: PeriodicArray, m: int, n: int, R: int):
    """Returns the text form of an array file."""
    if a.q > MAX_TEXT_ALPHABET:
        raise InvalidParameter(f"text format holds q <= {MAX_TEXT_ALPHABET}, got {a.q}")
    header = f"dbca q={a.q} m={m} n={n} R={R} M={a.rows} N={a.cols}"
    return header + "\n" + str(a) + "\n"


def parse_array(text: str):
    """Parses array file text.

    :param text: file contents.
    :returns: (PeriodicArray, WindowSpec).
    :raises InvalidHeader: for malformed headers or a shape mismatch.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise InvalidHeader("empty array file")
    header = _parse_header(lines[0], "dbca", ARRAY_FIELDS)
    M, N = header["M"], header["N"]
    if M < 1 or N < 1:
        raise InvalidHeader("header fields 'M' and 'N' must be >= 1")
    body = lines[1:]
    if len(body) != M:
        raise InvalidHeader(f"header field 'M' is {M} but the file holds {len(body)} rows")
    grid = []
    for i, line in enumerate(body):
        row = _parse_digits(line, header["q"], f"line {i + 2}")
        if len(row) != N:
            raise InvalidHeader(
                f"header field 'N' is {N} but line {i + 2} holds {len(row)} symbols"
            )
        grid.append(row)
    try:
        spec = WindowSpec(header["m"], header["n"], header["R"])
    except InvalidParameter as err:
        raise InvalidHeader(f"header fields 'm'/'n'/'R': {err}")
    return PeriodicArray(grid, header["q"]), spec


def read_array(path: str):
    """Reads an array file, returns (PeriodicArray, WindowSpec)."""
    with open(path, "r", encoding="utf-8") as f:
        return parse_array(f.read())


def write_array(path: str, a: PeriodicArray, m: int, n: int, R: int):
    """Writes an array file."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_array(a, m, n, R))
    return path


def list_files(directory: str, ext: str):
    """Returns sorted paths under a directory with a given extension."""
    return sorted(
        os.path.join(directory, name)
        for name in os.listdir(directory)
        if name.endswith(ext)
    )
