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
Contains the one-dimensional constructions: LFSR sequences from primitive
polynomials, cyclic-code class strings, self-dual sequence codes,
interleaving, padded de Bruijn sequences and the seed catalog.
"""

import math
import re
from collections import OrderedDict
from dataclasses import dataclass

import numpy
from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_pow_mod, gf_rem

from dbcover import config
from dbcover.core import CyclicSequence, read_sequence
from dbcover.exceptions import (
    BudgetExceeded,
    CoefficientCondition,
    ConstructionError,
    IncompatibleSequences,
    InvalidParameter,
    InvalidPolynomial,
    NotPrimitive,
    UnknownSeed,
)
from dbcover.logger import log
from dbcover.util import load_file

# single polynomial term: 1, x, x4, x^4
term_pattern = re.compile(r"^(?:(1)|x(?:\^?(\d+))?)$")

# reference syntax accepted by resolve_reference
reference_pattern = re.compile(r"^(seed|debruijn|word|file):(.+)$")


class Gf2Polynomial(object):
    """A binary polynomial c(x) = c_0 + c_1 x + ... + c_n x^n. ::

    >>> p = Gf2Polynomial.parse("x4+x+1")
    >>> p.degree, p.coefficients
    (4, (1, 1, 0, 0, 1))
    """

    def __init__(self, coefficients):
        """
        :param coefficients: c_0..c_n, each 0 or 1.
        """
        coeffs = [int(c) for c in coefficients]
        if any(c not in (0, 1) for c in coeffs):
            raise InvalidPolynomial(f"coefficients must be 0 or 1: {coeffs}")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            raise InvalidPolynomial("the zero polynomial has no degree")
        self.coefficients = tuple(coeffs)

    @classmethod
    def from_mask(cls, mask: int):
        """Builds a polynomial from an integer whose bit i is c_i."""
        if mask <= 0:
            raise InvalidPolynomial(f"mask must be positive, got {mask}")
        return cls([(mask >> i) & 1 for i in range(mask.bit_length())])

    @classmethod
    def from_exponents(cls, exponents):
        """Builds a polynomial from the exponents of its nonzero terms."""
        exponents = list(exponents)
        if len(set(exponents)) != len(exponents):
            raise InvalidPolynomial(f"repeated exponents in {exponents}")
        mask = 0
        for e in exponents:
            mask |= 1 << int(e)
        return cls.from_mask(mask)

    @classmethod
    def parse(cls, text: str):
        """Parses 'x9+x4+1', 'x^9+x^4+1', a hex mask such as '0x211' or an
        MSB-first bit string such as '10011'.
        """
        text = "".join(str(text).split()).lower()
        if not text:
            raise InvalidPolynomial("empty polynomial")
        if text.startswith("0x"):
            try:
                return cls.from_mask(int(text, 16))
            except ValueError:
                raise InvalidPolynomial(f"invalid hex mask {text!r}")
        if set(text) <= {"0", "1"} and len(text) > 1:
            return cls([int(c) for c in reversed(text)])
        exponents = []
        for term in text.split("+"):
            match = term_pattern.match(term)
            if not match:
                raise InvalidPolynomial(f"invalid term {term!r} in {text!r}")
            one, power = match.groups()
            exponents.append(0 if one else int(power) if power else 1)
        return cls.from_exponents(exponents)

    def __eq__(self, other):
        if not isinstance(other, Gf2Polynomial):
            return False
        return self.coefficients == other.coefficients

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f'<Gf2Polynomial "{self}">'

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            if self.coefficients[i]:
                terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
        return "+".join(terms)

    def __getitem__(self, i: int):
        if 0 <= i <= self.degree:
            return self.coefficients[i]
        return 0

    @property
    def degree(self):
        return len(self.coefficients) - 1

    @property
    def mask(self):
        """Integer whose bit i is c_i."""
        return sum(c << i for i, c in enumerate(self.coefficients))

    def exponents(self):
        """Returns the exponents of the nonzero terms, highest first."""
        return [i for i in range(self.degree, -1, -1) if self.coefficients[i]]

    def dense(self):
        """Returns the coefficient list highest degree first, as used by
        sympy's galoistools.
        """
        return ZZ.map(list(reversed(self.coefficients)))

    def reciprocal(self):
        """Returns x^n c(1/x)."""
        if self.coefficients[0] == 0:
            raise InvalidPolynomial(f"{self} has no constant term")
        return Gf2Polynomial(reversed(self.coefficients))

    def is_irreducible(self):
        if self.degree < 1:
            return False
        return bool(gf_irreducible_p(self.dense(), 2, ZZ))

    def divides_xn1(self, n: int):
        """Returns True if c(x) divides x^n + 1 over GF(2)."""
        xn1 = ZZ.map([1] + [0] * (n - 1) + [1])
        return not gf_rem(xn1, self.dense(), 2, ZZ)


def is_primitive(p: Gf2Polynomial):
    """Returns True if p is irreducible and x has multiplicative order 2^n-1
    modulo p.

    :raises InvalidPolynomial: for degree 0.
    """
    if p.degree < 1:
        raise InvalidPolynomial(f"{p} has degree 0")
    if p[0] != 1 or not p.is_irreducible():
        return False
    order = 2**p.degree - 1
    x = ZZ.map([1, 0])
    f = p.dense()
    if order == 1:
        return True
    if gf_pow_mod(x, order, f, 2, ZZ) != [1]:
        return False
    for prime in factorint(order):
        if gf_pow_mod(x, order // prime, f, 2, ZZ) == [1]:
            return False
    return True


def primitive_table():
    """Returns the bundled primitive polynomials as {degree: Gf2Polynomial}."""
    data = load_file(config.CATALOG_FILE, {"seeds", "primitive"})
    return OrderedDict(
        (int(degree), Gf2Polynomial.from_exponents(exps))
        for degree, exps in sorted(data["primitive"].items())
    )


def coefficient_violation(p: Gf2Polynomial, R: int):
    """Returns the first index i in 1..2R+1 with c_i = 1, or None."""
    for i in range(1, 2 * R + 2):
        if p[i]:
            return i
    return None


def find_lfsr_polynomial(n: int, R: int):
    """Returns a bundled primitive polynomial of degree n, or its reciprocal,
    with c_1 = ... = c_{2R+1} = 0.

    :raises InvalidPolynomial: if neither qualifies.
    """
    table = primitive_table()
    if n not in table:
        raise InvalidPolynomial(f"no bundled primitive polynomial of degree {n}")
    for p in (table[n], table[n].reciprocal()):
        if coefficient_violation(p, R) is None:
            return p
    raise InvalidPolynomial(
        f"no bundled degree-{n} polynomial has c_1..c_{2 * R + 1} = 0"
    )


class SequenceCode(object):
    """A non-empty set of cyclic sequences declared as an (n, R)-dBCSC."""

    def __init__(self, members, n: int, R: int):
        members = list(members)
        if not members:
            raise InvalidParameter("a sequence code needs at least one member")
        q = members[0].q
        if any(s.q != q for s in members):
            raise InvalidParameter("sequence code members use different alphabets")
        self.members = tuple(members)
        self.q = q
        self.n = n
        self.R = R

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __repr__(self):
        return f"<SequenceCode ({self.n},{self.R}) members={len(self)}>"

    def total_length(self):
        return sum(s.k for s in self.members)


def _lfsr_run(taps, init, constant: int):
    """Runs x_k = sum(x_{k-i} for i in taps) + constant mod 2 from init until
    the initial window recurs; returns one period.
    """
    n = len(init)
    full = (1 << n) - 1
    start = 0
    for bit in init:
        start = (start << 1) | bit
    seq = list(init)
    state = start
    k = n
    while True:
        bit = constant
        for i in taps:
            bit ^= seq[k - i]
        seq.append(bit)
        state = ((state << 1) | bit) & full
        k += 1
        if state == start:
            break
        if k - n > full:
            raise ConstructionError("LFSR state did not recur")
    return seq[: k - n]


def lfsr_pair(p: Gf2Polynomial, init=None, budget: int = None):
    """Runs the two recursions a_k = sum c_i a_{k-i} and b_k = sum c_i b_{k-i}
    + 1 (i = 1..n). A starts from init, B from the complement of init.

    For an irreducible p the sum c_1 + ... + c_n is even, which makes B the
    symbol-wise complement of A; both facts are checked.

    :param p: irreducible polynomial of degree n >= 2 with c_0 = 1.
    :param init: nonzero n-tuple (default 0...01).
    :returns: (A, B) as CyclicSequence.
    """
    n = p.degree
    if n < 2 or p[0] != 1:
        raise InvalidPolynomial(f"{p} needs degree >= 2 and c_0 = 1")
    if not p.is_irreducible():
        raise InvalidPolynomial(f"{p} is reducible over GF(2)")
    budget = config.BUDGET if budget is None else budget
    if 2**n > budget:
        raise BudgetExceeded(2**n, budget)
    init = tuple([0] * (n - 1) + [1]) if init is None else tuple(int(b) for b in init)
    if len(init) != n or any(b not in (0, 1) for b in init):
        raise InvalidParameter(f"init must be a binary {n}-tuple")
    if not any(init):
        raise InvalidParameter("init must be a nonzero tuple")

    taps = [i for i in range(1, n + 1) if p[i]]
    if len(taps) % 2:
        raise ConstructionError(f"{p}: c_1..c_n has odd weight {len(taps)}")

    a = _lfsr_run(taps, init, 0)
    b = _lfsr_run(taps, tuple(1 - x for x in init), 1)
    A = CyclicSequence(a)
    B = CyclicSequence(b)
    if B != A.complement():
        raise ConstructionError(f"{p}: the +1 recursion is not the complement")
    log.debug("lfsr %s: period %d", p, A.k)
    return A, B


def lfsr_cycles(p: Gf2Polynomial, budget: int = None):
    """Returns every cycle of the homogeneous recursion of an irreducible p,
    each paired with its complement from the +1 recursion. Each cycle starts
    from the least n-tuple not seen in an earlier cycle.

    :returns: list of (A, B) pairs whose periods sum to 2^n - 1.
    """
    n = p.degree
    full = (1 << n) - 1
    budget = config.BUDGET if budget is None else budget
    if 2**n > budget:
        raise BudgetExceeded(2**n, budget)
    seen = numpy.zeros(full + 1, dtype=bool)
    seen[0] = True
    pairs = []
    for start in range(1, full + 1):
        if seen[start]:
            continue
        init = tuple((start >> (n - 1 - i)) & 1 for i in range(n))
        A, B = lfsr_pair(p, init, budget)
        state = start
        for bit in A.symbols[n:] + A.symbols[:n]:
            seen[state] = True
            state = ((state << 1) | bit) & full
        pairs.append((A, B))
    total = sum(A.k for A, _ in pairs)
    if total != full:
        raise ConstructionError(f"{p}: cycles cover {total} of {full} states")
    return pairs


def lfsr_dbcsc(p: Gf2Polynomial, R: int):
    """Returns the LFSR code of an irreducible polynomial with
    c_1 = ... = c_{2R+1} = 0, declared as an (n+2R+1, R)-dBCSC.

    A primitive p gives the four members {A, B, 0, 1}. Any other irreducible
    p gives every cycle of both recursions plus 0 and 1; the windows are the
    same set in both cases.

    :raises CoefficientCondition: naming the first index with c_i = 1.
    :raises NotPrimitive: if p is reducible.
    """
    if R < 0:
        raise InvalidParameter(f"radius R must be >= 0, got {R}")
    bad = coefficient_violation(p, R)
    if bad is not None:
        raise CoefficientCondition(
            f"{p}: c_{bad} = 1 violates c_i = 0 for 1 <= i <= {2 * R + 1}"
        )
    if p.degree < 2 or p[0] != 1 or not p.is_irreducible():
        raise NotPrimitive(f"{p} is neither primitive nor irreducible")
    if is_primitive(p):
        A, B = lfsr_pair(p)
        if A.k != 2**p.degree - 1:
            raise ConstructionError(f"{p}: period {A.k} is not maximal")
        pairs = [(A, B)]
    else:
        pairs = lfsr_cycles(p)
        log.info(
            "%s is irreducible, not primitive: %d cycles of period %d",
            p, len(pairs), pairs[0][0].k,
        )
    members = [s for pair in pairs for s in pair]
    members += [CyclicSequence([0]), CyclicSequence([1])]
    return SequenceCode(members, p.degree + 2 * R + 1, R)


@dataclass(frozen=True)
class NecklaceClassProfile:
    """Rotation classes of a cyclic code: sizes and least-rotation
    representatives, ordered by representative.
    """

    n: int
    representatives: tuple
    sizes: tuple

    @property
    def counts(self):
        """Returns {class size: class count}."""
        counts = {}
        for d in self.sizes:
            counts[d] = counts.get(d, 0) + 1
        return dict(sorted(counts.items(), reverse=True))

    @property
    def total(self):
        return sum(self.sizes)


def _carryless_mul(a: int, b: int):
    out = 0
    while a:
        if a & 1:
            out ^= b
        a >>= 1
        b <<= 1
    return out


def _least_rotation(word: tuple):
    return min(word[i:] + word[:i] for i in range(len(word)))


def cyclic_code_classes(g: Gf2Polynomial, n: int, budget: int = None):
    """Enumerates the cyclic code generated by g and groups its codewords
    into rotation classes.

    :param g: generator dividing x^n + 1.
    :param n: code length.
    :returns: NecklaceClassProfile.
    """
    if not g.divides_xn1(n):
        raise InvalidPolynomial(f"{g} does not divide x^{n}+1")
    dim = n - g.degree
    budget = config.BUDGET if budget is None else budget
    if 2**dim > budget:
        raise BudgetExceeded(2**dim, budget)
    classes = {}
    for info in range(2**dim):
        mask = _carryless_mul(info, g.mask)
        word = tuple((mask >> i) & 1 for i in range(n))
        rep = _least_rotation(word)
        classes.setdefault(rep, set()).add(word)
    reps = sorted(classes)
    profile = NecklaceClassProfile(
        n=n,
        representatives=tuple(reps),
        sizes=tuple(len(classes[r]) for r in reps),
    )
    log.debug("cyclic code %s n=%d: classes %s", g, n, profile.counts)
    return profile


def class_strings(profile: NecklaceClassProfile, n: int = None):
    """Returns one linear string per class: the representative extended
    cyclically by d-1 symbols, so its n-windows are the d class members.
    """
    n = profile.n if n is None else n
    out = []
    for rep, d in zip(profile.representatives, profile.sizes):
        word = rep + rep[: d - 1]
        out.append("".join(str(b) for b in word))
    return out


def cyclic_code_dbcsc(g: Gf2Polynomial, n: int, R: int = 1):
    """Returns the cyclic code as a sequence code: one member per class, the
    period-d prefix of the class representative.
    """
    profile = cyclic_code_classes(g, n)
    members = [
        CyclicSequence(rep[:d])
        for rep, d in zip(profile.representatives, profile.sizes)
    ]
    return SequenceCode(members, n, R)


def _word(value, name: str):
    if isinstance(value, str):
        value = [int(c) for c in value]
    value = tuple(int(b) for b in value)
    if any(b not in (0, 1) for b in value):
        raise InvalidParameter(f"{name} must be a binary word")
    return value


def self_dual_dbcsc(X, Y, R: int = 1):
    """Builds the self-dual code: for every word Z of length l with a leading
    zero and even weight, the cyclic sequence
    [Z, Z+X, ~Z, ~Z+X, Z, Z+Y, ~Z, ~Z+Y].

    :param X: binary word of length l.
    :param Y: binary word differing from X in the last bit only.
    :returns: SequenceCode of 2^(l-2) members, declared (2l, R).
    """
    X = _word(X, "X")
    Y = _word(Y, "Y")
    ell = len(X)
    if len(Y) != ell:
        raise InvalidParameter(f"X and Y lengths differ: {ell} != {len(Y)}")
    if ell < 2:
        raise InvalidParameter("X and Y need length >= 2")
    if X[:-1] != Y[:-1] or X[-1] == Y[-1]:
        raise InvalidParameter("Y must differ from X in the last bit only")
    x = numpy.array(X, dtype=numpy.uint8)
    y = numpy.array(Y, dtype=numpy.uint8)
    members = []
    for value in range(2 ** (ell - 1)):
        z = numpy.array([(value >> (ell - 1 - i)) & 1 for i in range(ell)], dtype=numpy.uint8)
        if z.sum() % 2:
            continue
        zc = 1 - z
        parts = [z, z ^ x, zc, zc ^ x, z, z ^ y, zc, zc ^ y]
        members.append(CyclicSequence(numpy.concatenate(parts).tolist()))
    return SequenceCode(members, 2 * ell, R)


def interleave(S: CyclicSequence, T: CyclicSequence, nS: int, nT: int, RS: int, RT: int):
    """Interleaves an (nS, RS)-dBCS and an (nT, RT)-dBCS of coprime lengths
    into an (nS+nT, RS+RT)-dBCS.

    The sequence with the longer window sits on even positions: position 2i
    carries its symbol i, position 2i+1 the other's symbol i. The result is the
    minimal period of that stream.

    :raises IncompatibleSequences: for non-coprime lengths or window lengths
        more than one apart.
    """
    if S.q != T.q:
        raise IncompatibleSequences("sequences use different alphabets")
    if math.gcd(S.k, T.k) != 1:
        raise IncompatibleSequences(
            f"lengths {S.k} and {T.k} share the factor {math.gcd(S.k, T.k)}"
        )
    if abs(nS - nT) > 1:
        raise IncompatibleSequences(f"window lengths {nS} and {nT} differ by more than 1")
    if nT > nS:
        S, T = T, S
    k = S.k * T.k
    i = numpy.arange(k)
    stream = numpy.empty(2 * k, dtype=numpy.uint8)
    stream[0::2] = S.as_array()[i % S.k]
    stream[1::2] = T.as_array()[i % T.k]
    word = CyclicSequence(stream.tolist(), S.q)
    period = word.minimal_period()
    if period != word.k:
        word = CyclicSequence(word.symbols[:period], S.q)
    log.debug(
        "interleave %d x %d: %d window pairings, word length %d",
        S.k,
        T.k,
        k,
        word.k,
    )
    return word


def debruijn(n: int, q: int = 2):
    """Returns the least-rotation (FKM) de Bruijn sequence of order n; it
    starts with n zeros.
    """
    if n < 1:
        raise InvalidParameter(f"order n must be >= 1, got {n}")
    a = [0] * (n + 1)
    sequence = []

    def db(t, p):
        if t > n:
            if n % p == 0:
                sequence.extend(a[1 : p + 1])
        else:
            a[t] = a[t - p]
            db(t + 1, p)
            for j in range(a[t - p] + 1, q):
                a[t] = j
                db(t + 1, t)

    db(1, 1)
    return CyclicSequence(sequence, q)


def debruijn_padded(n: int, pad: int = 0):
    """Returns a binary de Bruijn sequence of order n with pad extra zeros
    inserted into its run of n zeros; length 2^n + pad.
    """
    if pad < 0:
        raise InvalidParameter(f"pad must be >= 0, got {pad}")
    s = debruijn(n, 2)
    if n > 1 and any(s.symbols[:n]):
        raise ConstructionError("de Bruijn sequence does not start with its zero run")
    return CyclicSequence((0,) * pad + s.symbols, 2)


def seed_catalog():
    """Returns the bundled seeds as {(n, R, variant): CyclicSequence}."""
    data = load_file(config.CATALOG_FILE, {"seeds", "primitive"})
    catalog = OrderedDict()
    for entry in data["seeds"]:
        key = (int(entry["n"]), int(entry["R"]), entry.get("variant"))
        catalog[key] = CyclicSequence.from_string(str(entry["symbols"]))
    return catalog


def known_seed(n: int, R: int, variant: str = None):
    """Returns the catalog sequence stored under (n, R, variant).

    :raises UnknownSeed: if the key is not in the catalog.
    """
    catalog = seed_catalog()
    key = (n, R, variant or None)
    if key not in catalog:
        known = ", ".join(
            f"{k[0]},{k[1]}" + (f",{k[2]}" if k[2] else "") for k in catalog
        )
        raise UnknownSeed(f"no seed {n},{R}{',' + variant if variant else ''} (known: {known})")
    return catalog[key]


@dataclass(frozen=True)
class Reference:
    """A resolved sequence reference with its declared window and radius
    (None where the reference does not carry them).
    """

    sequence: CyclicSequence
    n: int = None
    R: int = None


def resolve_reference(ref: str):
    """Resolves 'seed:n,R[,variant]', 'debruijn:n+pad', 'word:digits' or
    'file:path' to a Reference.
    """
    match = reference_pattern.match(ref.strip())
    if not match:
        raise InvalidParameter(
            f"invalid reference {ref!r} (use seed:, debruijn:, word: or file:)"
        )
    kind, body = match.groups()
    if kind == "seed":
        parts = [p.strip() for p in body.split(",")]
        if len(parts) not in (2, 3):
            raise InvalidParameter(f"invalid seed reference {ref!r}")
        try:
            n, R = int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidParameter(f"invalid seed reference {ref!r}")
        variant = parts[2] if len(parts) == 3 else None
        return Reference(known_seed(n, R, variant), n, R)
    if kind == "debruijn":
        order, _, pad = body.partition("+")
        try:
            n, pad = int(order), int(pad or 0)
        except ValueError:
            raise InvalidParameter(f"invalid de Bruijn reference {ref!r}")
        return Reference(debruijn_padded(n, pad), n, 0)
    if kind == "word":
        return Reference(CyclicSequence.from_string(body))
    s, spec = read_sequence(body)
    return Reference(s, spec.n, spec.R)
