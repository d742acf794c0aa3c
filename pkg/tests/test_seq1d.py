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
Contains unit tests for the seq1d module.
"""

import os
import unittest

from helpers import create_test_root

from dbcover.assemble import linearize
from dbcover.core import CyclicSequence, sequence_windows, write_sequence
from dbcover.exceptions import (
    CoefficientCondition,
    IncompatibleSequences,
    InvalidParameter,
    InvalidPolynomial,
    NotPrimitive,
    UnknownSeed,
)
from dbcover.seq1d import (
    Gf2Polynomial,
    class_strings,
    cyclic_code_classes,
    cyclic_code_dbcsc,
    debruijn,
    debruijn_padded,
    find_lfsr_polynomial,
    interleave,
    is_primitive,
    known_seed,
    lfsr_cycles,
    lfsr_dbcsc,
    lfsr_pair,
    primitive_table,
    resolve_reference,
    seed_catalog,
    self_dual_dbcsc,
)
from dbcover.verify import check_dbcs, check_dbcsc


class TestGf2Polynomial(unittest.TestCase):
    """Tests for the Gf2Polynomial class."""

    def test_parse(self):
        p = Gf2Polynomial.parse("x4+x+1")
        self.assertEqual(p.coefficients, (1, 1, 0, 0, 1))
        self.assertEqual(p.degree, 4)
        self.assertEqual(p, Gf2Polynomial.parse("x^4 + x^1 + 1"))
        self.assertEqual(p, Gf2Polynomial.parse("10011"))
        self.assertEqual(p, Gf2Polynomial.parse("0x13"))
        self.assertEqual(p, Gf2Polynomial.from_exponents([4, 1, 0]))
        self.assertEqual(str(p), "x^4+x+1")
        self.assertEqual(p.mask, 0x13)
        self.assertEqual(p.exponents(), [4, 1, 0])

    def test_parse_errors(self):
        for text in ("", "x4+y", "x4+x4", "2x+1", "0x0"):
            with self.assertRaises(InvalidPolynomial, msg=text):
                Gf2Polynomial.parse(text)

    def test_constant(self):
        self.assertEqual(Gf2Polynomial.parse("1").degree, 0)

    def test_reciprocal(self):
        p = Gf2Polynomial.parse("x4+x+1")
        self.assertEqual(p.reciprocal(), Gf2Polynomial.parse("x4+x3+1"))
        with self.assertRaises(InvalidPolynomial):
            Gf2Polynomial.parse("x4+x").reciprocal()

    def test_divides(self):
        p = Gf2Polynomial.parse("x4+x+1")
        self.assertTrue(p.divides_xn1(15))
        self.assertFalse(p.divides_xn1(7))


class TestPrimitive(unittest.TestCase):
    """Tests for is_primitive and the bundled polynomial table."""

    def test_known(self):
        self.assertTrue(is_primitive(Gf2Polynomial.parse("x4+x+1")))
        self.assertTrue(is_primitive(Gf2Polynomial.parse("x9+x4+1")))
        # irreducible, order 5
        self.assertFalse(is_primitive(Gf2Polynomial.parse("x4+x3+x2+x+1")))
        self.assertFalse(is_primitive(Gf2Polynomial.parse("x2+1")))
        self.assertFalse(is_primitive(Gf2Polynomial.parse("x8+x4+1")))
        with self.assertRaises(InvalidPolynomial):
            is_primitive(Gf2Polynomial.parse("1"))

    def test_table(self):
        table = primitive_table()
        self.assertEqual(list(table), list(range(2, 33)))
        for degree, p in table.items():
            self.assertEqual(p.degree, degree)
            if degree <= 16:
                self.assertTrue(is_primitive(p), str(p))
                self.assertTrue(is_primitive(p.reciprocal()), str(p))

    def test_find_lfsr_polynomial(self):
        self.assertEqual(find_lfsr_polynomial(9, 1), Gf2Polynomial.parse("x9+x4+1"))
        self.assertEqual(find_lfsr_polynomial(4, 0), Gf2Polynomial.parse("x4+x3+1"))
        with self.assertRaises(InvalidPolynomial):
            find_lfsr_polynomial(4, 1)


class TestLfsr(unittest.TestCase):
    """Tests for lfsr_pair and lfsr_dbcsc."""

    def test_pair(self):
        A, B = lfsr_pair(Gf2Polynomial.parse("x4+x+1"))
        self.assertEqual(A.k, 15)
        self.assertEqual(B, A.complement())
        windows = set(sequence_windows(A, 4))
        self.assertEqual(len(windows), 15)
        self.assertNotIn((0, 0, 0, 0), windows)
        self.assertEqual(A.symbols[:4], (0, 0, 0, 1))

    def test_pair_over_table(self):
        """The +1 recursion yields the complement for every bundled
        polynomial of degree at most 12, and both run at full period.
        """
        for degree, p in primitive_table().items():
            if degree > 12:
                break
            A, B = lfsr_pair(p)
            self.assertEqual(A.k, 2**degree - 1)
            self.assertEqual(B, A.complement())
            self.assertEqual(sum(p.coefficients[1:]) % 2, 0)

    def test_pair_errors(self):
        with self.assertRaises(InvalidPolynomial):
            lfsr_pair(Gf2Polynomial.parse("x2+1"))
        with self.assertRaises(InvalidParameter):
            lfsr_pair(Gf2Polynomial.parse("x4+x+1"), init=(0, 0, 0, 0))
        with self.assertRaises(InvalidParameter):
            lfsr_pair(Gf2Polynomial.parse("x4+x+1"), init=(0, 1))

    def test_dbcsc_12_1(self):
        code = lfsr_dbcsc(Gf2Polynomial.parse("x9+x4+1"), 1)
        self.assertEqual((code.n, code.R), (12, 1))
        self.assertEqual(len(code), 4)
        self.assertEqual(code.total_length(), 2 * 511 + 2)
        report = check_dbcsc(code, 12, 1)
        self.assertTrue(report.verified)

    def test_dbcsc_radius_zero(self):
        code = lfsr_dbcsc(Gf2Polynomial.parse("x4+x3+1"), 0)
        self.assertEqual((code.n, code.R), (5, 0))
        windows = set()
        for s in code:
            windows.update(sequence_windows(s, 5))
        self.assertEqual(len(windows), 32)
        self.assertTrue(check_dbcsc(code, 5, 0).verified)

    def test_coefficient_condition(self):
        with self.assertRaisesRegex(CoefficientCondition, "c_1 "):
            lfsr_dbcsc(Gf2Polynomial.parse("x4+x+1"), 1)
        with self.assertRaisesRegex(CoefficientCondition, "c_4 "):
            lfsr_dbcsc(Gf2Polynomial.parse("x9+x4+1"), 2)

    def test_not_primitive(self):
        with self.assertRaises(NotPrimitive):
            lfsr_dbcsc(Gf2Polynomial.parse("x8+x4+1"), 1)

    def test_cycles(self):
        p = Gf2Polynomial.parse("x4+x3+x2+x+1")
        pairs = lfsr_cycles(p)
        self.assertEqual([A.k for A, _ in pairs], [5, 5, 5])
        for A, B in pairs:
            self.assertEqual(B, A.complement())
        windows = set()
        for A, _ in pairs:
            windows.update(sequence_windows(A, 4))
        self.assertEqual(len(windows), 15)

    def test_dbcsc_irreducible(self):
        """x^6+x^3+1 is irreducible with x of order 9, so the code takes all
        seven cycles of each recursion.
        """
        p = Gf2Polynomial.parse("x6+x3+1")
        self.assertTrue(p.is_irreducible())
        self.assertFalse(is_primitive(p))
        code = lfsr_dbcsc(p, 0)
        self.assertEqual((code.n, code.R), (7, 0))
        self.assertEqual(len(code), 16)
        self.assertEqual(sorted(s.k for s in code)[2:], [9] * 14)
        windows = set()
        for s in code:
            windows.update(sequence_windows(s, 7))
        self.assertEqual(len(windows), 128)
        self.assertTrue(check_dbcsc(code, 7, 0).verified)


class TestCyclicCodes(unittest.TestCase):
    """Tests for rotation classes of cyclic codes."""

    def test_hamming_profile(self):
        profile = cyclic_code_classes(Gf2Polynomial.parse("x4+x+1"), 15)
        self.assertEqual(profile.counts, {15: 134, 5: 6, 3: 2, 1: 2})
        self.assertEqual(profile.total, 2048)

    def test_trivial_generator(self):
        profile = cyclic_code_classes(Gf2Polynomial.parse("1"), 3)
        self.assertEqual(profile.counts, {3: 2, 1: 2})

    def test_repetition_code(self):
        profile = cyclic_code_classes(Gf2Polynomial.parse("x4+x3+x2+x+1"), 5)
        self.assertEqual(profile.counts, {1: 2})
        self.assertEqual(class_strings(profile), ["00000", "11111"])

    def test_generator_must_divide(self):
        with self.assertRaises(InvalidPolynomial):
            cyclic_code_classes(Gf2Polynomial.parse("x4+x+1"), 7)

    def test_class_strings(self):
        profile = cyclic_code_classes(Gf2Polynomial.parse("x4+x+1"), 15)
        strings = class_strings(profile)
        self.assertEqual(len(strings), 144)
        self.assertEqual(sum(len(s) for s in strings), 4064)
        self.assertEqual(strings[0], "0" * 15)
        codewords = set()
        for rep in profile.representatives:
            codewords.update(rep[i:] + rep[:i] for i in range(15))
        windows = set()
        for text in strings:
            windows.update(
                tuple(int(c) for c in text[i : i + 15])
                for i in range(len(text) - 14)
            )
        self.assertEqual(windows, codewords)

    def test_sequence_code(self):
        g = Gf2Polynomial.parse("x4+x+1")
        code = cyclic_code_dbcsc(g, 15)
        strings = class_strings(cyclic_code_classes(g, 15))
        self.assertEqual([linearize(s, 15) for s in code], strings)
        self.assertTrue(check_dbcsc(code, 15, 1).verified)


class TestSelfDual(unittest.TestCase):
    """Tests for the self-dual sequence code."""

    @classmethod
    def setUpClass(cls):
        cls.code = self_dual_dbcsc("00011011", "00011010")

    def test_members(self):
        self.assertEqual(len(self.code), 64)
        self.assertTrue(all(s.k == 64 for s in self.code))
        self.assertEqual(len(set(self.code)), 64)
        self.assertEqual(
            str(self.code.members[0])[:32], "00000000000110111111111111100100"
        )

    def test_complement_halves(self):
        """Each 16-bit half is followed by its complement, and every member
        repeats its leading word Z at position 32.
        """
        for s in self.code:
            bits = s.symbols
            self.assertEqual(bits[16:32], tuple(1 - b for b in bits[0:16]))
            self.assertEqual(bits[48:64], tuple(1 - b for b in bits[32:48]))
            self.assertEqual(bits[32:40], bits[0:8])
            self.assertEqual(bits[0], 0)
            self.assertEqual(sum(bits[0:8]) % 2, 0)

    def test_covers(self):
        self.assertEqual((self.code.n, self.code.R), (16, 1))
        self.assertEqual(sum(len(linearize(s, 16)) for s in self.code), 5056)
        self.assertTrue(check_dbcsc(self.code, 16, 1).verified)

    def test_bad_words(self):
        with self.assertRaises(InvalidParameter):
            self_dual_dbcsc("00011011", "0001101")
        with self.assertRaises(InvalidParameter):
            self_dual_dbcsc("00011011", "00011011")
        with self.assertRaises(InvalidParameter):
            self_dual_dbcsc("00011012", "00011010")


class TestInterleave(unittest.TestCase):
    """Tests for interleave."""

    def test_10_1(self):
        S = known_seed(5, 1)
        T = debruijn_padded(5, 1)
        word = interleave(S, T, 5, 5, 1, 0)
        self.assertEqual(word.k, 528)
        self.assertEqual(word.k, 2 * S.k * T.k)
        for i in range(S.k * T.k):
            self.assertEqual(word[2 * i], S[i])
            self.assertEqual(word[2 * i + 1], T[i])
        self.assertTrue(check_dbcs(word, 10, 1).verified)

    def test_12_2(self):
        word = interleave(known_seed(6, 1), known_seed(6, 1, "b"), 6, 6, 1, 1)
        self.assertEqual(word.k, 408)
        self.assertTrue(check_dbcs(word, 12, 2).verified)

    def test_longer_window_on_even_positions(self):
        S = CyclicSequence("011")
        T = CyclicSequence("01")
        word = interleave(T, S, 2, 3, 0, 0)
        for i in range(6):
            self.assertEqual(word[2 * i], S[i])
            self.assertEqual(word[2 * i + 1], T[i])

    def test_incompatible(self):
        with self.assertRaises(IncompatibleSequences):
            interleave(CyclicSequence("0011"), CyclicSequence("000111"), 2, 3, 0, 0)
        with self.assertRaises(IncompatibleSequences):
            interleave(known_seed(5, 1), known_seed(7, 1), 5, 7, 1, 1)


class TestDebruijn(unittest.TestCase):
    """Tests for de Bruijn sequences."""

    def test_windows(self):
        for n in range(1, 9):
            s = debruijn(n)
            self.assertEqual(s.k, 2**n)
            self.assertEqual(len(set(sequence_windows(s, n))), 2**n)
            self.assertEqual(s.symbols[:n], (0,) * n)

    def test_ternary(self):
        s = debruijn(3, q=3)
        self.assertEqual(s.k, 27)
        self.assertEqual(len(set(sequence_windows(s, 3))), 27)

    def test_padded(self):
        for n, pad, k in ((5, 1, 33), (5, 3, 35), (6, 1, 65), (4, 0, 16)):
            s = debruijn_padded(n, pad)
            self.assertEqual(s.k, k)
            self.assertTrue(check_dbcs(s, n, 0).verified)


class TestSeeds(unittest.TestCase):
    """Tests for the seed catalog and references."""

    def test_catalog_verifies(self):
        for (n, R, variant), s in seed_catalog().items():
            report = check_dbcs(s, n, R)
            self.assertTrue(report.verified, (n, R, variant))
            self.assertEqual(report.Rstar, R)

    def test_known_seed(self):
        self.assertEqual(str(known_seed(5, 1)), "10100011")
        self.assertEqual(str(known_seed(7, 1, "b")), "1111110101100000101001100")
        with self.assertRaises(UnknownSeed):
            known_seed(9, 1)
        with self.assertRaises(UnknownSeed):
            known_seed(5, 1, "z")

    def test_references(self):
        ref = resolve_reference("seed:6,1,b")
        self.assertEqual((ref.sequence.k, ref.n, ref.R), (17, 6, 1))
        ref = resolve_reference("debruijn:5+3")
        self.assertEqual((ref.sequence.k, ref.n, ref.R), (35, 5, 0))
        ref = resolve_reference("word:0110")
        self.assertEqual((str(ref.sequence), ref.n, ref.R), ("0110", None, None))
        for bad in ("foo", "seed:6", "debruijn:x"):
            with self.assertRaises(InvalidParameter, msg=bad):
                resolve_reference(bad)

    def test_file_reference(self):
        path = os.path.join(create_test_root(), "s.dbcs")
        write_sequence(path, known_seed(6, 1), 6, 1)
        ref = resolve_reference("file:" + path)
        self.assertEqual((ref.sequence, ref.n, ref.R), (known_seed(6, 1), 6, 1))


if __name__ == "__main__":
    unittest.main()
