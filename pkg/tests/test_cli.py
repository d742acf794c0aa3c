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
Contains unit tests for the command line interface.
"""

import contextlib
import io
import os
import subprocess
import sys
import unittest

from helpers import LIB_ROOT, create_test_root

from dbcover import cli
from dbcover.core import read_array, read_sequence
from dbcover.tables import TSV_COLUMNS


def run(*argv):
    """Runs the cli in-process, returns (status, stdout)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        status = cli.main(list(argv))
    return status, out.getvalue()


class TestVerify(unittest.TestCase):
    """Tests for the verify command."""

    def setUp(self):
        self.root = create_test_root()
        self.path = os.path.join(self.root, "s51.dbcs")
        status, _ = run("construct", "seed", "--n", "5", "--r", "1", "--out", self.path)
        self.assertEqual(status, 0)

    def test_verified(self):
        status, out = run("verify", "seq", "--file", self.path)
        self.assertEqual(status, 0)
        self.assertIn("verified=true Rstar=1 uncovered=0", out)

    def test_radius_override(self):
        status, out = run("verify", "seq", "--file", self.path, "--r", "0")
        self.assertEqual(status, 1)
        self.assertIn("verified=false Rstar=1", out)

    def test_missing_file(self):
        status, _ = run("verify", "seq", "--file", os.path.join(self.root, "nope"))
        self.assertEqual(status, 2)

    def test_bad_header(self):
        path = os.path.join(self.root, "bad.dbcs")
        with open(path, "w") as f:
            f.write("dbcs q=2 n=5 k=8\n10100011\n")
        status, _ = run("verify", "seq", "--file", path)
        self.assertEqual(status, 2)

    def test_usage(self):
        self.assertEqual(run()[0], 2)
        self.assertEqual(run("verify", "tree", "--file", self.path)[0], 2)
        self.assertEqual(run("--version")[0], 0)


class TestConstruct(unittest.TestCase):
    """Tests for the construct and assemble commands."""

    def setUp(self):
        self.root = create_test_root()

    def test_interleave(self):
        path = os.path.join(self.root, "s101.dbcs")
        status, out = run(
            "construct", "interleave", "--a", "seed:5,1", "--b", "debruijn:5+1",
            "--out", path,
        )
        self.assertEqual(status, 0)
        self.assertIn("k=528", out)
        s, spec = read_sequence(path)
        self.assertEqual(s.k, 528)
        self.assertEqual((spec.n, spec.R), (10, 1))
        self.assertEqual(run("verify", "seq", "--file", path)[0], 0)

    def test_interleave_word_needs_window(self):
        status, _ = run("construct", "interleave", "--a", "word:01", "--b", "debruijn:4+1")
        self.assertEqual(status, 2)
        status, out = run(
            "construct", "interleave", "--a", "word:01", "--na", "5", "--ra", "2",
            "--b", "debruijn:4+1",
        )
        self.assertEqual(status, 0)
        self.assertTrue(out.startswith("dbcs q=2 n=9 R=2 k="))

    def test_lfsr_condition(self):
        status, _ = run("construct", "lfsr", "--poly", "x9+x4+1", "--r", "2")
        self.assertEqual(status, 2)

    def test_lfsr(self):
        path = os.path.join(self.root, "s121.dbcs")
        status, out = run("construct", "lfsr", "--poly", "x9+x4+1", "--r", "1", "--out", path)
        self.assertEqual(status, 0)
        self.assertIn("members=4", out)
        self.assertEqual(read_sequence(path)[1].n, 12)

    def test_lfsr_irreducible(self):
        status, out = run("construct", "lfsr", "--poly", "x6+x3+1", "--r", "0")
        self.assertEqual(status, 0)
        self.assertIn("members=16", out)

    def test_cyclic_code_then_assemble(self):
        code_dir = os.path.join(self.root, "hamming")
        status, out = run(
            "construct", "cyclic-code", "--gen", "10011", "--n", "15",
            "--code-dir", code_dir,
        )
        self.assertEqual(status, 0)
        self.assertEqual(len(os.listdir(code_dir)), 144)
        path = os.path.join(self.root, "s151.dbcs")
        status, _ = run("assemble", "--in", code_dir, "--n", "15", "--r", "1", "--out", path)
        self.assertEqual(status, 0)
        s, _ = read_sequence(path)
        self.assertLessEqual(s.k, 4064)

    def test_assemble_empty_dir(self):
        status, _ = run("assemble", "--in", self.root, "--n", "5", "--r", "1")
        self.assertEqual(status, 2)

    def test_unknown_seed(self):
        self.assertEqual(run("construct", "seed", "--n", "9", "--r", "1")[0], 2)


class TestArrays(unittest.TestCase):
    """Tests for the array commands."""

    def setUp(self):
        self.root = create_test_root()

    def test_shift2(self):
        path = os.path.join(self.root, "a262.dbca")
        status, _ = run("shift2", "--seq", "seed:6,1", "--out", path)
        self.assertEqual(status, 0)
        a, spec = read_array(path)
        self.assertEqual((a.rows, a.cols), (13, 12))
        self.assertEqual((spec.m, spec.n, spec.R), (2, 6, 2))
        status, out = run("verify", "array", "--file", path)
        self.assertEqual(status, 0)
        self.assertIn("verified=true", out)

    def test_fold_file(self):
        seq = os.path.join(self.root, "s101.dbcs")
        run("construct", "interleave", "--a", "seed:5,1", "--b", "debruijn:5+1", "--out", seq)
        status, out = run("fold", "--seq", seq, "--m", "2", "--n", "5")
        self.assertEqual(status, 0)
        self.assertTrue(out.startswith("dbca q=2 m=2 n=5 R=1 M=107 N=9"))

    def test_tile_code_dir(self):
        code_dir = os.path.join(self.root, "lfsr121")
        status, _ = run(
            "construct", "lfsr", "--poly", "x9+x4+1", "--r", "1", "--code-dir", code_dir
        )
        self.assertEqual(status, 0)
        status, out = run(
            "tile", "--code", code_dir, "--m", "3", "--n", "4", "--r", "1", "--across", "2"
        )
        self.assertEqual(status, 0)
        self.assertTrue(out.startswith("dbca q=2 m=3 n=4 R=1 M=133 N=14"))

    def test_tile_needs_source(self):
        status, _ = run("tile", "--m", "3", "--n", "4", "--r", "1")
        self.assertEqual(status, 2)

    def test_fold_mismatch(self):
        status, _ = run("fold", "--seq", "seed:6,1", "--m", "2", "--n", "2")
        self.assertEqual(status, 2)

    def test_patch_random(self):
        status, out = run(
            "patch-random", "--m", "2", "--n", "2", "--r", "1", "--rows", "4", "--seed", "3"
        )
        self.assertEqual(status, 0)
        self.assertTrue(out.startswith("dbca q=2 m=2 n=2 R=1 M=4 "))
        self.assertIn("rounds=", out)

    def test_search2d(self):
        status, out = run(
            "search2d", "--m", "2", "--n", "2", "--r", "1", "--rows", "2", "--cols", "2"
        )
        self.assertEqual(status, 0)
        self.assertIn("status=none tried=16", out)
        status, out = run(
            "search2d", "--m", "2", "--n", "2", "--r", "1", "--rows", "2", "--cols", "3"
        )
        self.assertEqual(status, 0)
        self.assertIn("status=found", out)

    def test_search2d_random_needs_seed(self):
        argv = ["search2d", "--m", "2", "--n", "2", "--r", "2", "--rows", "5", "--cols", "5"]
        status, _ = run(*argv)
        self.assertEqual(status, 2)
        status, out = run(*argv, "--seed", "4", "--trials", "3")
        self.assertEqual(status, 0)
        self.assertIn("tried=", out)


class TestTables(unittest.TestCase):
    """Tests for the table commands."""

    def test_table2_row(self):
        status, out = run("table2", "--row", "(2,7,2) 23x22")
        self.assertEqual(status, 0)
        lines = out.strip().splitlines()
        self.assertEqual(tuple(lines[0].split("\t")), TSV_COLUMNS)
        self.assertEqual(lines[0].split("\t")[1], "paper_value")
        self.assertEqual(lines[1].split("\t")[:4], ["(2,7,2) 23x22", "23x22", "23x22", "true"])


class TestScript(unittest.TestCase):
    """Runs the module as a script."""

    def test_version(self):
        env = dict(os.environ)
        env["PYTHONPATH"] = os.pathsep.join(
            p for p in (LIB_ROOT, env.get("PYTHONPATH")) if p
        )
        output = subprocess.check_output(
            [sys.executable, "-m", "dbcover.cli", "--version"], env=env
        )
        self.assertIn(b"dbcover", output)


if __name__ == "__main__":
    unittest.main()
