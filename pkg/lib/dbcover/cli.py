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
Command line interface for dbcover: de Bruijn covering sequences and arrays.
"""

import argparse
import os
import sys
import traceback
from dataclasses import dataclass

from dbcover import __version__, config
from dbcover.arr2d import (
    exhaustive_search,
    fold,
    random_patch,
    shift_construct,
    tile_code,
    tile_fold,
)
from dbcover.assemble import dbcsc_to_dbcs, linearize, merge_to_dbcs
from dbcover.core import (
    format_array,
    format_sequence,
    list_files,
    read_array,
    read_sequence,
    write_array,
    write_sequence,
)
from dbcover.exceptions import DbcoverError, InvalidParameter, VerificationFailed
from dbcover.logger import log, setup_stream_handler
from dbcover.seq1d import (
    Gf2Polynomial,
    SequenceCode,
    cyclic_code_dbcsc,
    debruijn_padded,
    interleave,
    known_seed,
    lfsr_dbcsc,
    resolve_reference,
    self_dual_dbcsc,
)
from dbcover.tables import format_tsv, run_table1, run_table2
from dbcover.verify import check_dbca, check_dbcs, check_dbcsc

# file extensions of written sequences and arrays
SEQUENCE_EXT = ".dbcs"
ARRAY_EXT = ".dbca"


@dataclass
class CommandResult:
    """Exit status (0 ok, 1 verification failed, 2 usage error), the text
    printed to standard output and the written file, if any.
    """

    status: int
    report: str = ""
    path: str = None


def _reference(text: str):
    """Resolves a sequence reference; bare paths are read as files."""
    if ":" not in text.split(os.sep)[0] and os.path.exists(text):
        text = "file:" + text
    return resolve_reference(text)


def _require(value, name: str):
    if value is None:
        raise InvalidParameter(f"--{name} is required here")
    return value


def _verified(report, what: str):
    log.coverage(report, what)
    if not report.verified:
        raise VerificationFailed(f"{what} does not verify", report)
    return report


def _emit_sequence(args, s, n: int, R: int, report):
    if args.out:
        write_sequence(args.out, s, n, R)
        return CommandResult(0, f"{report.summary()} k={s.k}\nwrote {args.out}", args.out)
    log.info("%s k=%d", report.summary(), s.k)
    return CommandResult(0, format_sequence(s, n, R).rstrip("\n"))


def _emit_array(args, a, m: int, n: int, R: int, report):
    if args.out:
        write_array(args.out, a, m, n, R)
        return CommandResult(
            0, f"{report.summary()} M={a.rows} N={a.cols}\nwrote {args.out}", args.out
        )
    log.info("%s M=%d N=%d", report.summary(), a.rows, a.cols)
    return CommandResult(0, format_array(a, m, n, R).rstrip("\n"))


def _emit_code(args, code, report):
    lines = [f"{report.summary()} members={len(code)} total={code.total_length()}"]
    if args.code_dir:
        os.makedirs(args.code_dir, exist_ok=True)
        for i, member in enumerate(code.members):
            path = os.path.join(args.code_dir, f"member_{i:03d}{SEQUENCE_EXT}")
            write_sequence(path, member, code.n, code.R)
        lines.append(f"wrote {len(code)} members to {args.code_dir}")
    if args.out:
        s = dbcsc_to_dbcs(code)
        write_sequence(args.out, s, code.n, code.R)
        lines.append(f"assembled k={s.k}\nwrote {args.out}")
    return CommandResult(0, "\n".join(lines), args.out)


def cmd_verify(args):
    """verify seq|array --file F [--n N] [--m M] [--r R]"""
    if args.kind == "seq":
        s, spec = read_sequence(args.file)
        n = spec.n if args.n is None else args.n
        R = spec.R if args.r is None else args.r
        report = check_dbcs(s, n, R)
    else:
        a, spec = read_array(args.file)
        m = spec.m if args.m is None else args.m
        n = spec.n if args.n is None else args.n
        R = spec.R if args.r is None else args.r
        report = check_dbca(a, m, n, R)
    log.coverage(report, args.file)
    text = report.format() + "\n" + report.summary()
    return CommandResult(0 if report.verified else 1, text)


def cmd_construct(args):
    """construct seed|debruijn|lfsr|cyclic-code|selfdual|interleave|assemble"""
    what = args.construct
    if what == "seed":
        s = known_seed(args.n, args.r, args.variant)
        return _emit_sequence(args, s, args.n, args.r, _verified(check_dbcs(s, args.n, args.r), "seed"))
    if what == "debruijn":
        s = debruijn_padded(args.n, args.pad)
        return _emit_sequence(args, s, args.n, 0, _verified(check_dbcs(s, args.n, 0), "de Bruijn sequence"))
    if what == "lfsr":
        code = lfsr_dbcsc(Gf2Polynomial.parse(args.poly), args.r)
        return _emit_code(args, code, _verified(check_dbcsc(code, code.n, code.R), "LFSR code"))
    if what == "cyclic-code":
        code = cyclic_code_dbcsc(Gf2Polynomial.parse(args.gen), args.n, args.r)
        return _emit_code(args, code, _verified(check_dbcsc(code, code.n, code.R), "cyclic code"))
    if what == "selfdual":
        code = self_dual_dbcsc(args.x, args.y, args.r)
        return _emit_code(args, code, _verified(check_dbcsc(code, code.n, code.R), "self-dual code"))
    if what == "interleave":
        a, b = _reference(args.a), _reference(args.b)
        na = _require(a.n if args.na is None else args.na, "na")
        ra = _require(a.R if args.ra is None else args.ra, "ra")
        nb = _require(b.n if args.nb is None else args.nb, "nb")
        rb = _require(b.R if args.rb is None else args.rb, "rb")
        s = interleave(a.sequence, b.sequence, na, nb, ra, rb)
        n, R = na + nb, ra + rb
        return _emit_sequence(args, s, n, R, _verified(check_dbcs(s, n, R), "interleaved sequence"))
    return cmd_assemble(args)


def _read_code(directory: str, n: int, R: int):
    paths = list_files(directory, SEQUENCE_EXT)
    if not paths:
        raise InvalidParameter(f"no {SEQUENCE_EXT} files in {directory}")
    return SequenceCode([read_sequence(p)[0] for p in paths], n, R)



def cmd_assemble(args):
    """assemble --in DIR --n N --r R"""
    code = _read_code(args.input, args.n, args.r)
    strings = [linearize(s, args.n) for s in code.members]
    s, trace = merge_to_dbcs(strings, args.n, args.r, code.q)
    report = check_dbcs(s, args.n, args.r)
    log.info("merged %d strings: %d -> %d", len(strings), trace.input_total, s.k)
    return _emit_sequence(args, s, args.n, args.r, report)


def _source(args):
    ref = _reference(args.seq)
    return ref.sequence, ref.n, ref.R


def cmd_fold(args):
    s, window, R = _source(args)
    R = _require(R if args.r is None else args.r, "r")
    a = fold(s, args.m, args.n, R, window=window)
    return _emit_array(args, a, args.m, args.n, R, check_dbca(a, args.m, args.n, R))


def cmd_tile(args):
    if args.code:
        R = _require(args.r, "r")
        code = _read_code(args.code, args.m * args.n, R)
        a = tile_code(code, args.m, args.n, R, args.across)
        return _emit_array(args, a, args.m, args.n, R, check_dbca(a, args.m, args.n, R))
    s, window, R = _source(args)
    R = _require(R if args.r is None else args.r, "r")
    if window is not None and window != args.m * args.n:
        raise InvalidParameter(f"sequence window {window} does not match {args.m}x{args.n}")
    a = tile_fold(s, args.m, args.n, R, args.across, args.down)
    return _emit_array(args, a, args.m, args.n, R, check_dbca(a, args.m, args.n, R))


def cmd_shift2(args):
    s, n, R = _source(args)
    n = _require(n if args.n is None else args.n, "n")
    R = _require(R if args.r is None else args.r, "r")
    a = shift_construct(s, n, R)
    return _emit_array(args, a, 2, n, 2 * R, check_dbca(a, 2, n, 2 * R))


def cmd_patch_random(args):
    result = random_patch(args.m, args.n, args.r, args.q, args.rows, args.seed)
    report = check_dbca(result.array, args.m, args.n, args.r)
    out = _emit_array(args, result.array, args.m, args.n, args.r, report)
    stats = f"N0={result.n0} L={result.uncovered} rounds={result.rounds} area={result.area}"
    return CommandResult(out.status, out.report + "\n" + stats, out.path)


def cmd_search2d(args):
    randomized = args.q ** (args.rows * args.cols) > config.SEARCH_LIMIT
    if randomized and args.seed is None:
        raise InvalidParameter(
            f"{args.rows}x{args.cols} is past the exhaustive limit; --seed is required"
        )
    result = exhaustive_search(
        args.m, args.n, args.r, args.q, args.rows, args.cols,
        trials=args.trials, seed=args.seed or 0,
    )
    line = f"status={result.status} tried={result.tried}"
    if not result.found:
        return CommandResult(0, line)
    report = check_dbca(result.array, args.m, args.n, args.r)
    out = _emit_array(args, result.array, args.m, args.n, args.r, report)
    return CommandResult(out.status, out.report + "\n" + line, out.path)


def cmd_table(args):
    """table1 | table2: prints TSV rows of achieved against quoted values."""
    runner = run_table1 if args.command == "table1" else run_table2
    rows = runner(args.tables, args.row)
    return CommandResult(0, format_tsv(rows).rstrip("\n"))


def _add_output(parser):
    parser.add_argument("--out", metavar="FILE", help="write the result to FILE")


def parse_args(argv=None):
    """Command line argument parser.

    :param argv: argument list (default sys.argv[1:]).
    :returns: argparse namespace.
    """
    parser = argparse.ArgumentParser(
        prog="dbcover",
        description=__doc__,
        formatter_class=argparse.RawTextHelpFormatter,
    )
    parser.add_argument(
        "-v", "--version", action="version", version=f"dbcover {__version__}"
    )
    parser.add_argument(
        "--budget",
        type=config.parse_int,
        metavar="STATES",
        help="largest q^L tuple space to verify (default %d)" % config.BUDGET,
    )
    parser.add_argument(
        "--threads",
        type=int,
        metavar="N",
        help="worker cap for verification and search (default %d)" % config.THREADS,
    )
    parser.add_argument(
        "--debug", action="store_true", help="print tracebacks and debug logging"
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("verify", help="verify a sequence or array file")
    p.add_argument("kind", choices=["seq", "array"])
    p.add_argument("--file", required=True, metavar="FILE")
    p.add_argument("--m", type=int, help="window rows (arrays)")
    p.add_argument("--n", type=int, help="window length / cols")
    p.add_argument("--r", type=int, help="claimed covering radius")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="construct a sequence or sequence code")
    csub = p.add_subparsers(dest="construct", metavar="KIND")
    csub.required = True

    c = csub.add_parser("seed", help="a catalog seed sequence")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--variant", help="catalog variant (e.g. b)")
    _add_output(c)

    c = csub.add_parser("debruijn", help="a de Bruijn sequence with padded zero run")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--pad", type=int, default=0)
    _add_output(c)

    c = csub.add_parser("lfsr", help="the LFSR code of an irreducible polynomial")
    c.add_argument("--poly", required=True, help="e.g. x9+x4+1 or 0x211")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--code-dir", metavar="DIR", help="write members to DIR")
    _add_output(c)

    c = csub.add_parser("cyclic-code", help="rotation classes of a cyclic code")
    c.add_argument("--gen", required=True, help="generator, e.g. 10011 or x4+x+1")
    c.add_argument("--n", type=int, required=True, help="code length")
    c.add_argument("--r", type=int, default=1)
    c.add_argument("--code-dir", metavar="DIR", help="write members to DIR")
    _add_output(c)

    c = csub.add_parser("selfdual", help="the self-dual sequence code")
    c.add_argument("--x", default="00011011")
    c.add_argument("--y", default="00011010")
    c.add_argument("--r", type=int, default=1)
    c.add_argument("--code-dir", metavar="DIR", help="write members to DIR")
    _add_output(c)

    c = csub.add_parser("interleave", help="interleave two sequences")
    c.add_argument("--a", required=True, metavar="REF")
    c.add_argument("--b", required=True, metavar="REF")
    for name in ("na", "ra", "nb", "rb"):
        c.add_argument(f"--{name}", type=int)
    _add_output(c)

    for parent, name in ((csub, "assemble"), (sub, "assemble")):
        c = parent.add_parser(name, help="merge sequence files into one sequence")
        c.add_argument("--in", dest="input", required=True, metavar="DIR")
        c.add_argument("--n", type=int, required=True)
        c.add_argument("--r", type=int, required=True)
        _add_output(c)
        c.set_defaults(construct="assemble")
    p.set_defaults(func=cmd_construct)
    sub.choices["assemble"].set_defaults(func=cmd_assemble)

    p = sub.add_parser("fold", help="fold an (mn,R)-dBCS into an (m,n,R)-dBCA")
    p.add_argument("--seq", required=True, metavar="REF")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    _add_output(p)
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("tile", help="fold t*r segments and tile the blocks")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--seq", metavar="REF")
    source.add_argument(
        "--code", metavar="DIR", help="fold each member file in DIR into its own block"
    )
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--across", type=int, default=1, metavar="T", help="blocks per row (t)")
    p.add_argument("--down", type=int, default=1, metavar="R", help="blocks per column (r)")
    _add_output(p)
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("shift2", help="stack shifts of an (n,R)-dBCS")
    p.add_argument("--seq", required=True, metavar="REF")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    _add_output(p)
    p.set_defaults(func=cmd_shift2)

    p = sub.add_parser("patch-random", help="random array completed by patch strips")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--rows", type=int, required=True, metavar="M")
    p.add_argument("--seed", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=cmd_patch_random)

    p = sub.add_parser("search2d", help="search for a small array")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--rows", type=int, required=True, metavar="M")
    p.add_argument("--cols", type=int, required=True, metavar="N")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, help="required when the search is randomized")
    _add_output(p)
    p.set_defaults(func=cmd_search2d)

    for name in ("table1", "table2"):
        p = sub.add_parser(name, help=f"rerun {name} entries as TSV")
        p.add_argument("--row", action="append", metavar="LABEL", help="only these rows")
        p.add_argument("--tables", metavar="FILE", help="recipe file")
        p.set_defaults(func=cmd_table)

    return parser.parse_args(argv)


def main(argv=None):
    """Main thread. Returns the exit status."""
    try:
        args = parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else 2

    setup_stream_handler()
    if args.debug or config.DEBUG:
        log.setLevel("DEBUG")
    if args.budget is not None:
        config.BUDGET = args.budget
    if args.threads is not None:
        config.THREADS = max(1, args.threads)

    try:
        result = args.func(args)
        if result.report:
            print(result.report)
        return result.status

    except VerificationFailed as err:
        if err.report is not None:
            print(err.report.format())
            print(err.report.summary())
        print(f"error: {err}", file=sys.stderr)
        return 1

    except (DbcoverError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    except KeyboardInterrupt:
        print("Stopping...", file=sys.stderr)
        return 2

    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
