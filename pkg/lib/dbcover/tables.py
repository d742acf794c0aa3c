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
Contains the reproduction harness for the sequence-length table and the
array-size table. Row recipes live in data/tables.yaml.
"""

from dataclasses import dataclass

from dbcover import config
from dbcover.arr2d import exhaustive_search, fold, shift_construct
from dbcover.assemble import dbcsc_to_dbcs, merge_to_dbcs
from dbcover.exceptions import DbcoverError, InvalidParameter
from dbcover.logger import log
from dbcover.seq1d import (
    Gf2Polynomial,
    class_strings,
    cyclic_code_classes,
    interleave,
    resolve_reference,
    self_dual_dbcsc,
)
from dbcover.util import Stopwatch, load_file
from dbcover.verify import check_dbcs

TSV_COLUMNS = ("params", "paper_value", "achieved_value", "verified", "seconds")


@dataclass
class TableRow:
    params: str
    quoted: str
    achieved: str
    verified: bool = None
    seconds: float = 0.0

    def tsv(self):
        verified = "n/a" if self.verified is None else str(self.verified).lower()
        return "\t".join(
            [self.params, self.quoted, self.achieved, verified, f"{self.seconds:.3f}"]
        )


def format_tsv(rows):
    """Returns the rows as TSV text with a header line."""
    lines = ["\t".join(TSV_COLUMNS)]
    lines.extend(row.tsv() for row in rows)
    return "\n".join(lines) + "\n"


def interleave_entry(entry: dict):
    """Builds the interleaved sequence of a recipe with keys a, b (and the
    optional na/ra, nb/rb for references that carry no window).

    :returns: (sequence, n, R, pairings).
    """
    a = resolve_reference(entry["a"])
    b = resolve_reference(entry["b"])
    na, ra = entry.get("na", a.n), entry.get("ra", a.R)
    nb, rb = entry.get("nb", b.n), entry.get("rb", b.R)
    if None in (na, ra, nb, rb):
        raise InvalidParameter(f"window and radius needed for {entry['a']}, {entry['b']}")
    s = interleave(a.sequence, b.sequence, na, nb, ra, rb)
    return s, na + nb, ra + rb, a.sequence.k * b.sequence.k


def _table1_params(entry: dict):
    params = f"n={entry['n']} R={entry['R']}"
    if entry.get("column"):
        params += f" {entry['column']}"
    return params


def _run_interleave(entry: dict):
    s, n, R, pairs = interleave_entry(entry)
    if (n, R) != (entry["n"], entry["R"]):
        raise InvalidParameter(f"recipe yields ({n},{R}), row claims ({entry['n']},{entry['R']})")
    report = check_dbcs(s, n, R)
    if s.k != int(entry["quoted"]):
        log.warning(
            "n=%d R=%d: word length %d, %d window pairings, quoted %s",
            n, R, s.k, pairs, entry["quoted"],
        )
    return f"{s.k} (pairs={pairs})", report.verified


def _run_cyclic(entry: dict):
    g = Gf2Polynomial.parse(entry["gen"])
    length = int(entry["length"])
    strings = class_strings(cyclic_code_classes(g, length))
    s, trace = merge_to_dbcs(strings, entry["n"], entry["R"])
    return f"{s.k} (concat={trace.input_total})", True


def _run_selfdual(entry: dict):
    code = self_dual_dbcsc(str(entry["x"]), str(entry["y"]), entry["R"])
    s = dbcsc_to_dbcs(code, entry["n"], entry["R"])
    concat = sum(m.k + entry["n"] - 1 for m in code.members)
    return f"{s.k} (concat={concat})", True


def _run_fold(entry: dict):
    s, n, R, _ = interleave_entry(entry)
    m, cols = entry["m"], entry["n"]
    a = fold(s, m, cols, entry["R"], window=n)
    return f"{a.rows}x{a.cols}", True


def _run_shift(entry: dict):
    ref = resolve_reference(entry["seed"])
    a = shift_construct(ref.sequence, entry["n"], ref.R)
    if 2 * ref.R != entry["R"]:
        raise InvalidParameter(f"seed radius {ref.R} does not give R={entry['R']}")
    return f"{a.rows}x{a.cols}", True


def _run_search(entry: dict):
    result = exhaustive_search(
        entry["m"], entry["n"], entry["R"], 2, entry["M"], entry["N"],
        seed=entry.get("seed", 0),
    )
    if result.found:
        return f"{entry['M']}x{entry['N']}", True
    return result.status, False if result.status == "none" else None


RECIPES = {
    "interleave": _run_interleave,
    "cyclic": _run_cyclic,
    "selfdual": _run_selfdual,
    "fold": _run_fold,
    "shift": _run_shift,
    "search": _run_search,
}


def run_row(entry: dict, params: str):
    """Evaluates one recipe. Failures become rows, never exceptions."""
    quoted = str(entry["quoted"])
    recipe = entry.get("recipe")
    if recipe == "unreproduced":
        log.warning("%s: unreproduced (%s)", params, entry.get("reason", ""))
        return TableRow(params, quoted, f"unreproduced ({entry.get('reason', '')})")
    func = RECIPES.get(recipe)
    with Stopwatch() as watch:
        try:
            if func is None:
                raise InvalidParameter(f"unknown recipe {recipe!r}")
            achieved, verified = func(entry)
        except DbcoverError as err:
            log.warning("%s: %s", params, err)
            achieved, verified = f"error ({err})", False
    if verified and achieved.split(" ")[0] != quoted:
        log.warning("%s: achieved %s, quoted %s", params, achieved, quoted)
    return TableRow(params, quoted, achieved, verified, watch.seconds)


def load_tables(path: str = None):
    return load_file(path or config.TABLES_FILE, {"table1", "table2"})


def run_table1(path: str = None, rows: list = None):
    """Reruns the sequence-length table.

    :param path: recipe file (default data/tables.yaml).
    :param rows: optional list of params labels to run (e.g. "n=12 R=2").
    :returns: list of TableRow.
    """
    out = []
    for entry in load_tables(path)["table1"]:
        params = _table1_params(entry)
        if rows and params not in rows:
            continue
        out.append(run_row(entry, params))
    return out


def run_table2(path: str = None, rows: list = None):
    """Reruns the array-size table.

    :param rows: optional list of params labels (e.g. "(2,7,2) 23x22").
    :returns: list of TableRow.
    """
    out = []
    for entry in load_tables(path)["table2"]:
        params = f"({entry['m']},{entry['n']},{entry['R']}) {entry['quoted']}"
        if rows and params not in rows:
            continue
        out.append(run_row(entry, params))
    return out
