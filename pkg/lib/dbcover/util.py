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
Contains common utility functions and classes.
"""

import os
import time
from collections import OrderedDict

from dbcover.exceptions import InvalidHeader

# stores cached yaml file data in memory
load_file_cache = {}


def ceil_div(a: int, b: int):
    """Returns ceil(a / b) for integers, exact for arbitrarily large values."""
    return -(-a // b)


def dedupe_list(lst: list):
    """
    Deduplicates a list while preserving the original order. Useful for
    deduplicating linear strings before merging.

    :param lst: The list to deduplicate.
    :return: The deduplicated list.
    """
    return list(OrderedDict.fromkeys(lst))


def clear_file_cache():
    """Clears global file cache."""
    global load_file_cache
    load_file_cache = {}


def error_context(file_path: str, e: Exception):
    """
    Returns the problematic line and a few surrounding lines for context.

    :param file_path: Path to the file.
    :param e: The exception.
    :returns: context lines as a string (may be empty).
    """
    lines_out = []
    try:
        with open(file_path, "r") as file:
            lines = file.readlines()
        if hasattr(e, "problem_mark") and e.problem_mark:
            line_num = e.problem_mark.line
            start = max(0, line_num - 1)
            end = min(len(lines), line_num + 2)
            for i in range(start, end):
                prefix = ">> " if i == line_num else "   "
                lines_out.append(f"{prefix}{i + 1}: {lines[i].rstrip()}")
    except OSError as ex:
        lines_out.append(f"read error: {ex}")
    return "\n".join(lines_out)


def validate_yaml(file_path: str, required_keys: set):
    """
    Loads a YAML file and checks that its top level holds the required keys.

    :param file_path: Path to the YAML file to validate.
    :param required_keys: top level keys that must be present.
    :raises InvalidHeader: if the file is not valid YAML or keys are missing.
    :returns: loaded data as a dict.
    """
    import yaml

    try:
        with open(file_path, "r") as stream:
            data = yaml.safe_load(stream.read())
    except yaml.YAMLError as e:
        context = error_context(file_path, e)
        problem = getattr(e, "problem", None) or str(e)
        raise InvalidHeader(f'{file_path}: {problem}\n{context}'.rstrip())

    if not isinstance(data, dict):
        raise InvalidHeader(f"{file_path}: invalid data structure")

    missing_keys = set(required_keys) - data.keys()
    if missing_keys:
        raise InvalidHeader(
            f"{file_path}: missing keys: {', '.join(sorted(missing_keys))}"
        )

    return data


def load_file(path: str, required_keys: set = ()):
    """Reads a given yaml data file and returns data as dict, caching by path.

    :param path: path to yaml file.
    :param required_keys: top level keys that must be present.
    :returns: loaded yaml data as dict.
    """
    global load_file_cache

    path = os.path.abspath(path)
    if path in load_file_cache:
        return load_file_cache[path]

    data = validate_yaml(path, required_keys)
    load_file_cache[path] = data

    return data


class Stopwatch(object):
    """Context manager measuring wall-clock seconds. ::

    >>> with Stopwatch() as watch:
    ...     work()
    >>> watch.seconds
    0.0123
    """

    def __init__(self):
        self.start = None
        self.seconds = 0.0

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start
        return False
