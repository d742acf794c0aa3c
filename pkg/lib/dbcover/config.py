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
Contains default configs and settings.
"""

import os


def parse_int(value: str):
    """Parses integers written as '268435456', '2**28' or '0x10000000'."""
    value = str(value).strip()
    if "**" in value:
        base, exp = value.split("**", 1)
        return int(base, 0) ** int(exp, 0)
    return int(value, 0)


def env_int(name: str, default: int):
    """Returns an integer setting from the environment.

    :param name: environment variable name.
    :param default: value used when the variable is unset or empty.
    :returns: integer value.
    """
    value = os.getenv(name)
    if not value:
        return default
    return parse_int(value)


DEBUG = os.getenv("DEBUG")
LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO")

# largest q^L tuple space a coverage table may hold (one byte per tuple)
BUDGET = env_int("DBC_BUDGET", 2**28)

# worker cap for verification and searches
THREADS = max(1, env_int("DBC_THREADS", 1))

# number of uncovered witnesses kept in a coverage report
WITNESS_LIMIT = env_int("DBC_WITNESSES", 10)

# largest q^(M*N) candidate space swept exhaustively by search2d
SEARCH_LIMIT = env_int("DBC_SEARCH_LIMIT", 2**24)

# trial budget of the randomized search
SEARCH_TRIALS = env_int("DBC_SEARCH_TRIALS", 500)

# bundled yaml data files
DATA_ROOT = os.path.join(os.path.dirname(__file__), "data")
CATALOG_FILE = os.path.join(DATA_ROOT, "catalog.yaml")
TABLES_FILE = os.path.join(DATA_ROOT, "tables.yaml")
