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

import logging

from dbcover.config import LOG_LEVEL

# the debug format adds the thread name
FORMAT = "%(asctime)s:%(name)s:%(levelname)s - %(message)s"
DEBUG_FORMAT = "%(asctime)s:%(name)s:%(threadName)s:%(levelname)s - %(message)s"


class Logger(logging.Logger):
    """Custom logger class with coverage report logging."""

    def setLevel(self, level):
        if isinstance(level, str):
            level = getattr(logging, level.upper(), logging.NOTSET)
        super().setLevel(level)
        for h in self.handlers:
            if isinstance(h, logging.StreamHandler) and h.name == self.name:
                h.setFormatter(_formatter(self.level))

    def coverage(self, report, what: str):
        """Logs a coverage report: INFO when it verifies, otherwise WARNING
        with the first uncovered witness. Returns the report.
        """
        if report.verified:
            self.info("%s %s: %s", what, report.label(), report.summary())
        else:
            witness = "-"
            if report.witnesses:
                witness = "".join(str(s) for s in report.witnesses[0])
            self.warning(
                "%s %s: %s witness=%s", what, report.label(), report.summary(), witness
            )
        return report


def _formatter(level: int):
    return logging.Formatter(DEBUG_FORMAT if level == logging.DEBUG else FORMAT)


log = Logger("dbcover")
log.setLevel(LOG_LEVEL)
log.addHandler(logging.NullHandler())


def setup_stream_handler():
    """Adds a new stderr stream handler, replacing an earlier one."""
    for h in list(log.handlers):
        if h.name == log.name and isinstance(h, logging.StreamHandler):
            log.removeHandler(h)
    stream_handler = logging.StreamHandler()
    stream_handler.set_name(log.name)
    stream_handler.setFormatter(_formatter(log.level))
    log.addHandler(stream_handler)
