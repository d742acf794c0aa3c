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
Contains custom exceptions.
"""


class DbcoverError(Exception):
    """Base class for all dbcover errors."""

    pass


class InvalidParameter(DbcoverError):
    """Exception for parameters outside their documented range."""

    pass


class InvalidSymbol(DbcoverError):
    """Exception for symbols outside the alphabet 0..q-1."""

    pass


class InvalidHeader(DbcoverError):
    """Exception for malformed sequence, array or yaml data files."""

    pass


class BudgetExceeded(DbcoverError):
    """Exception for tuple spaces larger than the verification budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"tuple space of {required} states exceeds budget {budget} "
            f"(set DBC_BUDGET >= {required})"
        )


class InvalidPolynomial(DbcoverError):
    """Exception for polynomials unfit for the requested construction."""

    pass


class NotPrimitive(InvalidPolynomial):
    """Exception for polynomials that are required to be primitive."""

    pass


class CoefficientCondition(InvalidPolynomial):
    """Exception for polynomials without the required zero coefficients."""

    pass


class IncompatibleSequences(DbcoverError):
    """Exception for sequence pairs that cannot be interleaved."""

    pass


class UnknownSeed(DbcoverError):
    """Exception for missing seed catalog entries."""

    pass


class ConstructionError(DbcoverError):
    """Exception for broken construction invariants."""

    pass


class VerificationFailed(DbcoverError):
    """Exception for constructions that fail post hoc verification."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)
