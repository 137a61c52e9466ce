# -*- coding: utf-8 -*-
#
# Copyright 2026 The qswitch-thermal Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from __future__ import absolute_import

import os
import pathlib
import shutil

import nox

DEFAULT_PYTHON_VERSION = "3.10"
CURRENT_DIRECTORY = pathlib.Path(__file__).parent.absolute()

nox.options.sessions = [
    "lint",
    "unit",
    "docs",
]

# Error if a python version is missing
nox.options.error_on_missing_interpreters = True


@nox.session(python=DEFAULT_PYTHON_VERSION)
def lint(session):
    """Check formatting and types."""

    session.install("-e", ".[test]")
    session.run("black", "--check", "src", "tests")
    session.run("isort", "--check-only", "src", "tests")
    session.run("mypy", "src")


@nox.session(python=["3.9", "3.10", "3.11", "3.12"])
def unit(session):
    """Run the test suite with coverage."""

    session.install("-e", ".[test]")
    session.run(
        "pytest",
        "--cov=qswitch_thermal",
        "--cov-config=.coveragerc",
        "--cov-report=term-missing",
        os.path.join("tests", ""),
        *session.posargs,
    )


@nox.session(python=DEFAULT_PYTHON_VERSION)
def docs(session):
    """Build the docs for this library."""

    session.install("-e", ".")
    session.install(
        "sphinx==7.4.7",
        "alabaster",
        "recommonmark",
    )

    shutil.rmtree(os.path.join("docs", "_build"), ignore_errors=True)
    session.run(
        "sphinx-build",
        "-W",  # warnings as errors
        "-T",  # show full traceback on exception
        "-N",  # no colors
        "-b",
        "html",
        "-d",
        os.path.join("docs", "_build", "doctrees", ""),
        os.path.join("docs", ""),
        os.path.join("docs", "_build", "html", ""),
    )
