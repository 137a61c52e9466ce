# -*- coding: utf-8 -*-
#
# Copyright 2026 The qswitch-thermal Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
# qswitch-thermal documentation build configuration file.

import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join("..", "src")))

from qswitch_thermal.version import __version__  # noqa: E402

needs_sphinx = "4.0"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "recommonmark",
]

autoclass_content = "both"
autodoc_default_options = {"members": True}
autodoc_typehints = "description"
autosummary_generate = True

source_suffix = [".rst", ".md"]
root_doc = "index"

project = "qswitch-thermal"
copyright = "2026, The qswitch-thermal Authors"
author = "The qswitch-thermal Authors"

release = __version__
version = ".".join(release.split(".")[0:2])

exclude_patterns = ["_build", "**/.nox/**/*"]

pygments_style = "sphinx"

html_theme = "alabaster"
html_theme_options = {
    "description": "Effective temperatures of a qubit behind a quantum SWITCH",
}
htmlhelp_basename = "qswitch-thermal-doc"

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
    "pandas": ("https://pandas.pydata.org/docs/", None),
}

napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_include_special_with_doc = True
napoleon_use_param = True
napoleon_use_rtype = True
