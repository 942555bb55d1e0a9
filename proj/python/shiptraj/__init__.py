# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The shiptraj Authors
"""Python bindings for the shiptraj C++ core."""

from ._shiptraj import *  # noqa: F401,F403
from ._shiptraj import ShiptrajError  # noqa: F401

__version__ = "0.1.0"
