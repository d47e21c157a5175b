# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

__all__ = [
    "version",
    "version_description",
]

import importlib.metadata

version = importlib.metadata.version("bft")
version_description = f"bft, version {version}"
