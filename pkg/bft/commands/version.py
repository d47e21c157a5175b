# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from argparse import Namespace

import numpy as np
import scipy
from craft_cli import BaseCommand, emit

from bft._version import version_description as bft_version


class VersionCommand(BaseCommand):
    """Show bft's version number and its numerical stack."""

    name = "version"
    help_msg = __doc__.splitlines()[0]
    overview = __doc__
    common = True

    def run(self, args: Namespace) -> int:
        """Run the command."""
        emit.message(
            f"{bft_version} (numpy {np.__version__}, scipy "
            f"{scipy.__version__})"
        )
        return 0
