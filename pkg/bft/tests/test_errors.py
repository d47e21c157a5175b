# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from unittest import TestCase

from bft.errors import (
    CheckFailed,
    CommandError,
    ConfigurationError,
    SolverError,
)


class TestError(TestCase):
    def test_compare_command_error_with_other_type(self):
        """If the other type is not a CommandError, defer eq to other type."""
        self.assertEqual(
            NotImplemented, CommandError("message").__eq__("message")
        )

    def test_configuration_error_exit_code(self):
        self.assertEqual(2, ConfigurationError("bad").retcode)

    def test_check_failed_names_the_check(self):
        error = CheckFailed("laplace", "residual 1e-3")
        self.assertEqual(1, error.retcode)
        self.assertEqual("laplace", error.check)
        self.assertEqual(
            "Check failed: laplace (residual 1e-3)", str(error)
        )

    def test_solver_error_carries_best_residual(self):
        error = SolverError("Newton did not converge", best_residual=0.5)
        self.assertEqual(0.5, error.best_residual)
        self.assertEqual(
            "Newton did not converge (best residual 5.000e-01)", str(error)
        )
