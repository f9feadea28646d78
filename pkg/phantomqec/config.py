"""
Phantom QEC Toolkit - Configuration Module

This module holds the settings object shared by the searches, the SAT layer and the
command-line interface. Settings can be changed in code with ``configure``, persisted
as JSON, or seeded from environment variables.
"""

from mylogger import logger
from typing import Any, Dict, List, Optional
import json
import os
import shlex


logger.info("Loading config module")


SOLVER_ENV_VAR = "PHANTOMQEC_SAT_SOLVER"
SOLVER_ARGS_ENV_VAR = "PHANTOMQEC_SAT_ARGS"
CONFIG_ENV_VAR = "PHANTOMQEC_CONFIG"


class CutoffExceeded(RuntimeError):
    """Raised when a search would exceed a configured budget."""

    def __init__(self, what: str, size: Any, limit: Any):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds configured limit {limit}")


class QecConfig:
    """
    Settings for searches, solvers and sweeps.

    Attributes:
        solver_path (str): External SAT solver binary ("" means use the internal engine)
        solver_args (List[str]): Extra arguments passed to the external solver
        solver_timeout (float): Seconds allowed per SAT instance
        distance_span_cutoff (int): Max generator count for exhaustive distance walks
        class_enum_cutoff (int): Max n-k for stabilizer coset enumeration
        bruteforce_max_n (int): Max block length for S_n brute-force phantom search
        enumerate_max_n (int): Max block length for exhaustive enumeration
        stabilizer_enumerate_max_n (int): Max block length for exhaustive non-CSS enumeration
        hamming_max_n (int): Max n for the exact B(n,d) search
        automorphism_max_n (int): Max n for the automorphism backtracking search
        diagonal_max_terms (int): Max row count of the phase-polynomial matrix
        statevector_max_n (int): Max n for dense statevector checks of diagonal gates
        fold_max_n (int): Max n for the exhaustive matching search of fold gates
        clause_limit (int): Refuse discovery instances estimated above this many clauses
        jobs (int): Worker processes for sweeps
        seed (int): Seed for randomised helpers

    Example:
        >>> config = QecConfig()
        >>> config.configure(solver_timeout=120, jobs=4)
        >>> config.get_config('jobs')
        4
    """

    def __init__(self, **kwargs):
        self.solver_path: str = ""
        self.solver_args: List[str] = []
        self.solver_timeout: float = 600.0
        self.distance_span_cutoff: int = 28
        self.class_enum_cutoff: int = 22
        self.bruteforce_max_n: int = 8
        self.enumerate_max_n: int = 8
        self.stabilizer_enumerate_max_n: int = 5
        self.hamming_max_n: int = 16
        self.automorphism_max_n: int = 16
        self.diagonal_max_terms: int = 4096
        self.statevector_max_n: int = 16
        self.fold_max_n: int = 8
        self.clause_limit: int = 5_000_000
        self.jobs: int = 1
        self.seed: int = 0

        self.config: Dict[str, Any] = {}
        self.config_path: str = ""

        if kwargs:
            self.configure(**kwargs)

    # =============================================================================
    # CONFIGURATION
    # =============================================================================

    def configure(self, **kwargs) -> None:
        """
        Update settings.

        Known settings are set as attributes; unknown keys are kept in ``self.config``.

        Args:
            **kwargs: Setting names and values

        Example:
            >>> config.configure(bruteforce_max_n=7, my_flag=True)
        """
        logger.debug(f"Updating configuration with {len(kwargs)} parameters")

        for key, value in kwargs.items():
            if key in ("config", "config_path"):
                continue
            if hasattr(self, key):
                setattr(self, key, value)
                logger.debug(f"Set {key} = {value}")
            else:
                self.config[key] = value
                logger.debug(f"Added custom config {key} = {value}")

    def get_config(self, key: Optional[str] = None) -> Any:
        """
        Get one setting, or all settings as a dict.

        Args:
            key: Setting name (None returns everything)

        Returns:
            The setting value, or a dict of all settings
        """
        if key is None:
            values = {
                name: value for name, value in vars(self).items()
                if name not in ("config", "config_path")
            }
            values.update(self.config)
            return values
        if hasattr(self, key) and key not in ("config", "config_path"):
            return getattr(self, key)
        return self.config.get(key)

    def load_config(self, filepath: str) -> bool:
        """
        Load settings from a JSON file.

        Args:
            filepath: Path to a JSON object of settings

        Returns:
            bool: True if loaded successfully
        """
        logger.info(f"Loading configuration from {filepath}")

        try:
            with open(filepath, 'r') as f:
                values = json.load(f)
            if not isinstance(values, dict):
                raise ValueError("configuration file must hold a JSON object")
            self.configure(**values)
            self.config_path = filepath
            logger.success(f"Configuration loaded from {filepath}")
            return True
        except Exception as e:
            logger.error(f"Failed to load configuration: {e}")
            return False

    def save_config(self, filepath: Optional[str] = None) -> bool:
        """
        Save settings to a JSON file.

        Args:
            filepath: Destination (uses the path last loaded from if None)

        Returns:
            bool: True if saved successfully
        """
        filepath = filepath or self.config_path
        if not filepath:
            logger.error("No filepath provided and no stored config path")
            return False

        try:
            values = {
                k: v for k, v in self.get_config().items()
                if isinstance(v, (str, int, float, bool, list, dict, type(None)))
            }
            with open(filepath, 'w') as f:
                json.dump(values, f, indent=2)
            self.config_path = filepath
            logger.success(f"Configuration saved to {filepath}")
            return True
        except Exception as e:
            logger.error(f"Failed to save configuration: {e}")
            return False

    # =============================================================================
    # ENVIRONMENT
    # =============================================================================

    def resolve_solver(self, explicit_path: Optional[str] = None) -> Optional[str]:
        """
        Resolve the external solver path: explicit argument, then the configured
        path, then the environment variable. None means the internal engine.

        Args:
            explicit_path: Path given on the command line or by the caller

        Returns:
            Optional[str]: Solver binary path, or None for the internal engine
        """
        for candidate in (explicit_path, self.solver_path, os.getenv(SOLVER_ENV_VAR)):
            if candidate:
                return candidate
        return None

    def resolve_solver_args(self) -> List[str]:
        """Extra solver arguments from config, falling back to the environment."""
        if self.solver_args:
            return list(self.solver_args)
        return shlex.split(os.getenv(SOLVER_ARGS_ENV_VAR, ""))

    def check_limit(self, what: str, size: Any, setting: str) -> None:
        """
        Raise CutoffExceeded when size is above the named setting.

        Args:
            what: Human-readable name of the search
            size: Measured size
            setting: Name of the limit attribute

        Raises:
            CutoffExceeded: If size > limit
        """
        limit = self.get_config(setting)
        if limit is not None and size > limit:
            logger.warning(f"{what} refused: {size} > {setting}={limit}")
            raise CutoffExceeded(what, size, limit)

    @classmethod
    def from_env(cls) -> 'QecConfig':
        """
        Build a config, loading the JSON file named by PHANTOMQEC_CONFIG if set.

        Returns:
            QecConfig: New settings object
        """
        config = cls()
        path = os.getenv(CONFIG_ENV_VAR)
        if path:
            config.load_config(path)
        return config

    def __repr__(self) -> str:
        return f"QecConfig(solver_path={self.solver_path!r}, jobs={self.jobs})"


default_config = QecConfig.from_env()
