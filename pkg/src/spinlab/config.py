import configparser
import logging
import math
from dataclasses import dataclass, field
from typing import Self

from .quantum import TOL_BELL
from .quantum.rng import MAX_SEED
from .quantum.spin import Plane

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("json", "csv")


class InvalidConfigException(Exception):
    ...


class WhitespaceFriendlyConfigParser(configparser.ConfigParser):
    def get(self, section, option, *args, **kwargs) -> str:  # type:ignore
        val = super().get(section, option, *args, **kwargs)  # type:ignore
        return val.strip('"')


@dataclass
class Tolerances:
    bell: float = TOL_BELL


@dataclass
class Config:
    debug: bool = False
    log_dir: str = "logs"
    command: str = ""
    seed: int = 0
    shots: int = 100_000
    trials: int = 200
    sigma_width: float = 4.0
    output_format: str = "json"
    tolerances: Tolerances = field(default_factory=Tolerances)
    scan_step: float = math.pi / 60
    scan_max_angle: float = math.pi
    scan_plane: str = Plane.XZ.value
    claims_file: str = "claims/spin_claims.yaml"

    @classmethod
    def from_file(cls, file_path: str) -> Self:
        if "." not in file_path:
            file_path += ".ini"

        parsed = WhitespaceFriendlyConfigParser(comment_prefixes=(";",))
        try:
            success = parsed.read(file_path, encoding="utf-8")
        except configparser.Error as e:
            raise InvalidConfigException(f"Malformed config file {file_path}: {e}") from e
        if not success:
            raise InvalidConfigException(f"Failed to load config file {file_path}")

        config = cls()
        try:
            if "options" in parsed:
                sec = parsed["options"]
                config.debug = sec.getboolean("debug", False)

            if "sampling" in parsed:
                sec = parsed["sampling"]
                config.seed = sec.getint("seed", config.seed)
                config.shots = sec.getint("shots", config.shots)
                config.trials = sec.getint("trials", config.trials)
                config.sigma_width = sec.getfloat("sigma_width", config.sigma_width)

            if "tolerances" in parsed:
                sec = parsed["tolerances"]
                tol = config.tolerances
                tol.bell = sec.getfloat("bell", tol.bell)

            if "output" in parsed:
                config.output_format = parsed["output"].get("format", "json")

            if "scan" in parsed:
                sec = parsed["scan"]
                config.scan_step = sec.getfloat("step", config.scan_step)
                config.scan_max_angle = sec.getfloat("max_angle", config.scan_max_angle)
                config.scan_plane = sec.get("plane", config.scan_plane)

            if "claims" in parsed:
                config.claims_file = parsed["claims"].get("file", config.claims_file)
        except ValueError as e:
            raise InvalidConfigException(f"Bad value in {file_path}: {e}") from e

        return config

    @property
    def is_valid(self) -> bool:
        if not 0 <= self.seed <= MAX_SEED:
            logger.warning("seed %d outside the unsigned 64-bit range", self.seed)
            return False
        if self.shots < 1:
            logger.warning("shots must be positive")
            return False
        if self.trials < 1:
            logger.warning("trials must be positive")
            return False
        if self.sigma_width <= 0:
            logger.warning("Sigma width must be positive, defaulting to 4.0")
            self.sigma_width = 4.0
        for name, value in vars(self.tolerances).items():
            if value < 0:
                logger.warning("tolerance %s can't be negative", name)
                return False
        if self.output_format not in OUTPUT_FORMATS:
            logger.warning("Unknown output format %s", self.output_format)
            return False
        if self.scan_step <= 0:
            logger.warning("scan step must be positive")
            return False
        if self.scan_plane not in tuple(Plane):
            logger.warning("Unknown scan plane %s", self.scan_plane)
            return False
        return True
