"""Run configuration shared by the CLI and report builder."""
from dataclasses import asdict, dataclass
import os

from .errors import FolianaError

FORMATS = ("json", "text")


@dataclass
class Config:
    quad_tol: float = 1e-4
    root_tol: float = 1e-10
    window: float = 1e-9
    jet_cap: int = 10
    depth_cap: int = 12
    R: float = 30.0
    format: str = "json"
    threads: int = 0

    def __post_init__(self):
        if self.threads <= 0:
            self.threads = os.cpu_count() or 1
        self.validate()

    def validate(self):
        for name in ("quad_tol", "root_tol", "window", "R"):
            value = getattr(self, name)
            if not value > 0:
                raise FolianaError(f"{name} must be positive, got {value}")
        if self.jet_cap < 2:
            raise FolianaError(f"jet_cap must be at least 2, got {self.jet_cap}")
        if self.depth_cap < 1:
            raise FolianaError(f"depth_cap must be at least 1, got {self.depth_cap}")
        if self.format not in FORMATS:
            raise FolianaError(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")
        return self

    @classmethod
    def from_env(cls, environ=None, **overrides):
        """Defaults, then FOLIANA_THREADS / FOLIANA_FORMAT, then explicit overrides."""
        env = os.environ if environ is None else environ
        values = {}
        if env.get("FOLIANA_THREADS"):
            try:
                values["threads"] = int(env["FOLIANA_THREADS"])
            except ValueError:
                raise FolianaError(f"FOLIANA_THREADS must be an integer, got {env['FOLIANA_THREADS']!r}") from None
        if env.get("FOLIANA_FORMAT"):
            values["format"] = env["FOLIANA_FORMAT"].strip().lower()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_json(self):
        return asdict(self)
