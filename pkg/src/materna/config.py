"""Service configuration: key=value file plus the advice template file."""

from __future__ import annotations

from dataclasses import dataclass, field

from .messages import MAX_ADVICE_LEN

DEFAULT_ADVICE_TEMPLATES = {
    1: "Start folic acid, eat iron rich food and book your first checkup at your care centre.",
    2: "Attend your scan this trimester, keep light daily activity and drink plenty of water.",
    3: "Prepare your delivery bag, rest often and contact your care centre about swelling or headaches.",
}

DEFAULT_CLOCK_START = "2012-11-01T08:00:00"


@dataclass
class ServiceConfig:
    id_code_seed: int = 1000
    heli_threshold_km: float = 15.0
    speed_car: float = 40.0
    speed_boat: float = 30.0
    speed_heli: float = 150.0
    water_zone_prefix: str = "W"
    advice_templates_path: str | None = None
    facilities_path: str | None = None
    listen_addr: str = "127.0.0.1:8414"
    clock_mode: str = "virtual"
    clock_start: str = DEFAULT_CLOCK_START
    event_log_path: str | None = None
    console_path: str | None = None
    advice_templates: dict = field(default_factory=lambda: dict(DEFAULT_ADVICE_TEMPLATES))

    def __post_init__(self):
        if self.clock_mode not in ("virtual", "wall"):
            raise ValueError(f"clock_mode must be virtual or wall, not {self.clock_mode!r}")


_INT_KEYS = {"id_code_seed"}
_FLOAT_KEYS = {"heli_threshold_km", "speed_car", "speed_boat", "speed_heli"}
_STR_KEYS = {
    "water_zone_prefix",
    "advice_templates_path",
    "facilities_path",
    "listen_addr",
    "clock_mode",
    "clock_start",
    "event_log_path",
    "console_path",
}


def parse_config(text: str) -> ServiceConfig:
    """Parse key=value lines; blank lines and # comments are skipped."""
    values = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {line_no}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in _INT_KEYS:
            values[key] = int(value)
        elif key in _FLOAT_KEYS:
            values[key] = float(value)
        elif key in _STR_KEYS:
            values[key] = value
        else:
            raise ValueError(f"config line {line_no}: unknown key {key!r}")
    config = ServiceConfig(**values)
    if config.advice_templates_path:
        config.advice_templates = load_advice_templates(config.advice_templates_path)
    return config


def load_config(path) -> ServiceConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def parse_advice_templates(text: str) -> dict:
    """Three lines of `<trimester>|<text>`, one per trimester."""
    templates = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        key, sep, body = raw.partition("|")
        if sep == "" or key not in ("1", "2", "3"):
            raise ValueError(f"advice template line {line_no}: expected 1|, 2| or 3| prefix")
        if not body or len(body) > MAX_ADVICE_LEN:
            raise ValueError(f"advice template line {line_no}: text empty or over {MAX_ADVICE_LEN} chars")
        if int(key) in templates:
            raise ValueError(f"advice template line {line_no}: duplicate trimester {key}")
        templates[int(key)] = body
    missing = {1, 2, 3} - set(templates)
    if missing:
        raise ValueError(f"advice templates missing trimester(s) {sorted(missing)}")
    return templates


def load_advice_templates(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_advice_templates(fh.read())
