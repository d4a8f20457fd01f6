"""INI configuration files with unit-suffixed keys.

Example::

    [geometry]
    a1_mm = 40
    ...
    [drive]
    r_m_f_mm = 30
    eta = 1.0
    k_se_n_per_m = 3000      ; or k_se_f_n_per_m / k_se_e_n_per_m, "inf" = rigid

Only the load levers, forearm mass and gravity have defaults. Every other
key is required, unknown keys are rejected and lengths must carry their unit
suffix.
"""

import configparser
import math
from dataclasses import dataclass

from .capstan import FrictionSpec, TendonSpec
from .exceptions import (
    ConfigError,
    DomainError,
    MissingKeyError,
    RangeError,
    UnitSuffixError,
    UnknownKeyError,
)
from .geometry import ArmGeometry
from .loadmodel import PHASES, LoadCase
from .solver import SystemConfig
from .transmission import DriveSpec

MM = 1000.0  # millimetres per metre


@dataclass(frozen=True)
class _Key:
    name: str  # full key including unit suffix
    stem: str  # key without unit suffix
    per_metre: float = 1.0  # file units per SI unit
    kind: str = "positive"  # positive | nonnegative | stiffness | phase
    required: bool = True


def _k(name, stem=None, **kw):
    return _Key(name=name, stem=stem or name, **kw)


SCHEMA = {
    "geometry": [
        _k("a1_mm", "a1", per_metre=MM),
        _k("b1_mm", "b1", per_metre=MM),
        _k("a2_mm", "a2", per_metre=MM),
        _k("b2_mm", "b2", per_metre=MM),
        _k("r_elb_mm", "r_elb", per_metre=MM),
    ],
    "tendon": [
        _k("length_m", "length"),
        _k("diameter_mm", "diameter", per_metre=MM),
        _k("youngs_modulus_pa", "youngs_modulus"),
        _k("pretension_n", "pretension"),
    ],
    "friction": [
        _k("mu", kind="nonnegative"),
        _k("phi_f_rad", "phi_f", kind="nonnegative"),
        _k("phi_e_rad", "phi_e", kind="nonnegative"),
    ],
    "drive": [
        _k("r_m_f_mm", "r_m_f", per_metre=MM),
        _k("eta"),
        _k("k_se_n_per_m", "k_se", kind="stiffness", required=False),
        _k("k_se_f_n_per_m", "k_se_f", kind="stiffness", required=False),
        _k("k_se_e_n_per_m", "k_se_e", kind="stiffness", required=False),
    ],
    "load": [
        _k("mass_ext_kg", "mass_ext", kind="nonnegative"),
        _k("l_hand_m", "l_hand", kind="nonnegative", required=False),
        _k("mass_forearm_kg", "mass_forearm", kind="nonnegative", required=False),
        _k("l_com_m", "l_com", kind="nonnegative", required=False),
        _k("g_m_per_s2", "g", kind="nonnegative", required=False),
    ],
    "simulation": [
        _k("phase", kind="phase"),
    ],
}


def _lookup(section, key):
    for spec in SCHEMA[section]:
        if spec.name == key:
            return spec
    for spec in sorted(SCHEMA[section], key=lambda sp: -len(sp.stem)):
        if spec.stem != spec.name and (key == spec.stem or key.startswith(spec.stem + "_")):
            raise UnitSuffixError(
                f"{section}.{key}", f"unit suffix required, expected {section}.{spec.name}"
            )
    raise UnknownKeyError(f"{section}.{key}", "unknown key")


def _convert(section, spec, raw):
    path = f"{section}.{spec.name}"
    text = raw.strip()
    if spec.kind == "phase":
        if text not in PHASES:
            raise RangeError(path, f"must be one of {list(PHASES)}, got {text!r}")
        return text
    try:
        value = float(text)
    except ValueError:
        raise RangeError(path, f"not a number: {text!r}") from None
    if math.isnan(value):
        raise RangeError(path, "must not be NaN")
    if math.isinf(value):
        if spec.kind == "stiffness" and value > 0:
            return math.inf
        raise RangeError(path, f"must be finite, got {text!r}")
    if spec.kind in ("positive", "stiffness") and value <= 0.0:
        raise RangeError(path, f"must be > 0, got {text!r}")
    if spec.kind == "nonnegative" and value < 0.0:
        raise RangeError(path, f"must be >= 0, got {text!r}")
    return value / spec.per_metre


def _read_values(parser):
    values = {}
    for section in parser.sections():
        if section not in SCHEMA:
            raise UnknownKeyError(section, "unknown section")
        for key, raw in parser.items(section):
            spec = _lookup(section, key)
            values[(section, spec.name)] = _convert(section, spec, raw)
    for section, specs in SCHEMA.items():
        for spec in specs:
            if spec.required and (section, spec.name) not in values:
                raise MissingKeyError(f"{section}.{spec.name}", "required key is missing")
    return values


def _stiffnesses(values):
    both = values.get(("drive", "k_se_n_per_m"))
    k_f = values.get(("drive", "k_se_f_n_per_m"))
    k_e = values.get(("drive", "k_se_e_n_per_m"))
    if both is not None:
        if k_f is not None or k_e is not None:
            raise ConfigError(
                "drive.k_se_n_per_m", "give either k_se_n_per_m or the per-side keys, not both"
            )
        return both, both
    if k_f is None:
        raise MissingKeyError("drive.k_se_f_n_per_m", "required key is missing")
    if k_e is None:
        raise MissingKeyError("drive.k_se_e_n_per_m", "required key is missing")
    return k_f, k_e


def _build(values):
    v = lambda s, k: values[(s, k)]  # noqa: E731
    geom_keys = ("a1_mm", "b1_mm", "a2_mm", "b2_mm", "r_elb_mm")
    try:
        geom = ArmGeometry(*(v("geometry", k) for k in geom_keys))
    except DomainError as exc:
        raise RangeError("geometry.r_elb_mm", str(exc)) from None
    tendon = TendonSpec(
        L=v("tendon", "length_m"),
        d=v("tendon", "diameter_mm"),
        E=v("tendon", "youngs_modulus_pa"),
        F_pre=v("tendon", "pretension_n"),
    )
    friction = FrictionSpec(v("friction", "mu"), v("friction", "phi_f_rad"), v("friction", "phi_e_rad"))
    k_f, k_e = _stiffnesses(values)
    drive = DriveSpec(v("drive", "r_m_f_mm"), v("drive", "eta"), k_f, k_e)
    load_kw = {"mass_ext": v("load", "mass_ext_kg")}
    for key, field in (
        ("l_hand_m", "l_hand"),
        ("mass_forearm_kg", "mass_forearm"),
        ("l_com_m", "l_com"),
        ("g_m_per_s2", "g"),
    ):
        if ("load", key) in values:
            load_kw[field] = values[("load", key)]
    try:
        load = LoadCase(**load_kw)
    except DomainError as exc:
        raise RangeError("load", str(exc)) from None
    return SystemConfig(geom, tendon, friction, drive, load, v("simulation", "phase"))


def _parser():
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=(";", "#"), default_section="__none__"
    )
    parser.optionxform = str
    return parser


def parse_config_string(text, source="<string>"):
    """Parse configuration text into a validated SystemConfig."""
    parser = _parser()
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError("", f"{source}: {exc}") from None
    return _build(_read_values(parser))


def parse_config(path):
    """Parse a configuration file into a validated SystemConfig.

    Args:
        path: INI file path.

    Raises:
        MissingKeyError, UnknownKeyError, UnitSuffixError, RangeError: with the
            dotted key path of the problem.
        OSError: if the file cannot be read.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_config_string(text, source=str(path))


def format_config(config):
    """Render a SystemConfig as configuration text that parses back to it."""
    g, t, f, d, ld = config.geom, config.tendon, config.friction, config.drive, config.load
    mm = lambda x: repr(x * MM)  # noqa: E731
    stiff = lambda k: "inf" if math.isinf(k) else repr(k)  # noqa: E731
    lines = [
        "[geometry]",
        f"a1_mm = {mm(g.a1)}",
        f"b1_mm = {mm(g.b1)}",
        f"a2_mm = {mm(g.a2)}",
        f"b2_mm = {mm(g.b2)}",
        f"r_elb_mm = {mm(g.R_elb)}",
        "",
        "[tendon]",
        f"length_m = {t.L!r}",
        f"diameter_mm = {mm(t.d)}",
        f"youngs_modulus_pa = {t.E!r}",
        f"pretension_n = {t.F_pre!r}",
        "",
        "[friction]",
        f"mu = {f.mu!r}",
        f"phi_f_rad = {f.phi_f!r}",
        f"phi_e_rad = {f.phi_e!r}",
        "",
        "[drive]",
        f"r_m_f_mm = {mm(d.R_m_f)}",
        f"eta = {d.eta!r}",
        f"k_se_f_n_per_m = {stiff(d.K_SE_f)}",
        f"k_se_e_n_per_m = {stiff(d.K_SE_e)}",
        "",
        "[load]",
        f"mass_ext_kg = {ld.mass_ext!r}",
        f"l_hand_m = {ld.l_hand!r}",
        f"mass_forearm_kg = {ld.mass_forearm!r}",
        f"l_com_m = {ld.l_com!r}",
        f"g_m_per_s2 = {ld.g!r}",
        "",
        "[simulation]",
        f"phase = {config.phase}",
        "",
    ]
    return "\n".join(lines)


SWEEP_KEYS = {
    "pretension_n": "F_pre",
    "k_se_n_per_m": "K_SE",
    "eta": "eta",
    "mass_ext_kg": "mass_ext",
}
SWEEP_GRID_KEYS = ("theta_max_rad", "points")


def _number_list(path, text):
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise RangeError(path, "empty value list")
    try:
        return [float(t) for t in items]
    except ValueError:
        raise RangeError(path, f"not a number list: {text!r}") from None


def parse_sweep_string(text, base, source="<string>"):
    """Parse a ``[sweep]`` section into axes and grid settings.

    Returns:
        ``(axes, grid)``: ``axes`` maps axis names (``F_pre``, ``K_SE``,
        ``eta``, ``mass_ext``) to value lists, ``grid`` holds optional
        ``theta_max_rad`` and ``points``.
    """
    parser = _parser()
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError("", f"{source}: {exc}") from None
    for section in parser.sections():
        if section != "sweep":
            raise UnknownKeyError(section, "unknown section")
    if not parser.has_section("sweep"):
        raise MissingKeyError("sweep", "missing [sweep] section")
    axes, grid = {}, {}
    for key, raw in parser.items("sweep"):
        path = f"sweep.{key}"
        if key in SWEEP_KEYS:
            values = _number_list(path, raw)
            for value in values:
                rigid = key == "k_se_n_per_m" and value == math.inf
                if not (math.isfinite(value) or rigid) or value < 0 or (value == 0 and key != "mass_ext_kg"):
                    raise RangeError(path, f"value out of range: {value!r}")
            axes[SWEEP_KEYS[key]] = values
        elif key == "theta_max_rad":
            grid[key] = _convert("sweep", _k("theta_max_rad", "theta_max"), raw)
        elif key == "points":
            try:
                grid[key] = int(raw.strip())
            except ValueError:
                raise RangeError(path, f"not an integer: {raw.strip()!r}") from None
        elif any(key.startswith(stem) for stem in ("pretension", "k_se", "mass_ext", "theta_max")):
            raise UnitSuffixError(path, "unit suffix required")
        else:
            raise UnknownKeyError(path, "unknown key")
    if not axes:
        raise MissingKeyError("sweep", "no sweep axis given")
    return axes, grid


def parse_sweep_file(path, base):
    """``parse_sweep_string`` for a file."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_sweep_string(text, base, source=str(path))
