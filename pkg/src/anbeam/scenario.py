"""Scenario configuration: geometry, powers, noise floors, tolerances.

Config files are flat ``key = value`` text; dB/dBm fields stay in dB in the
file and on the dataclass, and are converted to linear watts where consumed.
Internally the optimizer works on a normalized link model: channels are
divided by the free-space amplitude at the 1 km reference range and the noise
floors by its square, which leaves every SINR and every transmit power in
watts unchanged while keeping the solver data well scaled.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .arrays import ArrayGeometry, JammingSource, UncertaintyRegion, attenuation, los_channel
from .exceptions import ScenarioParseError

REF_RANGE_M = 1000.0


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def dbm_to_watt(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watt_to_dbm(watt: float) -> float:
    return 10.0 * np.log10(watt) + 30.0


@dataclass(frozen=True)
class Scenario:
    """Full experiment description.  Angle fields are degrees, powers dBm."""

    carrier_hz: float = 30e9
    n_tx: int = 20
    m_rx: int = 16
    num_lu: int = 2
    num_ae: int = 3
    num_pe: int = 2
    lu_angles_deg: tuple[float, ...] = (-35.0, 15.0)
    lu_ranges_m: tuple[float, ...] = (1000.0, 1000.0)
    ae_angles_deg: tuple[float, ...] = (-60.0, 3.0, 60.0)
    ae_ranges_m: tuple[float, ...] = (1000.0, 1000.0, 1000.0)
    jam_angles_deg: tuple[tuple[float, ...], ...] = (
        (-70.0, -10.0, 40.0),
        (-50.0, -10.0, 60.0),
    )
    per_antenna_dbm: float = 30.0
    sum_power_constraint: bool = False
    noise_lu_dbm: float = -100.0
    noise_ae_dbm: float = -120.0
    noise_pe_dbm: float = -120.0
    lu_snr_db: float = 15.0
    uncertainty: float = 0.1
    outage_kappa: float = 0.95
    jnr_db: float = 30.0
    pe_range_m: float = 1000.0
    gamma_ae_db: float | None = None
    gamma_pe_db: float | None = None
    snapshots: int = 1000
    seed: int = 0

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.n_tx < 1 or self.m_rx < 1:
            raise ScenarioParseError("n_tx/m_rx", "antenna counts must be >= 1")
        if self.num_lu < 1:
            raise ScenarioParseError("num_lu", "need at least one user")
        if self.num_lu >= self.n_tx:
            raise ScenarioParseError("num_lu", f"requires n_tx > num_lu, got {self.n_tx} <= {self.num_lu}")
        if self.num_ae < 0 or self.num_pe < 0:
            raise ScenarioParseError("num_ae/num_pe", "eavesdropper counts must be >= 0")
        if len(self.lu_angles_deg) != self.num_lu or len(self.lu_ranges_m) != self.num_lu:
            raise ScenarioParseError("lu_angles_deg", "length must equal num_lu")
        if len(self.ae_angles_deg) != self.num_ae or len(self.ae_ranges_m) != self.num_ae:
            raise ScenarioParseError("ae_angles_deg", "length must equal num_ae")
        if len(self.jam_angles_deg) != self.num_lu:
            raise ScenarioParseError("jam_angles_deg", "need one angle list per user")
        for row in self.jam_angles_deg:
            if len(row) != self.num_ae:
                raise ScenarioParseError("jam_angles_deg", "need one angle per active eavesdropper")
        for name, angles in (("lu_angles_deg", self.lu_angles_deg),
                             ("ae_angles_deg", self.ae_angles_deg)):
            if any(not -90.0 < a < 90.0 for a in angles):
                raise ScenarioParseError(name, "angles must lie in (-90, 90) degrees")
        if any(r <= 0 for r in self.lu_ranges_m) or any(r <= 0 for r in self.ae_ranges_m):
            raise ScenarioParseError("ranges", "ranges must be positive")
        if not 0.0 < self.outage_kappa < 1.0:
            raise ScenarioParseError("outage_kappa", f"must lie in (0, 1), got {self.outage_kappa}")
        if self.uncertainty < 0 or self.uncertainty >= 1.0:
            raise ScenarioParseError("uncertainty", "normalized uncertainty must lie in [0, 1)")
        if self.pe_range_m <= 0:
            raise ScenarioParseError("pe_range_m", "must be positive")
        if self.snapshots < 1:
            raise ScenarioParseError("snapshots", "must be >= 1")

    # -- geometry ---------------------------------------------------------
    @property
    def tx_geometry(self) -> ArrayGeometry:
        return ArrayGeometry.half_wavelength(self.n_tx, self.carrier_hz)

    @property
    def rx_geometry(self) -> ArrayGeometry:
        return ArrayGeometry.half_wavelength(self.m_rx, self.carrier_hz)

    # -- linear-unit views ------------------------------------------------
    @property
    def lu_snr(self) -> float:
        return db_to_linear(self.lu_snr_db)

    @property
    def per_antenna_w(self) -> float:
        return dbm_to_watt(self.per_antenna_dbm)

    @property
    def noise_lu_w(self) -> float:
        return dbm_to_watt(self.noise_lu_dbm)

    @property
    def noise_ae_w(self) -> float:
        return dbm_to_watt(self.noise_ae_dbm)

    @property
    def noise_pe_w(self) -> float:
        return dbm_to_watt(self.noise_pe_dbm)

    def jammers(self) -> list[JammingSource]:
        """Jamming sources with path loss folded so the received JNR is met."""
        eff = db_to_linear(self.jnr_db) * self.noise_lu_w
        return [
            JammingSource(
                angles_rad=np.deg2rad([row[r] for row in self.jam_angles_deg]),
                power_w=eff,
                path_loss_factor=np.ones(self.num_lu),
            )
            for r in range(self.num_ae)
        ]

    def normalized(self) -> "NormalizedModel":
        return NormalizedModel.from_scenario(self)

    def with_updates(self, **kwargs) -> "Scenario":
        return replace(self, **kwargs)

    def canonical_dict(self) -> dict:
        out = {}
        for f in fields(self):
            out[f.name] = getattr(self, f.name)
        return out

    def hash(self) -> str:
        payload = json.dumps(self.canonical_dict(), sort_keys=True, default=list)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class NormalizedModel:
    """Link model normalized by the reference-range amplitude.

    ``lu_channels`` is N x K; AE uncertainty regions carry normalized centers
    and radii ``eps = sqrt(chi) * ||center||``.  Passive-Eve channels in this
    model are unit-variance complex Gaussian per entry, with the large-scale
    gain at ``pe_range_m`` folded into ``noise_pe_w``.
    """

    scenario: Scenario
    ref_gain: float
    lu_channels: np.ndarray
    ae_regions: tuple[UncertaintyRegion, ...]
    noise_lu_w: float
    noise_ae_w: float
    noise_pe_w: float

    @classmethod
    def from_scenario(cls, sc: Scenario) -> "NormalizedModel":
        geom = sc.tx_geometry
        rho_ref = attenuation(sc.carrier_hz, REF_RANGE_M)
        lu = np.stack(
            [los_channel(geom, r, np.deg2rad(a)).vector / rho_ref
             for a, r in zip(sc.lu_angles_deg, sc.lu_ranges_m)],
            axis=1,
        )
        regions = []
        for a, r in zip(sc.ae_angles_deg, sc.ae_ranges_m):
            center = los_channel(geom, r, np.deg2rad(a)).vector / rho_ref
            eps = float(np.sqrt(sc.uncertainty) * np.linalg.norm(center))
            regions.append(UncertaintyRegion(center=center, radius=eps))
        rho_pe = attenuation(sc.carrier_hz, sc.pe_range_m)
        return cls(
            scenario=sc,
            ref_gain=rho_ref,
            lu_channels=lu,
            ae_regions=tuple(regions),
            noise_lu_w=sc.noise_lu_w / rho_ref**2,
            noise_ae_w=sc.noise_ae_w / rho_ref**2,
            noise_pe_w=sc.noise_pe_w / rho_pe**2,
        )

    def draw_pe_channels(self, rng: np.random.Generator, count: int | None = None) -> np.ndarray:
        """i.i.d. unit-variance complex Gaussian channels, one per row."""
        q = self.scenario.num_pe if count is None else count
        n = self.scenario.n_tx
        return (rng.standard_normal((q, n)) + 1j * rng.standard_normal((q, n))) / np.sqrt(2.0)


_LIST_FIELDS = {"lu_angles_deg", "lu_ranges_m", "ae_angles_deg", "ae_ranges_m"}
_INT_FIELDS = {"n_tx", "m_rx", "num_lu", "num_ae", "num_pe", "seed", "snapshots"}
_BOOL_FIELDS = {"sum_power_constraint"}
_OPTIONAL_FIELDS = {"gamma_ae_db", "gamma_pe_db"}


def _parse_scalar(field_name: str, raw: str):
    raw = raw.strip()
    if field_name in _BOOL_FIELDS:
        if raw.lower() in ("true", "1", "yes", "on"):
            return True
        if raw.lower() in ("false", "0", "no", "off"):
            return False
        raise ScenarioParseError(field_name, f"expected a boolean, got {raw!r}")
    try:
        if field_name in _INT_FIELDS:
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ScenarioParseError(field_name, f"could not parse {raw!r}") from exc


def load_scenario(path) -> Scenario:
    """Parse a flat key/value scenario file; unset keys take defaults.

    Recognized keys are the :class:`Scenario` field names; jamming angles are
    given per user as ``jam_angles_lu1 = -70, -10, 40`` (1-based user index).
    Lines starting with ``#`` are comments.
    """
    known = {f.name for f in fields(Scenario)} - {"jam_angles_deg"}
    values: dict = {}
    jam_rows: dict[int, tuple] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ScenarioParseError(f"line {lineno}", f"expected 'key = value', got {line!r}")
            key, raw = (part.strip() for part in line.split("=", 1))
            if key.startswith("jam_angles_lu"):
                try:
                    idx = int(key[len("jam_angles_lu"):])
                except ValueError as exc:
                    raise ScenarioParseError(key, "bad user index") from exc
                jam_rows[idx] = tuple(float(tok) for tok in raw.split(",") if tok.strip())
                continue
            if key not in known:
                raise ScenarioParseError(key, "unknown scenario key")
            if key in _LIST_FIELDS:
                values[key] = tuple(_parse_scalar(key, tok) for tok in raw.split(",") if tok.strip())
            elif key in _OPTIONAL_FIELDS and raw.strip().lower() in ("auto", "none", ""):
                values[key] = None
            else:
                values[key] = _parse_scalar(key, raw)
    defaults = Scenario()
    num_lu = values.get("num_lu", len(values["lu_angles_deg"]) if "lu_angles_deg" in values
             else defaults.num_lu)
    num_ae = values.get("num_ae", len(values["ae_angles_deg"]) if "ae_angles_deg" in values
             else defaults.num_ae)
    if jam_rows:
        missing = [k for k in range(1, num_lu + 1) if k not in jam_rows]
        if missing:
            raise ScenarioParseError("jam_angles_lu", f"missing rows for users {missing}")
        values["jam_angles_deg"] = tuple(jam_rows[k] for k in range(1, num_lu + 1))
    elif num_lu != defaults.num_lu or num_ae != defaults.num_ae:
        # defaults only fit the stock 2-user / 3-AE layout
        values.setdefault(
            "jam_angles_deg",
            tuple(tuple(-60.0 + 30.0 * r for r in range(num_ae)) for _ in range(num_lu)),
        )
    if "lu_angles_deg" in values and "lu_ranges_m" not in values:
        values["lu_ranges_m"] = (REF_RANGE_M,) * len(values["lu_angles_deg"])
    if "ae_angles_deg" in values and "ae_ranges_m" not in values:
        values["ae_ranges_m"] = (REF_RANGE_M,) * len(values["ae_angles_deg"])
    if "num_lu" not in values and "lu_angles_deg" in values:
        values["num_lu"] = len(values["lu_angles_deg"])
    if "num_ae" not in values and "ae_angles_deg" in values:
        values["num_ae"] = len(values["ae_angles_deg"])
    return Scenario(**values)


def save_scenario(scenario: Scenario, path) -> None:
    lines = []
    for f in fields(scenario):
        val = getattr(scenario, f.name)
        if f.name == "jam_angles_deg":
            for k, row in enumerate(val, 1):
                lines.append(f"jam_angles_lu{k} = " + ", ".join(repr(x) for x in row))
            continue
        if val is None:
            lines.append(f"{f.name} = auto")
        elif isinstance(val, tuple):
            lines.append(f"{f.name} = " + ", ".join(repr(x) for x in val))
        else:
            lines.append(f"{f.name} = {val!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
