"""Robust power-minimization program for hybrid eavesdropping.

Builds the semidefinite program that jointly designs per-user information
beams and an AN covariance confined to the null space of all user channels:

* worst-case active-eavesdropper SINR caps over norm-ball CSI uncertainty,
  turned into finite LMI blocks by the S-procedure;
* a passive-eavesdropper outage requirement, conservatively replaced by a
  spectral-norm bound through an inverse chi-square quantile;
* per-user SNR floors, per-antenna power caps, and PSD cone constraints.

The assembled :class:`ConeProgram` is an immutable IR consumed by
:mod:`anbeam.solver`.  By default the program is posed on the subspace
spanned by the user channels and the AE channel estimates: beams or AN
energy orthogonal to that span cannot help any constraint, so the
restriction is lossless whenever the per-antenna caps stay inactive (the
solve pipeline re-solves the full-dimension program when they bind).
Solutions are certified against the full-dimension constraints either way.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import chi2

from .exceptions import AssemblyError, DegenerateGeometry, DimensionalInfeasibility
from .linalg import eig_hermitian, hermitize, svd_complex
from .arrays import UncertaintyRegion
from .scenario import NormalizedModel, Scenario


# ---------------------------------------------------------------------------
# null-space basis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NullSpaceBasis:
    """Orthonormal basis of the common null space of all user channels."""

    matrix: np.ndarray          # N x (N - K)
    channel_stack: np.ndarray   # N x K

    def __post_init__(self):
        v = self.matrix
        gram = v.conj().T @ v
        if not np.allclose(gram, np.eye(v.shape[1]), atol=1e-10):
            raise AssemblyError("null-space basis columns are not orthonormal")
        leak = np.abs(self.channel_stack.conj().T @ v)
        scale = max(1.0, float(np.abs(self.channel_stack).max()))
        if leak.size and leak.max() > 1e-10 * scale * v.shape[0]:
            raise AssemblyError("basis does not annihilate the channel stack")

    @property
    def n_antennas(self) -> int:
        return self.matrix.shape[0]

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]


def an_null_basis(lu_channels) -> NullSpaceBasis:
    """Orthonormal basis of ``null(H^H)`` for stacked user channels ``H``.

    Raises
    ------
    DimensionalInfeasibility
        If there are at least as many users as transmit antennas.
    DegenerateGeometry
        If the user channels are numerically linearly dependent.
    """
    if isinstance(lu_channels, np.ndarray) and lu_channels.ndim == 2:
        h = np.asarray(lu_channels, dtype=complex)
    else:
        h = np.stack([np.asarray(c, dtype=complex) for c in lu_channels], axis=1)
    n, k = h.shape
    if k >= n:
        raise DimensionalInfeasibility(
            f"AN null space needs more antennas than users (N={n}, K={k})"
        )
    normalized = h / np.linalg.norm(h, axis=0, keepdims=True)
    _, s, v = svd_complex(normalized.conj().T)
    if s[k - 1] <= 1e-8 * s[0]:
        raise DegenerateGeometry(
            f"user channel stack is rank deficient (singular values {s})"
        )
    vbar = v[:, k:]
    return NullSpaceBasis(matrix=vbar, channel_stack=h)


def antenna_an_coeff(basis: NullSpaceBasis, n: int) -> np.ndarray:
    """Coefficient matrix ``E`` with ``tr(E T) == [V T V^H]_{nn}``."""
    col = basis.matrix.conj().T[:, n]
    return np.outer(col, col.conj())


# ---------------------------------------------------------------------------
# chance bound (passive eavesdroppers)
# ---------------------------------------------------------------------------

def inverse_chisq_quantile(p: float, half_dof: int) -> float:
    """Quantile of the reciprocal of a chi-square variable with ``2 n`` DoF.

    For ``Y = 1 / X`` with ``X ~ chi^2_{2n}``, ``P(Y <= y) = 1 - F_{2n}(1/y)``,
    hence the ``p``-quantile is ``1 / F_{2n}^{-1}(1 - p)``.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile probability must lie in (0, 1), got {p}")
    if half_dof < 1:
        raise ValueError("half_dof must be >= 1")
    denom = chi2.ppf(1.0 - p, df=2 * half_dof)
    if not np.isfinite(denom):
        return 0.0
    return float(1.0 / denom)


def chance_bound_xi(kappa: float, num_pe: int, n: int, gamma_p: float,
                    sigma_p_w: float) -> float:
    """Spectral bound that enforces the passive-Eve outage requirement.

    Requiring ``lambda_max(sum W - gamma_p Z) <= xi`` with this ``xi``
    guarantees that the largest of ``num_pe`` independent Rayleigh
    eavesdroppers exceeds SINR ``gamma_p`` with probability at most
    ``1 - kappa``.  The bound is one-sided (conservative).
    """
    if not 0.0 < kappa < 1.0:
        raise ValueError("kappa must lie in (0, 1)")
    if num_pe < 1:
        raise ValueError("num_pe must be >= 1")
    if gamma_p < 0:
        raise ValueError("gamma_p must be >= 0")
    if gamma_p == 0.0:
        return 0.0
    p = 1.0 - kappa ** (1.0 / num_pe)
    return inverse_chisq_quantile(p, n) * gamma_p * sigma_p_w


# ---------------------------------------------------------------------------
# worst-case AE LMI
# ---------------------------------------------------------------------------

def build_ae_lmi(beams_w, t, mu: float, region: UncertaintyRegion,
                 gamma_a: float, sigma_a_w: float,
                 basis: NullSpaceBasis) -> np.ndarray:
    """S-procedure block certifying the worst-case AE SINR cap.

    Returns the (N+1)-dimensional Hermitian matrix

    ``[[mu I + Z, Z h], [h^H Z, -mu eps^2 + sigma_a^2 + h^H Z h]]
      - (1 / gamma_a) U^H (sum W) U``,  ``U = [I, h]``, ``Z = V T V^H``;

    its positive semidefiniteness is equivalent to the SINR of every channel
    in the uncertainty ball staying at or below ``gamma_a``.
    """
    if mu < 0:
        raise ValueError("multiplier mu must be >= 0")
    if gamma_a <= 0:
        raise ValueError("gamma_a must be positive")
    v = basis.matrix
    n = v.shape[0]
    t = np.asarray(t, dtype=complex)
    z = v @ t @ v.conj().T if t.size else np.zeros((n, n), dtype=complex)
    h = np.asarray(region.center, dtype=complex)
    wsum = np.zeros((n, n), dtype=complex)
    for w in beams_w:
        wsum = wsum + np.asarray(w, dtype=complex)
    zh = z @ h
    block = np.zeros((n + 1, n + 1), dtype=complex)
    block[:n, :n] = mu * np.eye(n) + z
    block[:n, n] = zh
    block[n, :n] = zh.conj()
    block[n, n] = -mu * region.radius**2 + sigma_a_w + (h.conj() @ zh).real
    u = np.hstack([np.eye(n), h[:, None]])
    block -= (u.conj().T @ wsum @ u) / gamma_a
    return hermitize(block)


# ---------------------------------------------------------------------------
# tolerances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ToleranceSet:
    """Eavesdropper SINR tolerances in linear units plus the outage level."""

    ae_sinr: tuple[float, ...]
    pe_sinr: float | None
    outage_prob: float

    def __post_init__(self):
        if any(g <= 0 for g in self.ae_sinr):
            raise ValueError("AE SINR tolerances must be positive")
        if self.pe_sinr is not None and self.pe_sinr <= 0:
            raise ValueError("PE SINR tolerance must be positive")
        if not 0.0 < self.outage_prob < 1.0:
            raise ValueError("outage probability must lie in (0, 1)")

    def stacked(self) -> np.ndarray:
        vals = list(self.ae_sinr)
        if self.pe_sinr is not None:
            vals.append(self.pe_sinr)
        return np.array(vals)

    def replace_stacked(self, gammas) -> "ToleranceSet":
        gammas = list(gammas)
        r = len(self.ae_sinr)
        pe = gammas[r] if self.pe_sinr is not None else None
        return ToleranceSet(tuple(gammas[:r]), pe, self.outage_prob)


def default_tolerances(scenario: Scenario) -> ToleranceSet:
    """Tolerance initialization for the two-stage pipeline.

    AE tolerances default to 1% of the user SNR floor (20 dB below).  The PE
    tolerance, unless given, is sized from a zero-forcing power estimate so
    the conservative spectral bound starts feasible: the bound must admit at
    least the beam power that the user SNR floors force into the channel
    span, where AN cannot reach.  The min-max stage then shrinks it.
    """
    model = scenario.normalized()
    zeta = scenario.lu_snr
    if scenario.gamma_ae_db is not None:
        gamma_ae = 10 ** (scenario.gamma_ae_db / 10.0)
    else:
        gamma_ae = zeta / 100.0
    ae = (gamma_ae,) * scenario.num_ae
    if scenario.num_pe == 0:
        return ToleranceSet(ae, None, scenario.outage_kappa)
    if scenario.gamma_pe_db is not None:
        return ToleranceSet(ae, 10 ** (scenario.gamma_pe_db / 10.0), scenario.outage_kappa)
    h = model.lu_channels
    n, k = h.shape
    need = 0.0
    for i in range(k):
        others = np.delete(np.arange(k), i)
        if others.size:
            ho = h[:, others]
            proj = np.eye(n) - ho @ np.linalg.pinv(ho)
            depth = float(np.linalg.norm(proj @ h[:, i]) ** 2)
        else:
            depth = float(np.linalg.norm(h[:, i]) ** 2)
        need += zeta * model.noise_lu_w / depth
    quant = inverse_chisq_quantile(1.0 - scenario.outage_kappa ** (1.0 / scenario.num_pe), n)
    gamma_pe = 2.0 * need / (quant * model.noise_pe_w)
    return ToleranceSet(ae, gamma_pe, scenario.outage_kappa)


# ---------------------------------------------------------------------------
# cone program IR
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LmiTerm:
    """One congruence contribution ``coeff * A @ X @ A^H`` to an LMI."""

    coeff: float
    factor: np.ndarray


@dataclass(frozen=True)
class LmiBlock:
    """Affine Hermitian expression constrained positive semidefinite."""

    name: str
    dim: int
    const: np.ndarray
    matrix_terms: dict[str, tuple[LmiTerm, ...]]
    scalar_terms: dict[str, np.ndarray]

    def evaluate(self, matrices: dict[str, np.ndarray],
                 scalars: dict[str, float]) -> np.ndarray:
        out = np.array(self.const, dtype=complex)
        for var, terms in self.matrix_terms.items():
            x = matrices[var]
            for term in terms:
                out = out + term.coeff * (term.factor @ x @ term.factor.conj().T)
        for var, coeff in self.scalar_terms.items():
            out = out + scalars[var] * coeff
        return hermitize(out)


@dataclass(frozen=True)
class TraceConstraint:
    """Linear inequality ``sum Re tr(C_v X_v) + sum c_s mu_s <= upper``."""

    name: str
    matrix_coeffs: dict[str, np.ndarray]
    scalar_coeffs: dict[str, float]
    upper: float

    def evaluate(self, matrices: dict[str, np.ndarray],
                 scalars: dict[str, float]) -> float:
        total = 0.0
        for var, c in self.matrix_coeffs.items():
            total += float(np.trace(c @ matrices[var]).real)
        for var, c in self.scalar_coeffs.items():
            total += c * scalars[var]
        return total


@dataclass(frozen=True)
class ConeProgram:
    """Complex Hermitian SDP in block form with linear trace constraints.

    ``lifts`` maps each matrix variable to the (orthonormal-column) matrix
    ``L`` such that the variable in full antenna coordinates is
    ``L @ X @ L^H``; identity lifts mean the program is already posed in
    full coordinates.  Immutable once assembled.
    """

    matrix_vars: tuple[tuple[str, int], ...]
    nonneg_scalars: tuple[str, ...]
    objective_matrix: dict[str, np.ndarray]
    objective_scalar: dict[str, float]
    lmi_constraints: tuple[LmiBlock, ...]
    linear_constraints: tuple[TraceConstraint, ...]
    lifts: dict[str, np.ndarray]
    notes: dict = field(default_factory=dict)

    def var_dim(self, name: str) -> int:
        for var, dim in self.matrix_vars:
            if var == name:
                return dim
        raise KeyError(name)

    def objective_value(self, matrices: dict[str, np.ndarray],
                        scalars: dict[str, float] | None = None) -> float:
        total = 0.0
        for var, c in self.objective_matrix.items():
            total += float(np.trace(c @ matrices[var]).real)
        for var, c in self.objective_scalar.items():
            total += c * (scalars or {})[var]
        return total


def _channel_span(model: NormalizedModel) -> np.ndarray:
    cols = [model.lu_channels]
    if model.ae_regions:
        cols.append(np.stack([r.center for r in model.ae_regions], axis=1))
    stack = np.concatenate(cols, axis=1)
    u, s, _ = svd_complex(stack)
    rank = int(np.sum(s > 1e-10 * s[0]))
    return u[:, :rank]


def _an_span(basis: NullSpaceBasis, model: NormalizedModel) -> np.ndarray:
    if not model.ae_regions:
        return np.zeros((basis.dim, 0))
    proj = np.stack([basis.matrix.conj().T @ r.center for r in model.ae_regions], axis=1)
    u, s, _ = svd_complex(proj)
    if s.size == 0 or s[0] == 0:
        return np.zeros((basis.dim, 0))
    rank = int(np.sum(s > 1e-10 * s[0]))
    return u[:, :rank]


def assemble_p4(scenario: Scenario, tolerances: ToleranceSet,
                basis: NullSpaceBasis, reduce: bool = True) -> ConeProgram:
    """Assemble the robust power-minimization cone program.

    With ``reduce=True`` the matrix variables live on the span of the user
    channels and AE channel estimates (see module docstring); lifting data is
    attached so solutions come back in antenna coordinates.
    """
    model = scenario.normalized()
    n, k = model.lu_channels.shape
    r = len(model.ae_regions)
    q = scenario.num_pe
    if len(tolerances.ae_sinr) != r:
        raise AssemblyError(f"expected {r} AE tolerances, got {len(tolerances.ae_sinr)}")
    if q > 0 and tolerances.pe_sinr is None:
        raise AssemblyError("scenario has passive eavesdroppers but no PE tolerance")
    if basis.n_antennas != n or basis.dim != n - k:
        raise AssemblyError("null-space basis does not match the scenario dimensions")
    leak = np.abs(model.lu_channels.conj().T @ basis.matrix).max()
    if leak > 1e-8 * np.abs(model.lu_channels).max() * n:
        raise AssemblyError("basis is not a null-space basis for these channels")

    zeta = scenario.lu_snr
    if zeta < max(tolerances.ae_sinr, default=0.0):
        warnings.warn(
            "user SNR floor is below an AE SINR tolerance; secrecy margin is void",
            stacklevel=2,
        )

    if reduce:
        span = _channel_span(model)
        an = _an_span(basis, model)
    else:
        span = np.eye(n)
        an = np.eye(n - k)
    d = span.shape[1]
    dt = an.shape[1]
    an_full = basis.matrix @ an                     # N x dt, orthonormal columns
    h_u = span.conj().T @ model.lu_channels         # d x k
    h_a = [span.conj().T @ reg.center for reg in model.ae_regions]
    span_an = span.conj().T @ an_full               # d x dt

    wnames = tuple(f"W{i + 1}" for i in range(k))
    munames = tuple(f"mu{i + 1}" for i in range(r))
    matrix_vars = [(w, d) for w in wnames]
    lifts = {w: span for w in wnames}
    has_t = dt > 0
    if has_t:
        matrix_vars.append(("T", dt))
        lifts["T"] = an

    obj_matrix = {w: np.eye(d, dtype=complex) for w in wnames}
    if has_t:
        obj_matrix["T"] = np.eye(dt, dtype=complex)

    lmis: list[LmiBlock] = []
    linear: list[TraceConstraint] = []

    # user SNR floors, linearized against the interference-plus-noise power
    for i in range(k):
        hk = np.outer(h_u[:, i], h_u[:, i].conj())
        coeffs = {}
        for j in range(k):
            coeffs[wnames[j]] = hermitize(-hk if j == i else zeta * hk)
        linear.append(TraceConstraint(
            name=f"lu_snr_{i + 1}",
            matrix_coeffs=coeffs,
            scalar_coeffs={},
            upper=-zeta * model.noise_lu_w,
        ))

    # S-procedure blocks, one per active eavesdropper
    for j in range(r):
        reg = model.ae_regions[j]
        h = h_a[j]
        gamma = tolerances.ae_sinr[j]
        u_fac = np.hstack([np.eye(d), h[:, None]])          # d x (d+1)
        terms: dict[str, tuple[LmiTerm, ...]] = {
            w: (LmiTerm(-1.0 / gamma, u_fac.conj().T),) for w in wnames
        }
        if has_t:
            b_fac = np.vstack([span_an, h.conj()[None, :] @ span_an])
            terms["T"] = (LmiTerm(1.0, b_fac),)
        const = np.zeros((d + 1, d + 1), dtype=complex)
        const[d, d] = model.noise_ae_w
        mu_coeff = np.zeros((d + 1, d + 1), dtype=complex)
        mu_coeff[:d, :d] = np.eye(d)
        mu_coeff[d, d] = -reg.radius**2
        lmis.append(LmiBlock(
            name=f"ae_worst_case_{j + 1}",
            dim=d + 1,
            const=const,
            matrix_terms=terms,
            scalar_terms={munames[j]: mu_coeff},
        ))

    # spectral chance bound for passive eavesdroppers
    xi = None
    if q > 0:
        xi = chance_bound_xi(tolerances.outage_prob, q, n,
                             tolerances.pe_sinr, model.noise_pe_w)
        terms = {w: (LmiTerm(-1.0, np.eye(d)),) for w in wnames}
        if has_t:
            terms["T"] = (LmiTerm(float(tolerances.pe_sinr), span_an),)
        lmis.append(LmiBlock(
            name="pe_chance_bound",
            dim=d,
            const=xi * np.eye(d, dtype=complex),
            matrix_terms=terms,
            scalar_terms={},
        ))

    # per-antenna (or total) power budget
    if scenario.sum_power_constraint:
        coeffs = {w: np.eye(d, dtype=complex) for w in wnames}
        if has_t:
            coeffs["T"] = np.eye(dt, dtype=complex)
        linear.append(TraceConstraint(
            name="sum_power",
            matrix_coeffs=coeffs,
            scalar_coeffs={},
            upper=n * scenario.per_antenna_w,
        ))
    else:
        for a in range(n):
            qn = span.conj().T[:, a]
            cw = np.outer(qn, qn.conj())
            coeffs = {w: cw for w in wnames}
            if has_t:
                vn = an_full.conj().T[:, a]
                coeffs["T"] = np.outer(vn, vn.conj())
            linear.append(TraceConstraint(
                name=f"antenna_power_{a + 1}",
                matrix_coeffs=coeffs,
                scalar_coeffs={},
                upper=scenario.per_antenna_w,
            ))

    # PSD cones for the variables themselves
    for w in wnames:
        lmis.append(LmiBlock(name=f"psd_{w}", dim=d,
                             const=np.zeros((d, d), dtype=complex),
                             matrix_terms={w: (LmiTerm(1.0, np.eye(d)),)},
                             scalar_terms={}))
    if has_t:
        lmis.append(LmiBlock(name="psd_T", dim=dt,
                             const=np.zeros((dt, dt), dtype=complex),
                             matrix_terms={"T": (LmiTerm(1.0, np.eye(dt)),)},
                             scalar_terms={}))

    return ConeProgram(
        matrix_vars=tuple(matrix_vars),
        nonneg_scalars=munames,
        objective_matrix=obj_matrix,
        objective_scalar={},
        lmi_constraints=tuple(lmis),
        linear_constraints=tuple(linear),
        lifts=lifts,
        notes={
            "n_antennas": n,
            "num_lu": k,
            "num_ae": r,
            "num_pe": q,
            "xi": xi,
            "reduced": bool(reduce),
            "beam_vars": wnames,
            "an_var": "T" if has_t else None,
            "an_lift_full": an,   # (N-K) x dt within the null-space coordinates
        },
    )


# ---------------------------------------------------------------------------
# standalone certification (independent of the solve path)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertificationCheck:
    name: str
    value: float
    bound: float
    ok: bool


@dataclass(frozen=True)
class CertificationReport:
    checks: tuple[CertificationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[CertificationCheck]:
        return [c for c in self.checks if not c.ok]

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "PASS" if c.ok else "FAIL"
            out.append(f"{status}  {c.name}: value={c.value:.6e} bound={c.bound:.6e}")
        return out


def verify_solution(scenario: Scenario, tolerances: ToleranceSet,
                    basis: NullSpaceBasis, solution,
                    feas_tol: float = 1e-8) -> CertificationReport:
    """Re-verify every design constraint from scratch on a solution.

    ``solution`` needs ``beams`` (list of length-N vectors), ``an_factor``
    (the (N-K)-dimensional AN factor ``T``) and ``certificates`` (the
    S-procedure multipliers).  The check recomputes all constraint residuals
    directly from the scenario, independent of how the solution was obtained.
    """
    model = scenario.normalized()
    n, k = model.lu_channels.shape
    v = basis.matrix
    t = np.asarray(solution.an_factor, dtype=complex)
    z = v @ t @ v.conj().T if t.size else np.zeros((n, n), dtype=complex)
    beams = [np.asarray(w, dtype=complex) for w in solution.beams]
    mats = [np.outer(w, w.conj()) for w in beams]
    mu = np.asarray(solution.certificates, dtype=float)
    checks: list[CertificationCheck] = []

    for i in range(k):
        h = model.lu_channels[:, i]
        num = abs(np.vdot(h, beams[i])) ** 2
        den = sum(abs(np.vdot(h, w)) ** 2 for j, w in enumerate(beams) if j != i)
        den += model.noise_lu_w
        val = num / den
        checks.append(CertificationCheck(
            f"lu_snr_{i + 1}", val, scenario.lu_snr,
            val >= scenario.lu_snr * (1 - 1e-6) - feas_tol,
        ))

    for j, reg in enumerate(model.ae_regions):
        s_block = build_ae_lmi(mats, t, float(mu[j]), reg,
                               tolerances.ae_sinr[j], model.noise_ae_w, basis)
        lam = float(np.linalg.eigvalsh(s_block)[0])
        scale = max(1.0, float(np.abs(s_block).max()))
        checks.append(CertificationCheck(
            f"ae_worst_case_{j + 1}", lam, -feas_tol * scale,
            lam >= -feas_tol * scale * 10,
        ))

    if scenario.num_pe > 0:
        xi = chance_bound_xi(tolerances.outage_prob, scenario.num_pe, n,
                             tolerances.pe_sinr, model.noise_pe_w)
        wsum = sum(mats)
        lam = float(eig_hermitian(wsum - tolerances.pe_sinr * z)[0][0])
        checks.append(CertificationCheck(
            "pe_chance_bound", lam, xi,
            lam <= xi + feas_tol * max(1.0, xi) * 10,
        ))

    per_antenna = sum(np.abs(w) ** 2 for w in beams) + np.abs(np.diag(z))
    cap = scenario.per_antenna_w
    if scenario.sum_power_constraint:
        total = float(sum(np.vdot(w, w).real for w in beams) + np.trace(z).real)
        checks.append(CertificationCheck(
            "sum_power", total, n * cap, total <= n * cap * (1 + 1e-7) + feas_tol,
        ))
    else:
        worst = float(per_antenna.max())
        checks.append(CertificationCheck(
            "antenna_power", worst, cap, worst <= cap * (1 + 1e-7) + feas_tol,
        ))

    tr_z = float(np.trace(z).real)
    for i in range(k):
        h = model.lu_channels[:, i]
        leak = float((h.conj() @ z @ h).real)
        bound = 1e-10 * max(tr_z, 0.0) * float(np.vdot(h, h).real)
        checks.append(CertificationCheck(
            f"an_null_{i + 1}", leak, bound, leak <= bound + 1e-30,
        ))

    lam_t = float(np.linalg.eigvalsh(t)[0]) if t.size else 0.0
    checks.append(CertificationCheck("psd_T", lam_t, 0.0, lam_t >= -feas_tol * 10))
    checks.append(CertificationCheck(
        "mu_nonneg", float(mu.min()) if mu.size else 0.0, 0.0,
        bool(mu.size == 0 or mu.min() >= -feas_tol),
    ))
    return CertificationReport(tuple(checks))
