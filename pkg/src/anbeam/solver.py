"""Cone-program solving and beam extraction.

Complex Hermitian variables are parametrized by real scalars (diagonal first,
then re/im pairs of the upper triangle) and every LMI is lowered to a real
symmetric block through the ``[[Re, -Im], [Im, Re]]`` embedding, which doubles
each eigenvalue and preserves positive semidefiniteness.  The embedded
program is handed to the CVXOPT cone solver, a primal-dual path-following
method with Nesterov-Todd scaling and Mehrotra predictor-corrector steps and
self-dual infeasibility certificates; a small tolerance ladder works around
scaling breakdowns on degenerate instances without ever loosening the
caller's tolerances.

Beamforming vectors are recovered from the solved outer-product matrices by
eigendecomposition.  A failed rank-one ratio is an error carrying the
spectrum, never silently randomized: at a true optimum of this program the
beam matrices are rank one, so a violation signals a solver or tolerance
problem worth surfacing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from cvxopt import matrix as cvx_matrix
from cvxopt import solvers as cvx_solvers

from .exceptions import InfeasibleScenario, NumericalFailure, RankViolation
from .linalg import complex_to_real_embed, eig_hermitian, hermitize
from .program import ConeProgram, NullSpaceBasis, an_null_basis, assemble_p4
from .scenario import Scenario


# ---------------------------------------------------------------------------
# Hermitian parametrization: n diagonal entries, then (re, im) per i<j pair
# ---------------------------------------------------------------------------

def herm_param_count(n: int) -> int:
    return n * n


def herm_from_params(x: np.ndarray, n: int) -> np.ndarray:
    a = np.zeros((n, n), dtype=complex)
    a[np.diag_indices(n)] = x[:n]
    idx = n
    for i in range(n):
        for j in range(i + 1, n):
            a[i, j] = x[idx] + 1j * x[idx + 1]
            a[j, i] = x[idx] - 1j * x[idx + 1]
            idx += 2
    return a


def params_from_herm(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    out = np.empty(n * n)
    out[:n] = a.diagonal().real
    idx = n
    for i in range(n):
        for j in range(i + 1, n):
            out[idx] = a[i, j].real
            out[idx + 1] = a[i, j].imag
            idx += 2
    return out


def congruence_columns(a: np.ndarray) -> np.ndarray:
    """Images ``a @ B_p @ a^H`` of every Hermitian basis matrix ``B_p``."""
    m, n = a.shape
    outer = np.einsum("pi,qj->ijpq", a, a.conj())
    cols = np.empty((n * n, m, m), dtype=complex)
    for i in range(n):
        cols[i] = outer[i, i]
    idx = n
    for i in range(n):
        for j in range(i + 1, n):
            cols[idx] = outer[i, j] + outer[j, i]
            cols[idx + 1] = 1j * outer[i, j] - 1j * outer[j, i]
            idx += 2
    return cols


def trace_coeff_row(c: np.ndarray) -> np.ndarray:
    """Gradient of ``Re tr(C X)`` with respect to the parameters of ``X``."""
    n = c.shape[0]
    out = np.empty(n * n)
    out[:n] = c.diagonal().real
    idx = n
    for i in range(n):
        for j in range(i + 1, n):
            out[idx] = 2 * c[i, j].real
            out[idx + 1] = 2 * c[i, j].imag
            idx += 2
    return out


# ---------------------------------------------------------------------------
# flat (real-embedded) form
# ---------------------------------------------------------------------------

@dataclass
class FlatSdp:
    """Real-embedded standard form: ``min c.x`` over linear rows and blocks.

    Each block demands ``H0 + sum_p x_p F_p >= 0`` with real symmetric
    matrices of the embedded (doubled) dimension; ``gmat`` stores the
    stacked ``-vec(F_p)`` columns in CVXOPT layout.
    """

    nvar: int
    c: np.ndarray
    gl: np.ndarray
    hl: np.ndarray
    linear_names: list[str]
    blocks: list[dict]
    matrix_layout: list[tuple[str, int, int]]   # (name, herm dim, offset)
    scalar_layout: list[tuple[str, int]]
    lifts: dict[str, np.ndarray] = field(default_factory=dict)
    notes: dict = field(default_factory=dict)


def _embed_flat(mats: np.ndarray) -> np.ndarray:
    npar = mats.shape[0]
    m2 = 2 * mats.shape[1]
    out = np.empty((npar, m2 * m2))
    for p in range(npar):
        out[p] = complex_to_real_embed(mats[p]).flatten(order="F")
    return out


def lower(program: ConeProgram) -> FlatSdp:
    """Lower a Hermitian cone program to the real-embedded flat form."""
    matrix_layout = []
    offset = 0
    for name, dim in program.matrix_vars:
        matrix_layout.append((name, dim, offset))
        offset += herm_param_count(dim)
    scalar_layout = []
    for name in program.nonneg_scalars:
        scalar_layout.append((name, offset))
        offset += 1
    nvar = offset

    c = np.zeros(nvar)
    for name, dim, off in matrix_layout:
        coeff = program.objective_matrix.get(name)
        if coeff is not None:
            c[off:off + dim * dim] = trace_coeff_row(np.asarray(coeff, dtype=complex))
    for name, off in scalar_layout:
        c[off] = program.objective_scalar.get(name, 0.0)

    nl = len(program.linear_constraints) + len(scalar_layout)
    gl = np.zeros((nl, nvar))
    hl = np.zeros(nl)
    names = []
    for row, con in enumerate(program.linear_constraints):
        for name, dim, off in matrix_layout:
            coeff = con.matrix_coeffs.get(name)
            if coeff is not None:
                gl[row, off:off + dim * dim] = trace_coeff_row(np.asarray(coeff, dtype=complex))
        for name, off in scalar_layout:
            gl[row, off] = con.scalar_coeffs.get(name, 0.0)
        hl[row] = con.upper
        names.append(con.name)
    for i, (name, off) in enumerate(scalar_layout):
        row = len(program.linear_constraints) + i
        gl[row, off] = -1.0
        names.append(f"nonneg_{name}")

    blocks = []
    for lmi in program.lmi_constraints:
        m2 = 2 * lmi.dim
        g = np.zeros((m2 * m2, nvar))
        for name, dim, off in matrix_layout:
            terms = lmi.matrix_terms.get(name)
            if not terms:
                continue
            acc = np.zeros((dim * dim, lmi.dim, lmi.dim), dtype=complex)
            for term in terms:
                acc += term.coeff * congruence_columns(term.factor)
            g[:, off:off + dim * dim] = -_embed_flat(acc).T
        for name, off in scalar_layout:
            coeff = lmi.scalar_terms.get(name)
            if coeff is not None:
                g[:, off] = -complex_to_real_embed(np.asarray(coeff, dtype=complex)).flatten(order="F")
        blocks.append({
            "name": lmi.name,
            "dim": m2,
            "g": g,
            "h0": complex_to_real_embed(np.asarray(lmi.const, dtype=complex)),
        })

    return FlatSdp(
        nvar=nvar,
        c=c,
        gl=gl,
        hl=hl,
        linear_names=names,
        blocks=blocks,
        matrix_layout=matrix_layout,
        scalar_layout=scalar_layout,
        lifts=dict(program.lifts),
        notes=dict(program.notes),
    )


# ---------------------------------------------------------------------------
# solving
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SolverSettings:
    """Interior-point stopping controls.

    ``step_fraction`` documents the fraction-to-the-boundary rule of the
    backend; CVXOPT manages its own step damping, so the field is advisory.
    """

    gap_tol: float = 1e-7
    feas_tol: float = 1e-8
    max_iters: int = 200
    step_fraction: float = 0.98

    def __post_init__(self):
        if self.gap_tol <= 0 or self.feas_tol <= 0:
            raise ValueError("tolerances must be positive")
        if not 0.0 < self.step_fraction < 1.0:
            raise ValueError("step_fraction must lie in (0, 1)")


@dataclass
class SdpSolution:
    """Solved program: variable values in full antenna coordinates."""

    status: str                     # optimal | infeasible | unbounded | iteration_limit
    objective: float
    dual_objective: float
    gap: float
    iterations: int
    matrices: dict[str, np.ndarray]
    scalars: dict[str, float]
    linear_duals: dict[str, float]
    notes: dict = field(default_factory=dict)
    certificate: dict | None = None


def _flat_residuals(flat: FlatSdp, x: np.ndarray) -> tuple[float, float]:
    lin = float((flat.gl @ x - flat.hl).max()) if flat.hl.size else 0.0
    worst_eig = 0.0
    for blk in flat.blocks:
        m2 = blk["dim"]
        fx = blk["h0"] - (blk["g"] @ x).reshape((m2, m2), order="F")
        fx = 0.5 * (fx + fx.T)
        lam = float(np.linalg.eigvalsh(fx)[0])
        worst_eig = min(worst_eig, lam)
    return lin, worst_eig


def solve_flat(flat: FlatSdp, settings: SolverSettings | None = None) -> SdpSolution:
    settings = settings or SolverSettings()
    gs = [cvx_matrix(blk["g"]) for blk in flat.blocks]
    hs = [cvx_matrix(blk["h0"]) for blk in flat.blocks]
    gl = cvx_matrix(flat.gl) if flat.hl.size else None
    hl = cvx_matrix(flat.hl) if flat.hl.size else None
    c = cvx_matrix(flat.c)

    rungs = []
    for gap, feas in (
        (min(settings.gap_tol, 1e-8), min(settings.feas_tol, 1e-8)),
        (settings.gap_tol, settings.feas_tol),
        (settings.gap_tol, settings.feas_tol * 10),
    ):
        if (gap, feas) not in rungs:
            rungs.append((gap, feas))

    sol = None
    errors = []
    for gap, feas in rungs:
        options = {
            "show_progress": False,
            "maxiters": settings.max_iters,
            "abstol": gap,
            "reltol": gap,
            "feastol": feas,
        }
        try:
            cand = cvx_solvers.sdp(c, Gl=gl, hl=hl, Gs=gs, hs=hs, options=options)
        except (ZeroDivisionError, ArithmeticError, ValueError) as exc:
            errors.append(f"{type(exc).__name__}: {exc}")
            continue
        if cand["status"] == "optimal":
            sol = cand
            break
        if sol is None or cand["status"] != "unknown":
            sol = cand
    if sol is None:
        raise NumericalFailure(
            "cone solver broke down at every tolerance rung: " + "; ".join(errors)
        )

    status_map = {
        "optimal": "optimal",
        "primal infeasible": "infeasible",
        "dual infeasible": "unbounded",
        "unknown": "iteration_limit",
    }
    status = status_map[sol["status"]]

    matrices: dict[str, np.ndarray] = {}
    scalars: dict[str, float] = {}
    duals: dict[str, float] = {}
    pobj = dobj = gap_val = float("nan")
    if sol["x"] is not None:
        x = np.asarray(sol["x"]).ravel()
        for name, dim, off in flat.matrix_layout:
            raw = herm_from_params(x[off:off + dim * dim], dim)
            lifted = flat.lifts.get(name)
            if lifted is not None and lifted.shape != (dim, dim):
                raw = lifted @ raw @ lifted.conj().T
            elif lifted is not None:
                raw = lifted @ raw @ lifted.conj().T
            matrices[name] = hermitize(raw)
        for name, off in flat.scalar_layout:
            scalars[name] = float(x[off])
        pobj = float(flat.c @ x)
        dobj = sol["dual objective"] if sol["dual objective"] is not None else float("nan")
        gap_val = abs(pobj - dobj)
        if status == "optimal":
            lin_res, eig_res = _flat_residuals(flat, x)
            scale = max(1.0, float(np.abs(flat.hl).max()) if flat.hl.size else 1.0)
            if (gap_val > settings.gap_tol * (1 + abs(pobj))
                    or lin_res > settings.feas_tol * scale * 10
                    or eig_res < -settings.feas_tol * scale * 10):
                status = "iteration_limit"
        if sol["zl"] is not None:
            zl = np.asarray(sol["zl"]).ravel()
            duals = {name: float(zl[i]) for i, name in enumerate(flat.linear_names)}

    certificate = None
    if status in ("infeasible", "unbounded"):
        certificate = {
            "kind": "farkas_dual" if status == "infeasible" else "primal_ray",
            "residual_certificate": float(sol.get("residual as primal infeasibility certificate")
                                          or sol.get("residual as dual infeasibility certificate")
                                          or 0.0),
        }

    return SdpSolution(
        status=status,
        objective=pobj,
        dual_objective=dobj,
        gap=gap_val,
        iterations=int(sol["iterations"]),
        matrices=matrices,
        scalars=scalars,
        linear_duals=duals,
        notes=dict(flat.notes),
        certificate=certificate,
    )


def solve(program: ConeProgram, settings: SolverSettings | None = None) -> SdpSolution:
    """Solve a Hermitian cone program; returns full-coordinate variables."""
    return solve_flat(lower(program), settings)


# ---------------------------------------------------------------------------
# beam extraction
# ---------------------------------------------------------------------------

def extract_rank_one(w: np.ndarray, ratio_tol: float = 1e-6) -> np.ndarray:
    """Recover ``v`` with ``w ~= v v^H`` from a PSD matrix.

    Raises :class:`RankViolation` (with the spectrum attached) when the
    second eigenvalue exceeds ``ratio_tol`` times the first.  The returned
    vector's phase is fixed so its largest-magnitude entry is real positive.
    """
    vals, vecs = eig_hermitian(w)
    lam1 = float(vals[0])
    if lam1 <= 0.0:
        raise ValueError("matrix is zero or not PSD; no beam to extract")
    lam2 = float(max(vals[1], 0.0)) if vals.size > 1 else 0.0
    if lam2 / lam1 > ratio_tol:
        raise RankViolation(
            f"rank-one extraction failed: lambda2/lambda1 = {lam2 / lam1:.3e}",
            spectrum=vals,
        )
    v = np.sqrt(lam1) * vecs[:, 0]
    idx = int(np.argmax(np.abs(v)))
    phase = v[idx] / abs(v[idx])
    return v * phase.conj()


@dataclass
class BeamformingSolution:
    """Deployable design: beams, AN factor/covariance, and certificates."""

    beams: list[np.ndarray]
    an_factor: np.ndarray
    an_covariance: np.ndarray
    certificates: np.ndarray
    objective_w: float
    total_power_w: float
    per_antenna_power_w: np.ndarray
    gap: float
    status: str
    cap_duals: np.ndarray
    active_caps: tuple[int, ...]
    solver_info: dict = field(default_factory=dict)


def to_beamforming_solution(sdp: SdpSolution, basis: NullSpaceBasis,
                            ratio_tol: float = 1e-6) -> BeamformingSolution:
    """Map a solved program to beams and AN covariance in antenna coordinates."""
    if sdp.status != "optimal":
        raise NumericalFailure(f"cannot extract beams from status {sdp.status!r}")
    beam_vars = sdp.notes.get("beam_vars") or sorted(
        name for name in sdp.matrices if name.startswith("W"))
    beams = [extract_rank_one(sdp.matrices[name], ratio_tol) for name in beam_vars]
    n = basis.n_antennas
    nk = basis.dim
    an_var = sdp.notes.get("an_var")
    if an_var and an_var in sdp.matrices:
        t_red = sdp.matrices[an_var]
        if t_red.shape == (nk, nk):
            t_full = t_red
        else:
            lift = sdp.notes.get("an_lift_full")
            t_full = lift @ t_red @ lift.conj().T
    else:
        t_full = np.zeros((nk, nk), dtype=complex)
    t_full = hermitize(t_full)
    z = hermitize(basis.matrix @ t_full @ basis.matrix.conj().T)
    per_antenna = sum(np.abs(w) ** 2 for w in beams) + np.abs(np.diag(z))
    total = float(sum(np.vdot(w, w).real for w in beams) + np.trace(t_full).real)
    mu = np.array([sdp.scalars[name] for name in sorted(sdp.scalars)])
    cap_duals = np.array([
        sdp.linear_duals.get(f"antenna_power_{i + 1}", 0.0) for i in range(n)
    ])
    if "sum_power" in sdp.linear_duals:
        cap_duals = np.full(n, sdp.linear_duals["sum_power"])
    scale = max(1.0, float(cap_duals.max()) if cap_duals.size else 1.0)
    active = tuple(int(i) for i in np.nonzero(cap_duals > 1e-6 * scale)[0]
                   if cap_duals[i] > 1e-9)
    return BeamformingSolution(
        beams=beams,
        an_factor=t_full,
        an_covariance=z,
        certificates=mu,
        objective_w=sdp.objective,
        total_power_w=total,
        per_antenna_power_w=per_antenna,
        gap=sdp.gap,
        status=sdp.status,
        cap_duals=cap_duals,
        active_caps=active,
        solver_info={"iterations": sdp.iterations,
                     "dual_objective": sdp.dual_objective,
                     "reduced": sdp.notes.get("reduced", False)},
    )


# ---------------------------------------------------------------------------
# scenario-level pipeline
# ---------------------------------------------------------------------------

def _lift_is_identity(sdp: SdpSolution) -> bool:
    return not sdp.notes.get("reduced", False)


def solve_p4(scenario: Scenario, tolerances, settings: SolverSettings | None = None,
             basis: NullSpaceBasis | None = None,
             ) -> tuple[BeamformingSolution, NullSpaceBasis, SdpSolution]:
    """Solve the robust design for one scenario at fixed tolerances.

    Solves the channel-span reduction first.  The reduction is provably
    optimal while per-antenna caps are slack, so whenever caps come back
    active (or the reduced program is infeasible, which caps can cause) the
    full-dimension program is re-solved and its solution returned.
    """
    model = scenario.normalized()
    if basis is None:
        basis = an_null_basis(model.lu_channels)
    prog = assemble_p4(scenario, tolerances, basis, reduce=True)
    sdp = solve(prog, settings)
    need_full = False
    if sdp.status == "optimal":
        solution = to_beamforming_solution(sdp, basis)
        if solution.active_caps and not _lift_is_identity(sdp):
            need_full = True
    elif sdp.status == "infeasible":
        need_full = True
        solution = None
    else:
        raise NumericalFailure(
            f"first-stage solve ended with status {sdp.status!r} "
            f"(gap={sdp.gap:.2e}, iters={sdp.iterations})"
        )
    if need_full:
        prog = assemble_p4(scenario, tolerances, basis, reduce=False)
        sdp_full = solve(prog, settings)
        if sdp_full.status == "optimal":
            return to_beamforming_solution(sdp_full, basis), basis, sdp_full
        if sdp_full.status == "infeasible":
            raise InfeasibleScenario(
                "robust design infeasible at the given tolerances; relax the "
                "user SNR floor or raise the eavesdropper SINR tolerances"
            )
        raise NumericalFailure(f"full-dimension solve ended with status {sdp_full.status!r}")
    return solution, basis, sdp


# ---------------------------------------------------------------------------
# flat-form text export / import (cross-solver regression interface)
# ---------------------------------------------------------------------------

FLAT_FORMAT_HEADER = "anbeam-flat-sdp v1"


def export_program(program: ConeProgram, path) -> None:
    """Write the real-embedded flat form as sparse coordinate text.

    Layout: a header, variable/scalar layout lines, objective entries, dense
    linear rows as triples, then one ``block`` line per LMI followed by the
    upper triangle of its constant (``p = 0``) and per-parameter coefficient
    matrices (``p >= 1``), all as ``f`` coordinate triples.
    """
    flat = lower(program)
    lines = [f"# {FLAT_FORMAT_HEADER}", f"nvar {flat.nvar}"]
    for name, dim, off in flat.matrix_layout:
        lines.append(f"var {name} {dim} {off}")
    for name, off in flat.scalar_layout:
        lines.append(f"scalar {name} {off}")
    for p in np.nonzero(flat.c)[0]:
        lines.append(f"obj {p} {flat.c[p]!r}")
    lines.append(f"linear {flat.hl.size}")
    for row in range(flat.hl.size):
        lines.append(f"linname {row} {flat.linear_names[row]}")
        lines.append(f"linrhs {row} {flat.hl[row]!r}")
        for p in np.nonzero(flat.gl[row])[0]:
            lines.append(f"lin {row} {p} {flat.gl[row, p]!r}")
    for b, blk in enumerate(flat.blocks):
        m2 = blk["dim"]
        lines.append(f"block {b} {m2} {blk['name']}")
        h0 = blk["h0"]
        for i in range(m2):
            for j in range(i, m2):
                if h0[i, j] != 0.0:
                    lines.append(f"f {b} 0 {i} {j} {h0[i, j]!r}")
        g = blk["g"]
        for p in range(flat.nvar):
            col = g[:, p]
            if not col.any():
                continue
            fp = -col.reshape((m2, m2), order="F")
            for i in range(m2):
                for j in range(i, m2):
                    if fp[i, j] != 0.0:
                        lines.append(f"f {b} {p + 1} {i} {j} {fp[i, j]!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_program(path) -> FlatSdp:
    """Read a flat program written by :func:`export_program`."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = [ln.strip() for ln in fh]
    lines = [ln for ln in raw if ln and not ln.startswith("#")]
    if not raw or FLAT_FORMAT_HEADER not in raw[0]:
        raise ValueError("not an anbeam flat-sdp file")
    nvar = 0
    matrix_layout: list[tuple[str, int, int]] = []
    scalar_layout: list[tuple[str, int]] = []
    obj_entries: list[tuple[int, float]] = []
    lin_entries: list[tuple[int, int, float]] = []
    lin_rhs: dict[int, float] = {}
    lin_names: dict[int, str] = {}
    nlin = 0
    blocks: dict[int, dict] = {}
    for ln in lines:
        tok = ln.split()
        kind = tok[0]
        if kind == "nvar":
            nvar = int(tok[1])
        elif kind == "var":
            matrix_layout.append((tok[1], int(tok[2]), int(tok[3])))
        elif kind == "scalar":
            scalar_layout.append((tok[1], int(tok[2])))
        elif kind == "obj":
            obj_entries.append((int(tok[1]), float(tok[2])))
        elif kind == "linear":
            nlin = int(tok[1])
        elif kind == "linname":
            lin_names[int(tok[1])] = tok[2]
        elif kind == "linrhs":
            lin_rhs[int(tok[1])] = float(tok[2])
        elif kind == "lin":
            lin_entries.append((int(tok[1]), int(tok[2]), float(tok[3])))
        elif kind == "block":
            blocks[int(tok[1])] = {"dim": int(tok[2]), "name": tok[3], "entries": []}
        elif kind == "f":
            blocks[int(tok[1])]["entries"].append(
                (int(tok[2]), int(tok[3]), int(tok[4]), float(tok[5])))
        else:
            raise ValueError(f"unknown record {kind!r}")
    c = np.zeros(nvar)
    for p, val in obj_entries:
        c[p] = val
    gl = np.zeros((nlin, nvar))
    hl = np.zeros(nlin)
    for row, val in lin_rhs.items():
        hl[row] = val
    for row, p, val in lin_entries:
        gl[row, p] = val
    names = [lin_names.get(i, f"row_{i}") for i in range(nlin)]
    out_blocks = []
    for b in sorted(blocks):
        m2 = blocks[b]["dim"]
        h0 = np.zeros((m2, m2))
        g = np.zeros((m2 * m2, nvar))
        fps: dict[int, np.ndarray] = {}
        for p, i, j, val in blocks[b]["entries"]:
            if p == 0:
                h0[i, j] = val
                h0[j, i] = val
            else:
                fp = fps.setdefault(p - 1, np.zeros((m2, m2)))
                fp[i, j] = val
                fp[j, i] = val
        for p, fp in fps.items():
            g[:, p] = -fp.flatten(order="F")
        out_blocks.append({"name": blocks[b]["name"], "dim": m2, "g": g, "h0": h0})
    return FlatSdp(
        nvar=nvar, c=c, gl=gl, hl=hl, linear_names=names, blocks=out_blocks,
        matrix_layout=matrix_layout, scalar_layout=scalar_layout,
    )
