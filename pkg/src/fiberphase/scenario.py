"""Config-driven pipelines behind the command-line front end.

A scenario is a JSON file naming one path source (helix parameters or a
trajectory file), the polarizations to transport, the mode occupations and
ordering, and optionally a gyrotropic medium plus chamber length.  ``run``
produces results.csv / summary.json / plot_*.dat in the output directory;
``sweep`` repeats the pipeline over one swept parameter.  All emitted files
are byte-deterministic for a given config.
"""
from __future__ import annotations

import json
import os
import sys
import warnings

import numpy as np

from . import evolution, fock, geometry, media, spin

SCHEMA_VERSION = 1

RESULT_COLUMNS = [
    "sigma",
    "t",
    "lambda",
    "gamma",
    "phase_total",
    "phase_dynamical",
    "phase_geometric",
    "phase_analytic",
    "phase_quantal",
    "phase_vacuum_L",
    "phase_vacuum_R",
    "phase_vacuum_net",
    "norm_drift",
    "helicity_drift",
    "invariant_residual",
    "motion_residual",
    "flagged",
]

_SIGMA_SUFFIX = {+1: "R", -1: "L"}


class ScenarioError(Exception):
    """The configuration is invalid; the message names the offending field."""


class NumericalError(Exception):
    """A non-finite value appeared in computed results."""


def parse_angle(value, field):
    """Angle in radians from a number, or from a string with a 'deg' suffix."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, str):
        body = value.strip()
        if body.endswith("deg"):
            try:
                return float(body[:-3].strip()) * np.pi / 180.0
            except ValueError:
                raise ScenarioError(f"{field}: cannot parse degrees value {value!r}") from None
        raise ScenarioError(f"{field}: angle strings must end in 'deg', got {value!r}")
    raise ScenarioError(f"{field}: expected a number or 'NNN deg' string, got {value!r}")


def _require(cfg, key, kind, field=None):
    field = field or key
    if key not in cfg:
        raise ScenarioError(f"missing required field '{field}'")
    value = cfg[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ScenarioError(f"{field}: expected a number, got {value!r}")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ScenarioError(f"{field}: expected an integer, got {value!r}")
        return value
    if not isinstance(value, kind):
        raise ScenarioError(f"{field}: expected {kind.__name__}, got {value!r}")
    return value


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
    except FileNotFoundError:
        raise ScenarioError(f"config file not found: {path}") from None
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    if not isinstance(cfg, dict):
        raise ScenarioError(f"{path}: top level must be an object")
    return cfg


def build_path(cfg, base_dir=".") -> geometry.FiberPath:
    section = _require(cfg, "path", dict)
    kind = section.get("type")
    if kind == "helix":
        if "cone_angle" not in section:
            raise ScenarioError("missing required field 'path.cone_angle'")
        cone = parse_angle(section["cone_angle"], "path.cone_angle")
        n_steps = _require(section, "n_steps", int, "path.n_steps")
        if n_steps < 64:
            raise ScenarioError(f"path.n_steps: at least 64 steps required, got {n_steps}")
        try:
            return geometry.helix_path(
                cone_angle=cone,
                omega=_require(section, "omega", float, "path.omega"),
                k_mag=_require(section, "k_mag", float, "path.k_mag"),
                n_cycles=_require(section, "n_cycles", float, "path.n_cycles"),
                n_steps=n_steps,
            )
        except ValueError as exc:
            raise ScenarioError(f"path: {exc}") from None
    if kind == "file":
        filename = _require(section, "filename", str, "path.filename")
        if not os.path.isabs(filename):
            filename = os.path.join(base_dir, filename)
        n_steps = None
        try:
            loaded = geometry.load_path(filename)
        except ValueError as exc:
            raise ScenarioError(f"path.filename: {exc}") from None
        if loaded.n_samples < 65:
            raise ScenarioError(f"path.filename: at least 64 steps required, file has {loaded.n_samples - 1}")
        return loaded
    raise ScenarioError(f"path.type must be 'helix' or 'file', got {kind!r}")


def _parse_polarizations(cfg):
    values = cfg.get("polarizations", [+1, -1])
    if not isinstance(values, list) or not values:
        raise ScenarioError(f"polarizations: expected a nonempty list, got {values!r}")
    out = []
    for v in values:
        if v not in (-1, +1):
            raise ScenarioError(f"polarizations: entries must be +1 or -1, got {v!r}")
        if v not in out:
            out.append(v)
    return out


def _parse_occupations(cfg):
    occ = cfg.get("occupations", {"n_left": 0, "n_right": 0})
    if not isinstance(occ, dict):
        raise ScenarioError(f"occupations: expected an object, got {occ!r}")
    nl = occ.get("n_left", 0)
    nr = occ.get("n_right", 0)
    for name, n in (("occupations.n_left", nl), ("occupations.n_right", nr)):
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise ScenarioError(f"{name}: expected a nonnegative integer, got {n!r}")
    return nl, nr


def _parse_medium(cfg):
    raw = cfg.get("medium")
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise ScenarioError(f"medium: expected an object, got {raw!r}")
    kwargs = {}
    for name in ("eps1", "eps2", "eps3", "mu1", "mu2", "mu3"):
        if name in raw:
            kwargs[name] = _require(raw, name, float, f"medium.{name}")
    for name in ("eps1", "eps2"):
        if name not in kwargs:
            raise ScenarioError(f"medium.{name}: required when a medium is given")
    try:
        return media.GyrotropicMedium(**kwargs)
    except ValueError as exc:
        raise ScenarioError(f"medium: {exc}") from None


def _parse_common(cfg):
    pols = _parse_polarizations(cfg)
    nl, nr = _parse_occupations(cfg)
    try:
        ordering = fock.Ordering.coerce(cfg.get("ordering", "symmetric"))
    except ValueError as exc:
        raise ScenarioError(f"ordering: {exc}") from None
    medium = _parse_medium(cfg)
    k0 = cfg.get("k0", 1.0)
    if isinstance(k0, bool) or not isinstance(k0, (int, float)) or k0 <= 0:
        raise ScenarioError(f"k0: expected a positive number, got {k0!r}")
    chamber = cfg.get("chamber_length")
    if chamber is not None and (isinstance(chamber, bool) or not isinstance(chamber, (int, float)) or chamber <= 0):
        raise ScenarioError(f"chamber_length: expected a positive number, got {chamber!r}")
    return pols, nl, nr, ordering, medium, float(k0), None if chamber is None else float(chamber)


FREE_SPACE = media.GyrotropicMedium(eps1=1.0, eps2=0.0, eps3=1.0, mu1=1.0, mu2=0.0, mu3=1.0)


def compute_scenario(path, polarizations, n_left, n_right, ordering, medium, k0, chamber_length):
    """Run every pipeline stage on one path; returns a dict of arrays/values."""
    spin_ops = spin.spin1_matrices()
    angles = geometry.spherical_angles(path)
    n = path.n_samples

    per_sigma = {}
    for pol in polarizations:
        traj = evolution.evolve(path, spin_ops, pol)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", evolution.OrthogonalPassageWarning)
            dec = evolution.phase_decomposition(traj, path, spin_ops)
        for item in caught:
            print(f"warning: sigma={pol:+d}: {item.message}", file=sys.stderr)
        hel = evolution.helicity_expectations(traj, path, spin_ops)
        per_sigma[pol] = {
            "decomposition": dec,
            "analytic": evolution.analytic_noncyclic_phase(angles, pol),
            "norm_drift": np.abs(np.linalg.norm(traj.states, axis=1) - 1.0),
            "helicity_drift": np.abs(hel - hel[0]),
        }

    inv = evolution.invariant_residual_series(path, spin_ops)
    inv_full = np.concatenate([[inv[0]], inv, [inv[-1]]])  # pad ends with nearest interior
    motion = geometry.motion_residual(path)

    vac_left = fock.vacuum_phase(-1, angles)
    vac_right = fock.vacuum_phase(+1, angles)
    quantal = fock.quantal_geometric_phase(n_left, n_right, angles)

    net_series = np.zeros(n)
    net_final = media.net_vacuum_phase(medium or FREE_SPACE, k0, angles, n - 1, chamber_length)
    if net_final.plus_survives:
        net_series = net_series + vac_right
    if net_final.minus_survives:
        net_series = net_series + vac_left

    return {
        "angles": angles,
        "per_sigma": per_sigma,
        "invariant_residual": inv_full,
        "motion_residual": motion,
        "vacuum_left": vac_left,
        "vacuum_right": vac_right,
        "vacuum_net_series": net_series,
        "vacuum_net": net_final,
        "quantal": quantal,
        "mode_status": media.mode_status(medium) if medium is not None else None,
    }


def _fmt(x) -> str:
    return f"{x:.16e}"


def _check_finite(result, polarizations):
    arrays = [result["invariant_residual"], result["motion_residual"], result["quantal"],
              result["vacuum_left"], result["vacuum_right"], result["vacuum_net_series"]]
    for pol in polarizations:
        block = result["per_sigma"][pol]
        arrays += [block["decomposition"].total, block["decomposition"].dynamical,
                   block["decomposition"].geometric, block["analytic"],
                   block["norm_drift"], block["helicity_drift"]]
    for arr in arrays:
        if not np.all(np.isfinite(arr)):
            raise NumericalError("non-finite value detected in results")


def write_results_csv(filename, path, result, polarizations):
    angles = result["angles"]
    lines = [",".join(RESULT_COLUMNS)]
    for pol in polarizations:
        block = result["per_sigma"][pol]
        dec = block["decomposition"]
        for i in range(path.n_samples):
            row = [
                str(pol),
                _fmt(path.times[i]),
                _fmt(angles.polar[i]),
                _fmt(angles.azimuth[i]),
                _fmt(dec.total[i]),
                _fmt(dec.dynamical[i]),
                _fmt(dec.geometric[i]),
                _fmt(block["analytic"][i]),
                _fmt(result["quantal"][i]),
                _fmt(result["vacuum_left"][i]),
                _fmt(result["vacuum_right"][i]),
                _fmt(result["vacuum_net_series"][i]),
                _fmt(block["norm_drift"][i]),
                _fmt(block["helicity_drift"][i]),
                _fmt(result["invariant_residual"][i]),
                _fmt(result["motion_residual"][i]),
                "1" if dec.flagged[i] else "0",
            ]
            lines.append(",".join(row))
    with open(filename, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_plot(filename, times, values):
    with open(filename, "w", newline="\n") as fh:
        for t, v in zip(times, values):
            fh.write(f"{_fmt(t)} {_fmt(v)}\n")


def write_plot_files(out_dir, path, result, polarizations):
    t = path.times
    for pol in polarizations:
        suffix = _SIGMA_SUFFIX[pol]
        dec = result["per_sigma"][pol]["decomposition"]
        _write_plot(os.path.join(out_dir, f"plot_total_{suffix}.dat"), t, dec.total)
        _write_plot(os.path.join(out_dir, f"plot_geometric_{suffix}.dat"), t, dec.geometric)
        _write_plot(os.path.join(out_dir, f"plot_analytic_{suffix}.dat"), t, result["per_sigma"][pol]["analytic"])
    _write_plot(os.path.join(out_dir, "plot_quantal.dat"), t, result["quantal"])
    _write_plot(os.path.join(out_dir, "plot_vacuum_net.dat"), t, result["vacuum_net_series"])


def summarize(result, path, polarizations, n_left, n_right, ordering, medium, k0, chamber_length):
    phases = {}
    for pol in polarizations:
        block = result["per_sigma"][pol]
        dec = block["decomposition"]
        phases[f"{pol:+d}"] = {
            "total": float(dec.total[-1]),
            "dynamical": float(dec.dynamical[-1]),
            "geometric": float(dec.geometric[-1]),
            "analytic": float(block["analytic"][-1]),
            "flagged_samples": int(dec.flagged.sum()),
            "max_norm_drift": float(block["norm_drift"].max()),
            "max_helicity_drift": float(block["helicity_drift"].max()),
        }
    net = result["vacuum_net"]
    summary = {
        "schema_version": SCHEMA_VERSION,
        "path": {
            "n_samples": path.n_samples,
            "dt": path.dt,
            "k_mag": path.k_mag,
            "duration": float(path.times[-1] - path.times[0]),
        },
        "ordering": ordering.value,
        "occupations": {"n_left": n_left, "n_right": n_right},
        "phases": phases,
        "quantal_final": float(result["quantal"][-1]),
        "vacuum": {
            "left_final": float(result["vacuum_left"][-1]),
            "right_final": float(result["vacuum_right"][-1]),
            "net_final": float(net.phase),
            "plus_survives": bool(net.plus_survives),
            "minus_survives": bool(net.minus_survives),
            "no_propagating_modes": bool(net.no_propagating_modes),
        },
        "diagnostics": {
            "max_invariant_residual": float(result["invariant_residual"].max()),
            "max_motion_residual": float(result["motion_residual"].max()),
        },
        "k0": k0,
        "chamber_length": chamber_length,
    }
    status = result["mode_status"]
    if status is not None:
        summary["medium"] = {
            "n2_plus": float(status.n2_plus),
            "n2_minus": float(status.n2_minus),
            "plus_propagates": bool(status.plus_propagates),
            "minus_propagates": bool(status.minus_propagates),
            "k_plus": media.effective_wave_vector(medium, k0, +1),
            "k_minus": media.effective_wave_vector(medium, k0, -1),
        }
    else:
        summary["medium"] = None
    return summary


def _write_summary(out_dir, summary):
    with open(os.path.join(out_dir, "summary.json"), "w", newline="\n") as fh:
        fh.write(json.dumps(summary, sort_keys=True, indent=2) + "\n")


def run_scenario(config_path, out_dir=None, quiet=False) -> dict:
    """Execute a 'run' scenario; returns the summary dict after writing files."""
    cfg = load_config(config_path)
    base_dir = os.path.dirname(os.path.abspath(config_path))
    path = build_path(cfg, base_dir)
    pols, nl, nr, ordering, medium, k0, chamber = _parse_common(cfg)
    out_dir = out_dir or cfg.get("output_dir", "out")
    if not isinstance(out_dir, str):
        raise ScenarioError(f"output_dir: expected a string, got {out_dir!r}")

    result = compute_scenario(path, pols, nl, nr, ordering, medium, k0, chamber)
    _check_finite(result, pols)

    os.makedirs(out_dir, exist_ok=True)
    write_results_csv(os.path.join(out_dir, "results.csv"), path, result, pols)
    summary = summarize(result, path, pols, nl, nr, ordering, medium, k0, chamber)
    summary["command"] = "run"
    _write_summary(out_dir, summary)
    write_plot_files(out_dir, path, result, pols)
    if not quiet:
        print(f"wrote {out_dir}/results.csv, summary.json and plot files")
        for key in sorted(summary["phases"]):
            block = summary["phases"][key]
            print(f"  sigma {key}: geometric {block['geometric']:+.6f} rad (analytic {block['analytic']:+.6f})")
        print(f"  vacuum net {summary['vacuum']['net_final']:+.6f} rad")
    return summary


_SWEEPABLE = ("cone_angle", "n_steps", "occupations")


def _require_helix_path(cfg, parameter):
    if cfg.get("path", {}).get("type") != "helix":
        raise ScenarioError(f"sweep.parameter '{parameter}' needs a helix path source")


def _sweep_rows_cone(cfg, base_dir, values):
    _require_helix_path(cfg, "cone_angle")
    rows = []
    for value in values:
        cone = parse_angle(value, "sweep.values")
        sub = json.loads(json.dumps(cfg))
        sub["path"]["cone_angle"] = cone
        path = build_path(sub, base_dir)
        pols, nl, nr, ordering, medium, k0, chamber = _parse_common(sub)
        result = compute_scenario(path, pols, nl, nr, ordering, medium, k0, chamber)
        _check_finite(result, pols)
        row = {"cone_angle": cone}
        for pol in pols:
            suffix = _SIGMA_SUFFIX[pol]
            dec = result["per_sigma"][pol]["decomposition"]
            row[f"geometric_{suffix}"] = float(dec.geometric[-1])
            row[f"analytic_{suffix}"] = float(result["per_sigma"][pol]["analytic"][-1])
            row[f"flagged_{suffix}"] = int(dec.flagged.sum())
        row["quantal"] = float(result["quantal"][-1])
        row["vacuum_net"] = float(result["vacuum_net"].phase)
        rows.append(row)
    rows.sort(key=lambda r: r["cone_angle"])
    return rows


def _sweep_rows_steps(cfg, base_dir, values):
    _require_helix_path(cfg, "n_steps")
    rows = []
    for value in values:
        if isinstance(value, bool) or not isinstance(value, int) or value < 64:
            raise ScenarioError(f"sweep.values: n_steps entries must be integers >= 64, got {value!r}")
        sub = json.loads(json.dumps(cfg))
        sub["path"]["n_steps"] = value
        path = build_path(sub, base_dir)
        inv = evolution.invariant_residual_series(path)
        motion = geometry.motion_residual(path)
        rows.append({
            "n_steps": value,
            "max_invariant_residual": float(inv.max()),
            "max_motion_residual": float(motion.max()),
        })
    rows.sort(key=lambda r: r["n_steps"])
    floor = 1e-10
    for i, row in enumerate(rows):
        for kind in ("invariant", "motion"):
            cur = row[f"max_{kind}_residual"]
            if i == 0:
                row[f"{kind}_ratio"] = None
                row[f"{kind}_order"] = None
            else:
                prev = rows[i - 1][f"max_{kind}_residual"]
                ratio = prev / cur if cur > 0 else float("inf")
                row[f"{kind}_ratio"] = ratio
                row[f"{kind}_order"] = float(np.log2(ratio)) if np.isfinite(ratio) and ratio > 0 else None
            row[f"{kind}_at_rounding_floor"] = bool(cur < floor)
    return rows


def _sweep_rows_occupations(cfg, base_dir, values):
    path = build_path(cfg, base_dir)
    _, _, _, ordering, _, _, _ = _parse_common(cfg)
    angles = geometry.spherical_angles(path)
    swept = float(geometry.solid_angle_series(angles)[-1])
    half = 0.5 if ordering is fock.Ordering.SYMMETRIC else 0.0
    rows = []
    for pair in values:
        if (not isinstance(pair, list)) or len(pair) != 2:
            raise ScenarioError(f"sweep.values: occupation entries must be [n_left, n_right] pairs, got {pair!r}")
        nl, nr = pair
        for name, n in (("n_left", nl), ("n_right", nr)):
            if isinstance(n, bool) or not isinstance(n, int) or n < 0:
                raise ScenarioError(f"sweep.values: {name} must be a nonnegative integer, got {n!r}")
        rows.append({
            "n_left": nl,
            "n_right": nr,
            "quantal": float((nr - nl) * swept),
            "phi_left": -(nl + half) * swept,
            "phi_right": +(nr + half) * swept,
        })
    rows.sort(key=lambda r: (r["n_left"], r["n_right"]))
    return rows


def run_sweep(config_path, out_dir=None, quiet=False) -> dict:
    """Execute a 'sweep' scenario; one row per sweep point, sorted by key."""
    cfg = load_config(config_path)
    base_dir = os.path.dirname(os.path.abspath(config_path))
    sweep = _require(cfg, "sweep", dict)
    parameter = sweep.get("parameter")
    if parameter not in _SWEEPABLE:
        raise ScenarioError(f"sweep.parameter must be one of {_SWEEPABLE}, got {parameter!r}")
    values = sweep.get("values")
    if not isinstance(values, list) or not values:
        raise ScenarioError("sweep.values: expected a nonempty list")
    out_dir = out_dir or cfg.get("output_dir", "out")

    if parameter == "cone_angle":
        rows = _sweep_rows_cone(cfg, base_dir, values)
    elif parameter == "n_steps":
        rows = _sweep_rows_steps(cfg, base_dir, values)
    else:
        rows = _sweep_rows_occupations(cfg, base_dir, values)

    os.makedirs(out_dir, exist_ok=True)
    columns = list(rows[0].keys())
    lines = [",".join(columns)]
    for row in rows:
        parts = []
        for col in columns:
            v = row[col]
            if v is None:
                parts.append("")
            elif isinstance(v, bool):
                parts.append("1" if v else "0")
            elif isinstance(v, int):
                parts.append(str(v))
            else:
                parts.append(_fmt(v))
        lines.append(",".join(parts))
    with open(os.path.join(out_dir, "sweep.csv"), "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    summary = {
        "schema_version": SCHEMA_VERSION,
        "command": "sweep",
        "parameter": parameter,
        "rows": rows,
    }
    _write_summary(out_dir, summary)
    if not quiet:
        print(f"wrote {out_dir}/sweep.csv and summary.json ({len(rows)} points)")
    return summary


def self_check(quiet=False) -> bool:
    """Deterministic self-test of the algebra and geometry invariants."""
    checks = []
    S = spin.spin1_matrices()

    comm = [
        np.abs(S.s1 @ S.s2 - S.s2 @ S.s1 - 1j * S.s3).max(),
        np.abs(S.s2 @ S.s3 - S.s3 @ S.s2 - 1j * S.s1).max(),
        np.abs(S.s3 @ S.s1 - S.s1 @ S.s3 - 1j * S.s2).max(),
    ]
    checks.append(("spin commutators S x S = iS", max(comm) <= 1e-15))
    casimir = np.abs(S.s1 @ S.s1 + S.s2 @ S.s2 + S.s3 @ S.s3 - 2 * np.eye(3)).max()
    checks.append(("spin Casimir S^2 = 2", casimir <= 1e-15))

    rng = np.random.default_rng(20240817)
    worst_herm, worst_eig, worst_res = 0.0, 0.0, 0.0
    for _ in range(1000):
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        op = spin.helicity_operator(v, S)
        worst_herm = max(worst_herm, np.abs(op - op.conj().T).max())
        w = np.linalg.eigvalsh(op)
        worst_eig = max(worst_eig, np.abs(w - [-1.0, 0.0, 1.0]).max())
        basis = spin.helicity_eigenstates(v, S)
        for val, vec in ((-1, basis.e_minus), (0, basis.e_zero), (1, basis.e_plus)):
            worst_res = max(worst_res, np.linalg.norm(op @ vec - val * vec))
    checks.append(("helicity operator Hermitian (1000 random directions)", worst_herm < 1e-14))
    checks.append(("helicity spectrum {-1, 0, +1}", worst_eig < 1e-10))
    checks.append(("helicity eigenpair residuals", worst_res < 1e-12))

    d = np.array([0.3, -0.5, np.sqrt(1 - 0.09 - 0.25)])
    a = spin.helicity_eigenstates(d, S)
    b = spin.helicity_eigenstates(d, S)
    same = all(np.array_equal(x, y) for x, y in ((a.e_minus, b.e_minus), (a.e_zero, b.e_zero), (a.e_plus, b.e_plus)))
    checks.append(("gauge determinism (bitwise repeatable eigenvectors)", same))

    ok_roundtrip = True
    for cone in (0.1, np.pi / 3, np.pi / 2, 2.8):
        p = geometry.helix_path(cone, 1.0, 1.0, 2.0, 256)
        ang = geometry.spherical_angles(p)
        rebuilt = np.stack([
            np.sin(ang.polar) * np.cos(ang.azimuth),
            np.sin(ang.polar) * np.sin(ang.azimuth),
            np.cos(ang.polar),
        ], axis=1)
        ok_roundtrip &= bool(np.abs(rebuilt - p.k_hat).max() < 1e-9)
    checks.append(("helix angle round trip", ok_roundtrip))

    p = geometry.helix_path(np.pi / 3, 1.0, 1.0, 1.0, 512)
    checks.append(("motion residual small on smooth path", float(geometry.motion_residual(p).max()) < 1e-3))
    checks.append(("invariant residual small on smooth path", float(evolution.invariant_residual_series(p).max()) < 1e-3))

    all_ok = True
    for name, ok in checks:
        all_ok &= ok
        if not quiet:
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return all_ok
