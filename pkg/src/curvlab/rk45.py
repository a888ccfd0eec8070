"""Embedded Dormand-Prince 5(4) integrator with cubic Hermite dense output.

Both equations integrated in this package (the Jacobi equation h'' + Kh = 0
and the Riccati equation u' = -K - u^2) depend on the independent variable
only through the sectional curvature K(r).  The profile-driven entry point
exploits this: all stage abscissae of an attempted step are known up front,
so K is evaluated once per step on a 6-vector, which keeps sampled-profile
integrations cheap.

Controller: absolute and relative tolerance both equal to ``tol``; accepted
step pairs (y, y') provide the dense output.  Events are located on the
Hermite interpolant by bisection to 1e-10 in r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import StepUnderflowError

# Dormand-Prince 5(4) tableau (FSAL: stage 7 is the next step's stage 1).
_C = (0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0)
_A = (
    (),
    (0.2,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0),
)
# y5 - y4 error weights
_E = (
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_EVENT_LOCATE_TOL = 1e-10
_MAX_STEPS = 2_000_000


@dataclass
class OdeSolution:
    """Accepted nodes with derivatives; supports cubic Hermite sampling."""

    r: np.ndarray  # ascending
    y: np.ndarray  # (n, dim)
    f: np.ndarray  # (n, dim)
    status: str  # "reached-end" | "event"
    event_r: float | None = None
    event_y: tuple | None = None
    nsteps: int = 0
    nrejected: int = 0

    def _locate(self, pts):
        idx = np.searchsorted(self.r, pts, side="right") - 1
        return np.clip(idx, 0, len(self.r) - 2)

    def sample(self, pts) -> np.ndarray:
        """Cubic Hermite interpolation at the given r values (vectorized)."""
        pts = np.asarray(pts, dtype=float)
        i = self._locate(pts)
        ra, rb = self.r[i], self.r[i + 1]
        d = rb - ra
        th = np.where(d != 0, (pts - ra) / np.where(d == 0, 1.0, d), 0.0)[:, None]
        ya, yb = self.y[i], self.y[i + 1]
        fa, fb = self.f[i], self.f[i + 1]
        dd = d[:, None]
        h00 = (1 + 2 * th) * (1 - th) ** 2
        h10 = th * (1 - th) ** 2
        h01 = th * th * (3 - 2 * th)
        h11 = th * th * (th - 1)
        return h00 * ya + h10 * dd * fa + h01 * yb + h11 * dd * fb

    def sample_one(self, pt: float) -> tuple:
        return tuple(self.sample(np.array([pt]))[0])

    def sample_scalar(self, pt: float) -> tuple:
        """Scalar Hermite sampling via bisect (cheap repeated lookups)."""
        import bisect

        if not hasattr(self, "_rlist"):
            object.__setattr__(self, "_rlist", self.r.tolist())
            object.__setattr__(self, "_ylist", [tuple(v) for v in self.y])
            object.__setattr__(self, "_flist", [tuple(v) for v in self.f])
        if len(self._rlist) < 2:
            return self._ylist[0]
        i = bisect.bisect_right(self._rlist, pt) - 1
        i = min(max(i, 0), len(self._rlist) - 2)
        return _hermite_scalar(
            self._rlist[i], self._ylist[i], self._flist[i],
            self._rlist[i + 1], self._ylist[i + 1], self._flist[i + 1], pt,
        )

    def end_state(self) -> tuple:
        """State at the point where integration stopped."""
        return self.sample_one(self._end)

    # set by the integrator: the r value where integration stopped
    _end: float = 0.0


def _hermite_scalar(ra, ya, fa, rb, yb, fb, r):
    d = rb - ra
    th = (r - ra) / d
    h00 = (1 + 2 * th) * (1 - th) ** 2
    h10 = th * (1 - th) ** 2
    h01 = th * th * (3 - 2 * th)
    h11 = th * th * (th - 1)
    return tuple(
        h00 * a + h10 * d * da + h01 * b + h11 * d * db
        for a, da, b, db in zip(ya, fa, yb, fb)
    )


def _integrate_core(stage_f, r0, r1, y0, tol, event=None, output_r=None):
    """Shared adaptive loop.

    stage_f(r, h, y, k1) must return (k_list, y5, err) where k_list has the
    7 stage derivatives, y5 the 5th-order update, err the embedded error
    vector.  k1 is passed in to honor FSAL.

    output_r: optional points (in integration direction, inside the span)
    the stepper must land on exactly; they become nodes, so sampling at
    them carries no interpolation error.
    """
    if r1 == r0:
        raise ValueError("empty integration interval")
    direction = 1.0 if r1 > r0 else -1.0
    span = abs(r1 - r0)
    r, y = r0, tuple(float(v) for v in y0)

    outputs = []
    if output_r is not None:
        outputs = [p for p in output_r if (p - r0) * direction > 0 and (r1 - p) * direction >= 0]
        outputs.sort(key=lambda p: (p - r0) * direction)
    out_idx = 0

    nodes_r = [r]
    nodes_y = [y]
    k1 = None
    nodes_f = None  # filled after first RHS evaluation

    h = direction * min(0.1, max(span * 1e-3, 1e-6))
    nsteps = nrejected = 0
    status = "reached-end"
    event_r = event_y = None
    gprev = event(y) if event is not None else None
    if gprev is not None and gprev >= 0.0:
        # already past the event at the start
        sol = OdeSolution(
            r=np.array([r]), y=np.array([y]), f=np.zeros((1, len(y))),
            status="event", event_r=r, event_y=y,
        )
        sol._end = r
        return sol

    while (r1 - r) * direction > 0:
        if abs(h) < 1e-14 * max(1.0, abs(r)):
            raise StepUnderflowError(r)
        target = None
        if out_idx < len(outputs) and (r + h - outputs[out_idx]) * direction >= 0:
            target = outputs[out_idx]
            h = target - r
        if (r + h - r1) * direction > 0:
            target = None
            h = r1 - r
        ks, y5, err, k1_next = stage_f(r, h, y, k1)
        if nodes_f is None:
            nodes_f = [ks[0]]
        # scaled RMS error, atol = rtol = tol
        acc = 0.0
        for e, a, b in zip(err, y, y5):
            sc = tol + tol * max(abs(a), abs(b))
            q = e / sc
            acc += q * q
        enorm = math.sqrt(acc / len(y))
        if enorm <= 1.0:
            r_new = target if target is not None else r + h
            if target is not None:
                out_idx += 1
            nodes_r.append(r_new)
            nodes_y.append(y5)
            nodes_f.append(k1_next)
            nsteps += 1
            if event is not None:
                g = event(y5)
                if gprev < 0.0 <= g:
                    ra, ya, fa = r, y, ks[0]
                    rb, yb, fb = r_new, y5, k1_next
                    lo, hi = ra, rb
                    while abs(hi - lo) > _EVENT_LOCATE_TOL:
                        mid = 0.5 * (lo + hi)
                        ym = _hermite_scalar(ra, ya, fa, rb, yb, fb, mid)
                        if event(ym) >= 0.0:
                            hi = mid
                        else:
                            lo = mid
                    event_r = 0.5 * (lo + hi)
                    event_y = _hermite_scalar(ra, ya, fa, rb, yb, fb, event_r)
                    status = "event"
                    r = r_new
                    break
                gprev = g
            r, y, k1 = r_new, y5, k1_next
            if enorm == 0.0:
                factor = _MAX_FACTOR
            else:
                factor = min(_MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * enorm ** -0.2))
            h *= factor
        else:
            nrejected += 1
            h *= max(_MIN_FACTOR, _SAFETY * enorm ** -0.2)
            k1 = ks[0]  # stage-1 derivative is h-independent, keep it
        if nsteps + nrejected > _MAX_STEPS:
            raise StepUnderflowError(r, f"step budget exhausted at r = {r!r}")

    rr = np.array(nodes_r)
    yy = np.array(nodes_y)
    ff = np.array(nodes_f)
    if rr[0] > rr[-1]:
        rr, yy, ff = rr[::-1].copy(), yy[::-1].copy(), ff[::-1].copy()
    sol = OdeSolution(
        r=rr, y=yy, f=ff, status=status, event_r=event_r, event_y=event_y,
        nsteps=nsteps, nrejected=nrejected,
    )
    sol._end = r
    return sol


def integrate_profile_driven(profile_eval, rhs_k, r0, r1, y0, tol, event=None, output_r=None):
    """Integrate y' = rhs_k(K(r), y) where K comes from a curvature profile.

    profile_eval maps an ndarray of r values to K values; rhs_k(K, y) maps a
    scalar K and state tuple to the derivative tuple.
    """
    offsets = np.array(_C[:6])

    def stage_f(r, h, y, k1):
        kvals = profile_eval(r + h * offsets)
        ks = [k1 if k1 is not None else rhs_k(float(kvals[0]), y)]
        for i in range(1, 6):
            yi = tuple(
                yj + h * sum(_A[i][m] * ks[m][j] for m in range(i))
                for j, yj in enumerate(y)
            )
            ks.append(rhs_k(float(kvals[i]), yi))
        y5 = tuple(
            yj + h * sum(_A[6][m] * ks[m][j] for m in range(6))
            for j, yj in enumerate(y)
        )
        k7 = rhs_k(float(kvals[5]), y5)  # c7 = c6 = 1
        ks.append(k7)
        err = tuple(
            h * sum(_E[m] * ks[m][j] for m in range(7)) for j in range(len(y))
        )
        return ks, y5, err, k7

    return _integrate_core(stage_f, r0, r1, y0, tol, event=event, output_r=output_r)


def integrate_generic(rhs, r0, r1, y0, tol, event=None, output_r=None):
    """Integrate y' = rhs(r, y) with the same controller and dense output."""

    def stage_f(r, h, y, k1):
        ks = [k1 if k1 is not None else rhs(r, y)]
        for i in range(1, 6):
            yi = tuple(
                yj + h * sum(_A[i][m] * ks[m][j] for m in range(i))
                for j, yj in enumerate(y)
            )
            ks.append(rhs(r + _C[i] * h, yi))
        y5 = tuple(
            yj + h * sum(_A[6][m] * ks[m][j] for m in range(6))
            for j, yj in enumerate(y)
        )
        k7 = rhs(r + h, y5)
        ks.append(k7)
        err = tuple(
            h * sum(_E[m] * ks[m][j] for m in range(7)) for j in range(len(y))
        )
        return ks, y5, err, k7

    return _integrate_core(stage_f, r0, r1, y0, tol, event=event, output_r=output_r)
