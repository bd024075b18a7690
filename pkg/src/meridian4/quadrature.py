"""Adaptive Simpson quadrature with a deterministic accuracy contract."""

from .errors import QuadratureLimitError

__all__ = ["adaptive_simpson"]

MAX_INTERVALS = 2**20


def _simpson(fa, fm, fb, h):
    return h * (fa + 4.0 * fm + fb) / 6.0


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-10) -> float:
    """Integrate f over [a, b] to absolute tolerance tol.

    Recursive interval halving with the standard 1/15 error estimate; raises
    QuadratureLimitError if more than 2^20 subintervals would be needed.
    """
    if a == b:
        return 0.0
    count = [1]

    def recurse(lo, hi, flo, fmid, fhi, whole, tol_here):
        if count[0] > MAX_INTERVALS:
            raise QuadratureLimitError(
                f"adaptive Simpson exceeded {MAX_INTERVALS} subintervals on [{a}, {b}]")
        count[0] += 2
        m = 0.5 * (lo + hi)
        lm = 0.5 * (lo + m)
        rm = 0.5 * (m + hi)
        flm = f(lm)
        frm = f(rm)
        left = _simpson(flo, flm, fmid, m - lo)
        right = _simpson(fmid, frm, fhi, hi - m)
        err = left + right - whole
        if abs(err) <= 15.0 * tol_here:
            return left + right + err / 15.0
        return (recurse(lo, m, flo, flm, fmid, left, 0.5 * tol_here)
                + recurse(m, hi, fmid, frm, fhi, right, 0.5 * tol_here))

    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    whole = _simpson(fa, fm, fb, b - a)
    return recurse(a, b, fa, fm, fb, whole, tol)
