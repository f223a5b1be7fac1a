"""Overflow- and cancellation-safe scalar helpers shared by the state and
closed-form modules.

Everything is written in terms of ``a = |eta|^2`` and integer powers
``p = 2j``.  The recurring building block is

    K(p, s, a) = 1 + s * xi(a)**p,      xi(a) = (1 - a) / (1 + a),

with a real coefficient ``s`` (usually +-cos(theta)).  Written naively it
cancels catastrophically as a -> 0 or a -> inf with s -> -1.
"""

import math

# multiples of pi/2 closer than this (in units of pi/2) are snapped
_SNAP = 4e-15


def cos_sin(theta: float) -> tuple[float, float]:
    """cos and sin of theta, exact at multiples of pi/2."""
    q = theta / (math.pi / 2)
    k = round(q)
    if abs(q - k) < _SNAP:
        return ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))[k % 4]
    return math.cos(theta), math.sin(theta)


def one_minus_abs_cos(theta: float) -> float:
    """1 - |cos theta| without cancellation near multiples of pi."""
    c, _ = cos_sin(theta)
    if c >= 0:
        return 2.0 * math.sin(theta / 2) ** 2 if c != 1.0 else 0.0
    return 2.0 * math.cos(theta / 2) ** 2 if c != -1.0 else 0.0


def xi_of(a: float) -> float:
    return (1.0 - a) / (1.0 + a)


def log_abs_xi(a: float) -> float:
    """log|xi(a)| computed via log1p; -inf at a = 1."""
    if a == 1.0:
        return -math.inf
    b = a if a < 1.0 else 1.0 / a
    return math.log1p(-2.0 * b / (1.0 + b))


def k_factor(p: int, s: float, a: float, one_minus_abs_s: float | None = None) -> float:
    """1 + s * xi(a)**p, stable when s * xi**p is close to -1.

    ``one_minus_abs_s`` may carry an accurately computed 1 - |s|.
    """
    if p == 0:
        return 1.0 + s
    la = log_abs_xi(a)
    u = math.exp(p * la)  # |xi|^p
    sign = -1.0 if (a > 1.0 and p % 2 == 1) else 1.0
    t = s * sign
    if t >= 0:
        return 1.0 + t * u
    if one_minus_abs_s is None:
        one_minus_abs_s = 1.0 - abs(s)
    one_minus_u = -math.expm1(p * la) if la > -math.inf else 1.0
    # 1 - |t| u = (1 - |t|) + |t| (1 - u)
    return one_minus_abs_s + abs(t) * one_minus_u


def theta_k(p: int, theta: float, a: float, flip: bool = False) -> float:
    """k_factor with s = +-cos(theta)."""
    c, _ = cos_sin(theta)
    return k_factor(p, -c if flip else c, a, one_minus_abs_cos(theta))
