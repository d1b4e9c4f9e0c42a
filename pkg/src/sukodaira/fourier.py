"""Exact Fourier-mode solution of dbar f + l f gamma = 0 on the base torus.

Base coordinates ``x_1..x_2k`` are normalised to period 2*pi, with
``dz^q = dx_{2q-1} + i dx_{2q}``.  On ``exp(i<n, x>)`` the vector field
``xi_qbar = (d/dx_{2q-1} + i d/dx_{2q}) / 2`` acts by the exact symbol
``(i n_{2q-1} - n_{2q}) / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InternalInconsistency
from .scalar import I, ONE, ZERO, Scalar

Mode = tuple[int, ...]


@dataclass(frozen=True)
class BaseModeSystem:
    k: int
    gamma_base: tuple[Scalar, ...]
    l: int = 1

    def __post_init__(self):
        gammas = tuple(Scalar.coerce(g) for g in self.gamma_base)
        if len(gammas) != self.k:
            raise ValueError(f"expected {self.k} gamma components, got {len(gammas)}")
        object.__setattr__(self, "gamma_base", gammas)


def mode_symbol(q: int, n: Sequence[int]) -> Scalar:
    """Multiplier of xi_qbar on exp(i<n, x>)."""
    if not 1 <= q <= len(n) // 2:
        raise ValueError(f"direction {q} outside the base of a {len(n)}-dimensional mode")
    return Scalar(Fraction(-n[2 * q - 1], 2), Fraction(n[2 * q - 2], 2))


def operator_symbol(coefficients: Mapping[tuple[int, ...], Scalar], n: Sequence[int]) -> Scalar:
    """Symbol of sum_a c_a d^a (constant coefficients) on exp(i<n, x>), i.e. sum_a c_a prod (i n_r)^a_r."""
    total = ZERO
    for powers, coeff in coefficients.items():
        term = Scalar.coerce(coeff)
        for nr, ar in zip(n, powers):
            term = term * (I * nr) ** ar
        total = total + term
    return total


# u_tt + u_xx - 2 u_t + u in coordinates (t, x)
DECOUPLED_OPERATOR = {(2, 0): ONE, (0, 2): ONE, (1, 0): Scalar(-2), (0, 0): ONE}


def decoupled_symbol(mt: int, nx: int) -> Scalar:
    return operator_symbol(DECOUPLED_OPERATOR, (mt, nx))


def residuals(system: BaseModeSystem, n: Mode) -> list[Scalar]:
    """sigma_q(n) + l gamma_q for each base direction; all zero iff exp(i<n,x>) solves D_l."""
    return [mode_symbol(q, n) + system.gamma_base[q - 1] * system.l for q in range(1, system.k + 1)]


def solve_modes(system: BaseModeSystem) -> Mode | None:
    """The unique integer mode solving the per-mode equations, or None."""
    mode = []
    for g in system.gamma_base:
        first = -2 * system.l * g.im
        second = 2 * system.l * g.re
        if first.denominator != 1 or second.denominator != 1:
            return None
        mode += [int(first), int(second)]
    mode = tuple(mode)
    if any(residuals(system, mode)):
        raise InternalInconsistency(f"mode {mode} does not solve the system it was derived from")
    return mode


def closed_form_power(gamma_base: Sequence[Scalar]) -> int:
    """lcm of the denominators of 2 Re(gamma_q) and 2 Im(gamma_q)."""
    out = 1
    for g in gamma_base:
        g = Scalar.coerce(g)
        for part in (2 * g.re, 2 * g.im):
            out = out * part.denominator // math.gcd(out, part.denominator)
    return out


def minimal_power(gamma_base: Sequence[Scalar], lmax: int = 64) -> tuple[int, Mode] | None:
    if lmax < 1:
        raise ValueError("lmax must be >= 1")
    gammas = tuple(Scalar.coerce(g) for g in gamma_base)
    for l in range(1, lmax + 1):
        mode = solve_modes(BaseModeSystem(len(gammas), gammas, l))
        if mode is not None:
            if l != closed_form_power(gammas):
                raise InternalInconsistency("searched minimal power differs from the lcm formula")
            return l, mode
    return None


def mode_text(mode: Mode) -> str:
    """Human-readable exp(i<n,x>), e.g. ``exp(-i*x2)``; ``1`` for the zero mode."""
    parts = []
    for r, nr in enumerate(mode, start=1):
        if nr == 0:
            continue
        coef = "" if abs(nr) == 1 else f"{abs(nr)}*"
        sign = "-" if nr < 0 else "+"
        parts.append((sign, f"{coef}x{r}"))
    if not parts:
        return "1"
    body = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, text in parts[1:]:
        body += f" {sign} {text}"
    if len(parts) == 1:
        (r, nr), = [(r, nr) for r, nr in enumerate(mode, start=1) if nr]
        scale = "" if abs(nr) == 1 else str(abs(nr))
        return f"exp({'-' if nr < 0 else ''}{scale}i*x{r})"
    return f"exp(i*({body}))"
