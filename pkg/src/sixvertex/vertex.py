"""Local vertex algebra: Boltzmann weights, R/L matrices, boundary K matrix.

Conventions fixed here and shared by every module:

* two-state spaces are ordered {up, down};
* two-site spaces use the basis {uu, ud, du, dd} with the first (auxiliary)
  space as the most significant index;
* sigma^2 maps up -> i down, down -> -i up (it always appears in pairs, so
  the global phase cancels, but one choice must hold repo-wide).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateParameters, SingularWeight
from .jets import sh, sh2

WEIGHT_TOL = 1e-12

SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PROJ_UP = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
PROJ_DOWN = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)


@dataclass(frozen=True)
class ModelParams:
    """Full parameter set: row rapidities, column rapidities, crossing eta,
    boundary parameter zeta_plus.  Values may be machine complex or mpmath."""

    lambdas: tuple
    nus: tuple
    eta: complex
    zeta_plus: complex

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(self.lambdas))
        object.__setattr__(self, "nus", tuple(self.nus))
        if len(self.lambdas) < 1:
            raise ValueError("need at least one row rapidity")
        if len(self.lambdas) != len(self.nus):
            raise ValueError("need equally many row and column rapidities")

    @property
    def n(self) -> int:
        return len(self.lambdas)

    def lam(self, j: int):
        """1-based access to the j-th row rapidity."""
        return self.lambdas[j - 1]

    def nu(self, k: int):
        """1-based access to the k-th column rapidity."""
        return self.nus[k - 1]


def assert_generic(params: ModelParams, sep_tol: float = 1e-8) -> None:
    """Certify pairwise distinct sh^2(lambda_j) and sh^2(nu_k).

    The determinant formulas divide by these separations; below sep_tol the
    caller should use the homogeneous-limit path instead.
    """
    for name, vals in (("lambda", params.lambdas), ("nu", params.nus)):
        s2 = [sh2(v) for v in vals]
        for j in range(len(s2)):
            for k in range(j + 1, len(s2)):
                if abs(s2[j] - s2[k]) <= sep_tol:
                    raise DegenerateParameters(
                        f"sh^2 {name}_{j + 1} and {name}_{k + 1} closer than {sep_tol}"
                    )


def boltzmann_weights(lam, eta, tol: float = WEIGHT_TOL):
    """The weight triple (a, b, c) = (1, sh l / sh(l+eta), sh eta / sh(l+eta))."""
    den = sh(lam + eta)
    if abs(den) <= tol:
        raise SingularWeight(f"sh(lambda + eta) vanished at lambda={lam}, eta={eta}")
    return 1.0 + 0.0j, sh(lam) / den, sh(eta) / den


def r_matrix(lam, eta) -> np.ndarray:
    """4x4 six-vertex R matrix in the {uu, ud, du, dd} basis."""
    a, b, c = boltzmann_weights(lam, eta)
    return np.array(
        [
            [a, 0, 0, 0],
            [0, b, c, 0],
            [0, c, b, 0],
            [0, 0, 0, a],
        ],
        dtype=complex,
    )


def l_matrix(lam, nu, eta) -> np.ndarray:
    """Row-column vertex weight: the R matrix at the shifted argument."""
    return r_matrix(lam - nu - eta / 2, eta)


def conj_l_matrix(lam, nu, eta) -> np.ndarray:
    """Odd-row (returning) vertex weight: sigma^2 L(-lambda, nu) sigma^2,
    with sigma^2 acting on the auxiliary (row) space."""
    s = np.kron(SIGMA2, np.eye(2))
    return s @ l_matrix(-lam, nu, eta) @ s


def k_plus(lam, eta, zeta_plus) -> np.ndarray:
    """Diagonal boundary reflection weight at the turning point of a double row."""
    return np.array(
        [
            [complex(sh(lam + eta / 2 + zeta_plus)), 0.0],
            [0.0, complex(sh(-lam - eta / 2 + zeta_plus))],
        ],
        dtype=complex,
    )


def _act_on_pair(mat4: np.ndarray, pos: tuple[int, int]) -> np.ndarray:
    """Lift a 4x4 two-space operator into the 3-space (2^3) product, acting on
    the given (ordered) pair of spaces.  Space 0 is the most significant."""
    out = np.zeros((8, 8), dtype=complex)
    other = ({0, 1, 2} - set(pos)).pop()
    for r in range(8):
        bits_r = [(r >> (2 - s)) & 1 for s in range(3)]
        for c in range(8):
            bits_c = [(c >> (2 - s)) & 1 for s in range(3)]
            if bits_r[other] != bits_c[other]:
                continue
            i = 2 * bits_r[pos[0]] + bits_r[pos[1]]
            j = 2 * bits_c[pos[0]] + bits_c[pos[1]]
            out[r, c] = mat4[i, j]
    return out


def yang_baxter_residual(lam, mu, eta) -> float:
    """Max-norm of R12(l) R13(l+m) R23(m) - R23(m) R13(l+m) R12(l)."""
    r12 = _act_on_pair(r_matrix(lam, eta), (0, 1))
    r13 = _act_on_pair(r_matrix(lam + mu, eta), (0, 2))
    r23 = _act_on_pair(r_matrix(mu, eta), (1, 2))
    lhs = r12 @ r13 @ r23
    rhs = r23 @ r13 @ r12
    return float(np.max(np.abs(lhs - rhs)))
