"""Brute-force transfer operators on the full 2^N spin space.

This module is the ground truth: it builds one-row, double-row and column
monodromy operators as dense matrices, decorates them with the projector
insertions that pin boundary spin flips, and contracts them to the partition
function and the two boundary two-point functions by direct operator
products.  Cost is O(N 4^N); it exists for verification, not scale.

Basis convention (shared repo-wide): basis index bit k-1 holds the state of
site k, with a set bit meaning spin down.  The all-up reference state is
index 0 and the all-down state is index 2^N - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, OrderingViolation, SingularParameters
from .jets import sh, sh2
from .numutil import prod
from .vertex import (
    PROJ_DOWN,
    PROJ_UP,
    SIGMA2,
    ModelParams,
    k_plus,
    l_matrix,
)

MAX_SITES = 8
DENOM_TOL = 1e-12


def up_state(n: int) -> np.ndarray:
    """All spins up."""
    v = np.zeros(2**n, dtype=complex)
    v[0] = 1.0
    return v


def basis_state(n: int, down_sites) -> np.ndarray:
    """Basis vector with the given (1-based) sites down, the rest up."""
    idx = 0
    for s in down_sites:
        if not 1 <= s <= n:
            raise IndexOutOfRange(f"site {s} outside 1..{n}")
        idx |= 1 << (s - 1)
    v = np.zeros(2**n, dtype=complex)
    v[idx] = 1.0
    return v


def _check_size(n: int) -> None:
    if n > MAX_SITES:
        raise ValueError(
            f"dense oracle capped at {MAX_SITES} sites (override MAX_SITES to raise)"
        )


def _site_op(mat2: np.ndarray, site: int, n: int) -> np.ndarray:
    """Lift a single-site operator to the 2^n space (site is 1-based)."""
    return np.kron(np.eye(2 ** (n - site)), np.kron(mat2, np.eye(2 ** (site - 1))))


def _aux_op(mat2: np.ndarray, dim: int) -> np.ndarray:
    """Operator acting on the auxiliary space only, lifted to aux x quantum."""
    return np.kron(mat2, np.eye(dim))


def _aux_site_embed(mat4: np.ndarray, site: int, n: int) -> np.ndarray:
    """Lift a 4x4 vertex weight on (aux, site) to the aux x 2^n space."""
    dim = 2**n
    blocks = mat4.reshape(2, 2, 2, 2)  # [aux_out, site_out, aux_in, site_in]
    out = np.zeros((2 * dim, 2 * dim), dtype=complex)
    for a_out in range(2):
        for a_in in range(2):
            out[a_out * dim : (a_out + 1) * dim, a_in * dim : (a_in + 1) * dim] = (
                _site_op(blocks[a_out, :, a_in, :], site, n)
            )
    return out


def _site_aux_embed(mat4: np.ndarray, site: int, n: int) -> np.ndarray:
    """Like _aux_site_embed but with the roles swapped: the second tensor
    factor of the 4x4 weight is the auxiliary space (column monodromy)."""
    dim = 2**n
    blocks = mat4.reshape(2, 2, 2, 2)
    out = np.zeros((2 * dim, 2 * dim), dtype=complex)
    for a_out in range(2):
        for a_in in range(2):
            out[a_out * dim : (a_out + 1) * dim, a_in * dim : (a_in + 1) * dim] = (
                _site_op(blocks[:, a_out, :, a_in], site, n)
            )
    return out


def _split_blocks(full: np.ndarray):
    dim = full.shape[0] // 2
    return tuple(
        tuple(full[i * dim : (i + 1) * dim, j * dim : (j + 1) * dim] for j in range(2))
        for i in range(2)
    )


def _aux_transpose(full: np.ndarray) -> np.ndarray:
    g = _split_blocks(full)
    dim = full.shape[0] // 2
    out = np.zeros_like(full)
    out[:dim, :dim] = g[0][0]
    out[:dim, dim:] = g[1][0]
    out[dim:, :dim] = g[0][1]
    out[dim:, dim:] = g[1][1]
    return out


@dataclass(frozen=True)
class BlockOperator:
    """2x2 grid over the auxiliary space with operator entries.

    The grid stores the matrix exactly as conventionally displayed:
    one-row T = (A, B; C, D), double-row (the aux-transposed product)
    = (calA, calC; calB, calD), column Tbar = (Abar, Bbar; Cbar, Dbar).
    The lettered accessors resolve per kind so b_elem is always the
    down-spin creation element used to build partition functions.
    """

    grid: tuple
    kind: str  # "row" | "double" | "column"

    def entry(self, i: int, j: int) -> np.ndarray:
        return self.grid[i][j]

    def _pos(self, letter: str) -> tuple[int, int]:
        if self.kind == "double":
            table = {"a": (0, 0), "c": (0, 1), "b": (1, 0), "d": (1, 1)}
        else:
            table = {"a": (0, 0), "b": (0, 1), "c": (1, 0), "d": (1, 1)}
        return table[letter]

    @property
    def a_elem(self) -> np.ndarray:
        return self.entry(*self._pos("a"))

    @property
    def b_elem(self) -> np.ndarray:
        return self.entry(*self._pos("b"))

    @property
    def c_elem(self) -> np.ndarray:
        return self.entry(*self._pos("c"))

    @property
    def d_elem(self) -> np.ndarray:
        return self.entry(*self._pos("d"))


def _one_row_full(params: ModelParams, lam) -> np.ndarray:
    """Ordered product of vertex weights along a row, site N down to 1."""
    n = params.n
    dim = 2**n
    full = np.eye(2 * dim, dtype=complex)
    for k in range(1, n + 1):
        full = _aux_site_embed(
            l_matrix(lam, params.nu(k), params.eta), k, n
        ) @ full
    return full


def one_row_monodromy(params: ModelParams, lam) -> BlockOperator:
    """One-row monodromy with grid (A, B; C, D)."""
    _check_size(params.n)
    return BlockOperator(_split_blocks(_one_row_full(params, lam)), "row")


def _double_row_full(params: ModelParams, lam) -> np.ndarray:
    """Aux-transposed double-row product: T^t K+ sigma2 T(-lambda) sigma2."""
    dim = 2 ** params.n
    s2 = _aux_op(SIGMA2, dim)
    kp = _aux_op(k_plus(lam, params.eta, params.zeta_plus), dim)
    t_up = _aux_transpose(_one_row_full(params, lam))
    t_back = _one_row_full(params, -lam)
    return t_up @ kp @ s2 @ t_back @ s2


def double_row_monodromy(params: ModelParams, lam) -> BlockOperator:
    """Reflecting-end double-row monodromy, grid (calA, calC; calB, calD)."""
    _check_size(params.n)
    return BlockOperator(_split_blocks(_double_row_full(params, lam)), "double")


def first_column_flip(params: ModelParams, lam) -> np.ndarray:
    """Double-row creation element pinning the column-1 spin flip at this
    double row: site 1 must be up entering and down between the two rows."""
    _check_size(params.n)
    n = params.n
    dim = 2**n
    s2 = _aux_op(SIGMA2, dim)
    kp = _aux_op(k_plus(lam, params.eta, params.zeta_plus), dim)
    p_minus = np.kron(np.eye(2), _site_op(PROJ_DOWN, 1, n))
    p_plus = np.kron(np.eye(2), _site_op(PROJ_UP, 1, n))
    t_up = _aux_transpose(_one_row_full(params, lam))
    t_back = _one_row_full(params, -lam)
    w = t_up @ kp @ p_minus @ s2 @ t_back @ s2 @ p_plus
    return _split_blocks(w)[1][0]


def second_column_flip(params: ModelParams, lam) -> np.ndarray:
    """Double-row creation element pinning the column-2 spin flip at this
    double row: site 2 up between the rows and down after the upper row."""
    _check_size(params.n)
    n = params.n
    dim = 2**n
    s2 = _aux_op(SIGMA2, dim)
    kp = _aux_op(k_plus(lam, params.eta, params.zeta_plus), dim)
    p_minus = np.kron(np.eye(2), _site_op(PROJ_DOWN, 2, n))
    p_plus = np.kron(np.eye(2), _site_op(PROJ_UP, 2, n))
    t_up = _aux_transpose(_one_row_full(params, lam))
    t_back = _one_row_full(params, -lam)
    x2 = p_minus @ t_up @ p_plus @ kp @ s2 @ t_back @ s2
    return _split_blocks(x2)[1][0]


def top_row_flip(params: ModelParams, lam, col: int) -> np.ndarray:
    """Creation element of the top double row pinning the upper-row spin flip
    at the given column: the auxiliary projector sits between the returning
    row's factors for columns col and col-1, and site col must be up before
    the upper row acts."""
    _check_size(params.n)
    n = params.n
    if not 1 <= col <= n:
        raise IndexOutOfRange(f"flip column {col} outside 1..{n}")
    dim = 2**n
    s2 = _aux_op(SIGMA2, dim)
    kp = _aux_op(k_plus(lam, params.eta, params.zeta_plus), dim)
    aux_up = _aux_op(PROJ_UP, dim)
    p_col = np.kron(np.eye(2), _site_op(PROJ_UP, col, n))

    back = np.eye(2 * dim, dtype=complex)
    for k in range(1, col):
        factor = s2 @ _aux_site_embed(
            l_matrix(-lam, params.nu(k), params.eta), k, n
        ) @ s2
        back = factor @ back
    back = aux_up @ back
    for k in range(col, n + 1):
        factor = s2 @ _aux_site_embed(
            l_matrix(-lam, params.nu(k), params.eta), k, n
        ) @ s2
        back = factor @ back

    t_up = _aux_transpose(_one_row_full(params, lam))
    v = t_up @ p_col @ kp @ back
    return _split_blocks(v)[1][0]


def partition_oracle(params: ModelParams) -> complex:
    """Partition function by direct contraction of double-row creation
    elements between the all-up and all-down states."""
    _check_size(params.n)
    n = params.n
    v = up_state(n)
    for j in range(1, n + 1):
        v = double_row_monodromy(params, params.lam(j)).b_elem @ v
    return complex(v[-1])


def psi1_oracle(params: ModelParams, m: int, l: int) -> complex:
    """Unnormalized type-one two-point function: creation string with the
    column-1 flip at double row m and the column-2 flip at double row l."""
    _check_size(params.n)
    n = params.n
    if not (1 <= m <= n and 1 <= l <= n):
        raise IndexOutOfRange(f"(m, l) = ({m}, {l}) outside 1..{n}")
    if m >= l:
        raise OrderingViolation("type-one flips need m < l")
    v = up_state(n)
    for j in range(1, n + 1):
        if j == m:
            op = first_column_flip(params, params.lam(j))
        elif j == l:
            op = second_column_flip(params, params.lam(j))
        else:
            op = double_row_monodromy(params, params.lam(j)).b_elem
        v = op @ v
    return complex(v[-1])


def psi2_oracle(params: ModelParams, m: int, l: int) -> complex:
    """Unnormalized type-two two-point function: column-1 flip at double row
    m, upper-boundary-row flip at column l."""
    _check_size(params.n)
    n = params.n
    if not 1 <= m <= n - 1:
        raise IndexOutOfRange(f"m = {m} outside 1..{n - 1}")
    if not 1 <= l <= n:
        raise IndexOutOfRange(f"l = {l} outside 1..{n}")
    v = up_state(n)
    for j in range(1, n):
        if j == m:
            op = first_column_flip(params, params.lam(j))
        else:
            op = double_row_monodromy(params, params.lam(j)).b_elem
        v = op @ v
    v = top_row_flip(params, params.lam(n), l) @ v
    return complex(v[-1])


def column_monodromy(lambdas, nu, eta) -> BlockOperator:
    """Column monodromy over the supplied row rapidities (ordered product,
    last row leftmost); grid (Abar, Bbar; Cbar, Dbar).  Row m of the supplied
    sequence occupies bit m-1 of the quantum index."""
    lambdas = tuple(lambdas)
    n = len(lambdas)
    _check_size(n)
    dim = 2**n
    full = np.eye(2 * dim, dtype=complex)
    for m in range(1, n + 1):
        full = _site_aux_embed(l_matrix(lambdas[m - 1], nu, eta), m, n) @ full
    return BlockOperator(_split_blocks(full), "column")


def _guard(value, what: str):
    if abs(value) <= DENOM_TOL:
        raise SingularParameters(f"{what} below tolerance at these parameters")
    return value


def _creation_coeff_terms(params: ModelParams, i: int, k: int, kind: str):
    """The two boundary-reflection terms of the diagonal-action coefficient.

    kind "D" gives the coefficient of dropping rapidity k when the lower
    diagonal element acts on an i-string; kind "A" the upper one.
    """
    lam_i = params.lam(i)
    lam_k = params.lam(k)
    eta = params.eta
    zeta = params.zeta_plus
    front = (
        sh(eta)
        * sh(2 * lam_k + eta)
        / _guard(sh(2 * lam_k), "sh(2 lambda_k)")
    )
    nu_ratio_plus = prod(
        sh(lam_k - nu_j - eta / 2)
        / _guard(sh(lam_k - nu_j + eta / 2), "sh(lambda_k - nu + eta/2)")
        for nu_j in params.nus
    )
    nu_ratio_minus = prod(
        sh(-lam_k - nu_j - eta / 2)
        / _guard(sh(-lam_k - nu_j + eta / 2), "sh(-lambda_k - nu + eta/2)")
        for nu_j in params.nus
    )
    sep_plus = prod(
        (sh2(lam_k + eta) - sh2(params.lam(j)))
        / _guard(sh2(lam_k) - sh2(params.lam(j)), "sh^2 separation")
        for j in range(1, i + 1)
        if j != k
    )
    sep_minus = prod(
        (sh2(lam_k - eta) - sh2(params.lam(j)))
        / _guard(sh2(lam_k) - sh2(params.lam(j)), "sh^2 separation")
        for j in range(1, i + 1)
        if j != k
    )
    if kind == "D":
        t_plus = (
            sh(lam_k + lam_i)
            * sh(lam_k + eta / 2 - zeta)
            / _guard(sh2(lam_i) - sh2(lam_k + eta), "sh^2 lambda_i - sh^2(lambda_k + eta)")
        )
        t_minus = (
            sh(lam_k - lam_i)
            * sh(-lam_k + eta / 2 - zeta)
            / _guard(sh2(lam_i) - sh2(lam_k - eta), "sh^2 lambda_i - sh^2(lambda_k - eta)")
        )
    elif kind == "A":
        t_plus = sh(lam_k + eta / 2 - zeta) / _guard(
            sh(lam_k + lam_i + eta), "sh(lambda_k + lambda_i + eta)"
        )
        t_minus = sh(-lam_k + eta / 2 - zeta) / _guard(
            sh(lam_k - lam_i - eta), "sh(lambda_k - lambda_i - eta)"
        )
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return front * (t_plus * nu_ratio_plus * sep_plus + t_minus * nu_ratio_minus * sep_minus)


def sigma_vectors(count: int):
    """All sign vectors of the given length, in fixed binary order
    (counter bit j-1 clear means sign j is +1)."""
    for mask in range(2**count):
        yield tuple(1 if not (mask >> (j - 1)) & 1 else -1 for j in range(1, count + 1))


def multi_creation_coeff(params: ModelParams, i: int, sigma) -> complex:
    """Coefficient of the one-row creation string for one sign vector in the
    expansion of an i-fold double-row creation product on the all-up state."""
    eta = params.eta
    zeta = params.zeta_plus
    val = prod(
        (-sigma[j - 1]) * sh(-sigma[j - 1] * params.lam(j) + eta / 2 - zeta)
        for j in range(1, i + 1)
    )
    for j in range(1, i + 1):
        sl = sigma[j - 1] * params.lam(j)
        for nu in params.nus:
            val *= sh(-sl - nu - eta / 2) / _guard(
                sh(-sl - nu + eta / 2), "sh(-s lambda - nu + eta/2)"
            )
    for j in range(1, i + 1):
        for k in range(j + 1, i + 1):
            s = sigma[j - 1] * params.lam(j) + sigma[k - 1] * params.lam(k)
            val *= sh(s - eta) / _guard(sh(s), "sh(s_j lambda_j + s_k lambda_k)")
    return val


def action_identity_residual(params: ModelParams, which: str, i: int) -> float:
    """Relative max-norm residual of one of the exchange-action identities.

    which is one of "D_action", "A_action", "multi_B", "Dbar_action"; i is the
    1-based length of the operator string the identity acts on.
    """
    n = params.n
    eta = params.eta
    if which in ("D_action", "A_action"):
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"i = {i} outside 1..{n}")
        doubles = [double_row_monodromy(params, params.lam(j)) for j in range(1, i + 1)]
        w = up_state(n)
        strings = {}
        base = w
        for j in range(1, i):
            base = doubles[j - 1].b_elem @ base
        actor = doubles[i - 1].d_elem if which == "D_action" else doubles[i - 1].a_elem
        lhs = actor @ base
        rhs = np.zeros_like(lhs)
        kind = "D" if which == "D_action" else "A"
        for k in range(1, i + 1):
            v = w
            for j in range(1, i + 1):
                if j == k:
                    continue
                v = doubles[j - 1].b_elem @ v
            rhs = rhs + _creation_coeff_terms(params, i, k, kind) * v
    elif which == "multi_B":
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"i = {i} outside 1..{n}")
        w = up_state(n)
        lhs = w
        front = prod(
            sh(2 * params.lam(j) + eta) / _guard(sh(2 * params.lam(j)), "sh(2 lambda)")
            for j in range(1, i + 1)
        )
        for j in range(1, i + 1):
            lhs = double_row_monodromy(params, params.lam(j)).b_elem @ lhs
        rhs = np.zeros_like(lhs)
        for sigma in sigma_vectors(i):
            v = w
            for j in range(1, i + 1):
                v = one_row_monodromy(params, sigma[j - 1] * params.lam(j)).b_elem @ v
            rhs = rhs + multi_creation_coeff(params, i, sigma) * v
        rhs = front * rhs
    elif which == "Dbar_action":
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"i = {i} outside 1..{n}")
        cols = [column_monodromy(params.lambdas, params.nu(j), eta) for j in range(1, i + 1)]
        v0 = up_state(n)
        base = v0
        for j in range(1, i):
            base = cols[j - 1].b_elem @ base
        lhs = cols[i - 1].d_elem @ base
        rhs = np.zeros_like(lhs)
        for k in range(1, i + 1):
            nu_k = params.nu(k)
            coeff = sh(eta) / _guard(
                sh(params.nu(i) - nu_k + eta), "sh(nu_i - nu_k + eta)"
            )
            for j in range(1, i + 1):
                if j == k:
                    continue
                coeff *= sh(params.nu(j) - nu_k + eta) / _guard(
                    sh(params.nu(j) - nu_k), "sh(nu_j - nu_k)"
                )
            for lam in params.lambdas:
                coeff *= sh(lam - nu_k - eta / 2) / _guard(
                    sh(lam - nu_k + eta / 2), "sh(lambda - nu_k + eta/2)"
                )
            v = v0
            for j in range(1, i + 1):
                if j == k:
                    continue
                v = cols[j - 1].b_elem @ v
            rhs = rhs + coeff * v
    else:
        raise ValueError(f"unknown identity {which!r}")
    scale = float(np.max(np.abs(lhs)))
    if scale == 0.0:
        return float(np.max(np.abs(rhs)))
    return float(np.max(np.abs(lhs - rhs)) / scale)
