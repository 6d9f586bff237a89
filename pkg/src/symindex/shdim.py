"""Closed-form dimensions of the relevant filtered homology columns.

Two geometries: the round contact sphere bounding a ball (``sphere``, the
sphere of real dimension 2n-1) and the spherization of the n-sphere, the
unit cotangent bundle (``stsn``, n >= 3).  For the latter the dimensions
come in two independent ways: the combinatorial case analysis of the
degree, and the Morse-Bott recursion over the oriented Grassmannian of
2-planes.  They must agree; tests compare them degree by degree.
"""

from __future__ import annotations

from .errors import InputError


def _check_sphere_n(n: int) -> None:
    if n < 2:
        raise InputError("the sphere setting needs n >= 2")


def _check_stsn_n(n: int) -> None:
    if n < 3:
        raise InputError("the spherization setting needs n >= 3")


def sphere_sh_dim(n: int, k: int) -> int:
    """Dimension in degree k for the sphere of dimension 2n-1."""
    _check_sphere_n(n)
    if k >= n + 1 and (k - (n + 1)) % 2 == 0:
        return 1
    return 0


def sphere_sh_dims(n: int, degrees) -> dict[int, int]:
    return {k: sphere_sh_dim(n, k) for k in degrees}


def stsn_sh_dim(n: int, k: int) -> int:
    """Dimension in degree k for the spherization of the n-sphere.

    Zero below n-1 and off the parity of n-1; two at the multiples
    j (n-1) with j > 1 (for even n the parity constraint already forces
    j odd); one otherwise.
    """
    _check_stsn_n(n)
    if k < n - 1 or (k - (n - 1)) % 2:
        return 0
    if k % (n - 1) == 0 and k > n - 1:
        return 2
    return 1


def stsn_sh_dims_cases(n: int, degrees) -> dict[int, int]:
    return {k: stsn_sh_dim(n, k) for k in degrees}


def grassmann_homology(n: int) -> dict[int, int]:
    """Betti numbers of the oriented Grassmannian of 2-planes in R^{n+1}.

    One in every even degree from 0 to 2n-2, plus one more in the middle
    degree n-1 when that is even.
    """
    _check_stsn_n(n)
    dims = {k: 1 for k in range(0, 2 * n - 1, 2)}
    if (n - 1) % 2 == 0:
        dims[n - 1] += 1
    return dims


def stsn_sh_dim_morse_bott(n: int, k: int) -> int:
    """Same dimension as ``stsn_sh_dim`` from the Morse-Bott recursion:
    the j-th cover contributes the Grassmannian homology shifted by
    (2j-1)(n-1)."""
    _check_stsn_n(n)
    grass = grassmann_homology(n)
    total = 0
    j = 1
    while k - (2 * j - 1) * (n - 1) >= 0:
        total += grass.get(k - (2 * j - 1) * (n - 1), 0)
        j += 1
    return total


def stsn_sh_dims_morsebott(n: int, degrees) -> dict[int, int]:
    return {k: stsn_sh_dim_morse_bott(n, k) for k in degrees}


def d_chain_sphere(n: int, k_max: int) -> list[int]:
    """Degrees of the first k_max classes linked by the degree -2 operator."""
    _check_sphere_n(n)
    if k_max < 1:
        raise InputError("k_max must be at least 1")
    return [n + 2 * k - 1 for k in range(1, k_max + 1)]


def d_chain_stsn(n: int, j: int) -> list[int]:
    """Degrees of the length-n chain inside the j-th Morse-Bott band."""
    _check_stsn_n(n)
    if j < 1:
        raise InputError("j must be at least 1")
    base = (2 * j - 1) * (n - 1)
    return [base + 2 * i for i in range(n)]
