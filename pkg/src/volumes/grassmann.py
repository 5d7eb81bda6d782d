"""Exact Grassmann algebra on generators etabar_1, eta_1, ..., etabar_N, eta_N.

A monomial is a bitmask: etabar_i is bit 2i and eta_i is bit 2i + 1 (0-based i). Every stored
monomial is in ascending bit order with its reordering sign folded into the coefficient, so the
top monomial reads etabar_1 eta_1 etabar_2 eta_2 ... etabar_N eta_N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Union

import numpy as np

from src.utils.errors import DimensionError

MAX_BEREZIN_DIM = 8

Scalar = Union[complex, float, int]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def monomial_product_sign(a: int, b: int) -> int:
    """Sign of m_a * m_b once rewritten in ascending order (0 if they share a generator)."""
    if a & b:
        return 0
    swaps = 0
    for j in _bits(b):
        swaps += bin(a >> (j + 1)).count("1")
    return -1 if swaps % 2 else 1


@dataclass(slots=True)
class GrassmannElement:
    dim: int
    coefficients: Dict[int, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DimensionError(f"Grassmann algebra needs at least one generator pair, got {self.dim}")
        top = self.top_mask
        for mask in self.coefficients:
            if mask < 0 or mask & ~top:
                raise DimensionError(f"monomial {mask:#b} uses generators outside dim={self.dim}")
        self.coefficients = {m: complex(c) for m, c in self.coefficients.items() if c != 0}

    @property
    def top_mask(self) -> int:
        return (1 << (2 * self.dim)) - 1

    @classmethod
    def scalar(cls, dim: int, value: Scalar = 1) -> "GrassmannElement":
        return cls(dim, {0: complex(value)})

    @classmethod
    def eta(cls, dim: int, i: int) -> "GrassmannElement":
        return cls(dim, {1 << (2 * i + 1): 1})

    @classmethod
    def etabar(cls, dim: int, i: int) -> "GrassmannElement":
        return cls(dim, {1 << (2 * i): 1})

    @classmethod
    def bilinear(cls, matrix: np.ndarray) -> "GrassmannElement":
        """sum_ij A_ij etabar_i eta_j."""
        a = np.asarray(matrix, dtype=complex)
        dim = a.shape[0]
        coefficients: Dict[int, complex] = {}
        for i in range(dim):
            for j in range(dim):
                if a[i, j] == 0:
                    continue
                bar_i = 1 << (2 * i)
                eta_j = 1 << (2 * j + 1)
                # etabar_i eta_j is already ascending when i <= j; otherwise one swap
                sign = 1 if 2 * i < 2 * j + 1 else -1
                mask = bar_i | eta_j
                coefficients[mask] = coefficients.get(mask, 0j) + sign * complex(a[i, j])
        return cls(dim, coefficients)

    def _check_compatible(self, other: "GrassmannElement") -> None:
        if other.dim != self.dim:
            raise DimensionError(f"cannot combine Grassmann elements of dims {self.dim} and {other.dim}")

    def __add__(self, other: Union["GrassmannElement", Scalar]) -> "GrassmannElement":
        if not isinstance(other, GrassmannElement):
            other = GrassmannElement.scalar(self.dim, other)
        self._check_compatible(other)
        merged = dict(self.coefficients)
        for mask, coef in other.coefficients.items():
            merged[mask] = merged.get(mask, 0j) + coef
        return GrassmannElement(self.dim, merged)

    __radd__ = __add__

    def __mul__(self, other: Union["GrassmannElement", Scalar]) -> "GrassmannElement":
        if not isinstance(other, GrassmannElement):
            return GrassmannElement(self.dim, {m: c * complex(other) for m, c in self.coefficients.items()})
        self._check_compatible(other)
        product: Dict[int, complex] = {}
        for a, ca in self.coefficients.items():
            for b, cb in other.coefficients.items():
                sign = monomial_product_sign(a, b)
                if sign:
                    mask = a | b
                    product[mask] = product.get(mask, 0j) + sign * ca * cb
        return GrassmannElement(self.dim, product)

    def __rmul__(self, other: Scalar) -> "GrassmannElement":
        return self * other

    def exp(self) -> "GrassmannElement":
        """exp of an element with no scalar part; nilpotency ends the series at degree dim."""
        if self.coefficients.get(0, 0) != 0:
            body = GrassmannElement(self.dim, {m: c for m, c in self.coefficients.items() if m})
            return body.exp() * complex(np.exp(self.coefficients[0]))
        result = GrassmannElement.scalar(self.dim, 1)
        power = GrassmannElement.scalar(self.dim, 1)
        for k in range(1, 2 * self.dim + 1):
            power = power * self
            if not power.coefficients:
                break
            result = result + power * (1.0 / math.factorial(k))
        return result

    def top_coefficient(self) -> complex:
        """Berezin integral: the coefficient of etabar_1 eta_1 ... etabar_N eta_N."""
        return self.coefficients.get(self.top_mask, 0j)

    def coefficient(self, mask: int) -> complex:
        return self.coefficients.get(mask, 0j)


def berezin_det(matrix: np.ndarray) -> complex:
    """Top coefficient of exp(sum_ij A_ij etabar_i eta_j), which is det A."""
    a = np.atleast_2d(np.asarray(matrix, dtype=complex))
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"berezin_det needs a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_BEREZIN_DIM:
        raise DimensionError(f"berezin_det expands 4^N monomials; N={a.shape[0]} exceeds {MAX_BEREZIN_DIM}")
    return GrassmannElement.bilinear(a).exp().top_coefficient()
