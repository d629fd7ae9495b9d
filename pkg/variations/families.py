# =============================================================================
# variations/families.py
# =============================================================================
# 🎯 Purpose:
# Closed registry of immersion families ι_t: Σ⁴ → R⁷ (or the flat T⁷) used by
# the numeric variation harness. Each family is written once as a sympy
# expression in (t, u1..u4); every derivative the harness needs is taken
# symbolically and compiled to numpy.
#
# ✅ Includes:
# - ImmersionFamily: abstract base with the compiled map and derivatives
# - AffineFiberFamily: coassociative fibres of T⁷ → T³ moved by a base translation
# - GraphFamily: normal graph t·f(u)·e1 over the coassociative torus span(e4..e7)
# - HypersphereFamily: round S⁴ of radius r + t in span(e1..e5)
# - TangentialFamily: tangential reparametrization of the coassociative torus
# - family_registry / get_family
#
# ❌ Does not include:
# - User-supplied callbacks (every family carries its own oracle)
# - Curved ambient spaces
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

from __future__ import annotations

import logging
from abc import ABC, abstractmethod                 # Family interface
from dataclasses import dataclass
from functools import cached_property               # Compiled derivatives, built once per instance
from typing import Callable, ClassVar, Literal

import numpy as np                                  # Grid evaluation
import sympy as sp                                  # Exact symbolic derivatives

from models.errors import UnknownFamilyError

logger = logging.getLogger(__name__)

AMBIENT_DIM = 7
PARAM_DIM = 4

Domain = Literal["torus", "sphere"]


# -----------------------------------------------------------------------------
# 🧩 Compiled expressions
# -----------------------------------------------------------------------------

def _compile(symbols: tuple[sp.Symbol, ...], exprs: list[sp.Expr]) -> Callable:
    """numpy function of (t, u) returning an array of shape (len(exprs), *u.shape[:-1])."""
    fn = sp.lambdify(symbols, exprs, modules="numpy")

    def evaluate(t: float, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        shape = u.shape[:-1]
        values = fn(t, *(u[..., k] for k in range(PARAM_DIM)))
        # constant components come back as Python scalars
        return np.stack([np.broadcast_to(np.asarray(v, dtype=float), shape) for v in values])

    return evaluate


# -----------------------------------------------------------------------------
# 🧱 Family interface
# -----------------------------------------------------------------------------

class ImmersionFamily(ABC):
    """A one-parameter family of immersions of a 4-dimensional parameter domain.

    Subclasses describe the map symbolically in ``expression``. Arrays returned by
    the compiled derivatives put the ambient index first, then parameter
    indices, then the grid shape.
    """

    name: ClassVar[str]
    domain: ClassVar[Domain]                         # torus: u ∈ [0,1)⁴; sphere: spherical angles
    ambient: ClassVar[Literal["R7", "T7"]]
    coassociative: ClassVar[bool] = False            # Σ₀ is a coassociative submanifold
    moduli: ClassVar[bool] = False                   # the motion stays inside the coassociative moduli space

    @abstractmethod
    def expression(self, t: sp.Symbol, u: tuple[sp.Symbol, ...]) -> list[sp.Expr]:
        """The 7 ambient coordinates of ι_t(u)."""
        pass

    def parameters(self) -> dict:
        """Constructor parameters, recorded in reports."""
        return {}

    # -------------------------------------------------------------------------
    # 🔧 Symbolic derivatives
    # -------------------------------------------------------------------------

    @cached_property
    def _symbols(self) -> tuple[sp.Symbol, tuple[sp.Symbol, ...]]:
        return sp.Symbol("t"), sp.symbols("u1:5")

    @cached_property
    def _expr(self) -> list[sp.Expr]:
        t, u = self._symbols
        exprs = [sp.sympify(e) for e in self.expression(t, u)]
        if len(exprs) != AMBIENT_DIM:
            raise ValueError(f"family {self.name} returns {len(exprs)} coordinates, expected {AMBIENT_DIM}")
        return exprs

    def _compiled(self, exprs: list[sp.Expr]) -> Callable:
        t, u = self._symbols
        return _compile((t, *u), exprs)

    @cached_property
    def point_fn(self) -> Callable:
        return self._compiled(self._expr)

    @cached_property
    def jacobian_fn(self) -> Callable:
        """∂ι/∂u_k, shape (7, 4, ...)."""
        _, u = self._symbols
        flat = [sp.diff(e, u[k]) for e in self._expr for k in range(PARAM_DIM)]
        fn = self._compiled(flat)
        return lambda t, grid: fn(t, grid).reshape((AMBIENT_DIM, PARAM_DIM) + np.shape(grid)[:-1])

    @cached_property
    def hessian_fn(self) -> Callable:
        """∂²ι/∂u_k∂u_l, shape (7, 4, 4, ...)."""
        _, u = self._symbols
        flat = [sp.diff(e, u[k], u[l]) for e in self._expr for k in range(PARAM_DIM) for l in range(PARAM_DIM)]
        fn = self._compiled(flat)
        return lambda t, grid: fn(t, grid).reshape((AMBIENT_DIM, PARAM_DIM, PARAM_DIM) + np.shape(grid)[:-1])

    @cached_property
    def velocity_fn(self) -> Callable:
        """Z = ∂ι/∂t, shape (7, ...)."""
        t, _ = self._symbols
        return self._compiled([sp.diff(e, t) for e in self._expr])

    @cached_property
    def velocity_jacobian_fn(self) -> Callable:
        """∂Z/∂u_k, shape (7, 4, ...)."""
        t, u = self._symbols
        flat = [sp.diff(e, t, u[k]) for e in self._expr for k in range(PARAM_DIM)]
        fn = self._compiled(flat)
        return lambda s, grid: fn(s, grid).reshape((AMBIENT_DIM, PARAM_DIM) + np.shape(grid)[:-1])

    @cached_property
    def acceleration_fn(self) -> Callable:
        """∇_Z Z = ∂²ι/∂t² in the flat ambient, shape (7, ...)."""
        t, _ = self._symbols
        return self._compiled([sp.diff(e, t, 2) for e in self._expr])

    # -------------------------------------------------------------------------
    # 📏 Parameter domain
    # -------------------------------------------------------------------------

    def axes(self, n: int) -> list[tuple[np.ndarray, np.ndarray]]:
        """Per-axis (nodes, weights) of the quadrature on the parameter domain."""
        if self.domain == "torus":
            nodes = np.arange(n, dtype=float) / n
            return [(nodes, np.full(n, 1.0 / n))] * PARAM_DIM
        # Gauss-Legendre nodes never hit the poles, so the chart stays regular
        x, w = np.polynomial.legendre.leggauss(n)
        polar = ((x + 1.0) * np.pi / 2.0, w * np.pi / 2.0)
        azimuth = (np.arange(n, dtype=float) * 2.0 * np.pi / n, np.full(n, 2.0 * np.pi / n))
        return [polar, polar, polar, azimuth]

    def sample_point(self) -> np.ndarray:
        """A regular interior parameter value for pointwise checks."""
        if self.domain == "torus":
            return np.array([0.125, 0.375, 0.2, 0.6])
        return np.array([1.1, 0.9, 1.3, 0.7])


# -----------------------------------------------------------------------------
# 🧭 Built-in families
# -----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AffineFiberFamily(ImmersionFamily):
    """Fibre b(t) × T⁴ of the flat fibration T⁷ → T³, b(t) = t·direction."""

    direction: tuple[float, float, float] = (1.0, 0.0, 0.0)
    side: float = 1.0

    name: ClassVar[str] = "affine-fiber"
    domain: ClassVar[Domain] = "torus"
    ambient: ClassVar[str] = "T7"
    coassociative: ClassVar[bool] = True
    moduli: ClassVar[bool] = True

    def expression(self, t, u):
        d = [sp.nsimplify(x) for x in self.direction]
        return [t * d[0], t * d[1], t * d[2], *(self.side * x for x in u)]

    def parameters(self) -> dict:
        return {"direction": list(self.direction), "side": self.side}


@dataclass(frozen=True, eq=False)
class GraphFamily(ImmersionFamily):
    """Normal graph ι_t(u) = (t·f(u), 0, 0, u) over the coassociative torus.

    f(u) = a·sin(2πu₁)cos(2πu₂) + (a/2)·cos(2πu₃), so
    d²Vol/dt²(0) = ∫|∇f|² = (5/2)π²a².
    """

    amplitude: float = 0.1

    name: ClassVar[str] = "graph"
    domain: ClassVar[Domain] = "torus"
    ambient: ClassVar[str] = "T7"
    coassociative: ClassVar[bool] = True

    def height(self, u) -> sp.Expr:
        a = sp.nsimplify(self.amplitude)
        return a * sp.sin(2 * sp.pi * u[0]) * sp.cos(2 * sp.pi * u[1]) + a / 2 * sp.cos(2 * sp.pi * u[2])

    def expression(self, t, u):
        return [t * self.height(u), 0, 0, *u]

    def dirichlet_energy(self) -> float:
        return 2.5 * np.pi ** 2 * self.amplitude ** 2

    def parameters(self) -> dict:
        return {"amplitude": self.amplitude}


@dataclass(frozen=True, eq=False)
class HypersphereFamily(ImmersionFamily):
    """Round S⁴ of radius r + t in span(e1, ..., e5), in spherical angles."""

    radius: float = 1.0

    name: ClassVar[str] = "sphere"
    domain: ClassVar[Domain] = "sphere"
    ambient: ClassVar[str] = "R7"

    def expression(self, t, u):
        r = sp.nsimplify(self.radius) + t
        s1, s2, s3 = sp.sin(u[0]), sp.sin(u[1]), sp.sin(u[2])
        return [
            r * sp.cos(u[0]),
            r * s1 * sp.cos(u[1]),
            r * s1 * s2 * sp.cos(u[2]),
            r * s1 * s2 * s3 * sp.cos(u[3]),
            r * s1 * s2 * s3 * sp.sin(u[3]),
            0,
            0,
        ]

    def area(self, t: float = 0.0) -> float:
        return 8.0 * np.pi ** 2 / 3.0 * (self.radius + t) ** 4

    def area_rate(self, t: float = 0.0) -> float:
        return 32.0 * np.pi ** 2 / 3.0 * (self.radius + t) ** 3

    def parameters(self) -> dict:
        return {"radius": self.radius}


@dataclass(frozen=True, eq=False)
class TangentialFamily(ImmersionFamily):
    """ι_t(u) = (0, 0, 0, u₁ + t·a·sin(2πu₁), u₂, u₃, u₄): a diffeomorphism of Σ₀ for |2πta| < 1."""

    amplitude: float = 0.05

    name: ClassVar[str] = "tangential"
    domain: ClassVar[Domain] = "torus"
    ambient: ClassVar[str] = "T7"
    coassociative: ClassVar[bool] = True

    def expression(self, t, u):
        a = sp.nsimplify(self.amplitude)
        return [0, 0, 0, u[0] + t * a * sp.sin(2 * sp.pi * u[0]), u[1], u[2], u[3]]

    def parameters(self) -> dict:
        return {"amplitude": self.amplitude}


# -----------------------------------------------------------------------------
# 📚 Registry
# -----------------------------------------------------------------------------

_REGISTRY: dict[str, type[ImmersionFamily]] = {
    cls.name: cls for cls in (AffineFiberFamily, GraphFamily, HypersphereFamily, TangentialFamily)
}


def family_registry() -> list[str]:
    return sorted(_REGISTRY)


def get_family(name: str, **params) -> ImmersionFamily:
    """Instantiate a registered family.

    Raises:
        UnknownFamilyError: if ``name`` is not registered.
    """
    try:
        cls = _REGISTRY[name]
    except KeyError:
        raise UnknownFamilyError(name, family_registry()) from None
    logger.debug(f"family {name} with {params}")
    return cls(**params)
