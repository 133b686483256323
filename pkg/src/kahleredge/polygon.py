"""Differential calculus of the bidirected polygon on n cyclically ordered points.

The graded algebra is Omega^0 + Omega^1 + Omega^2 over the algebra of complex
functions on n vertices.  One-forms are spanned by the edge symbols
xi[mu->mu+1] (the (1,0) part) and xi[mu->mu-1] (the (0,1) part); two-forms by
the volume elements vol[mu] = xi[mu->mu-1] ^ xi[mu-1->mu].  On top of the
wedge product the module provides the involution, the exterior derivative on
functions, the complex structure J, the Kahler form, the Hodge star, the
induced metric and the normalized trace state.

Vertices are 0-based and all vertex arithmetic is mod n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["Calculus", "VertexFunction", "GradedForm"]

#: absolute tolerance for positivity / reality checks on function values
POSITIVITY_TOL = 1e-12


def _as_complex(values, n: int, what: str) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    if arr.shape != (n,):
        raise ValueError(f"{what} must be a length-{n} sequence, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class VertexFunction:
    """A complex function on the n vertices (an element of the algebra)."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("polygon calculus needs n >= 3")
        object.__setattr__(self, "values", _as_complex(self.values, self.n, "vertex function"))

    def __call__(self, mu: int) -> complex:
        return complex(self.values[mu % self.n])

    def __add__(self, other: "VertexFunction") -> "VertexFunction":
        self._check(other)
        return VertexFunction(self.n, self.values + other.values)

    def __sub__(self, other: "VertexFunction") -> "VertexFunction":
        self._check(other)
        return VertexFunction(self.n, self.values - other.values)

    def __mul__(self, other):
        if isinstance(other, VertexFunction):
            self._check(other)
            return VertexFunction(self.n, self.values * other.values)
        return VertexFunction(self.n, self.values * complex(other))

    __rmul__ = __mul__

    def conjugate(self) -> "VertexFunction":
        return VertexFunction(self.n, np.conj(self.values))

    def is_positive(self, tol: float = POSITIVITY_TOL) -> bool:
        """Membership in the positive cone: real values >= 0 up to `tol`."""
        return bool(
            np.all(np.abs(self.values.imag) <= tol) and np.all(self.values.real >= -tol)
        )

    def _check(self, other: "VertexFunction"):
        if self.n != other.n:
            raise ValueError(f"vertex count mismatch: {self.n} != {other.n}")


@dataclass(frozen=True)
class GradedForm:
    """An element of Omega^0 + Omega^1 + Omega^2 of the polygon calculus.

    deg1_fwd[mu] is the coefficient of xi[mu->mu+1], deg1_bwd[mu] that of
    xi[mu->mu-1] and deg2[mu] that of vol[mu] = xi[mu->mu-1] ^ xi[mu-1->mu].
    There is no storage for (2,0)/(0,2) forms; those spaces vanish.
    """

    n: int
    deg0: np.ndarray
    deg1_fwd: np.ndarray
    deg1_bwd: np.ndarray
    deg2: np.ndarray

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("polygon calculus needs n >= 3")
        for name in ("deg0", "deg1_fwd", "deg1_bwd", "deg2"):
            object.__setattr__(self, name, _as_complex(getattr(self, name), self.n, name))

    def __add__(self, other: "GradedForm") -> "GradedForm":
        self._check(other)
        return GradedForm(
            self.n,
            self.deg0 + other.deg0,
            self.deg1_fwd + other.deg1_fwd,
            self.deg1_bwd + other.deg1_bwd,
            self.deg2 + other.deg2,
        )

    def __sub__(self, other: "GradedForm") -> "GradedForm":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "GradedForm":
        z = complex(scalar)
        return GradedForm(
            self.n, self.deg0 * z, self.deg1_fwd * z, self.deg1_bwd * z, self.deg2 * z
        )

    __rmul__ = __mul__

    def degree_part(self, k: int) -> "GradedForm":
        zero = np.zeros(self.n, dtype=complex)
        if k == 0:
            return GradedForm(self.n, self.deg0, zero, zero, zero)
        if k == 1:
            return GradedForm(self.n, zero, self.deg1_fwd, self.deg1_bwd, zero)
        if k == 2:
            return GradedForm(self.n, zero, zero, zero, self.deg2)
        raise ValueError(f"degree must be 0, 1 or 2, got {k}")

    def max_abs(self) -> float:
        return float(
            max(
                np.max(np.abs(self.deg0)),
                np.max(np.abs(self.deg1_fwd)),
                np.max(np.abs(self.deg1_bwd)),
                np.max(np.abs(self.deg2)),
            )
        )

    def is_close(self, other: "GradedForm", tol: float = 1e-9) -> bool:
        self._check(other)
        return (self - other).max_abs() <= tol

    def render(self) -> str:
        """Debug rendering, e.g. ``(2+0i)*xi[0->1] + (0+1i)*vol[2]``."""
        n = self.n
        terms = []

        def coeff(z: complex) -> str:
            sign = "+" if z.imag >= 0 else "-"
            return f"({z.real:g}{sign}{abs(z.imag):g}i)"

        for mu in range(n):
            if self.deg0[mu] != 0:
                terms.append(f"{coeff(self.deg0[mu])}*delta[{mu}]")
        for mu in range(n):
            if self.deg1_fwd[mu] != 0:
                terms.append(f"{coeff(self.deg1_fwd[mu])}*xi[{mu}->{(mu + 1) % n}]")
        for mu in range(n):
            if self.deg1_bwd[mu] != 0:
                terms.append(f"{coeff(self.deg1_bwd[mu])}*xi[{mu}->{(mu - 1) % n}]")
        for mu in range(n):
            if self.deg2[mu] != 0:
                terms.append(f"{coeff(self.deg2[mu])}*vol[{mu}]")
        return " + ".join(terms) if terms else "0"

    def _check(self, other: "GradedForm"):
        if self.n != other.n:
            raise ValueError(f"vertex count mismatch: {self.n} != {other.n}")


@dataclass(frozen=True)
class Calculus:
    """Context fixing the vertex count n and the basis ordering of forms.

    `wedge_sign` is the sign in xi[mu->mu+1] ^ xi[mu+1->mu] = sign * vol[mu].
    The value -1 is forced by requiring the Hodge star formulae and the
    positivity of the metric to hold simultaneously; it is overridable only as
    a negative-control hook for the consistency checks.
    """

    n: int
    wedge_sign: float = field(default=-1.0)

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 3:
            raise ValueError(f"polygon calculus needs an integer n >= 3, got {self.n!r}")

    # ---------------------------------------------------------------- builders

    def vertex_function(self, values) -> VertexFunction:
        return VertexFunction(self.n, values)

    def delta(self, mu: int) -> VertexFunction:
        values = np.zeros(self.n, dtype=complex)
        values[mu % self.n] = 1.0
        return VertexFunction(self.n, values)

    def one(self) -> VertexFunction:
        return VertexFunction(self.n, np.ones(self.n, dtype=complex))

    def zero_form(self) -> GradedForm:
        z = np.zeros(self.n, dtype=complex)
        return GradedForm(self.n, z, z, z, z)

    def form(self, deg0=None, deg1_fwd=None, deg1_bwd=None, deg2=None) -> GradedForm:
        z = np.zeros(self.n, dtype=complex)
        return GradedForm(
            self.n,
            z if deg0 is None else deg0,
            z if deg1_fwd is None else deg1_fwd,
            z if deg1_bwd is None else deg1_bwd,
            z if deg2 is None else deg2,
        )

    def from_vertex(self, f: VertexFunction) -> GradedForm:
        self._check_n(f.n)
        return self.form(deg0=f.values)

    def xi_fwd(self, mu: int) -> GradedForm:
        """The basis one-form xi[mu->mu+1]."""
        c = np.zeros(self.n, dtype=complex)
        c[mu % self.n] = 1.0
        return self.form(deg1_fwd=c)

    def xi_bwd(self, mu: int) -> GradedForm:
        """The basis one-form xi[mu->mu-1]."""
        c = np.zeros(self.n, dtype=complex)
        c[mu % self.n] = 1.0
        return self.form(deg1_bwd=c)

    def xi(self, a: int, b: int) -> GradedForm:
        """The basis one-form xi[a->b]; b must be a+1 or a-1 mod n."""
        a, b = a % self.n, b % self.n
        if b == (a + 1) % self.n:
            return self.xi_fwd(a)
        if b == (a - 1) % self.n:
            return self.xi_bwd(a)
        raise ValueError(f"{a}->{b} is not a polygon edge")

    def vol(self, mu: int) -> GradedForm:
        """The basis two-form vol[mu] = xi[mu->mu-1] ^ xi[mu-1->mu]."""
        c = np.zeros(self.n, dtype=complex)
        c[mu % self.n] = 1.0
        return self.form(deg2=c)

    def basis_forms(self) -> list[GradedForm]:
        """All 4n basis forms: deltas, forward/backward edges, volumes."""
        out = [self.from_vertex(self.delta(mu)) for mu in range(self.n)]
        out += [self.xi_fwd(mu) for mu in range(self.n)]
        out += [self.xi_bwd(mu) for mu in range(self.n)]
        out += [self.vol(mu) for mu in range(self.n)]
        return out

    # -------------------------------------------------------------- operations

    def bimodule_act(self, f: VertexFunction, omega: GradedForm, side: str) -> GradedForm:
        """Left/right action of the algebra on a graded form.

        The left action scales each basis coefficient by f at the left vertex
        of the basis element, the right action by f at the right vertex.
        xi[a->b] has left vertex a and right vertex b; vol[mu] has both equal
        to mu.
        """
        self._check_n(f.n)
        self._check_n(omega.n)
        v = f.values
        if side == "left":
            return GradedForm(
                self.n,
                v * omega.deg0,
                v * omega.deg1_fwd,
                v * omega.deg1_bwd,
                v * omega.deg2,
            )
        if side == "right":
            return GradedForm(
                self.n,
                v * omega.deg0,
                np.roll(v, -1) * omega.deg1_fwd,  # right vertex of xi[mu->mu+1] is mu+1
                np.roll(v, 1) * omega.deg1_bwd,
                v * omega.deg2,
            )
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def wedge(self, omega: GradedForm, eta: GradedForm) -> GradedForm:
        """Graded product; terms of total degree >= 3 vanish.

        xi[a->b] ^ xi[c->d] = 0 unless b == c, two forward or two backward
        edges compose to zero, and the mixed products give
        xi[mu->mu-1] ^ xi[mu-1->mu] = vol[mu],
        xi[mu->mu+1] ^ xi[mu+1->mu] = wedge_sign * vol[mu].
        """
        self._check_n(omega.n)
        self._check_n(eta.n)
        n = self.n
        deg0 = omega.deg0 * eta.deg0
        # degree 1: function times one-form on either side
        fwd = omega.deg0 * eta.deg1_fwd + omega.deg1_fwd * np.roll(eta.deg0, -1)
        bwd = omega.deg0 * eta.deg1_bwd + omega.deg1_bwd * np.roll(eta.deg0, 1)
        # degree 2: function times volume plus the two nonzero edge products
        deg2 = omega.deg0 * eta.deg2 + omega.deg2 * eta.deg0
        # xi[mu->mu-1] (bwd at mu) ^ xi[mu-1->mu] (fwd at mu-1) -> vol[mu]
        deg2 = deg2 + omega.deg1_bwd * np.roll(eta.deg1_fwd, 1)
        # xi[mu->mu+1] (fwd at mu) ^ xi[mu+1->mu] (bwd at mu+1) -> sign*vol[mu]
        deg2 = deg2 + self.wedge_sign * omega.deg1_fwd * np.roll(eta.deg1_bwd, -1)
        return GradedForm(n, deg0, fwd, bwd, deg2)

    def star_involution(self, omega: GradedForm) -> GradedForm:
        """The antilinear graded involution; xi[a->b]* = -xi[b->a]."""
        self._check_n(omega.n)
        deg0 = np.conj(omega.deg0)
        # c at xi[mu->mu+1] -> -conj(c) at xi[mu+1->mu] (bwd index mu+1)
        bwd = -np.roll(np.conj(omega.deg1_fwd), 1)
        # c at xi[mu->mu-1] -> -conj(c) at xi[mu-1->mu] (fwd index mu-1)
        fwd = -np.roll(np.conj(omega.deg1_bwd), -1)
        # vol[mu]* = -(xi[mu-1->mu]* ^ xi[mu->mu-1]*) = -vol[mu]
        deg2 = -np.conj(omega.deg2)
        return GradedForm(self.n, deg0, fwd, bwd, deg2)

    def exterior_d(self, f: VertexFunction) -> GradedForm:
        """df = sum over polygon edges mu->mu+-1 of (f(nu)-f(mu)) xi[mu->nu]."""
        self._check_n(f.n)
        v = f.values
        fwd = np.roll(v, -1) - v
        bwd = np.roll(v, 1) - v
        return self.form(deg1_fwd=fwd, deg1_bwd=bwd)

    def apply_J(self, omega: GradedForm) -> GradedForm:
        """Complex structure: i on (1,0), -i on (0,1), zero on (0,0) and (1,1)."""
        self._check_n(omega.n)
        return self.form(deg1_fwd=1j * omega.deg1_fwd, deg1_bwd=-1j * omega.deg1_bwd)

    def kahler_form(self) -> GradedForm:
        """kappa = i * sum_mu vol[mu]."""
        return self.form(deg2=1j * np.ones(self.n, dtype=complex))

    def lefschetz(self, omega: GradedForm) -> GradedForm:
        """omega -> kappa ^ omega; a bijection of functions onto two-forms."""
        return self.wedge(self.kahler_form(), omega)

    def hodge_star(self, omega: GradedForm) -> GradedForm:
        """Hodge star: f -> f*kappa, -i on (1,0), i on (0,1), volumes back to
        functions through the inverse Lefschetz map."""
        self._check_n(omega.n)
        return GradedForm(
            self.n,
            -1j * omega.deg2,  # coefficient of vol divided by i
            -1j * omega.deg1_fwd,
            1j * omega.deg1_bwd,
            1j * omega.deg0,  # f*kappa has vol coefficient i*f
        )

    def metric_g(self, omega: GradedForm, eta: GradedForm) -> VertexFunction:
        """g(omega, eta) = star(omega ^ star(eta*)), evaluated degreewise.

        Components of differing degree pair to zero.
        """
        self._check_n(omega.n)
        self._check_n(eta.n)
        total = np.zeros(self.n, dtype=complex)
        for k in range(3):
            w = omega.degree_part(k)
            e = eta.degree_part(k)
            total += self.hodge_star(self.wedge(w, self.hodge_star(self.star_involution(e)))).deg0
        return VertexFunction(self.n, total)

    def state_tau(self, f: VertexFunction) -> complex:
        """The normalized trace state: arithmetic mean of the values."""
        self._check_n(f.n)
        return complex(np.mean(f.values))

    def _check_n(self, n: int):
        if n != self.n:
            raise ValueError(f"vertex count mismatch: expected {self.n}, got {n}")


def make_calculus(n: int) -> Calculus:
    """Create the polygon calculus context on n >= 3 vertices."""
    return Calculus(n)
