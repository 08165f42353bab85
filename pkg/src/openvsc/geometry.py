"""Target geometries: Fermat hypersurfaces and complete intersections in CP^(N-1)."""

from dataclasses import dataclass
from math import prod


@dataclass(frozen=True)
class GeometryData:
    """Complete intersection of degrees ``degrees`` in ``CP^(N-1)``; one degree is a hypersurface."""

    N: int
    degrees: tuple

    def __post_init__(self):
        degrees = tuple(int(k) for k in self.degrees)
        object.__setattr__(self, "degrees", degrees)
        if not degrees:
            raise ValueError("need at least one degree")
        if any(k <= 0 or k % 2 == 0 for k in degrees):
            raise ValueError("degrees must be odd positive integers, got %r" % (degrees,))
        if self.N < 2:
            raise ValueError("N must be at least 2")

    @classmethod
    def hypersurface(cls, N, k):
        return cls(N, (k,))

    @property
    def m(self):
        return len(self.degrees)

    @property
    def k(self):
        if self.m != 1:
            raise ValueError("k is only defined for a hypersurface")
        return self.degrees[0]

    @property
    def dim(self):
        return self.N - 1 - self.m

    @property
    def degree_sum(self):
        return sum(self.degrees)

    @property
    def degree_product(self):
        return prod(self.degrees)

    @property
    def is_hypersurface(self):
        return self.m == 1

    @property
    def is_cy(self):
        return self.degree_sum == self.N

    @property
    def is_fano(self):
        return self.degree_sum < self.N

    @property
    def is_general_type(self):
        return self.degree_sum > self.N

    @property
    def pf_order(self):
        """Order of the reduced Picard-Fuchs operator (``k - 1`` for ``M_k^k``)."""
        return self.N - self.m

    def open_insertion_power(self, d_odd):
        """Power ``a`` of the only insertion allowed by dimension at odd degree ``d_odd``, or None."""
        num = self.dim - 1 + (self.N - self.degree_sum) * d_odd
        if num < 0 or num % 2:
            return None
        return num // 2

    def closed_dimension(self, d):
        """``a + b`` for which ``w(O_{h^a} O_{h^b})_{0,d}`` can be nonzero."""
        return (self.N - self.degree_sum) * d + self.dim - 1

    def covering_D(self):
        """``D`` with complex dimension ``2D + 3``, or None when the dimension is not odd >= 3."""
        if self.dim < 3 or self.dim % 2 == 0:
            return None
        return (self.dim - 3) // 2

    def label(self):
        return "N=%d;k=%s" % (self.N, ",".join(map(str, self.degrees)))
