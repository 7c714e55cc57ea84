"""
Periodic Lx x Ly lattice.

Sites are numbered row by row in boustrophedon order: row y runs left to right for
even y and right to left for odd y. On 2x2 this gives (1-based)
1=(0,0), 2=(1,0), 3=(1,1), 4=(0,1).

Parity: a site is "odd" when (x + y) is even (site 1 is odd), "even" otherwise.
"""
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple
import logging
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import ValidationError

logger = logging.getLogger(__name__)


class SiteParity(str, Enum):
    ODD = "odd"
    EVEN = "even"


# ==================== Types ====================

@dataclass(frozen=True)
class Lattice:
    Lx: int
    Ly: int

    def __post_init__(self):
        if self.Lx < 2 or self.Ly < 2:
            raise ValidationError(
                ServerErrorCode.LATTICE_SHAPE_INVALID_52,
                f"lattice {self.Lx}x{self.Ly}: both sides must be at least 2"
            )

    @property
    def n_sites(self) -> int:
        return self.Lx * self.Ly

    @property
    def shape(self) -> str:
        return f"{self.Lx}x{self.Ly}"

    def site_of(self, x: int, y: int) -> int:
        x %= self.Lx
        y %= self.Ly
        column = x if y % 2 == 0 else self.Lx - 1 - x
        return y * self.Lx + column

    def coords(self, site: int) -> Tuple[int, int]:
        self.check_site(site)
        y, column = divmod(site, self.Lx)
        x = column if y % 2 == 0 else self.Lx - 1 - column
        return x, y

    def check_site(self, site: int) -> None:
        if not 0 <= site < self.n_sites:
            raise ValidationError(
                ServerErrorCode.SITE_INDEX_INVALID_52,
                f"site {site!r} not in 0..{self.n_sites - 1}"
            )

    def parity_of(self, site: int) -> SiteParity:
        x, y = self.coords(site)
        return SiteParity.ODD if (x + y) % 2 == 0 else SiteParity.EVEN

    def sites(self) -> range:
        return range(self.n_sites)

    def shift(self, site: int, dx: int, dy: int) -> int:
        x, y = self.coords(site)
        return self.site_of(x + dx, y + dy)

    def neighbors(self, site: int) -> Tuple[int, ...]:
        """周期邊界下的最近鄰（去重，按編號排序）"""
        found = {self.shift(site, dx, dy) for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))}
        found.discard(site)
        return tuple(sorted(found))

    def is_neighbor(self, a: int, b: int) -> bool:
        return b in self.neighbors(a)

    def distance(self, a: int, b: int) -> int:
        """周期 Manhattan 距離"""
        xa, ya = self.coords(a)
        xb, yb = self.coords(b)
        dx = abs(xa - xb)
        dy = abs(ya - yb)
        return min(dx, self.Lx - dx) + min(dy, self.Ly - dy)

    def plaquette_sites(self, base: int) -> Tuple[int, int, int, int]:
        """(i, i+ex, i+ex+ey, i+ey)"""
        self.check_site(base)
        return (
            base,
            self.shift(base, 1, 0),
            self.shift(base, 1, 1),
            self.shift(base, 0, 1),
        )

    def plaquette_loop(self, base: int) -> "LoopPath":
        return LoopPath(self.plaquette_sites(base))

    def canonical_loop(self) -> "LoopPath":
        """原點處的基本圈；2x2 上即 1 -> 2 -> 3 -> 4"""
        return self.plaquette_loop(self.site_of(0, 0))

    def validate_loop(self, path: "LoopPath") -> None:
        if len(path.sites) < 2:
            raise ValidationError(ServerErrorCode.LOOP_PATH_INVALID_52, "a closed loop needs at least 2 sites")
        for site in path.sites:
            self.check_site(site)
        closed = list(path.sites) + [path.sites[0]]
        for a, b in zip(closed, closed[1:]):
            if not self.is_neighbor(a, b):
                raise ValidationError(
                    ServerErrorCode.LOOP_PATH_INVALID_52,
                    f"sites {a} and {b} are not nearest neighbors on {self.shape}"
                )


@dataclass(frozen=True)
class LoopPath:
    sites: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(int(s) for s in self.sites))

    @classmethod
    def from_one_based(cls, sites: Sequence[int]) -> "LoopPath":
        return cls(tuple(s - 1 for s in sites))

    def reversed(self) -> "LoopPath":
        return LoopPath(tuple(reversed(self.sites)))

    def one_based(self) -> List[int]:
        return [s + 1 for s in self.sites]
