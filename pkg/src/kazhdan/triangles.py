"""Triangle presentations over finite projective planes.

A triangle presentation compatible with a point-line bijection lam is a
set T of point triples satisfying

  (A) (x,y,z) in T for some z  iff  y is incident to lam(x);
  (B) (x,y,z) in T implies (y,z,x) in T;
  (C) at most one z per (x,y).

Each such T yields a group <a_x | a_x a_y a_z = 1 for (x,y,z) in T>
acting on a thick building whose vertex links are the plane's incidence
graph; its natural symmetric generating set has 2(q^2+q+1) elements.

The plane PG(2,q) is built from normalized homogeneous coordinates over
the prime field; for q = 2 (the Fano plane) an exhaustive backtracking
search enumerates all (lam, T) pairs, deduplicated under the plane's
collineation group.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .presentations import PresentationSpec, presentation

Point = Tuple[int, ...]


class TriangleError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectivePlane:
    """PG(2,q) for prime q: points and lines are normalized nonzero
    vectors of F_q^3, incidence is a vanishing dot product."""

    q: int
    points: Tuple[Point, ...]

    @classmethod
    def of_order(cls, q: int) -> "ProjectivePlane":
        if q < 2 or any(q % k == 0 for k in range(2, q)):
            raise TriangleError(f"prime order required, got {q}")
        pts = []
        for v in itertools.product(range(q), repeat=3):
            if any(v) and _normalized(v, q) == v:
                pts.append(v)
        pts.sort()
        plane = cls(q, tuple(pts))
        assert len(pts) == q * q + q + 1
        return plane

    def incident(self, point: Point, line: Point) -> bool:
        return sum(a * b for a, b in zip(point, line)) % self.q == 0

    def line_points(self, line: Point) -> Tuple[Point, ...]:
        return tuple(p for p in self.points if self.incident(p, line))

    def point_name(self, p: Point) -> str:
        return f"x{self.points.index(p)}"

    def line_name(self, l: Point) -> str:
        return f"l{self.points.index(l)}"


def _normalized(v: Sequence[int], q: int) -> Point:
    for c in v:
        if c % q:
            inv = pow(c, -1, q)
            return tuple((inv * x) % q for x in v)
    raise ValueError("zero vector")


@dataclass(frozen=True)
class TrianglePresentation:
    plane: ProjectivePlane
    lam: Tuple[Point, ...]                 # lam[i] = line of point i
    triples: FrozenSet[Tuple[Point, Point, Point]]

    @property
    def q(self) -> int:
        return self.plane.q

    def lam_of(self, p: Point) -> Point:
        return self.lam[self.plane.points.index(p)]

    def orbits(self) -> List[Tuple[Point, Point, Point]]:
        """One representative per cyclic rotation class, sorted."""
        seen = set()
        out = []
        for t in sorted(self.triples):
            key = min(t, t[1:] + t[:1], t[2:] + t[:2])
            if key not in seen:
                seen.add(key)
                out.append(key)
        return out

    def to_text(self) -> str:
        plane = self.plane
        lines = [f"q: {self.q}"]
        for i, p in enumerate(plane.points):
            lines.append(f"lambda: x{i} -> {plane.line_name(self.lam[i])}")
        for (x, y, z) in sorted(self.triples):
            lines.append(f"triple: {plane.point_name(x)} {plane.point_name(y)} "
                         f"{plane.point_name(z)}")
        return "\n".join(lines) + "\n"


def validate(plane: ProjectivePlane, lam: Sequence[Point],
             triples: Iterable[Tuple[Point, Point, Point]],
             lineno: Optional[Dict[Tuple[Point, Point, Point], int]] = None
             ) -> TrianglePresentation:
    """Check axioms (A), (B), (C); raise TriangleError naming the witness."""
    lineno = lineno or {}
    points = plane.points
    if sorted(lam) != sorted(points):
        raise TriangleError("lambda is not a bijection onto the lines")
    tset = frozenset(triples)

    def where(t) -> str:
        return f" (line {lineno[t]})" if t in lineno else ""

    by_pair: Dict[Tuple[Point, Point], Point] = {}
    for t in sorted(tset):
        x, y, z = t
        if not plane.incident(y, lam[points.index(x)]):
            raise TriangleError(
                f"axiom (A): ({_n(plane, t)}) present but {plane.point_name(y)} "
                f"is not on lambda({plane.point_name(x)})" + where(t))
        rot = (y, z, x)
        if rot not in tset:
            raise TriangleError(
                f"axiom (B): ({_n(plane, t)}) lacks cyclic image "
                f"({_n(plane, rot)})" + where(t))
        if (x, y) in by_pair and by_pair[(x, y)] != z:
            raise TriangleError(
                f"axiom (C): pair ({plane.point_name(x)}, {plane.point_name(y)}) "
                f"has two completions" + where(t))
        by_pair[(x, y)] = z
    for i, x in enumerate(points):
        for y in plane.line_points(lam[i]):
            if (x, y) not in by_pair:
                raise TriangleError(
                    f"axiom (A): pair ({plane.point_name(x)}, {plane.point_name(y)}) "
                    f"with {plane.point_name(y)} on lambda({plane.point_name(x)}) "
                    "has no triple")
    return TrianglePresentation(plane, tuple(lam), tset)


def _n(plane: ProjectivePlane, t: Tuple[Point, ...]) -> str:
    return ",".join(plane.point_name(p) for p in t)


def triangle_group(tp: TrianglePresentation) -> PresentationSpec:
    """The group <a_x | a_x a_y a_z = 1 for (x,y,z) in T>."""
    plane = tp.plane
    gens = [f"a{i}" for i in range(len(plane.points))]
    rels = []
    for (x, y, z) in tp.orbits():
        ix, iy, iz = (plane.points.index(p) for p in (x, y, z))
        rels.append(f"a{ix}*a{iy}*a{iz}")
    return presentation(gens, rels, name=f"a2tilde:q{tp.q}")


# ---------------------------------------------------------------------------
# exhaustive search for q = 2


def generate_triangle_presentations(q: int = 2, limit: Optional[int] = None,
                                    dedup: bool = True) -> List[TrianglePresentation]:
    """All triangle presentations on PG(2,2), up to collineations.

    Backtracks over bijections lam and triple assignments; every output
    passes the validator.  Only q = 2 is supported (the spec's generator);
    larger planes are ingested from files instead.
    """
    if q != 2:
        raise TriangleError("generator supports q = 2 only")
    plane = ProjectivePlane.of_order(2)
    points = plane.points
    found: List[TrianglePresentation] = []
    seen_canon = set()
    collineations = _collineations(plane) if dedup else None
    for lam_perm in itertools.permutations(range(len(points))):
        lam = tuple(points[i] for i in lam_perm)
        for assign in _assignments(plane, lam):
            triples = frozenset(assign)
            tp = TrianglePresentation(plane, lam, triples)
            if dedup:
                key = _canonical_key(tp, collineations)
                if key in seen_canon:
                    continue
                seen_canon.add(key)
            validate(plane, lam, triples)
            found.append(tp)
            if limit is not None and len(found) >= limit:
                return found
    return found


def _assignments(plane: ProjectivePlane, lam: Sequence[Point]):
    """DFS over triple sets compatible with lam, yielding full T sets."""
    points = plane.points
    idx = {p: i for i, p in enumerate(points)}
    pairs = [(x, y) for x in points for y in plane.line_points(lam[idx[x]])]
    assign: Dict[Tuple[Point, Point], Point] = {}

    def candidates(x: Point, y: Point):
        return [z for z in plane.line_points(lam[idx[y]])
                if plane.incident(x, lam[idx[z]])]

    def extend():
        pair = next((p for p in pairs if p not in assign), None)
        if pair is None:
            yield [(x, y, z) for (x, y), z in assign.items()]
            return
        x, y = pair
        for z in candidates(x, y):
            orbit = [((x, y), z), ((y, z), x), ((z, x), y)]
            added = []
            ok = True
            for key, val in orbit:
                if key in assign:
                    if assign[key] != val:
                        ok = False
                        break
                else:
                    assign[key] = val
                    added.append(key)
            if ok:
                yield from extend()
            for key in added:
                del assign[key]

    yield from extend()


def _collineations(plane: ProjectivePlane) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """PGL(3,q) as (point index map, line index map) pairs.

    A matrix M sends point p to M p and line l to (M^-1)^T l, preserving
    incidence; maps are deduplicated projectively.
    """
    q = plane.q
    idx = {p: i for i, p in enumerate(plane.points)}
    actions = []
    seen = set()
    for entries in itertools.product(range(q), repeat=9):
        m = (entries[0:3], entries[3:6], entries[6:9])
        if _det3(m, q) % q == 0:
            continue
        pmap = tuple(
            idx[_normalized(tuple(sum(m[i][j] * p[j] for j in range(3)) % q
                                  for i in range(3)), q)]
            for p in plane.points)
        if pmap in seen:
            continue
        seen.add(pmap)
        # induced line action: the image line's point set is the image of
        # the point set (cheaper than inverting and transposing M)
        line_pts = [frozenset(idx[x] for x in plane.line_points(l))
                    for l in plane.points]
        by_ptset = {pts: i for i, pts in enumerate(line_pts)}
        lmap = tuple(by_ptset[frozenset(pmap[x] for x in line_pts[i])]
                     for i in range(len(plane.points)))
        actions.append((pmap, lmap))
    return actions


def _det3(m, q) -> int:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])) % q


def _canonical_key(tp: TrianglePresentation, collineations) -> tuple:
    """Least relabelled form of (lam, T) over the collineation group."""
    plane = tp.plane
    idx = {p: i for i, p in enumerate(plane.points)}
    lam_idx = [idx[l] for l in tp.lam]
    trip_idx = [(idx[x], idx[y], idx[z]) for (x, y, z) in tp.triples]
    npts = len(plane.points)
    best = None
    for pmap, lmap in collineations:
        lam2 = [0] * npts
        for i in range(npts):
            lam2[pmap[i]] = lmap[lam_idx[i]]
        t2 = tuple(sorted((pmap[x], pmap[y], pmap[z]) for (x, y, z) in trip_idx))
        key = (tuple(lam2), t2)
        if best is None or key < best:
            best = key
    return best


# ---------------------------------------------------------------------------
# file format


def parse_triangle_file(text: str) -> TrianglePresentation:
    """Parse 'q:', 'lambda: x_i -> l_j', 'triple: x y z' lines; validate."""
    q = None
    lam_lines: Dict[int, Tuple[int, int]] = {}
    triple_lines: List[Tuple[int, Tuple[int, int, int]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, val = line.partition(":")
        key = key.strip().lower()
        val = val.strip()
        if key == "q":
            q = int(val)
        elif key == "lambda":
            left, _, right = val.partition("->")
            src, dst = left.strip(), right.strip()
            if not src.startswith("x") or not dst.startswith("l"):
                raise TriangleError(f"line {lineno}: expected 'lambda: x_i -> l_j'")
            lam_lines[int(src[1:])] = (int(dst[1:]), lineno)
        elif key == "triple":
            parts = val.split()
            if len(parts) != 3 or not all(p.startswith("x") for p in parts):
                raise TriangleError(f"line {lineno}: expected 'triple: x_a x_b x_c'")
            triple_lines.append((lineno, tuple(int(p[1:]) for p in parts)))
        else:
            raise TriangleError(f"line {lineno}: unknown directive {key!r}")
    if q is None:
        raise TriangleError("missing 'q:' header")
    plane = ProjectivePlane.of_order(q)
    npts = len(plane.points)
    if sorted(lam_lines) != list(range(npts)):
        raise TriangleError(f"lambda must cover x0..x{npts - 1}")
    lam = tuple(plane.points[lam_lines[i][0]] for i in range(npts))
    triples = []
    linenos = {}
    for lineno, (a, b, c) in triple_lines:
        if max(a, b, c) >= npts:
            raise TriangleError(f"line {lineno}: point index out of range")
        t = (plane.points[a], plane.points[b], plane.points[c])
        triples.append(t)
        linenos[t] = lineno
    return validate(plane, lam, triples, linenos)
