"""Degenerations of the dihedral family and the closed loop of its real forms.

For each genus g >= 2 the surfaces carrying the order-4g dihedral symmetry
form a one-parameter family in moduli space.  The family closes up on three
limit points: pinching node curves compatible with the symmetry produces two
nodal surfaces -- one whose dual graph is a two-vertex dipole and one that is
a rose of g loops on a single genus-0 component -- while a jump in symmetry
lands on the hyperelliptic curve w^2 = z(z^{2g} - 1), which has twice the
generic number of automorphisms.  The real surfaces of the family trace three
arcs, one per extended-symmetry class, joining the three limit points
pairwise into a single closed loop.

This module computes the dual graphs of the nodal limits (vertex genera from
exact Euler-characteristic bookkeeping, edge counts from subgroup indices)
and assembles the annotated arc loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .actions import GeneratingVector, canonical_vector
from .errors import InvariantViolation
from .extensions import KIND_A, KIND_B, build_extensions
from .groups import FiniteGroup, GroupElement, Subgroup
from .realforms import Species, species_set
from .signatures import Signature, wiman_quotient_signature

__all__ = [
    "DIPOLE_SURFACE",
    "ROSE_SURFACE",
    "WIMAN_SURFACE",
    "ENDPOINT_NAMES",
    "LABEL_DIPOLE",
    "LABEL_LOOPS",
    "ARC_ENDPOINTS",
    "NodalGraph",
    "BoundaryArc",
    "WimanCurve",
    "BoundaryDescription",
    "degeneration_subgroups",
    "component_genus",
    "nodal_graph",
    "boundary_description",
]


# Names of the three limit surfaces at the ends of the real arcs.
DIPOLE_SURFACE = "X_D"  # nodal limit with two components
ROSE_SURFACE = "X_R"  # nodal limit with one genus-0 component
WIMAN_SURFACE = "X_8g"  # smooth limit with 8g automorphisms

ENDPOINT_NAMES = frozenset({DIPOLE_SURFACE, ROSE_SURFACE, WIMAN_SURFACE})

LABEL_DIPOLE = "dipole"
LABEL_LOOPS = "loops"

# Which pair of limit surfaces each real arc joins.  The first chain class
# degenerates to both nodal limits; the second chain class and the mixed
# class each reach the high-symmetry curve and one nodal limit.
ARC_ENDPOINTS = {
    "a1": frozenset({DIPOLE_SURFACE, ROSE_SURFACE}),
    "a2": frozenset({ROSE_SURFACE, WIMAN_SURFACE}),
    "b": frozenset({DIPOLE_SURFACE, WIMAN_SURFACE}),
}


# ---------------------------------------------------------------------------
# Dual graphs of nodal surfaces.


@dataclass(frozen=True)
class NodalGraph:
    """Dual graph of a nodal surface: vertices are components, edges nodes.

    Each vertex carries the genus of its component; an edge records a node
    and joins the components meeting there, so loops are allowed.  Edges are
    normalized to sorted endpoint pairs in a sorted multiset.  The arithmetic
    genus of the nodal surface is recoverable from the graph alone and is
    exposed as ``total_genus``.
    """

    vertex_genera: tuple
    edges: tuple
    label: str

    def __post_init__(self):
        genera = tuple(self.vertex_genera)
        if not genera:
            raise InvariantViolation("a nodal graph needs at least one vertex")
        for w in genera:
            if not isinstance(w, int) or isinstance(w, bool) or w < 0:
                raise InvariantViolation(
                    f"vertex genus must be a non-negative integer, got {w!r}"
                )
        edges = []
        for edge in self.edges:
            pair = tuple(edge)
            if len(pair) != 2:
                raise InvariantViolation(f"edge {edge!r} must join two vertices")
            i, j = pair
            for end in (i, j):
                if not isinstance(end, int) or isinstance(end, bool):
                    raise InvariantViolation(f"edge endpoint {end!r} is not an index")
                if not 0 <= end < len(genera):
                    raise InvariantViolation(
                        f"edge endpoint {end} is outside the {len(genera)} vertices"
                    )
            edges.append((min(i, j), max(i, j)))
        if not isinstance(self.label, str) or not self.label:
            raise InvariantViolation("a nodal graph carries a non-empty label")
        object.__setattr__(self, "vertex_genera", genera)
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_genera)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def total_genus(self) -> int:
        """Arithmetic genus: sum of (vertex genus - 1), plus edges, plus 1."""
        return sum(w - 1 for w in self.vertex_genera) + len(self.edges) + 1

    def degree(self, vertex: int) -> int:
        """Number of edge ends at a vertex; a loop contributes two."""
        if not 0 <= vertex < len(self.vertex_genera):
            raise ValueError(f"no vertex {vertex} in this graph")
        return sum((i == vertex) + (j == vertex) for i, j in self.edges)

    def to_json_dict(self) -> dict:
        return {
            "vertices": [{"genus": w} for w in self.vertex_genera],
            "edges": [[i, j] for i, j in self.edges],
            "label": self.label,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "NodalGraph":
        try:
            genera = tuple(v["genus"] for v in data["vertices"])
            edges = tuple(tuple(e) for e in data["edges"])
            label = data["label"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed nodal-graph record: {exc}") from exc
        return cls(genera, edges, label)

    def __str__(self) -> str:
        genera = ",".join(str(w) for w in self.vertex_genera)
        return f"{self.label}[genera {genera}; {self.edge_count} edge(s)]"


# ---------------------------------------------------------------------------
# Degeneration subgroups and component genera.


def _require_family_vector(v: GeneratingVector) -> int:
    """Check the (2, 2, 2, 2g) shape over a group of order 4g; return g."""
    if not isinstance(v, GeneratingVector):
        raise ValueError("expected a generating vector")
    if len(v.images) != 4 or tuple(v.periods[:3]) != (2, 2, 2):
        raise ValueError(f"expected periods (2, 2, 2, 2g), got {tuple(v.periods)}")
    two_g = v.periods[3]
    if two_g % 2 or two_g < 4:
        raise ValueError(f"last period must be even and >= 4, got {two_g}")
    g = two_g // 2
    if v.group.order != 4 * g:
        raise ValueError(
            f"family vector needs a group of order {4 * g}, got {v.group.order}"
        )
    return g


def degeneration_subgroups(v: GeneratingVector):
    """The two subgroups governing how the family's surfaces can be pinched.

    ``v`` must be a four-image vector with periods (2, 2, 2, 2g).  Writing
    t1..t4 for its images, the first subgroup is generated by (t1*t2, t3, t4)
    and the second by (t1, t2*t3, t4).  Their indices count the components of
    the two nodal limits: index 2 splits the pinched surface in two, index 1
    keeps it connected.
    """
    _require_family_vector(v)
    t1, t2, t3, t4 = v.images
    G = v.group
    first = G.subgroup((t1 * t2, t3, t4))
    second = G.subgroup((t1, t2 * t3, t4))
    return first, second


def component_genus(images) -> int:
    """Genus of one component of a nodal limit, from its covering data.

    ``images`` = (n, r, s) are the images, in a finite group, of the three
    standard generators of a genus-0 group with one puncture class and two
    cone points of orders 2 and 2g: n is the puncture-class image (its order
    sets how many nodes the component meets), r must have order exactly 2, s
    order exactly 2g = 4, 6, 8, ..., and n*r*s must be the identity.

    The orbifold Euler characteristic is -1/2 + 1/(2g) -- the puncture term
    contributes exactly 1, handled as a special case rather than as a limit
    -- and scales by the image order to the Euler characteristic of the
    punctured component.  Solving 2 - 2h - c = |image| * chi, with
    c = |image| / order(n) punctures, gives the genus h; a non-integral or
    negative solution signals inconsistent data and raises.
    """
    images = tuple(images)
    if len(images) != 3:
        raise ValueError("component data lists exactly three generator images")
    n, r, s = images
    if not all(isinstance(e, GroupElement) for e in images):
        raise ValueError("component images must be group elements")
    G = n.group
    if r.group is not G or s.group is not G:
        raise ValueError("component images must belong to a single group")
    if n * r * s != G.identity:
        raise InvariantViolation("component images must multiply to the identity")
    if r.order() != 2:
        raise InvariantViolation(f"second image must have order 2, got {r.order()}")
    two_g = s.order()
    if two_g % 2 or two_g < 4:
        raise InvariantViolation(
            f"third image must have even order >= 4, got {two_g}"
        )
    # chi = 2 - [puncture: exactly 1] - (1 - 1/2) - (1 - 1/(2g))
    chi = Fraction(-1, 2) + Fraction(1, two_g)
    image_order = G.subgroup(images).order
    cusps = image_order // n.order()
    doubled = 2 - cusps - image_order * chi
    if doubled.denominator != 1 or doubled < 0 or int(doubled) % 2:
        raise InvariantViolation(
            f"component data solves to genus {Fraction(doubled, 2)};"
            " the covering data is inconsistent"
        )
    return int(doubled) // 2


def nodal_graph(v: GeneratingVector, which: int) -> NodalGraph:
    """Dual graph of the nodal limit reached by pinching one curve system.

    ``which`` selects the system: 1 pinches the curve class mapping to t1*t2,
    2 the one mapping to t2*t3.  On the canonical family vector the first
    yields a dipole -- two components of equal genus joined by one node when
    g is even and two when g is odd -- and the second collapses everything
    onto a single genus-0 component carrying g nodes, a rose of loops; for
    other admissible vectors the shapes may differ and the label always
    records the computed shape.  Vertex genera come from
    :func:`component_genus`; the edge count is the index of the cyclic group
    of the pinched class inside the degeneration subgroup.  The graph is
    cross-checked against the total genus identity before it is returned.
    """
    g = _require_family_vector(v)
    t1, t2, t3, t4 = v.images
    first, second = degeneration_subgroups(v)
    if which == 1:
        sub, node = first, t1 * t2
        omega = (node, t3, t4)
    elif which == 2:
        sub, node = second, t2 * t3
        omega = (t1, node, t4)
    else:
        raise ValueError(f"which must be 1 or 2, got {which!r}")
    vertex_count = sub.index
    genus = component_genus(omega)
    ends_per_vertex = sub.order // node.order()
    # the label describes the computed shape: one component makes a rose of
    # loops, two components a dipole
    if vertex_count == 1:
        if ends_per_vertex % 2:
            raise InvariantViolation(
                "a one-vertex graph needs an even number of edge ends,"
                f" got {ends_per_vertex}"
            )
        edges = ((0, 0),) * (ends_per_vertex // 2)
        label = LABEL_LOOPS
    elif vertex_count == 2:
        edges = ((0, 1),) * ends_per_vertex
        label = LABEL_DIPOLE
    else:
        raise InvariantViolation(
            f"degeneration subgroup has index {vertex_count};"
            " the family only produces one- and two-component limits"
        )
    graph = NodalGraph((genus,) * vertex_count, edges, label)
    if graph.total_genus != g:
        raise InvariantViolation(
            f"nodal graph {graph} has total genus {graph.total_genus},"
            f" expected {g}"
        )
    return graph


# ---------------------------------------------------------------------------
# The three real arcs and their limit surfaces.


@dataclass(frozen=True)
class BoundaryArc:
    """One arc of real surfaces in the family, with its two limit endpoints.

    ``label`` names the extended-symmetry class realized along the arc,
    ``species`` lists the topological types of the mirror symmetries carried
    by its surfaces, and ``endpoints`` are the two limit surfaces the arc
    joins.
    """

    label: str
    species: tuple
    endpoints: frozenset

    def __post_init__(self):
        if self.label not in ARC_ENDPOINTS:
            raise ValueError(
                f"arc label must be one of {sorted(ARC_ENDPOINTS)}, got {self.label!r}"
            )
        species = tuple(self.species)
        for sp in species:
            if not isinstance(sp, Species):
                raise InvariantViolation(f"arc species entry {sp!r} is not a Species")
        ends = frozenset(self.endpoints)
        if len(ends) != 2 or not ends <= ENDPOINT_NAMES:
            raise InvariantViolation(
                f"an arc joins two distinct limit surfaces from {sorted(ENDPOINT_NAMES)},"
                f" got {sorted(self.endpoints)}"
            )
        object.__setattr__(self, "species", species)
        object.__setattr__(self, "endpoints", ends)

    @property
    def species_values(self) -> tuple:
        """Signed species values carried along the arc, descending."""
        return tuple(sp.value for sp in self.species)

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "species": list(self.species_values),
            "endpoints": sorted(self.endpoints),
        }

    def __str__(self) -> str:
        types = ",".join(str(sp) for sp in self.species)
        ends = " - ".join(sorted(self.endpoints))
        return f"{self.label}[{types}] joining {ends}"


@dataclass(frozen=True)
class WimanCurve:
    """The smooth limit: the curve w^2 = z(z^{2g} - 1) with 8g automorphisms.

    This endpoint is carried symbolically -- defining equation, automorphism
    count (48 in genus 2, where extra symmetries appear), and the signature
    of the quotient by the full symmetry group -- rather than as a computed
    action.
    """

    genus: int
    equation: str
    automorphism_count: int
    quotient_signature: Signature

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError("the family starts at genus 2")
        expected = 48 if self.genus == 2 else 8 * self.genus
        if self.automorphism_count != expected:
            raise InvariantViolation(
                f"the genus-{self.genus} curve has {expected} automorphisms,"
                f" got {self.automorphism_count}"
            )
        if self.quotient_signature != wiman_quotient_signature(self.genus):
            raise InvariantViolation(
                f"quotient signature {self.quotient_signature} does not match"
                f" the genus-{self.genus} high-symmetry quotient"
            )

    @classmethod
    def for_genus(cls, g: int) -> "WimanCurve":
        if g < 2:
            raise ValueError("the family starts at genus 2")
        return cls(
            genus=g,
            equation=f"w^2 = z(z^{2 * g} - 1)",
            automorphism_count=48 if g == 2 else 8 * g,
            quotient_signature=wiman_quotient_signature(g),
        )

    def to_json_dict(self) -> dict:
        return {
            "equation": self.equation,
            "automorphisms": self.automorphism_count,
            "quotient_signature": str(self.quotient_signature),
        }

    def __str__(self) -> str:
        return (
            f"{self.equation} with {self.automorphism_count} automorphisms,"
            f" quotient {self.quotient_signature}"
        )


def _require_three_cycle(arcs) -> None:
    """The three arcs must tile the three endpoint pairs of a triangle."""
    pairs = [arc.endpoints for arc in arcs]
    if len(pairs) != 3 or len(set(pairs)) != 3:
        raise InvariantViolation("expected three arcs with three distinct endpoint pairs")
    seen = {}
    for pair in pairs:
        for name in pair:
            seen[name] = seen.get(name, 0) + 1
    if set(seen) != set(ENDPOINT_NAMES) or set(seen.values()) != {2}:
        raise InvariantViolation(
            f"arcs do not close into a single loop: endpoint degrees {seen}"
        )


@dataclass(frozen=True)
class BoundaryDescription:
    """The closed loop of real surfaces bounding the genus-g family.

    Three arcs of real surfaces join three limit surfaces pairwise: the two
    nodal limits (described by their dual graphs) and the high-symmetry
    curve.  Every limit surface is the endpoint of exactly two arcs, so the
    union of the arcs and their limits is a single closed loop; construction
    verifies that cycle together with the genus bookkeeping of each piece.
    """

    genus: int
    arcs: tuple
    dipole_graph: NodalGraph
    rose_graph: NodalGraph
    wiman_curve: WimanCurve

    def __post_init__(self):
        arcs = tuple(self.arcs)
        if tuple(arc.label for arc in arcs) != ("a1", "a2", "b"):
            raise InvariantViolation(
                f"expected arcs labelled ('a1', 'a2', 'b'),"
                f" got {tuple(arc.label for arc in arcs)}"
            )
        _require_three_cycle(arcs)
        for arc in arcs:
            for sp in arc.species:
                if sp.genus != self.genus:
                    raise InvariantViolation(
                        f"arc {arc.label} carries a genus-{sp.genus} species"
                        f" on a genus-{self.genus} family"
                    )
        if self.dipole_graph.label != LABEL_DIPOLE:
            raise InvariantViolation("first graph must be the dipole limit")
        if self.rose_graph.label != LABEL_LOOPS:
            raise InvariantViolation("second graph must be the rose of loops")
        for graph in (self.dipole_graph, self.rose_graph):
            if graph.total_genus != self.genus:
                raise InvariantViolation(
                    f"graph {graph} has total genus {graph.total_genus},"
                    f" expected {self.genus}"
                )
        if self.wiman_curve.genus != self.genus:
            raise InvariantViolation(
                f"high-symmetry endpoint has genus {self.wiman_curve.genus},"
                f" expected {self.genus}"
            )
        object.__setattr__(self, "arcs", arcs)

    def arc(self, label: str) -> BoundaryArc:
        for arc in self.arcs:
            if arc.label == label:
                return arc
        raise KeyError(f"no arc labelled {label!r}")

    def endpoint_inventory(self) -> dict:
        """The three limit surfaces keyed by name."""
        return {
            DIPOLE_SURFACE: self.dipole_graph,
            ROSE_SURFACE: self.rose_graph,
            WIMAN_SURFACE: self.wiman_curve,
        }

    def to_json_dict(self) -> dict:
        return {
            "genus": self.genus,
            "arcs": [arc.to_json_dict() for arc in self.arcs],
            "endpoints": {
                DIPOLE_SURFACE: self.dipole_graph.to_json_dict(),
                ROSE_SURFACE: self.rose_graph.to_json_dict(),
                WIMAN_SURFACE: self.wiman_curve.to_json_dict(),
            },
        }


def boundary_description(g: int) -> BoundaryDescription:
    """Assemble the annotated arc loop bounding the genus-g family.

    Each arc is annotated with the species multiset of its extended-symmetry
    class and with the fixed endpoint pattern: the first chain class joins
    the two nodal limits, the second chain class joins the rose to the
    high-symmetry curve, and the mixed class joins the dipole to the
    high-symmetry curve.
    """
    if g < 2:
        raise ValueError("the family starts at genus 2")
    v = canonical_vector(g)
    dipole = nodal_graph(v, 1)
    rose = nodal_graph(v, 2)
    species_by_label = {}
    for kind in (KIND_A, KIND_B):
        for e in build_extensions(g, kind):
            species_by_label[e.label] = species_set(e)
    arcs = tuple(
        BoundaryArc(label, species_by_label[label], ARC_ENDPOINTS[label])
        for label in ("a1", "a2", "b")
    )
    return BoundaryDescription(
        genus=g,
        arcs=arcs,
        dipole_graph=dipole,
        rose_graph=rose,
        wiman_curve=WimanCurve.for_genus(g),
    )
