"""The index of automorphisms at K_0 and the combinatorial lattice family.

K_0 of the base field is identified with the integers via dimension once
and for all, so index values are plain ints.  The index of g is

    index(g) = dim(N / gL) - dim(N / L)

for any lattice L and any enclosing lattice N >= L, gL; the value does not
depend on the choices, and the same number arises as the Euler
characteristic dim(L/N') - dim(gL/N') over a common sub-lattice N'.

``build_family`` replays the inductive construction of the simplicial
section: lattices L_{k,I} indexed by non-empty subsets I of [k] for a chain
of automorphisms and all of its iterated faces, with the proper subsets
forced by the face recursion and the full subset chosen as the canonical
join.  ``verify_family`` re-checks every hypothesis and both face
identities and reports each one.
"""

from __future__ import annotations

from itertools import combinations

from .errors import ChainTooLong, DegenerateChain, NotNested, SpaceMismatch, UnknownFace
from .lattice import Lattice, TateSpace, act, join, join_all, leq, quotient_dim_lattices, std_lattice
from .laurent import Automorphism
from .simplicial import nonempty_subsets, subset_degeneracy

IndexValue = int

DEFAULT_CHAIN_CAP = 4


def index0(g: Automorphism, space: TateSpace) -> IndexValue:
    """Index with the canonical choices L = O^n and N = L + gL."""
    L = std_lattice(space, [0] * space.rank)
    gL = act(g, L)
    N = join(L, gL)
    return quotient_dim_lattices(gL, N) - quotient_dim_lattices(L, N)


def index0_with(g: Automorphism, L: Lattice, N: Lattice) -> IndexValue:
    """Index from arbitrary admissible choices (L a lattice, N enclosing)."""
    gL = act(g, L)
    if not (leq(L, N) and leq(gL, N)):
        raise NotNested("N must contain L and gL")
    return quotient_dim_lattices(gL, N) - quotient_dim_lattices(L, N)


def euler0(g: Automorphism, L: Lattice, N: Lattice) -> IndexValue:
    """Euler characteristic of the two-term complex gL -> L over a common
    sub-lattice N <= L, gL.  Always equals index0."""
    gL = act(g, L)
    if not (leq(N, L) and leq(N, gL)):
        raise NotNested("N must be a common sub-lattice of L and gL")
    return quotient_dim_lattices(N, L) - quotient_dim_lattices(N, gL)


def check_additivity(g: Automorphism, h: Automorphism, space: TateSpace) -> bool:
    return index0(g.compose(h), space) == index0(g, space) + index0(h, space)


class AutChain:
    """A chain (g_1, ..., g_k) of automorphisms of one Tate space."""

    def __init__(self, space: TateSpace, autos):
        self.space = space
        self.autos = tuple(autos)
        for g in self.autos:
            if g.ctx != space.ctx or g.rank != space.rank:
                raise SpaceMismatch("chain member acts on the wrong space")

    def __len__(self):
        return len(self.autos)

    def __repr__(self):
        return "AutChain(k=%d on %r)" % (len(self.autos), self.space)


def _face_chain(chain, i):
    """d_i of a chain of composable automorphisms."""
    k = len(chain)
    if i == 0:
        return chain[1:]
    if i == k:
        return chain[:-1]
    merged = chain[i].compose(chain[i - 1])
    return chain[: i - 1] + (merged,) + chain[i + 1 :]


def _subchain(chain, kept):
    """The chain seen by an iterated face keeping the given vertices."""
    out = []
    for lo, hi in zip(kept, kept[1:]):
        g = chain[lo]
        for j in range(lo + 1, hi):
            g = chain[j].compose(g)
        out.append(g)
    return tuple(out)


class _FamilyBuilder:
    def __init__(self, space: TateSpace):
        self.space = space
        self.base = std_lattice(space, [0] * space.rank)
        self.memo = {}

    def lattice(self, chain, I) -> Lattice:
        I = frozenset(I)
        key = (chain, I)
        if key in self.memo:
            return self.memo[key]
        m = len(chain)
        if not I or not I <= set(range(m + 1)):
            raise UnknownFace("bad subset %r for a %d-simplex" % (sorted(I), m))
        if m == 0:
            val = self.base
        else:
            degenerate_at = next(
                (j for j, g in enumerate(chain) if g.is_identity()), None
            )
            if degenerate_at is not None:
                # chain = s_j(tau): restrict the family of tau
                tau = chain[:degenerate_at] + chain[degenerate_at + 1 :]
                val = self.lattice(tau, subset_degeneracy(I, degenerate_at))
            elif len(I) <= m:
                i = min(set(range(m + 1)) - I)
                if i < m:
                    val = self.lattice(_face_chain(chain, i), subset_degeneracy(I, i))
                else:
                    val = act(chain[-1], self.lattice(chain[:-1], I))
            else:
                proper = [J for J in nonempty_subsets(m) if len(J) <= m]
                val = join_all([self.lattice(chain, J) for J in proper])
        self.memo[key] = val
        return val


class LatticeFamily:
    """All lattices L_{m,I} over the faces of one top chain.

    ``entries`` maps (kept-vertices tuple, sorted subset tuple) to a
    Lattice; ``subchains`` carries the composite arrows of each face.
    """

    def __init__(self, chain: AutChain, entries: dict, subchains: dict):
        self.chain = chain
        self.entries = entries
        self.subchains = subchains

    def faces(self):
        return sorted(self.subchains, key=lambda s: (len(s), s))

    def lattice(self, kept, I) -> Lattice:
        key = (tuple(kept), tuple(sorted(I)))
        if key not in self.entries:
            raise UnknownFace("no entry for face %r, subset %r" % (kept, sorted(I)))
        return self.entries[key]

    def replaced(self, kept, I, lattice: Lattice) -> "LatticeFamily":
        """Copy with one entry overridden (fault-injection hook for tests)."""
        entries = dict(self.entries)
        entries[(tuple(kept), tuple(sorted(I)))] = lattice
        return LatticeFamily(self.chain, entries, self.subchains)


def build_family(chain: AutChain, cap: int = DEFAULT_CHAIN_CAP) -> LatticeFamily:
    k = len(chain)
    if k > cap:
        raise ChainTooLong("chain length %d exceeds cap %d" % (k, cap))
    if any(g.is_identity() for g in chain.autos):
        raise DegenerateChain("chain contains an identity arrow")
    builder = _FamilyBuilder(chain.space)
    entries = {}
    subchains = {}
    for size in range(1, k + 2):
        for kept in combinations(range(k + 1), size):
            sub = _subchain(chain.autos, kept)
            subchains[kept] = sub
            m = size - 1
            for I in nonempty_subsets(m):
                entries[(kept, tuple(sorted(I)))] = builder.lattice(sub, I)
    return LatticeFamily(chain, entries, subchains)


def _drop_vertex(kept, i):
    return kept[:i] + kept[i + 1 :]


def verify_family(family: LatticeFamily):
    """Re-check the inductive hypotheses and both face identities.

    Returns a list of {check, simplex, status, detail} dicts, one per
    verified identity, deterministic in order.
    """
    report = []

    def record(check, simplex, ok, detail=""):
        report.append(
            {
                "check": check,
                "simplex": simplex,
                "status": "pass" if ok else "fail",
                "detail": detail,
            }
        )

    for kept in family.faces():
        m = len(kept) - 1
        sub = family.subchains[kept]
        tag = "S=%s" % (",".join(map(str, kept)),)
        if m == 0:
            continue
        subsets = nonempty_subsets(m)
        # hypotheses (a) and (b): compatibility with every face choice
        for I in subsets:
            if len(I) == m + 1:
                continue
            for i in sorted(set(range(m + 1)) - set(I)):
                here = family.lattice(kept, I)
                if i < m:
                    other = family.lattice(
                        _drop_vertex(kept, i), subset_degeneracy(I, i)
                    )
                    ok = here == other
                    record(
                        "hypothesis_a",
                        "%s I=%s i=%d" % (tag, sorted(I), i),
                        ok,
                        "" if ok else "face value disagrees",
                    )
                else:
                    lower = family.lattice(_drop_vertex(kept, m), I)
                    ok = here == act(sub[-1], lower)
                    record(
                        "hypothesis_b",
                        "%s I=%s" % (tag, sorted(I)),
                        ok,
                        "" if ok else "g_k-translate disagrees",
                    )
        # hypothesis (c): monotone in I
        for I in subsets:
            for J in subsets:
                if I < J:
                    ok = leq(family.lattice(kept, I), family.lattice(kept, J))
                    record(
                        "hypothesis_c",
                        "%s I=%s J=%s" % (tag, sorted(I), sorted(J)),
                        ok,
                        "" if ok else "not a sub-lattice",
                    )
        # face identities of the simplicial section
        for i in range(m + 1):
            lower_kept = _drop_vertex(kept, i)
            for J in nonempty_subsets(m - 1):
                lifted = frozenset(x if x < i else x + 1 for x in J)
                top = family.lattice(kept, lifted)
                low = family.lattice(lower_kept, J)
                if i < m:
                    ok = top == low
                else:
                    ok = top == act(sub[-1], low)
                record(
                    "face_identity_d%d" % i,
                    "%s J=%s" % (tag, sorted(J)),
                    ok,
                    "" if ok else "section is not simplicial here",
                )
    return report


def family_passes(report) -> bool:
    return all(r["status"] == "pass" for r in report)


def index_simplex(family: LatticeFamily, kept):
    """Quotient dimensions of the face's S-construction image at K_0.

    For each vertex j of the face, the dimension of L_[m] / L_{j}; for a
    1-simplex this is the pair (dim N/gL, dim N/L), whose difference
    dim(N/gL) - dim(N/L) is the loop orientation agreed with index0.
    """
    kept = tuple(kept)
    if kept not in family.subchains:
        raise UnknownFace("no face %r" % (kept,))
    m = len(kept) - 1
    top = family.lattice(kept, range(m + 1))
    return [
        quotient_dim_lattices(family.lattice(kept, [j]), top) for j in range(m + 1)
    ]
