"""Additive finite groups built from atoms: D, G_alpha, Z_m and V_n.

Elements of a product group are flat tuples of small ints; each atom owns a
contiguous slice of slots.  D and G_alpha carry twisted (non-abelian) laws:

  D (order 6, underlying Z_2 x Z_3):
      (a,b) + (c,d) = (a+c, (-1)^c b + d)
  G_alpha (order 3*4^alpha, underlying Z_3 x Z_{2^a} x Z_{2^a}):
      (a,b,c) + (d,e,f) = (a,b,c)*Theta^d + (d,e,f),
      Theta acting by (b,c) -> (-c, b-c).

Z_m and V_n add coordinate-wise (V_n slot-wise in its component fields).
"""

from __future__ import annotations

import itertools
from functools import cached_property

from .finring import build_ring, factorize

try:
    import numpy as _np
except ImportError:  # pragma: no cover - numpy is a hard dependency in practice
    _np = None


class DAtom:
    """The order-6 pertinent group in additive presentation."""

    width = 2
    order = 6
    label = "D"

    def coord_lists(self):
        return [range(2), range(3)]

    zero = (0, 0)

    def add(self, x, y):
        a, b = x
        c, d = y
        return ((a + c) % 2, ((b if c == 0 else -b) + d) % 3)

    def sub(self, x, y):
        a, b = x
        c, d = y
        return ((a - c) % 2, ((b - d) if c == 0 else (d - b)) % 3)

    def neg(self, x):
        return self.sub(self.zero, x)

    def generators(self):
        return [(1, 0), (0, 1)]

    def __eq__(self, other):
        return isinstance(other, DAtom)

    def __hash__(self):
        return hash("D")

    def __repr__(self):
        return "D"


class GAtom:
    """G_alpha: Z_{2^alpha}^2 x| Z_3 with the Theta twist."""

    def __init__(self, alpha):
        if alpha < 1:
            raise ValueError("alpha must be >= 1")
        self.alpha = alpha
        self.m = 2 ** alpha
        self.order = 3 * 4 ** alpha

    width = 3
    zero = (0, 0, 0)

    @property
    def label(self):
        return f"G{self.alpha}"

    def coord_lists(self):
        return [range(3), range(self.m), range(self.m)]

    def add(self, x, y):
        a, b, c = x
        d, e, f = y
        m = self.m
        d3 = d % 3
        if d3 == 0:
            tb, tc = b, c
        elif d3 == 1:
            tb, tc = -c, b - c
        else:
            tb, tc = c - b, -b
        return ((a + d) % 3, (tb + e) % m, (tc + f) % m)

    def sub(self, x, y):
        a, b, c = x
        d, e, f = y
        m = self.m
        d3 = d % 3
        if d3 == 0:
            return ((a - d) % 3, (b - e) % m, (c - f) % m)
        if d3 == 1:
            return ((a - d) % 3, (e - b + c - f) % m, (e - b) % m)
        return ((a - d) % 3, (f - c) % m, (b - e + f - c) % m)

    def neg(self, x):
        return self.sub(self.zero, x)

    def generators(self):
        return [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    @property
    def canonical_involution(self):
        h = self.m // 2
        return (0, h, h)

    def __eq__(self, other):
        return isinstance(other, GAtom) and self.alpha == other.alpha

    def __hash__(self):
        return hash(("G", self.alpha))

    def __repr__(self):
        return self.label


class ZAtom:
    """Cyclic Z_m."""

    width = 1

    def __init__(self, m):
        self.m = m
        self.order = m
        self.label = f"Z{m}"
        self.zero = (0,)

    def coord_lists(self):
        return [range(self.m)]

    def add(self, x, y):
        return ((x[0] + y[0]) % self.m,)

    def sub(self, x, y):
        return ((x[0] - y[0]) % self.m,)

    def neg(self, x):
        return ((-x[0]) % self.m,)

    def generators(self):
        return [(1,)]

    def __eq__(self, other):
        return isinstance(other, ZAtom) and self.m == other.m

    def __hash__(self):
        return hash(("Z", self.m))

    def __repr__(self):
        return self.label


class VAtom:
    """The additive group of the ring F_n; one slot per component field."""

    def __init__(self, ring):
        if isinstance(ring, int):
            ring = build_ring(ring)
        self.ring = ring
        self.order = ring.n
        self.width = ring.omega
        self.label = f"V{ring.n}"
        self.zero = ring.zero

    def coord_lists(self):
        return [range(f.q) for f in self.ring.fields]

    def add(self, x, y):
        return self.ring.add(x, y)

    def sub(self, x, y):
        return self.ring.sub(x, y)

    def neg(self, x):
        return self.ring.neg(x)

    def generators(self):
        gens = []
        for i, f in enumerate(self.ring.fields):
            for d in range(f.k):
                g = [0] * self.width
                g[i] = f.p ** d  # encoded basis element x^d
                gens.append(tuple(g))
        return gens

    def __eq__(self, other):
        return isinstance(other, VAtom) and self.ring.n == other.ring.n

    def __hash__(self):
        return hash(("V", self.ring.n))

    def __repr__(self):
        return self.label


class GroupDescriptor:
    """A direct product of atoms, with elements as flat int tuples."""

    def __init__(self, atoms):
        self.atoms = tuple(a for a in atoms if a.width > 0 or a.order > 1)
        self.offsets = []
        off = 0
        for a in self.atoms:
            self.offsets.append(off)
            off += a.width
        self.width = off
        self.order = 1
        for a in self.atoms:
            self.order *= a.order
        self.zero = tuple(c for a in self.atoms for c in a.zero)

    def __repr__(self):
        return " x ".join(a.label for a in self.atoms) or "V1"

    def __eq__(self, other):
        return isinstance(other, GroupDescriptor) and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def _slices(self, x):
        for a, off in zip(self.atoms, self.offsets):
            yield a, x[off:off + a.width]

    def add(self, x, y):
        out = []
        for a, off in zip(self.atoms, self.offsets):
            out.extend(a.add(x[off:off + a.width], y[off:off + a.width]))
        return tuple(out)

    def sub(self, x, y):
        out = []
        for a, off in zip(self.atoms, self.offsets):
            out.extend(a.sub(x[off:off + a.width], y[off:off + a.width]))
        return tuple(out)

    def neg(self, x):
        return self.sub(self.zero, x)

    def conj(self, g, x):
        """g + x - g."""
        return self.add(self.add(g, x), self.neg(g))

    @cached_property
    def element_list(self):
        """All elements in canonical (lexicographic) order."""
        ranges = [r for a in self.atoms for r in a.coord_lists()]
        if not ranges:
            return [()]
        return list(itertools.product(*ranges))

    @cached_property
    def element_index(self):
        return {e: i for i, e in enumerate(self.element_list)}

    def elements(self):
        return iter(self.element_list)

    @cached_property
    def involutions(self):
        return tuple(x for x in self.element_list
                     if x != self.zero and self.add(x, x) == self.zero)

    @cached_property
    def canonical_involution(self):
        lead = self.atoms[0] if self.atoms else None
        if not isinstance(lead, GAtom):
            raise ValueError(f"canonical involution undefined for {self!r}")
        j = lead.canonical_involution
        return j + self.zero[lead.width:]

    @cached_property
    def is_pertinent(self):
        inv = self.involutions
        if len(inv) != 3:
            return False
        for x, y in itertools.combinations(inv, 2):
            if not any(self.conj(g, x) == y for g in self.element_list):
                return False
        return True

    def generators(self):
        gens = []
        for a, off in zip(self.atoms, self.offsets):
            pre = self.zero[:off]
            post = self.zero[off + a.width:]
            for g in a.generators():
                gens.append(pre + g + post)
        return gens

    def mu(self, x, units):
        """Apply the slot-wise multiplication x_slot * units[slot]; entries of
        `units` that are None leave the slot unchanged.  `units` is a full-width
        tuple whose V-atom slots hold field elements."""
        out = list(x)
        for a, off in zip(self.atoms, self.offsets):
            if isinstance(a, VAtom):
                for i, f in enumerate(a.ring.fields):
                    u = units[off + i]
                    if u is not None:
                        out[off + i] = f.mul(out[off + i], u)
        return tuple(out)

    def unit_vector(self, atom_index, ring_element):
        """Full-width multiplier tuple: ring_element on the given V atom, None elsewhere."""
        units = [None] * self.width
        a = self.atoms[atom_index]
        off = self.offsets[atom_index]
        if not isinstance(a, VAtom):
            raise ValueError("multipliers act on V atoms only")
        for i, u in enumerate(ring_element):
            units[off + i] = u
        return tuple(units)


def product(*atoms):
    return GroupDescriptor(atoms)


# ---------------------------------------------------------------------------
# pertinent orders

def pertinent_order(n):
    """True iff some group of order n has exactly 3 involutions, pairwise conjugate."""
    if n <= 0:
        return False
    if n % 12 == 6:
        return True
    alpha = 0
    m = n
    while m % 4 == 0:
        m //= 4
        alpha += 1
    return alpha > 0 and m % 6 == 3


def pertinent_witness(n):
    if not pertinent_order(n):
        raise ValueError(f"{n} is not a pertinent order")
    if n % 12 == 6:
        m = n // 6
        atoms = [DAtom()] + ([ZAtom(m)] if m > 1 else [])
        return GroupDescriptor(atoms)
    alpha, m = 0, n
    while m % 4 == 0:
        m //= 4
        alpha += 1
    while m % 6 != 3:  # push spare factors of 4 back until the odd part shows
        m *= 4
        alpha -= 1
    k = m // 3
    atoms = [GAtom(alpha)] + ([ZAtom(k)] if k > 1 else [])
    return GroupDescriptor(atoms)


# ---------------------------------------------------------------------------
# subgroups / quotients

class SubgroupView:
    def __init__(self, ambient, carrier, check=True):
        self.ambient = ambient
        self.carrier = frozenset(carrier)
        if check:
            self._verify()

    def _verify(self):
        G = self.ambient
        if G.zero not in self.carrier:
            raise ValueError("subgroup must contain 0")
        for x in self.carrier:
            if G.neg(x) not in self.carrier:
                raise ValueError(f"subgroup not closed under negation at {x}")
            for y in self.carrier:
                if G.add(x, y) not in self.carrier:
                    raise ValueError(f"subgroup not closed under + at {x},{y}")

    def __len__(self):
        return len(self.carrier)

    def __contains__(self, x):
        return x in self.carrier

    def __eq__(self, other):
        return (isinstance(other, SubgroupView) and self.ambient == other.ambient
                and self.carrier == other.carrier)

    def __hash__(self):
        return hash((self.ambient, self.carrier))

    def is_normal(self):
        G = self.ambient
        return all(G.conj(g, h) in self.carrier
                   for g in G.element_list for h in self.carrier)

    def sorted_carrier(self):
        return sorted(self.carrier)


def coordinate_subgroup(group, atom_sets):
    """Subgroup that is a product of per-atom subsets.

    atom_sets: one entry per atom - "full", "zero", or an iterable of that
    atom's coordinate tuples (which must form a subgroup of the atom).
    """
    parts = []
    for a, spec in zip(group.atoms, atom_sets):
        if spec == "full":
            parts.append([tuple(c) for c in itertools.product(*a.coord_lists())])
        elif spec == "zero":
            parts.append([a.zero])
        else:
            parts.append([tuple(s) for s in spec])
    carrier = [sum(p, ()) for p in itertools.product(*parts)]
    return SubgroupView(group, carrier)


def left_cosets(view):
    """Partition of the ambient group into left cosets g + H."""
    G = view.ambient
    seen = set()
    out = []
    for g in G.element_list:
        if g in seen:
            continue
        coset = frozenset(G.add(g, h) for h in view.carrier)
        seen.update(coset)
        out.append(coset)
    return out


class QuotientView:
    """G/H for a normal subgroup H, with the canonical epimorphism and the
    minimum-representative section."""

    def __init__(self, ambient, sub):
        if not sub.is_normal():
            raise ValueError("subgroup is not normal")
        self.ambient = ambient
        self.sub = sub
        self.cosets = left_cosets(sub)
        self.reps = [min(c) for c in self.cosets]
        self._coset_of = {}
        for rep, c in zip(self.reps, self.cosets):
            for x in c:
                self._coset_of[x] = rep

    def epi(self, x):
        """x -> the canonical (minimum) representative of x + H."""
        return self._coset_of[x]

    def section(self, rep):
        return rep

    @property
    def order(self):
        return len(self.cosets)


# ---------------------------------------------------------------------------
# element maps between groups

def atom_injection(src, dst, assignment):
    """Build an injective homomorphism src -> dst from per-destination-atom specs.

    assignment: a list over dst atoms; each entry is None (that atom is sent 0)
    or (src_atom_index, fn) where fn maps a src-atom coordinate tuple to a
    dst-atom coordinate tuple.
    """
    src_slices = [(a, off) for a, off in zip(src.atoms, src.offsets)]

    def apply(x):
        out = []
        for (dst_atom, spec) in zip(dst.atoms, assignment):
            if spec is None:
                out.extend(dst_atom.zero)
            else:
                i, fn = spec
                a, off = src_slices[i]
                out.extend(fn(x[off:off + a.width]))
        return tuple(out)

    return apply


def zero_pad_embedding(src, dst):
    """Embed src into dst by matching equal atoms in order, zero elsewhere."""
    assignment = []
    next_src = 0
    for dst_atom in dst.atoms:
        if next_src < len(src.atoms) and src.atoms[next_src] == dst_atom:
            assignment.append((next_src, lambda c: c))
            next_src += 1
        else:
            assignment.append(None)
    if next_src != len(src.atoms):
        raise ValueError(f"cannot embed {src!r} into {dst!r} by atom matching")
    return atom_injection(src, dst, assignment)


def slot_signature(group):
    """Per-slot algebra signature; equal signatures mean identical flat-tuple
    arithmetic, regardless of how abelian V slots are grouped into atoms."""
    sig = []
    for a in group.atoms:
        if isinstance(a, VAtom):
            sig.extend(("V", f.signature) for f in a.ring.fields)
        else:
            sig.append(("atom", repr(a)))
    return tuple(sig)


def g_chain_embedding(alpha_src, alpha_dst):
    """The injection G_{alpha_src} -> G_{alpha_dst}: (a,b,c) -> (a, 2^i b, 2^i c)."""
    i = alpha_dst - alpha_src
    if i < 0:
        raise ValueError("source alpha exceeds destination alpha")
    f = 2 ** i

    def fn(coords):
        a, b, c = coords
        return (a, f * b, f * c)

    return fn


# ---------------------------------------------------------------------------
# canonical textual element encoding, e.g. "G1:(2,1,1)|V5:3"

def encode_element(group, x):
    parts = []
    for a, off in zip(group.atoms, group.offsets):
        coords = x[off:off + a.width]
        if len(coords) == 1:
            parts.append(f"{a.label}:{coords[0]}")
        else:
            parts.append(f"{a.label}:({','.join(map(str, coords))})")
    return "|".join(parts)


def parse_element(group, text):
    coords = []
    chunks = text.split("|") if text else []
    if len(chunks) != len(group.atoms):
        raise ValueError(f"expected {len(group.atoms)} atoms in {text!r}")
    for a, chunk in zip(group.atoms, chunks):
        label, _, body = chunk.partition(":")
        if label != a.label:
            raise ValueError(f"atom mismatch: {label} vs {a.label}")
        body = body.strip("()")
        vals = tuple(int(t) for t in body.split(",")) if body else ()
        if len(vals) != a.width:
            raise ValueError(f"wrong arity for {a.label} in {text!r}")
        coords.extend(vals)
    x = tuple(coords)
    if x not in group.element_index:
        raise ValueError(f"{text!r} is not an element of {group!r}")
    return x


# ---------------------------------------------------------------------------
# fast id-level machinery (used by verify/build hot paths)

class GroupIndex:
    """Integer-id view of a group with per-atom Cayley tables; translations
    come out as numpy permutation arrays in O(|G|) after setup."""

    def __init__(self, group):
        if _np is None:
            raise RuntimeError("numpy is required for GroupIndex")
        self.group = group
        self.n = group.order
        atoms = group.atoms
        self.tables = []
        self.strides = []
        stride = 1
        # atom-local element lists in canonical order
        self.local_lists = []
        for a in atoms:
            loc = list(itertools.product(*a.coord_lists())) or [()]
            self.local_lists.append(loc)
        for loc in reversed(self.local_lists):
            self.strides.append(stride)
            stride *= len(loc)
        self.strides.reverse()
        for a, loc in zip(atoms, self.local_lists):
            idx = {e: i for i, e in enumerate(loc)}
            k = len(loc)
            t = _np.empty((k, k), dtype=_np.int64)
            for i, x in enumerate(loc):
                for j, y in enumerate(loc):
                    t[i, j] = idx[a.add(x, y)]
            self.tables.append(t)

    def id_of(self, element):
        return self.group.element_index[element]

    def translation(self, g):
        """Permutation perm with perm[i] = id(element_i + g)."""
        group = self.group
        digits = []
        off = 0
        for a, loc in zip(group.atoms, self.local_lists):
            coords = g[off:off + a.width]
            digits.append({e: i for i, e in enumerate(loc)}[coords] if loc != [()] else 0)
            off += a.width
        n = self.n
        perm = _np.zeros(n, dtype=_np.int64)
        shape = [len(loc) for loc in self.local_lists]
        grid = perm.reshape(shape) if shape else perm
        for k, (t, s) in enumerate(zip(self.tables, self.strides)):
            col = t[:, digits[k]] * s
            idx = [None] * len(shape)
            idx[k] = slice(None)
            grid += col[tuple(idx)]
        return perm
