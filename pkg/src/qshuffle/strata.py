"""Cells of the configuration space of n crosses in the plane with m punctures.

A cell is a tuple of entries.  An integer entry j >= 1 is a movable line with j
crosses.  A pair (a, b) is a fixed line through a puncture with a crosses
before the puncture and b after it.  The tensor space of a cell puts X on each
cross and Y on each puncture, in line order.

The differential merges neighbouring lines with braided binomials and signs
(-1)^i, where i is the 1-based index of the second line of the pair.
"""

from math import comb

from .braidrep import Bbin, BraidElement, Operator, Report, block_braiding, word_permutation


def is_fixed(entry):
    return isinstance(entry, tuple)


def weight(entry):
    """Number of crosses on a line."""
    return entry[0] + entry[1] if is_fixed(entry) else entry


def length(entry):
    """Number of strands of a line: crosses plus the puncture."""
    return entry[0] + entry[1] + 1 if is_fixed(entry) else entry


def cell_labels(cell, x="X", y="Y"):
    out = []
    for e in cell:
        if is_fixed(e):
            out += [x] * e[0] + [y] + [x] * e[1]
        else:
            out += [x] * e
    return tuple(out)


def cell_dimension(cell):
    return sum(weight(e) for e in cell) + sum(1 for e in cell if not is_fixed(e))


def _entry_key(e):
    return (1, e[0], e[1]) if is_fixed(e) else (0, e)


def cell_key(cell):
    return tuple(_entry_key(e) for e in cell)


class Cell:
    """Oriented cell: entries plus an orientation sign."""

    def __init__(self, entries, orientation=1):
        self.entries = tuple(tuple(e) if isinstance(e, (tuple, list)) else int(e) for e in entries)
        self.orientation = orientation
        for e in self.entries:
            if is_fixed(e):
                if e[0] < 0 or e[1] < 0:
                    raise ValueError("fixed line with negative cross count")
            elif e < 1:
                raise ValueError("a movable line carries at least one cross")

    @property
    def m(self):
        return sum(1 for e in self.entries if is_fixed(e))

    @property
    def n(self):
        return sum(weight(e) for e in self.entries)

    @property
    def k(self):
        return cell_dimension(self.entries)

    def __eq__(self, other):
        return isinstance(other, Cell) and self.entries == other.entries \
            and self.orientation == other.orientation

    def __hash__(self):
        return hash((self.entries, self.orientation))

    def __repr__(self):
        return "Cell(%s%s)" % (self.entries, "" if self.orientation == 1 else ", -1")


def _compositions(total, parts):
    """Sequences of `parts` positive integers summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _weak_compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_cells(m, n, k):
    """All cells with m fixed lines, n crosses and dimension k, sorted."""
    if not n <= k <= 2 * n:
        raise ValueError("dimension must lie in [n, 2n]")
    movable = k - n
    lines = movable + m
    out = []
    for pattern in _choose_positions(lines, m):
        for movable_total in range(movable, n + 1):
            fixed_total = n - movable_total
            for mv in _compositions(movable_total, movable):
                for fx in _weak_compositions(fixed_total, 2 * m):
                    entries = []
                    mi = fi = 0
                    for slot in range(lines):
                        if slot in pattern:
                            entries.append((fx[2 * fi], fx[2 * fi + 1]))
                            fi += 1
                        else:
                            entries.append(mv[mi])
                            mi += 1
                    out.append(tuple(entries))
    out = sorted(set(out), key=cell_key)
    return out


def _choose_positions(total, count):
    from itertools import combinations
    return [set(c) for c in combinations(range(total), count)]


def boundary_cells(cell):
    """Codimension-one cells from merging neighbouring lines, with orientation signs."""
    entries = cell.entries if isinstance(cell, Cell) else tuple(cell)
    orient = cell.orientation if isinstance(cell, Cell) else 1
    out = []
    for r in range(1, len(entries)):
        a, b = entries[r - 1], entries[r]
        sign = orient if r % 2 == 1 else -orient
        if is_fixed(a) and is_fixed(b):
            continue
        before, after = entries[:r - 1], entries[r + 1:]
        if not is_fixed(a) and not is_fixed(b):
            out.append((Cell(before + (a + b,) + after), sign))
        elif is_fixed(b):
            for s in range(a + 1):
                out.append((Cell(before + ((s + b[0], b[1] + a - s),) + after), sign))
        else:
            for s in range(b + 1):
                out.append((Cell(before + ((a[0] + s, a[1] + b - s),) + after), sign))
    return out


# ---------------------------------------------------------------------------
# restriction maps

def mu_map(b, j, l1, l2):
    """Split merger of j movable crosses into a fixed line (l1; Y; l2), b of them going left."""
    return Bbin(b, l1) * Bbin(j - b, l2).shift(b + l1 + 1) * block_braiding(j - b, l1 + 1).shift(b)


def mu_map_right(b, l1, l2, j):
    """Mirror case: a fixed line (l1; Y; l2) followed by j movable crosses, b going left."""
    return Bbin(l1, b) * Bbin(l2, j - b).shift(l1 + b + 1) * block_braiding(l2 + 1, b).shift(l1)


def restriction_morphism(cell, i, b=None):
    """Braid element for merging lines i and i+1 (1-based) of a cell.

    For a movable and a fixed line, b selects how many merged crosses end up
    before the puncture; with b=None the sum over all b is returned.
    """
    entries = cell.entries if isinstance(cell, Cell) else tuple(cell)
    if not 1 <= i < len(entries):
        raise ValueError("merger index out of range")
    a, c = entries[i - 1], entries[i]
    prefix = sum(length(e) for e in entries[:i - 1])
    if is_fixed(a) and is_fixed(c):
        raise ValueError("two fixed lines cannot merge")
    if b is None or (not is_fixed(a) and not is_fixed(c)):
        return Bbin(length(a), length(c)).shift(prefix)
    if is_fixed(c):
        if not 0 <= b <= a:
            raise ValueError("split out of range")
        return mu_map(b, a, c[0], c[1]).shift(prefix)
    if not 0 <= b <= c:
        raise ValueError("split out of range")
    return mu_map_right(b, a[0], a[1], c).shift(prefix)


# ---------------------------------------------------------------------------
# the differential

def _target_cell(entries, i, word, x="X", y="Y"):
    labels = cell_labels(entries, x, y)
    n = max(len(labels), 1)
    arr = word_permutation(word, n)
    out_labels = [labels[a - 1] for a in arr]
    prefix = sum(length(e) for e in entries[:i - 2])
    span = length(entries[i - 2]) + length(entries[i - 1])
    block = out_labels[prefix:prefix + span]
    if y in block:
        pos = block.index(y)
        merged = (pos, span - pos - 1)
    else:
        merged = span
    return entries[:i - 2] + (merged,) + entries[i:]


def differential_terms(cell, x="X", y="Y"):
    """List of (sign, word, target cell) for the differential on one cell."""
    entries = cell.entries if isinstance(cell, Cell) else tuple(cell)
    out = []
    for i in range(2, len(entries) + 1):
        a, b = entries[i - 2], entries[i - 1]
        if is_fixed(a) and is_fixed(b):
            continue
        sign = (-1) ** i
        prefix = sum(length(e) for e in entries[:i - 2])
        elem = Bbin(length(a), length(b)).shift(prefix)
        for w in sorted(elem.terms, key=lambda w: (len(w), w)):
            out.append((sign * elem.terms[w], w, _target_cell(entries, i, w, x, y)))
    return out


class ChainComplexSlice:
    """Cells and differentials of the complex for fixed (m, n)."""

    def __init__(self, m, n):
        self.m = m
        self.n = n
        self.cells = {k: enumerate_cells(m, n, k) for k in range(n, 2 * n + 1)}

    def differential(self, braiding, k, x="X", y="Y"):
        """Operator C_k -> C_{k-1}; blocks are keyed by (cell, cell)."""
        blocks = {}
        if k <= self.n:
            return Operator({})
        for c in self.cells[k]:
            grouped = {}
            for sign, w, tgt in differential_terms(c, x, y):
                grouped.setdefault(tgt, {})
                grouped[tgt][w] = grouped[tgt].get(w, 0) + sign
            labels = cell_labels(c, x, y)
            for tgt, terms in grouped.items():
                elem = BraidElement(max(len(labels), 1), terms)
                op = braiding.evaluate(elem, labels)
                tl = cell_labels(tgt, x, y)
                mat = op.block(labels, tl)
                if mat is None:
                    continue
                key = (c, tgt)
                blocks[key] = blocks[key] + mat if key in blocks else mat
        return Operator(blocks)


def differential(braiding, m, n, k, x="X", y="Y"):
    return ChainComplexSlice(m, n).differential(braiding, k, x, y)


def check_d_squared(braiding, m, n, x="X", y="Y"):
    """Exact check that consecutive differentials compose to zero."""
    cx = ChainComplexSlice(m, n)
    ds = {k: cx.differential(braiding, k, x, y) for k in range(n + 1, 2 * n + 1)}
    for k in range(n + 2, 2 * n + 1):
        comp = ds[k - 1] @ ds[k]
        if not comp.is_zero():
            nz = comp.nonzero_blocks()
            key = sorted(nz, key=repr)[0]
            return Report("d-squared", {"m": m, "n": n, "k": k}, False,
                          (key, 0, 0, "nonzero", 0))
    return Report("d-squared", {"m": m, "n": n}, True, cases=max(n - 1, 1))


def check_mu_sum(braiding, j, l1, l2, x="X", y="Y"):
    total = None
    for b in range(j + 1):
        t = mu_map(b, j, l1, l2)
        total = t if total is None else total + t
    labels = (x,) * j + (x,) * l1 + (y,) + (x,) * l2
    lhs = braiding.evaluate(total, labels)
    rhs = braiding.evaluate(Bbin(j, l1 + 1 + l2), labels)
    from .braidrep import compare
    return compare("mu-sum", {"j": j, "l1": l1, "l2": l2}, lhs, rhs)


def top_cell_count(m, n):
    return comb(n + m, n)
