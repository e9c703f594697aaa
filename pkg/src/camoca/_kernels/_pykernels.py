"""Pure-Python kernels.  Same signatures and results as the compiled module."""


def evaluate_codes(table, q, d, n, codes):
    """Apply a no-boundary CA to many configurations at once.

    A configuration of length ``n`` is coded as ``sum(x_i * q**(i-1))`` (the
    leftmost cell is the least-significant digit), and so is the output block.
    ``table`` is the local rule indexed the same way.
    """
    width = q**d
    steps = n - d + 1
    out = []
    for code in codes:
        acc = 0
        place = 1
        for _ in range(steps):
            acc += table[code % width] * place
            code //= q
            place *= q
        out.append(acc)
    return out


def superposition_distinct(a, b, order):
    """True iff the pairs ``(a[k], b[k])`` are pairwise distinct.

    Entries are in ``1..order``.
    """
    seen = bytearray(order * order)
    for x, y in zip(a, b):
        k = (x - 1) * order + (y - 1)
        if seen[k]:
            return False
        seen[k] = 1
    return True


def is_latin_flat(entries, order):
    """Row and column permutation check for a row-major square."""
    for i in range(order):
        row = set(entries[i * order:(i + 1) * order])
        col = set(entries[i::order])
        if len(row) != order or len(col) != order:
            return False
        if min(row) < 1 or max(row) > order:
            return False
    return True
