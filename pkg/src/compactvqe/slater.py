"""Determinant algebra on bitmasks and Slater-Condon matrix elements.

A determinant is an int whose bit p marks occupation of spin-orbital p.  The
phase convention is fixed by building determinants as products of creation
operators in ascending index order applied right-to-left (equivalently: the
bitmask state itself carries no extra phase), which matches the computational
basis of the qubit mapping with qubit p = spin-orbital p.
"""

from itertools import combinations

__all__ = [
    "hf_determinant",
    "apply_annihilation",
    "apply_creation",
    "excitation_degree",
    "matrix_element",
    "determinant_from_excitation",
    "sector_determinants",
]


def hf_determinant(sys):
    mask = 0
    for p in sys.occupied:
        mask |= 1 << p
    return mask


def _parity_below(mask, p):
    return -1 if (mask & ((1 << p) - 1)).bit_count() % 2 else 1


def apply_annihilation(mask, p):
    """a_p |mask> -> (sign, new_mask) or None if orbital p is empty."""
    if not (mask >> p) & 1:
        return None
    return _parity_below(mask, p), mask & ~(1 << p)


def apply_creation(mask, p):
    """a_p^dagger |mask> -> (sign, new_mask) or None if orbital p is filled."""
    if (mask >> p) & 1:
        return None
    return _parity_below(mask, p), mask | (1 << p)


def apply_string(mask, creations, annihilations):
    """Apply a_c1^+ a_c2^+ ... a_dk ... a_d1 (annihilations right-to-left,
    i.e. annihilations[0] acts first).  Returns (sign, mask) or None."""
    sign = 1
    for p in annihilations:
        out = apply_annihilation(mask, p)
        if out is None:
            return None
        s, mask = out
        sign *= s
    for p in reversed(creations):
        out = apply_creation(mask, p)
        if out is None:
            return None
        s, mask = out
        sign *= s
    return sign, mask


def determinant_from_excitation(ref_mask, holes, particles):
    """Excited determinant a_a1^+ a_a2^+ ... a_i2 a_i1 |ref> with holes and
    particles given in ascending order; returns (sign, mask)."""
    out = apply_string(ref_mask, list(particles), list(holes))
    if out is None:
        raise ValueError("excitation incompatible with reference occupation")
    return out


def excitation_degree(m1, m2):
    return (m1 ^ m2).bit_count() // 2


def _occ_list(mask):
    occ = []
    while mask:
        low = mask & -mask
        occ.append(low.bit_length() - 1)
        mask ^= low
    return occ


def matrix_element(h1, v, m1, m2):
    """<m1| H |m2> for H = sum h1[p,q] a_p^+ a_q + 1/4 sum v[pqrs] a_p^+ a_q^+ a_s a_r.

    v must be the antisymmetrized physicist-notation tensor <pq||rs>.  The
    core-energy contribution is not included.
    """
    diff = m1 ^ m2
    ndiff = diff.bit_count()
    if ndiff == 0:
        occ = _occ_list(m1)
        e = sum(h1[p, p] for p in occ)
        e += 0.5 * sum(v[p, q, p, q] for p in occ for q in occ)
        return e
    if ndiff == 2:
        p = _occ_list(diff & m1)[0]   # occupied in m1, not in m2
        q = _occ_list(diff & m2)[0]
        s, inter = apply_annihilation(m2, q)
        s2, _ = apply_creation(inter, p)
        sign = s * s2
        common = _occ_list(m1 & m2)
        return sign * (h1[p, q] + sum(v[p, k, q, k] for k in common))
    if ndiff == 4:
        p1, p2 = _occ_list(diff & m1)
        q1, q2 = _occ_list(diff & m2)
        out = apply_string(m2, [p1, p2], [q1, q2])
        sign, res = out
        assert res == m1
        return sign * v[p1, p2, q1, q2]
    return 0.0


def sector_determinants(n_spatial, n_alpha, n_beta):
    """All blocked-order determinant masks with fixed alpha/beta counts,
    in ascending mask order."""
    masks = []
    for occ_a in combinations(range(n_spatial), n_alpha):
        ma = sum(1 << p for p in occ_a)
        for occ_b in combinations(range(n_spatial), n_beta):
            mb = sum(1 << (p + n_spatial) for p in occ_b)
            masks.append(ma | mb)
    return sorted(masks)
