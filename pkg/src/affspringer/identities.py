"""Identity suites for the explicit parametrisation and the determinant reductions."""

from __future__ import annotations

import random
from itertools import combinations

from .algebra import fraction_det, loop_matmul, vandermonde_det
from .springer import (C_PRIME_READINGS, ConjugationError, SpectralParameters, build_M,
                       build_M_inverse, conjugate_ts, is_identity_matrix, orthogonality_sum,
                       random_spectral, resolve_c_prime_reading)
from .weyl import AffineWeylElement, enumerate_F


def seeded_spectral(n: int, seed: int, count: int = 3) -> list[SpectralParameters]:
    rng = random.Random(f"spectral|{seed}|{n}")
    return [random_spectral(n, rng) for _ in range(count)]


def _entry(name, n, checks, failures, degree_bound, detail) -> dict:
    return {"name": name, "n": n, "passed": failures == 0, "checks": checks, "failures": failures,
            "degree_bound": degree_bound, "detail": detail}


def c_prime_resolution(n_max: int = 4, seed: int = 0) -> dict:
    """Which reading of the inverse constants inverts ``M`` for every ``n <= n_max``."""
    outcome = {}
    for reading in C_PRIME_READINGS:
        ok = all(resolve_c_prime_reading_for(reading, n, seeded_spectral(n, seed))
                 for n in range(2, n_max + 1))
        outcome[reading] = ok
    passing = [r for r, ok in outcome.items() if ok]
    return {"passing": passing, "outcome": outcome,
            "chosen": resolve_c_prime_reading(n_max, seeded_spectral(n_max, seed))}


def resolve_c_prime_reading_for(reading: str, n: int, spectral) -> bool:
    w = AffineWeylElement.identity(n)
    for s in spectral:
        m = build_M(w, s).entries
        minv = build_M_inverse(w, s, reading).entries
        if not (is_identity_matrix(loop_matmul(m, minv)) and is_identity_matrix(loop_matmul(minv, m))):
            return False
    return True


def inverse_suite(n: int, seed: int) -> dict:
    checks = failures = 0
    for s in seeded_spectral(n, seed):
        for w in enumerate_F(n):
            m = build_M(w, s).entries
            minv = build_M_inverse(w, s).entries
            checks += 1
            if not (is_identity_matrix(loop_matmul(m, minv)) and is_identity_matrix(loop_matmul(minv, m))):
                failures += 1
    return _entry("inverse", n, checks, failures, None,
                  "M^w M'^w = I symbolically in A for every w in the box, 3 seeded s")


def conjugation_suite(n: int, seed: int) -> dict:
    checks = failures = 0
    for s in seeded_spectral(n, seed):
        for w in enumerate_F(n):
            checks += 1
            try:
                conjugate_ts(w, s)
            except ConjugationError:
                failures += 1
    return _entry("conjugation", n, checks, failures, None,
                  "(M^w)^-1 (t s) M^w has entries t^(a+1) A_ji (s_j - s_i) below the diagonal")


def orthogonality_suite(max_chain: int, seed: int) -> list[dict]:
    n = max_chain
    plain = weighted = checks_p = checks_w = 0
    for s in seeded_spectral(n, seed):
        for k in range(2, max_chain + 1):
            for chain in combinations(range(1, n + 1), k):
                checks_p += 1
                if orthogonality_sum(chain, s) != 0:
                    plain += 1
                if k > 2:
                    checks_w += 1
                    if orthogonality_sum(chain, s, weighted=True) != 0:
                        weighted += 1
    # after clearing denominators each term has degree at most 2 (k - 1) (+1 when weighted)
    return [
        _entry("orthogonality", n, checks_p, plain, 2 * (max_chain - 1),
               "sum_l c(i_1..i_l) c'(i_l..i_k) = 0 for chains of length 2..%d" % max_chain),
        _entry("weighted-orthogonality", n, checks_w, weighted, 2 * (max_chain - 1) + 1,
               "sum_l c(i_1..i_l) s_(i_l) c'(i_l..i_k) = 0 for chains of length 3..%d" % max_chain),
    ]


def vandermonde_suite(max_size: int, seed: int, evaluations: int = 20) -> dict:
    rng = random.Random(f"vandermonde|{seed}")
    checks = failures = 0
    for size in range(1, max_size + 1):
        for _ in range(evaluations):
            vals = rng.sample(range(-10 ** 6, 10 ** 6), size)
            mat = [[v ** p for p in range(size)] for v in vals]
            checks += 1
            if fraction_det(mat) != vandermonde_det(vals):
                failures += 1
    return _entry("vandermonde", max_size, checks, failures, max_size * (max_size - 1) // 2,
                  "det[v_i^j] = prod_{i<j}(v_j - v_i) at random integer points")


def block_reduction_suite(n: int, seed: int) -> dict:
    """Closed-form block determinants against direct elimination."""
    from .blocks import NotComparable
    from .certificate import (block_constant_matrix, block_determinant_closed_form,
                              certificate_blocks, candidates_below, greedy_submatrices)
    checks = failures = 0
    for s in seeded_spectral(n, seed, count=1):
        for x in enumerate_F(n):
            for y in candidates_below(x):
                for i in range(n):
                    try:
                        sel = greedy_submatrices(x, y, i)
                    except NotComparable:
                        continue
                    for blk in certificate_blocks(sel):
                        closed = block_determinant_closed_form(blk, s)
                        if closed is None:
                            continue
                        checks += 1
                        if closed != fraction_det(block_constant_matrix(blk, s)) or closed == 0:
                            failures += 1
    return _entry("block-reduction", n, checks, failures, None,
                  "Vandermonde reduction of certificate blocks equals elimination and is nonzero")


def run_identities(n_max: int = 4, seed: int = 0, max_chain: int = 6) -> tuple[list[dict], dict]:
    results = []
    resolution = c_prime_resolution(min(n_max, 4), seed)
    results.append(_entry("c-prime-reading", min(n_max, 4), len(C_PRIME_READINGS),
                          0 if resolution["passing"] else 1, None,
                          "passing readings: " + (", ".join(resolution["passing"]) or "none")))
    for n in range(2, n_max + 1):
        results.append(inverse_suite(n, seed))
        results.append(conjugation_suite(n, seed))
    results.extend(orthogonality_suite(max_chain, seed))
    results.append(vandermonde_suite(6, seed))
    results.append(block_reduction_suite(min(n_max, 4), seed))
    return results, resolution
