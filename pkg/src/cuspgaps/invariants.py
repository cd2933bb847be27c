"""Closed-form invariants of Gamma_0(N) and the exact inequality case analysis.

Everything here is a pure function of its integer arguments, computed in
exact arithmetic (integers and Fractions, never floats).  Levels are plain
positive ints and weights are plain positive even ints; ``check_level`` and
``check_weight`` enforce the contracts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .arith import (
    divisors,
    euler_phi,
    factorize,
    is_prime,
    kronecker_minus3,
    kronecker_minus4,
    primes_up_to,
)
from .errors import EngineError


def check_level(n) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"level must be a positive integer, got {n!r}")
    return n


def check_weight(k) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or k < 2 or k % 2 != 0:
        raise ValueError(f"weight must be an even integer >= 2, got {k!r}")
    return k


def check_odd_prime(level: int, p) -> int:
    """Validate a prime p >= 5 coprime to the level (enough for the bound
    formulas; (k-1)p + 1 stays even)."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")
    if level % p == 0:
        raise ValueError(f"p = {p} must not divide the level {level}")
    if p < 5:
        raise ValueError(f"p = {p} must be >= 5")
    return p


def check_admissible_prime(level: int, weight: int, p) -> int:
    """Validate the prime used by the case analysis: p prime, p coprime to
    the level, and p >= max(5, weight+1)."""
    check_odd_prime(level, p)
    if p < max(5, weight + 1):
        raise ValueError(f"p = {p} must be >= max(5, k+1) = {max(5, weight + 1)}")
    return p


@lru_cache(maxsize=None)
def index(level: int) -> int:
    """Index [SL_2(Z) : Gamma_0(N)] = N * prod_{p|N} (1 + 1/p)."""
    check_level(level)
    out = level
    for p, _ in factorize(level):
        out = out // p * (p + 1)
    return out


@lru_cache(maxsize=None)
def eps2(level: int) -> int:
    """Number of elliptic points of order 2 on X_0(N)."""
    check_level(level)
    if level % 4 == 0:
        return 0
    out = 1
    for p, _ in factorize(level):
        out *= 1 + kronecker_minus4(p)
    return out


@lru_cache(maxsize=None)
def eps3(level: int) -> int:
    """Number of elliptic points of order 3 on X_0(N)."""
    check_level(level)
    if level % 9 == 0:
        return 0
    out = 1
    for p, _ in factorize(level):
        out *= 1 + kronecker_minus3(p)
    return out


@lru_cache(maxsize=None)
def eps_inf(level: int) -> int:
    """Number of cusps of X_0(N): sum over d|N of phi(gcd(d, N/d))."""
    check_level(level)
    return sum(euler_phi(_gcd(d, level // d)) for d in divisors(level))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def genus(level: int) -> int:
    """Genus of X_0(N) via I/12 - eps_inf/2 - eps2/4 - eps3/3 + 1."""
    g = (
        Fraction(index(level), 12)
        - Fraction(eps_inf(level), 2)
        - Fraction(eps2(level), 4)
        - Fraction(eps3(level), 3)
        + 1
    )
    if g.denominator != 1 or g < 0:
        raise EngineError(f"genus formula gave non-integral or negative value {g} at level {level}")
    return int(g)


@dataclass(frozen=True)
class LevelInvariants:
    level: int
    index: int
    eps2: int
    eps3: int
    eps_inf: int
    genus: int

    @classmethod
    def compute(cls, level: int) -> "LevelInvariants":
        check_level(level)
        return cls(level, index(level), eps2(level), eps3(level), eps_inf(level), genus(level))

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "index": self.index,
            "eps2": self.eps2,
            "eps3": self.eps3,
            "epsInf": self.eps_inf,
            "genus": self.genus,
        }


@lru_cache(maxsize=None)
def cusp_dim(level: int, weight: int) -> int:
    """dim S_k(Gamma_0(N)) for even k >= 2 (k = 2 gives the genus)."""
    check_level(level)
    check_weight(weight)
    if weight == 2:
        return genus(level)
    d = (
        (weight - 1) * (genus(level) - 1)
        + (weight // 4) * eps2(level)
        + (weight // 3) * eps3(level)
        + (weight // 2 - 1) * eps_inf(level)
    )
    if d < 0:
        raise EngineError(f"dimension formula gave {d} < 0 at ({level}, {weight})")
    return d


def sturm_bound(level: int, weight: int) -> int:
    """Coefficient count determining a cusp form: floor(k*I(N)/12) + 1."""
    return weight * index(level) // 12 + 1


def valence_bound(level: int, weight: int) -> int:
    """Maximal possible ord_infinity of a non-zero form: floor(k*I(N)/12)."""
    return weight * index(level) // 12


def alpha_pair(level: int, big_weight: int) -> tuple[int, int]:
    """Forced zero counts (alpha2, alpha3) at the elliptic points for forms
    of even weight K, selected by K mod 12."""
    check_level(level)
    if big_weight % 2 != 0:
        raise ValueError(f"alpha_pair is defined for even weights, got {big_weight}")
    e2, e3 = eps2(level), eps3(level)
    table = {
        2: (e2, 2 * e3),
        4: (0, e3),
        6: (e2, 0),
        8: (0, 2 * e3),
        10: (e2, e3),
        0: (0, 0),
    }
    return table[big_weight % 12]


def vanishing_order_bound(level: int, weight: int, p: int) -> Fraction:
    """Sharp upper bound for ord_infinity(f), valid for f in S_k(pN) with
    v_p(f) = 0 and v_p(f|W_p) >= 1 - k/2 (Ahlgren--Masri--Rouse):

        ((k-1)p+1)/12 * I(N) - alpha2/2 - alpha3/3 - eps_inf(N) + 1
    """
    check_level(level)
    check_weight(weight)
    check_odd_prime(level, p)
    big_k = (weight - 1) * p + 1
    a2, a3 = alpha_pair(level, big_k)
    return (
        Fraction(big_k * index(level), 12)
        - Fraction(a2, 2)
        - Fraction(a3, 3)
        - eps_inf(level)
        + 1
    )


def master_inequality_lhs(level: int, weight: int, p: int) -> Fraction:
    """Exact left-hand side of the master inequality whose value >= 1 is
    equivalent to vanishing_order_bound <= dim S_k(pN)."""
    check_level(level)
    check_weight(weight)
    check_odd_prime(level, p)
    big_k = (weight - 1) * p + 1
    a2, a3 = alpha_pair(level, big_k)
    k = weight
    return (
        Fraction((k - 2) * index(level), 12)
        + (k // 4 - Fraction(k - 1, 4)) * eps2(p * level)
        + (k // 3 - Fraction(k - 1, 3)) * eps3(p * level)
        + Fraction(a2, 2)
        + Fraction(a3, 3)
    )


# Reduced-inequality certificates used by the case analysis.  Each label
# names the exact expression that certifies "master >= 1" in its case; in
# every case the reduced expression is equal to the master LHS once the
# case's congruence conditions are taken into account.
CERT_INDEX = "index"
CERT_EPS2 = "index+eps2/2"
CERT_EPS3 = "index+2eps3/3"
CERT_EPS23 = "index+eps2/2+2eps3/3"
CERT_ALPHA2 = "alpha2"
CERT_ALPHA3 = "alpha3"
CERT_MASTER = "full"


@dataclass(frozen=True)
class CaseReport:
    level: int
    weight: int
    prime: int
    big_weight: int
    big_weight_mod12: int
    alpha2: int
    alpha3: int
    quadrant: str
    congruence_modulus: int | None
    weight_residue: int | None
    prime_residue: int | None
    certificate: str
    certificate_lhs: Fraction
    master_lhs: Fraction
    dim_upper: int
    order_bound: Fraction
    inequality_holds: bool
    certificate_matches_master: bool
    identity_holds: bool

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "weight": self.weight,
            "prime": self.prime,
            "bigWeight": self.big_weight,
            "bigWeightMod12": self.big_weight_mod12,
            "alpha2": self.alpha2,
            "alpha3": self.alpha3,
            "quadrant": self.quadrant,
            "congruenceModulus": self.congruence_modulus,
            "weightResidue": self.weight_residue,
            "primeResidue": self.prime_residue,
            "certificate": self.certificate,
            "certificateLhs": str(self.certificate_lhs),
            "masterLhs": str(self.master_lhs),
            "dimUpper": self.dim_upper,
            "orderBound": str(self.order_bound),
            "inequalityHolds": self.inequality_holds,
            "certificateMatchesMaster": self.certificate_matches_master,
            "identityHolds": self.identity_holds,
        }


def _index_certificate(level: int, weight: int) -> Fraction:
    return Fraction((weight - 2) * index(level), 12)


def classify_triple(level: int, weight: int, p: int) -> CaseReport:
    """Classify (N, k, p) into the case analysis quadrants, pick the reduced
    inequality certifying master >= 1, and evaluate everything exactly.

    The quadrant is (alpha2 == 0?, alpha3 == 0?); within the quadrant where
    both vanish the certificate depends on which of eps2(N), eps3(N) vanish
    and on congruences of (k, p) mod 4, 3 or 12.
    """
    check_level(level)
    if weight < 4:
        raise ValueError("case classification requires even weight >= 4")
    check_weight(weight)
    check_admissible_prime(level, weight, p)

    big_k = (weight - 1) * p + 1
    a2, a3 = alpha_pair(level, big_k)
    e2n, e3n = eps2(level), eps3(level)
    master = master_inequality_lhs(level, weight, p)
    k = weight

    modulus: int | None = None
    if a2 == 0 and a3 == 0:
        quadrant = "alpha2=0,alpha3=0"
        if e2n == 0 and e3n == 0:
            cert, cert_lhs = CERT_INDEX, _index_certificate(level, k)
        elif e2n != 0 and e3n == 0:
            # alpha2 = 0 forces (k-1)p+1 == 0 mod 4
            modulus = 4
            if k % 4 == 0:  # (k, p) == (0, 1) mod 4
                cert = CERT_EPS2
                cert_lhs = _index_certificate(level, k) + Fraction(e2n, 2)
            else:  # (k, p) == (2, 3) mod 4
                cert, cert_lhs = CERT_INDEX, _index_certificate(level, k)
        elif e2n == 0 and e3n != 0:
            modulus = 3
            if k % 3 == 0:  # (k, p) == (0, 1) mod 3
                cert = CERT_EPS3
                cert_lhs = _index_certificate(level, k) + Fraction(2 * e3n, 3)
            else:  # (k, p) == (2, 2) mod 3
                cert, cert_lhs = CERT_INDEX, _index_certificate(level, k)
        else:
            # both elliptic counts positive: (k-1)p+1 == 0 mod 12, four classes
            modulus = 12
            km = k % 12
            if km == 2:  # p == 11: both eps(pN) vanish
                cert, cert_lhs = CERT_INDEX, _index_certificate(level, k)
            elif km == 6:  # p == 7
                cert = CERT_EPS3
                cert_lhs = _index_certificate(level, k) + Fraction(2 * e3n, 3)
            elif km == 8:  # p == 5
                cert = CERT_EPS2
                cert_lhs = _index_certificate(level, k) + Fraction(e2n, 2)
            else:  # km == 0, p == 1
                cert = CERT_EPS23
                cert_lhs = _index_certificate(level, k) + Fraction(e2n, 2) + Fraction(2 * e3n, 3)
    elif a2 != 0 and a3 == 0:
        quadrant = "alpha2!=0,alpha3=0"
        modulus = 12 if e3n != 0 else None
        cert, cert_lhs = CERT_ALPHA2, master
    elif a2 == 0 and a3 != 0:
        quadrant = "alpha2=0,alpha3!=0"
        modulus = 12 if e2n != 0 else None
        cert, cert_lhs = CERT_ALPHA3, master
    else:
        quadrant = "alpha2!=0,alpha3!=0"
        modulus = 12
        cert, cert_lhs = CERT_MASTER, master

    dim_upper = cusp_dim(p * level, weight)
    bound = vanishing_order_bound(level, weight, p)
    identity_holds = dim_upper - bound == master - 1

    return CaseReport(
        level=level,
        weight=weight,
        prime=p,
        big_weight=big_k,
        big_weight_mod12=big_k % 12,
        alpha2=a2,
        alpha3=a3,
        quadrant=quadrant,
        congruence_modulus=modulus,
        weight_residue=None if modulus is None else k % modulus,
        prime_residue=None if modulus is None else p % modulus,
        certificate=cert,
        certificate_lhs=cert_lhs,
        master_lhs=master,
        dim_upper=dim_upper,
        order_bound=bound,
        inequality_holds=master >= 1,
        certificate_matches_master=cert_lhs == master,
        identity_holds=identity_holds,
    )


def vanishing_levels(weight: int) -> tuple[int, ...]:
    """All levels N with dim S_k(N) = 0 for even k >= 4.

    The dimension is eventually positive and grows with N, so the search
    stops once 20 consecutive levels past the last zero have positive
    dimension.
    """
    check_weight(weight)
    if weight < 4:
        raise ValueError("vanishing_levels requires weight >= 4")
    out = []
    n = 1
    consecutive_positive = 0
    while consecutive_positive < 20:
        if cusp_dim(n, weight) == 0:
            out.append(n)
            consecutive_positive = 0
        else:
            consecutive_positive += 1
        n += 1
    return tuple(out)


@dataclass(frozen=True)
class ScanConfig:
    kmin: int = 4
    kmax: int = 24
    nmax: int = 300
    pmax: int = 199
    threads: int = 1

    def validate(self) -> "ScanConfig":
        if self.kmin % 2 or self.kmax % 2 or self.kmin < 4 or self.kmax < self.kmin:
            raise ValueError("scan requires even 4 <= kmin <= kmax")
        if self.nmax < 1 or self.pmax < 5:
            raise ValueError("scan requires nmax >= 1 and pmax >= 5")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        return self


def scan_triples(config: ScanConfig) -> Iterator[CaseReport]:
    """Classify every admissible (N, k, p) in the configured ranges,
    in deterministic (k, N, p) order."""
    config.validate()
    primes = primes_up_to(config.pmax)
    triples = [
        (k, n, p)
        for k in range(config.kmin, config.kmax + 1, 2)
        for n in range(1, config.nmax + 1)
        for p in primes
        if p >= max(5, k + 1) and n % p != 0
    ]
    if config.threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            yield from pool.map(lambda t: classify_triple(t[1], t[0], t[2]), triples, chunksize=512)
    else:
        for k, n, p in triples:
            yield classify_triple(n, k, p)
