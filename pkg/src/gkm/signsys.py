"""Sign systems on triangles of a GKM graph.

Around a triangle of vertices with edge bundles of common size k, the
weights can be written (after fixing signs of the defining linear forms) as

    gamma_i = alpha_1 - beta_i = eps_ij * alpha_j + delta_ij * beta_{sigma_j(i)}

with signs eps, delta in {+1, -1} and permutations sigma_j, sigma_1 = id.
For graphs that come from positively curved manifolds, 3-independence forces
strong structure on this data: the products sigma_j^-1 sigma_i are
fixed-point-free involutions, delta_ij = +1 for j > 1, and the second
column of eps flips under every sigma_j with j > 2.  Together these force
the bundle size to be 1, 2 or 4.

This module extracts the concrete sign system of a labeled triangle and
also enumerates all abstract (sigma, eps) systems for a given bundle size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import Edge, GKMGraph, validate
from .lattice import WeightClass

Vec = tuple[int, ...]
Perm = tuple[int, ...]


class SignSystemError(ValueError):
    """No consistent sign assignment exists."""

    def __init__(self, message: str, rule: str = "sign-system"):
        super().__init__(message)
        self.rule = rule


class LemmaViolation(ValueError):
    """A named combinatorial rule of the classification fails."""

    def __init__(self, rule: str, detail: str):
        super().__init__(f"{rule}: {detail}")
        self.rule = rule
        self.detail = detail


def _vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)

def _vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))

def _vcomb(s: int, a: Vec, t: int, b: Vec) -> Vec:
    return tuple(s * x + t * y for x, y in zip(a, b))


@dataclass(frozen=True)
class SignSystem:
    """Solved sign data of one triangle.

    ``alpha``, ``beta``, ``gamma`` hold the chosen representative vectors;
    index 0 of ``alpha`` is the distinguished alpha_1.  ``sigma[j]``,
    ``eps[j]`` and ``delta[j]`` are the j-th columns (j = 0 is the identity
    column with eps = +1, delta = -1 by the defining convention).
    """

    k: int
    triangle: tuple[str, str, str]
    alpha: tuple[Vec, ...]
    beta: tuple[Vec, ...]
    gamma: tuple[Vec, ...]
    alpha_edges: tuple[Edge, ...]
    beta_edges: tuple[Edge, ...]
    gamma_edges: tuple[Edge, ...]
    sigma: tuple[Perm, ...]
    eps: tuple[tuple[int, ...], ...]
    delta: tuple[tuple[int, ...], ...]

    def sigma_products_involutive(self) -> bool:
        """All sigma_j^-1 sigma_i are fixed-point-free involutions."""
        for j1, j2 in itertools.combinations(range(self.k), 2):
            tau = _compose(_inverse(self.sigma[j2]), self.sigma[j1])
            if any(tau[i] == i for i in range(self.k)):
                return False
            if _compose(tau, tau) != tuple(range(self.k)):
                return False
        return True


def _inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(i) = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(q)))


def _sorted_bundle(g: GKMGraph, u: str, v: str) -> list[Edge]:
    return sorted(g.bundle(u, v), key=lambda e: (e.weight.rep, e.index))


def extract_sign_system(g: GKMGraph, triangle: tuple[str, str, str]) -> SignSystem:
    """Solve the triangle sign system and verify its structure.

    The three bundles are those between (t1,t2), (t1,t3) and (t2,t3); they
    must be nonempty and of a common size.  Raises LemmaViolation for size
    mismatches and structural violations, SignSystemError when no sign
    choice satisfies the defining relations.
    """
    t1, t2, t3 = triangle
    if not g.labeled:
        raise SignSystemError("graph is unlabeled")
    if not validate(g, 3).ok:
        raise SignSystemError("sign systems require a valid GKM_3 graph")
    A = _sorted_bundle(g, t1, t2)
    B = _sorted_bundle(g, t1, t3)
    C = _sorted_bundle(g, t2, t3)
    for name, bundle, pair in (("A", A, (t1, t2)), ("B", B, (t1, t3)), ("C", C, (t2, t3))):
        if not bundle:
            raise LemmaViolation(
                "bundle-equality", f"no edges between {pair[0]!r} and {pair[1]!r}"
            )
    if not (len(A) == len(B) == len(C)):
        raise LemmaViolation(
            "bundle-equality",
            f"bundle sizes differ: {len(A)}, {len(B)}, {len(C)}",
        )
    k = len(A)

    last_error: Exception | None = None
    for t_idx in range(k):
        for s in (1, -1):
            a1 = A[t_idx].weight.rep
            if s < 0:
                a1 = _vneg(a1)
            try:
                return _solve_with_alpha1(triangle, k, a1, t_idx, A, B, C)
            except (SignSystemError, LemmaViolation) as err:
                if last_error is None or isinstance(err, LemmaViolation):
                    last_error = err
    if isinstance(last_error, LemmaViolation):
        raise last_error
    raise SignSystemError(
        f"sign system infeasible for triangle {triangle}: "
        "no choice of alpha_1 satisfies gamma_i = alpha_1 - beta_i"
    )


def _solve_with_alpha1(
    triangle, k: int, a1: Vec, t_idx: int, A, B, C
) -> SignSystem:
    r = len(a1)
    beta: list[Vec] = []
    gamma: list[Vec] = []
    gamma_edges: list[Edge] = []
    used: set[Edge] = set()
    for be in B:
        b = be.weight.rep
        matches = []
        for u in (1, -1):
            cand = _vcomb(1, a1, -u, b)
            if not any(cand):
                continue
            for ce in C:
                if ce.weight.matches(cand):
                    matches.append((u, ce, cand))
        if len(matches) != 1:
            raise SignSystemError(
                f"no unique third-bundle partner for weight {be.weight}"
            )
        u, ce, cand = matches[0]
        if ce in used:
            raise SignSystemError("third-bundle pairing is not injective")
        used.add(ce)
        beta.append(tuple(u * x for x in b))
        gamma.append(cand)
        gamma_edges.append(ce)

    rest = [e for i, e in enumerate(A) if i != t_idx]
    alpha: list[Vec] = [a1] + [e.weight.rep for e in rest]
    alpha_edges = [A[t_idx]] + rest

    identity = tuple(range(k))
    sigma: list[Perm] = [identity]
    eps: list[tuple[int, ...]] = [tuple([1] * k)]
    delta: list[tuple[int, ...]] = [tuple([-1] * k)]
    for j in range(1, k):
        aj = alpha[j]
        sig = [0] * k
        ep = [0] * k
        de = [0] * k
        for i in range(k):
            found = []
            for l in range(k):
                for e_s in (1, -1):
                    for d_s in (1, -1):
                        if gamma[i] == _vcomb(e_s, aj, d_s, beta[l]):
                            found.append((l, e_s, d_s))
            if len(found) != 1:
                raise SignSystemError(
                    f"no unique expansion of third-bundle weight #{i} "
                    f"over bundle pair column {j + 1}"
                )
            sig[i], ep[i], de[i] = found[0]
        if sorted(sig) != list(range(k)):
            raise SignSystemError(f"column {j + 1} index map is not a permutation")
        sigma.append(tuple(sig))
        eps.append(tuple(ep))
        delta.append(tuple(de))

    _check_sublemmas(k, sigma, eps, delta)
    return SignSystem(
        k=k,
        triangle=tuple(triangle),
        alpha=tuple(alpha),
        beta=tuple(beta),
        gamma=tuple(gamma),
        alpha_edges=tuple(alpha_edges),
        beta_edges=tuple(B),
        gamma_edges=tuple(gamma_edges),
        sigma=tuple(sigma),
        eps=tuple(eps),
        delta=tuple(delta),
    )


def _check_sublemmas(k, sigma, eps, delta) -> None:
    for j in range(1, k):
        for i in range(k):
            if delta[j][i] != 1:
                raise LemmaViolation(
                    "delta-sign", f"delta[{i}][{j + 1}] = -1 after the j=1 convention"
                )
            if eps[j][sigma[j][i]] != eps[j][i]:
                raise LemmaViolation(
                    "eps-orbit", f"eps column {j + 1} is not sigma-orbit constant"
                )
    for j1, j2 in itertools.combinations(range(k), 2):
        tau = _compose(_inverse(sigma[j2]), sigma[j1])
        if any(tau[i] == i for i in range(k)):
            raise LemmaViolation(
                "sigma-products-fixed-point-free",
                f"sigma_{j2 + 1}^-1 sigma_{j1 + 1} has a fixed point",
            )
        if _compose(tau, tau) != tuple(range(k)):
            raise LemmaViolation(
                "sigma-products-order-two",
                f"sigma_{j2 + 1}^-1 sigma_{j1 + 1} is not an involution",
            )
    for j in range(2, k):
        for i in range(k):
            if eps[1][sigma[j][i]] != -eps[1][i]:
                raise LemmaViolation(
                    "eps-flip",
                    f"second eps column does not flip under sigma_{j + 1}",
                )


# -- abstract enumeration --------------------------------------------------


@dataclass(frozen=True)
class AbstractSignSystem:
    """An abstract (sigma, eps) candidate for bundle size k."""

    k: int
    sigma: tuple[Perm, ...]
    eps: tuple[tuple[int, ...], ...]

    def sigma_group(self) -> set[Perm]:
        group = {tuple(range(self.k))}
        frontier = list(group)
        while frontier:
            nxt = []
            for p in frontier:
                for q in self.sigma:
                    pq = _compose(p, q)
                    if pq not in group:
                        group.add(pq)
                        nxt.append(pq)
            frontier = nxt
        return group

    def is_transitive_elementary_abelian(self) -> bool:
        group = self.sigma_group()
        if len(group) != self.k:
            return False
        identity = tuple(range(self.k))
        for p in group:
            if _compose(p, p) != identity:
                return False
        orbit = {p[0] for p in group}
        return len(orbit) == self.k


@dataclass(frozen=True)
class ExclusionReport:
    k: int
    complete: bool
    systems: tuple[AbstractSignSystem, ...]
    nodes: int

    @property
    def count(self) -> int:
        return len(self.systems)


class BudgetExceeded(RuntimeError):
    pass


def fixed_point_free_involutions(k: int) -> list[Perm]:
    out = []
    for p in itertools.permutations(range(k)):
        if all(p[i] != i for i in range(k)) and all(p[p[i]] == i for i in range(k)):
            out.append(p)
    return out


def _eps_column_one(k: int, sigma: list[Perm]) -> list[tuple[int, ...]]:
    """All eps[.][2] assignments: sigma_2-invariant, flipped by sigma_j, j>2."""
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(k)}
    for i in range(k):
        pairs = [(sigma[1][i], 1)] + [(sigma[j][i], -1) for j in range(2, k)]
        for l, p in pairs:
            adj[i].append((l, p))
            adj[l].append((i, p))
    comps: list[list[int]] = []
    seen: set[int] = set()
    for start in range(k):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            x = stack.pop()
            for y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(comp)

    solutions: list[tuple[int, ...]] = []
    for assignment in itertools.product((1, -1), repeat=len(comps)):
        vals = [0] * k
        ok = True
        for comp, root_val in zip(comps, assignment):
            vals[comp[0]] = root_val
            stack = [comp[0]]
            while stack and ok:
                x = stack.pop()
                for y, p in adj[x]:
                    want = p * vals[x]
                    if vals[y] == 0:
                        vals[y] = want
                        stack.append(y)
                    elif vals[y] != want:
                        ok = False
                        break
        if ok:
            solutions.append(tuple(vals))
    return solutions


def _eps_free_columns(k: int, sig: Perm) -> list[tuple[int, ...]]:
    """All sigma-orbit-constant sign columns."""
    orbits: list[list[int]] = []
    seen = set()
    for i in range(k):
        if i in seen:
            continue
        orbit = [i]
        seen.add(i)
        x = sig[i]
        while x != i:
            orbit.append(x)
            seen.add(x)
            x = sig[x]
        orbits.append(orbit)
    out = []
    for combo in itertools.product((1, -1), repeat=len(orbits)):
        vals = [0] * k
        for orbit, v in zip(orbits, combo):
            for i in orbit:
                vals[i] = v
        out.append(tuple(vals))
    return out


def brute_force_k_exclusion(k: int, budget: int | None = None) -> ExclusionReport:
    """Enumerate all abstract sign systems of bundle size k.

    A candidate consists of fixed-point-free involutions sigma_2..sigma_k
    whose pairwise products are again fixed-point-free involutions, plus
    sign columns eps satisfying the orbit-constancy and second-column flip
    rules (delta is pinned to +1 throughout).  The enumeration is exhaustive
    unless the node budget runs out, in which case the report is flagged
    incomplete.
    """
    if k < 1:
        raise ValueError("bundle size must be >= 1")
    nodes = 0
    systems: list[AbstractSignSystem] = []
    identity = tuple(range(k))

    def spend(n: int = 1):
        nonlocal nodes
        nodes += n
        if budget is not None and nodes > budget:
            raise BudgetExceeded

    if k == 1:
        return ExclusionReport(1, True, (AbstractSignSystem(1, (identity,), ((1,),)),), 1)

    candidates = fixed_point_free_involutions(k)

    def compatible(p: Perm, q: Perm) -> bool:
        tau = _compose(p, q)  # p, q are involutions, so p^-1 = p
        return all(tau[i] != i for i in range(k)) and _compose(tau, tau) == identity

    complete = True
    try:
        def assign(chosen: list[Perm]):
            nonlocal complete
            spend()
            if len(chosen) == k - 1:
                sigma = [identity] + chosen
                col1_options = _eps_column_one(k, sigma)
                other_options = [
                    _eps_free_columns(k, sigma[j]) for j in range(2, k)
                ]
                for col1 in col1_options:
                    for rest in itertools.product(*other_options):
                        spend()
                        eps = (tuple([1] * k), col1) + tuple(rest)
                        systems.append(
                            AbstractSignSystem(k, tuple(sigma), eps)
                        )
                return
            for cand in candidates:
                if cand in chosen:
                    continue
                if all(compatible(cand, p) for p in chosen):
                    assign(chosen + [cand])

        assign([])
    except BudgetExceeded:
        complete = False

    return ExclusionReport(k, complete, tuple(systems), nodes)
