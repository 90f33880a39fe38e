"""The full property-verification suite, shared by tests and the CLI.

Each check is self-contained and returns a Check record; run_all
executes the whole battery.  All randomness is seeded, so every run is
bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Optional

import numpy as np

from . import catalog
from .ff import FpMatrix, is_prime
from .groups import cyclic
from .homs import (
    DEFAULT_SEARCH_BOUND,
    OracleInfeasibleError,
    factors_through,
    has_section,
    hom_basis,
    is_summand_bruteforce,
)
from .constructions import (
    shift_block_identities_bruteforce,
    verify_binomial_signs,
    verify_shift_block_identities,
    verify_wrap_criterion,
)
from .relative import (
    RelativeContext,
    counit,
    cover,
    is_relatively_projective,
    is_stably_zero,
    is_w_split,
    omega,
    stable_hom_dim,
)
from .reps import (
    Module,
    Morphism,
    ShortExactSequence,
    cokernel_module,
    direct_sum,
    identity_morphism,
    regular_module,
    submodule_from_columns,
    trivial_module,
    zero_morphism,
)
from .triangles import (
    Chain,
    complete_to_triangle,
    finite_hocolim,
    stably_isomorphic_bruteforce,
    verify_colimit_comparison,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def _subspace_bases(p: int, dim: int):
    """All subspaces of GF(p)^dim, one canonical echelon basis each (as columns)."""
    for r in range(dim + 1):
        for pivots in combinations(range(dim), r):
            free_positions = [
                (i, j)
                for i in range(r)
                for j in range(pivots[i] + 1, dim)
                if j not in pivots
            ]
            for values in product(range(p), repeat=len(free_positions)):
                rows = np.zeros((r, dim), dtype=np.int64)
                for i in range(r):
                    rows[i, pivots[i]] = 1
                for (i, j), val in zip(free_positions, values):
                    rows[i, j] = val
                yield FpMatrix(p, rows.T)


def invariant_submodules(m: Module) -> list[tuple[Module, Morphism]]:
    """Every submodule of m, found by filtering all subspaces for invariance."""
    out = []
    for basis in _subspace_bases(m.p, m.dim):
        try:
            out.append(submodule_from_columns(m, basis))
        except ValueError:
            continue
    return out


def klein_module_family() -> list[tuple[str, Module]]:
    """Catalog modules plus all submodules and quotients of each (dim <= 4)."""
    named = [
        ("k", catalog.get_example("klein4.k").payload),
        ("v", catalog.get_example("klein4.v").payload),
        ("v_prime", catalog.get_example("klein4.v_prime").payload),
        ("w_ind", catalog.get_example("klein4.w_ind").payload),
        ("regular", catalog.get_example("klein4.regular").payload),
    ]
    family = list(named)
    for label, m in named:
        for idx, (sub, incl) in enumerate(invariant_submodules(m)):
            family.append((f"{label}.sub{idx}", sub))
            family.append((f"{label}.quot{idx}", cokernel_module(incl).module))
    return family


def _klein_context() -> RelativeContext:
    return RelativeContext(catalog.get_example("klein4.w_ind").payload)


def check_socle_factorization(bound: int = DEFAULT_SEARCH_BOUND) -> Check:
    """The socle of v' is reached through v, yet v is not a summand of v'."""
    v = catalog.get_example("klein4.v").payload
    vp = catalog.get_example("klein4.v_prime").payload
    k = catalog.get_example("klein4.k").payload
    socle = Morphism(k, vp, FpMatrix(2, [[0], [0], [1]]))
    through_v = catalog.get_example("klein4.chain").payload.maps[1]
    witness = factors_through(socle, through_v)
    summand = is_summand_bruteforce(v, vp, bound)
    stably_dead = is_stably_zero(_klein_context(), socle)
    passed = witness is not None and not summand and stably_dead
    return Check(
        "socle_factorization",
        passed,
        f"factorization={'found' if witness is not None else 'missing'}, "
        f"v_summand_of_v_prime={summand}, socle_stably_zero={stably_dead}",
    )


def check_rel_proj_matches_oracle(bound: int = DEFAULT_SEARCH_BOUND) -> Check:
    """Section-of-cover test agrees with the exhaustive summand oracle."""
    ctx = _klein_context()
    family = klein_module_family()
    feasible = 0
    skipped = 0
    disagreements = []
    for label, x in family:
        rel = is_relatively_projective(ctx, x)
        try:
            orc = is_summand_bruteforce(x, cover(ctx, x), bound)
        except OracleInfeasibleError:
            skipped += 1
            continue
        feasible += 1
        if rel != orc:
            disagreements.append(label)
    passed = len(family) >= 30 and not disagreements
    return Check(
        "rel_proj_matches_oracle",
        passed,
        f"family={len(family)}, feasible={feasible}, skipped={skipped}, "
        f"disagreements={disagreements}",
    )


def _canonical_sequence(ctx: RelativeContext, x: Module) -> ShortExactSequence:
    sub, incl = omega(ctx, x)
    return ShortExactSequence(incl, counit(ctx, x))


def check_canonical_sequences_w_split() -> Check:
    """0 -> shift(X) -> cover(X) -> X -> 0 is w-split for every swept pair."""
    klein = catalog.get_example("klein4").payload
    ctx = _klein_context()
    trivial_ctx = RelativeContext(trivial_module(klein, 2))
    prime_ctx = RelativeContext(catalog.get_example("klein4.v_prime").payload)
    c2_regular_ctx = RelativeContext(catalog.get_example("c2.regular").payload)
    family = klein_module_family()
    pairs = [(ctx, x) for _, x in family]
    pairs += [(trivial_ctx, x) for _, x in family[:5]]
    pairs += [(prime_ctx, catalog.get_example("klein4.k").payload)]
    pairs += [(prime_ctx, catalog.get_example("klein4.v").payload)]
    pairs += [(c2_regular_ctx, catalog.get_example("c2.k").payload)]
    failures = 0
    for c, x in pairs:
        if not is_w_split(c, _canonical_sequence(c, x)):
            failures += 1
    return Check(
        "canonical_sequences_w_split",
        failures == 0,
        f"pairs={len(pairs)}, failures={failures}",
    )


def _random_invertible_endo(rng: np.random.Generator, m: Module) -> Morphism:
    basis = hom_basis(m, m)
    for _ in range(64):
        coeffs = rng.integers(0, m.p, basis.dim)
        cand = basis.combo(coeffs)
        if cand.rank() == m.dim:
            return cand
    return identity_morphism(m)


def random_split_ses(rng: np.random.Generator, x: Module, z: Module) -> ShortExactSequence:
    """A split sequence 0 -> x -> x (+) z -> z -> 0, twisted by a random automorphism."""
    y = direct_sum(x, z)
    auto = _random_invertible_endo(rng, y)
    p = x.p
    incl = np.vstack([np.eye(x.dim, dtype=np.int64), np.zeros((z.dim, x.dim), np.int64)])
    proj = np.hstack([np.zeros((z.dim, x.dim), np.int64), np.eye(z.dim, dtype=np.int64)])
    inj = Morphism(x, y, auto.matrix @ FpMatrix(p, incl))
    surj = Morphism(y, z, FpMatrix(p, proj) @ auto.matrix.inv())
    return ShortExactSequence(inj, surj)


def check_wrap_split_detection(pmax: int = 7) -> Check:
    """Wrapped modules are relatively projective exactly for split inputs."""
    rng = np.random.default_rng(20240711)
    instances: list[tuple[int, ShortExactSequence, bool]] = []
    instances.append((2, catalog.get_example("c2.nonsplit_ses").payload, False))
    instances.append((2, catalog.get_example("c2.split_ses").payload, True))
    if pmax >= 3:
        instances.append((3, catalog.get_example("c3.jordan_ses").payload, False))

    c2k = catalog.get_example("c2.k").payload
    c2reg = catalog.get_example("c2.regular").payload
    for _ in range(5):
        pick = [c2k, c2reg][int(rng.integers(0, 2))]
        instances.append((2, random_split_ses(rng, c2k, pick), True))
    kl_k = catalog.get_example("klein4.k").payload
    kl_v = catalog.get_example("klein4.v").payload
    for _ in range(5):
        pick = [kl_k, kl_v][int(rng.integers(0, 2))]
        instances.append((2, random_split_ses(rng, pick, kl_k), True))
    if pmax >= 3:
        c3k = catalog.get_example("c3.k").payload
        c3j = catalog.get_example("c3.jordan").payload
        for _ in range(3):
            pick = [c3k, c3j][int(rng.integers(0, 2))]
            instances.append((3, random_split_ses(rng, c3k, pick), True))

    bad = []
    for i, (p, ses, expect_split) in enumerate(instances):
        report = verify_wrap_criterion(p, ses)
        if not report.agree or report.split != expect_split:
            bad.append((i, p, report.split, report.rel_proj))
    return Check(
        "wrap_split_detection",
        not bad,
        f"instances={len(instances)}, failures={bad}",
    )


def check_binomial_signs() -> Check:
    primes = [n for n in range(2, 98) if is_prime(n)]
    failures = [p for p in primes if not verify_binomial_signs(p)]
    return Check(
        "binomial_signs",
        not failures,
        f"primes={len(primes)} up to 97, failures={failures}",
    )


def check_shift_block_identities(pmax: int = 7) -> Check:
    symbolic_ps = [p for p in (2, 3, 5, 7) if p <= pmax]
    flags = {}
    for p in symbolic_ps:
        rep = verify_shift_block_identities(p)
        flags[p] = (rep.closed_form_ok, rep.final_sum_ok)
    brute = {p: shift_block_identities_bruteforce(p) for p in (2, 3) if p <= pmax}
    passed = all(a and b for a, b in flags.values()) and all(brute.values())
    return Check(
        "shift_block_identities",
        passed,
        f"symbolic={flags}, enumerated={brute}",
    )


def check_triangle_completion(pmax: int = 7) -> Check:
    """Random morphisms complete to w-split triangles with stably-zero composites."""
    rng = np.random.default_rng(472)
    ctx = _klein_context()
    pool = [m for _, m in klein_module_family() if m.dim in (1, 2, 3)]
    failures = 0
    for _ in range(20):
        a = pool[int(rng.integers(0, len(pool)))]
        b = pool[int(rng.integers(0, len(pool)))]
        basis = hom_basis(a, b)
        alpha = basis.combo(rng.integers(0, 2, basis.dim)) if basis.dim else zero_morphism(a, b)
        tri = complete_to_triangle(ctx, alpha)
        composite = tri.ses.surj @ tri.ses.inj
        if not composite.is_zero() or not is_stably_zero(ctx, composite):
            failures += 1
            continue
        # the rotated composite x -> y -> z dies stably as well
        dy = alpha.source.dim
        to_y = Morphism(
            alpha.source,
            alpha.source,
            FpMatrix.identity(ctx.p, dy),
        )
        first_leg = FpMatrix(ctx.p, tri.ses.inj.matrix.array[:dy, :])
        leg = Morphism(tri.ses.inj.source, alpha.source, first_leg)
        if not is_stably_zero(ctx, alpha @ leg):
            failures += 1

    cone_failures = 0
    tests = [catalog.get_example("klein4.k").payload, catalog.get_example("klein4.v").payload]
    probes = [
        catalog.get_example("klein4.k").payload,
        catalog.get_example("klein4.v").payload,
        catalog.get_example("klein4.v_prime").payload,
    ]
    for x in tests:
        tri = complete_to_triangle(ctx, identity_morphism(x))
        apex = tri.ses.inj.source
        for c in probes:
            if stable_hom_dim(ctx, apex, c) != 0 or stable_hom_dim(ctx, c, apex) != 0:
                cone_failures += 1
    passed = failures == 0 and cone_failures == 0
    return Check(
        "triangle_completion",
        passed,
        f"random_failures={failures}, identity_cone_failures={cone_failures}",
    )


def check_hocolim_truncation(bound: int = DEFAULT_SEARCH_BOUND) -> Check:
    """Finite homotopy colimits are stably the plain colimits."""
    ctx = _klein_context()
    k = catalog.get_example("klein4.k").payload
    v = catalog.get_example("klein4.v").payload
    vp = catalog.get_example("klein4.v_prime").payload
    chains = {
        "socle_chain": catalog.get_example("klein4.chain").payload,
        "constant_k": Chain.from_maps([identity_morphism(k), identity_morphism(k)]),
        "constant_v": Chain.from_maps([identity_morphism(v), identity_morphism(v)]),
    }
    bad = []
    for cname, chain in chains.items():
        for c in (k, v, vp):
            rep = verify_colimit_comparison(ctx, chain, c)
            if not rep.dims_equal or not rep.all_factored:
                bad.append((cname, c.dim, rep))
        hc = finite_hocolim(ctx, chain)
        if not stably_isomorphic_bruteforce(ctx, hc.cone, chain.last, bound):
            bad.append((cname, "cone_not_stably_last"))
    return Check("hocolim_truncation", not bad, f"chains={len(chains)}, failures={bad}")


def check_classical_anchor() -> Check:
    """With w = kG over C2 the engine reproduces the ordinary stable category."""
    c2 = cyclic(2)
    ctx = RelativeContext(regular_module(c2, 2))
    k = trivial_module(c2, 2)
    d = stable_hom_dim(ctx, k, k)
    return Check("classical_anchor", d == 1, f"stable_hom_dim(k, k) = {d}, expected 1")


def check_trivial_w_collapse() -> Check:
    """With w = k everything is projective and the quotient category is zero."""
    klein = catalog.get_example("klein4").payload
    ctx = RelativeContext(trivial_module(klein, 2))
    family = klein_module_family()
    rng = np.random.default_rng(99)
    not_proj = [label for label, x in family if not is_relatively_projective(ctx, x)]
    nonzero = []
    probes = [m for _, m in family[:5]]
    for a in probes:
        for b in probes:
            if stable_hom_dim(ctx, a, b) != 0:
                nonzero.append((a.dim, b.dim))
    for _ in range(30):
        a = family[int(rng.integers(0, len(family)))][1]
        b = family[int(rng.integers(0, len(family)))][1]
        if stable_hom_dim(ctx, a, b) != 0:
            nonzero.append((a.dim, b.dim))
    passed = not not_proj and not nonzero
    return Check(
        "trivial_w_collapse",
        passed,
        f"not_projective={not_proj}, nonzero_stable_homs={nonzero}",
    )


ALL_CHECKS: tuple[tuple[str, Callable[..., Check]], ...] = (
    ("socle_factorization", check_socle_factorization),
    ("rel_proj_matches_oracle", check_rel_proj_matches_oracle),
    ("canonical_sequences_w_split", check_canonical_sequences_w_split),
    ("wrap_split_detection", check_wrap_split_detection),
    ("binomial_signs", check_binomial_signs),
    ("shift_block_identities", check_shift_block_identities),
    ("triangle_completion", check_triangle_completion),
    ("hocolim_truncation", check_hocolim_truncation),
    ("classical_anchor", check_classical_anchor),
    ("trivial_w_collapse", check_trivial_w_collapse),
)


def run_all(pmax: int = 7, bound: int = DEFAULT_SEARCH_BOUND) -> list[Check]:
    """Run every check; pmax trims the prime sweeps, bound caps the oracles."""
    results = []
    results.append(check_socle_factorization(bound))
    results.append(check_rel_proj_matches_oracle(bound))
    results.append(check_canonical_sequences_w_split())
    results.append(check_wrap_split_detection(pmax))
    results.append(check_binomial_signs())
    results.append(check_shift_block_identities(pmax))
    results.append(check_triangle_completion(pmax))
    results.append(check_hocolim_truncation(bound))
    results.append(check_classical_anchor())
    results.append(check_trivial_w_collapse())
    return results
