"""Numeric exposedness certification for block-positive witnesses.

The pipeline: sample the dual face (product pairs with vanishing pairing),
assemble the linear constraint system those pairs impose on Hermitian
matrices, compute its null space, and search the null space for
block-positive elements off the witness ray.  A one-dimensional null space
certifies exposedness outright; a validated off-ray element refutes it;
anything else is merely consistent with exposedness, because the cone
search is incomplete by nature.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .catalog import (
    BreuerHall,
    MapDescriptor,
    Reduction,
    Robertson,
    Transposition,
    antisym_basis,
    breuer_hall,
    build_map,
    co_ad_map,
    reduction,
    require_antisymmetric_unitary,
    require_unitary,
    robertson_unitary,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    DimensionMismatch,
    InsufficientZeros,
    NotBlockPositive,
    NotUnitVector,
    OddDimension,
    UnstableDimension,
)
from .linalg import (
    fix_phase,
    frobenius,
    hermitian_to_coords,
    coords_to_hermitian,
    random_unit_vector,
    svd_nullspace,
)
from .maps import (
    LinearMatrixMap,
    apply,
    choi_of,
    is_ray_proportional,
    map_from_choi,
    product_vector,
    ray_representative,
    witness_pairing,
)
from .positivity import (
    BlockPositivityReport,
    ProductPair,
    SeeSawConfig,
    is_block_positive,
    seesaw_endpoints,
)


@dataclass(frozen=True, eq=False)
class DualFaceSample:
    """Product pairs on which the map's pairing vanishes."""

    pairs: list
    source: str  # "analytic" | "numeric"


@dataclass(frozen=True)
class ExposednessConfig:
    """Sampling, rank, and search knobs for the exposedness pipeline."""

    sample_count: int | None = None  # default 2*(nm)^2
    rel_tol: float = 1e-8
    budget: int = 2000
    seesaw: SeeSawConfig = SeeSawConfig()
    search_seesaw: SeeSawConfig = SeeSawConfig(
        restarts=24, max_iters=200, stop_below=-1e-6
    )


@dataclass(frozen=True, eq=False)
class ExposednessReport:
    nullspace_dim: int
    verdict: str  # CERTIFIED_EXPOSED | CONSISTENT_WITH_EXPOSED | NOT_EXPOSED
    counterexample: np.ndarray | None
    counterexample_report: BlockPositivityReport | None
    samples_used: int
    diagnostics: dict


@dataclass(frozen=True, eq=False)
class BHStructureReport:
    """Four structural facts behind the exposedness proof of these maps."""

    dim: int
    apply_residual: float
    remark1_residual: float
    orthogonality_value: float
    p2_value: float
    p2_witness: np.ndarray | None
    check_i: bool
    check_ii: bool
    check_iii: bool
    check_iv: bool
    passed: bool


def _as_map(desc) -> tuple[MapDescriptor | None, LinearMatrixMap]:
    if isinstance(desc, LinearMatrixMap):
        return None, desc
    return desc, build_map(desc)


def _polish_pair(T, x, y, steps=3):
    """A few exact alternating minimizations to land a pair on the face."""
    for _ in range(steps):
        N = np.einsum("k,ikjl,l->ij", y.conj(), T, y).conj()
        _, v = np.linalg.eigh((N + N.conj().T) / 2)
        x = v[:, 0]
        M = np.einsum("i,ikjl,j->kl", x, T, x.conj())
        _, v = np.linalg.eigh((M + M.conj().T) / 2)
        y = v[:, 0]
    return x, y


def _analytic_pair(desc, k, n, rng):
    """One zero pair from the closed-form face description, or None."""
    if isinstance(desc, Transposition):
        if n < 2:
            return None
        x = random_unit_vector(n, rng)
        y = random_unit_vector(n, rng)
        # remove the component along conj(x); the face is y orthogonal to it
        y = y - x.conj() * (x @ y)
        norm = np.linalg.norm(y)
        if norm < 1e-8:
            return None
        return x, y / norm
    if isinstance(desc, Reduction):
        x = random_unit_vector(n, rng)
        return x, x
    if isinstance(desc, (BreuerHall, Robertson)):
        U = desc.U if isinstance(desc, BreuerHall) else robertson_unitary()
        x = random_unit_vector(n, rng)
        if k % 2 == 0:
            return x, x
        return x, U @ x.conj()
    return None


def dual_face_samples(
    desc,
    count: int,
    rng: np.random.Generator | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> DualFaceSample:
    """Collect ``count`` product pairs with pairing zero.

    Descriptors with a known face get closed-form pairs; everything else
    harvests near-zero see-saw endpoints, polished before acceptance.
    Maps whose pairing is bounded away from zero (interior Choi) cannot
    produce pairs and raise InsufficientZeros.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if rng is None:
        rng = np.random.default_rng(0)
    descriptor, phi = _as_map(desc)
    n, m = phi.dim_in, phi.dim_out
    W_hat = ray_representative(phi.choi, tol)

    pairs = []
    if descriptor is not None and isinstance(
        descriptor, (Transposition, Reduction, BreuerHall, Robertson)
    ):
        attempts = 0
        while len(pairs) < count and attempts < 20 * count:
            out = _analytic_pair(descriptor, len(pairs), n, rng)
            attempts += 1
            if out is None:
                break
            x, y = out
            value = witness_pairing(W_hat, x, y, tol)
            if abs(value) <= tol.zero_tol:
                pairs.append(ProductPair(x=fix_phase(x), y=fix_phase(y), value=value))
        if len(pairs) == count:
            return DualFaceSample(pairs=pairs, source="analytic")

    # numeric harvest from see-saw endpoints
    phi_hat = map_from_choi(W_hat, n, m)
    T = W_hat.reshape(n, m, n, m)
    restarts = max(32, min(256, count))
    cfg = SeeSawConfig(restarts=restarts, max_iters=250, stationarity_tol=1e-13)
    rounds = 0
    max_rounds = max(6, (4 * count) // restarts + 2)
    while len(pairs) < count and rounds < max_rounds:
        X, Y, vals, _, _ = seesaw_endpoints(phi_hat, cfg, rng)
        for r in range(restarts):
            if len(pairs) >= count:
                break
            if vals[r] <= tol.zero_tol:
                x, y = _polish_pair(T, X[r], Y[r])
                value = witness_pairing(W_hat, x, y, tol)
                if abs(value) <= tol.zero_tol:
                    pairs.append(
                        ProductPair(x=fix_phase(x), y=fix_phase(y), value=value)
                    )
        rounds += 1
        # a clearly positive global minimum will never yield zeros
        if not pairs and vals.min() > max(1e-3, 100 * tol.zero_tol):
            break
    if len(pairs) < count:
        raise InsufficientZeros(
            f"found {len(pairs)} of {count} zero pairs; "
            "the pairing may be bounded away from zero on product states"
        )
    return DualFaceSample(pairs=pairs, source="numeric")


def face_constraint_matrix(
    sample: DualFaceSample, n: int, m: int
) -> np.ndarray:
    """One real row per pair, acting on Hermitian coordinate vectors.

    Row r dotted with coords(W) equals the pairing of W at pair r, exactly,
    because the row is the coordinate vector of the rank-one projector onto
    the pair's product vector.
    """
    if not sample.pairs:
        raise DimensionMismatch("no pairs to build constraints from")
    Z = []
    for pair in sample.pairs:
        x = np.asarray(pair.x, dtype=complex)
        y = np.asarray(pair.y, dtype=complex)
        if x.shape != (n,) or y.shape != (m,):
            raise DimensionMismatch(
                f"pair dims {(x.shape, y.shape)} do not match {(n, m)}"
            )
        Z.append(product_vector(x, y))
    Z = np.stack(Z)
    P = Z[:, :, np.newaxis] * Z.conj()[:, np.newaxis, :]
    return hermitian_to_coords(P)


def stationarity_rows(sample: DualFaceSample, n: int, m: int) -> np.ndarray:
    """First-order rows satisfied by every member of the double-dual face.

    A block-positive element that vanishes at a face pair attains a minimum
    there, so both partial contractions annihilate the pair's vectors:
    ``<w|A|z> = 0`` for w running over the coordinate slices ``e_i (x) y``
    and ``conj(x) (x) e_k``.  Each complex condition realifies into two
    Hermitian rows.  Without these rows the value constraints alone leave
    the symmetric-monomial complement in the null space (already dimension
    7 for the smallest reduction map), which no amount of pair sampling
    can remove.
    """
    rows = []
    eye_n = np.eye(n)
    eye_m = np.eye(m)
    for pair in sample.pairs:
        x = np.asarray(pair.x, dtype=complex)
        y = np.asarray(pair.y, dtype=complex)
        z = product_vector(x, y)
        ws = [product_vector(eye_n[i], y) for i in range(n)]
        ws += [product_vector(x, eye_m[k]) for k in range(m)]
        for w in ws:
            zw = np.outer(w, z.conj())
            rows.append((zw + zw.conj().T) / 2)
            rows.append((1j * zw - 1j * zw.conj().T) / 2)
    return hermitian_to_coords(np.stack(rows))


def _head(sample: DualFaceSample, q: int) -> DualFaceSample:
    return DualFaceSample(pairs=sample.pairs[:q], source=sample.source)


def _constraint_block(sample, n, m):
    # stationarity rows for a quarter of the pairs saturate the rank at a
    # quarter of the cost; the value rows still cover every sampled pair
    q = max(1, (2 * (n * m) ** 2) // (2 * (n + m)))
    return np.vstack(
        [
            face_constraint_matrix(sample, n, m),
            stationarity_rows(_head(sample, q), n, m),
        ]
    )


def _nullspace_with_diagnostics(desc, sample_count, rel_tol, rng, tol):
    descriptor, phi = _as_map(desc)
    n, m = phi.dim_in, phi.dim_out
    d = n * m
    k_min = 2 * d * d
    k = k_min if sample_count is None else int(sample_count)
    if k < k_min:
        raise ValueError(f"sample_count must be at least 2*(nm)^2 = {k_min}")
    if rng is None:
        rng = np.random.default_rng(0)

    first = dual_face_samples(desc, k, rng, tol)
    C1 = _constraint_block(first, n, m)
    rank1, _ = svd_nullspace(C1, rel_tol)
    dim1 = d * d - rank1

    second = dual_face_samples(desc, k, rng, tol)
    C2 = np.vstack([C1, _constraint_block(second, n, m)])
    rank2, basis_coords = svd_nullspace(C2, rel_tol)
    dim2 = d * d - rank2
    if dim1 != dim2:
        raise UnstableDimension(
            f"nullspace dim {dim1} at {k} samples vs {dim2} at {2 * k}"
        )

    sigma_max = float(np.linalg.svd(C2, compute_uv=False)[0])
    c = hermitian_to_coords(ray_representative(phi.choi, tol))
    c = c / np.linalg.norm(c)
    containment = float(np.linalg.norm(C2 @ c))
    if containment > 10 * rel_tol * max(sigma_max, 1.0):
        raise UnstableDimension(
            f"sampled face excludes the map's own Choi (residual {containment:.3e})"
        )

    basis = coords_to_hermitian(basis_coords.T, d)
    diagnostics = {
        "dim_at_k": dim1,
        "dim_at_2k": dim2,
        "sigma_max": sigma_max,
        "choi_containment_residual": containment,
        "sample_count": 2 * k,
    }
    return dim2, basis, diagnostics, first


def double_dual_nullspace(
    desc,
    sample_count: int | None = None,
    rel_tol: float | None = None,
    rng: np.random.Generator | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[int, np.ndarray]:
    """Null space of the sampled face constraints, as Hermitian matrices.

    Rows are the per-pair value constraints plus first-order stationarity
    constraints (see :func:`stationarity_rows`), both of which every member
    of the double-dual face satisfies.  The dimension is recomputed on a
    doubled sample and must agree (UnstableDimension otherwise); the map's
    own Choi must lie inside.
    """
    if rel_tol is None:
        rel_tol = tol.nullspace_rel_tol
    dim, basis, _, _ = _nullspace_with_diagnostics(desc, sample_count, rel_tol, rng, tol)
    return dim, basis


def _probe_vectors(phi, face_pairs, rng, tol):
    """Product vectors used to refute candidates cheaply.

    Face-kernel probes matter most: at a face point x the contracted
    witness has a kernel, and any null-space direction that dips negative
    somewhere on that kernel circle is caught by a single inner product.
    """
    n, m = phi.dim_in, phi.dim_out
    T = phi.choi.reshape(n, m, n, m)
    scale = max(1.0, frobenius(phi.choi))
    probes = []

    xs = [np.asarray(p.x, dtype=complex) for p in face_pairs]
    if not xs:
        cfg = SeeSawConfig(restarts=48, max_iters=150)
        X, _, vals, _, _ = seesaw_endpoints(phi, cfg, rng)
        xs = [X[r] for r in range(X.shape[0]) if vals[r] <= 1e-7 * scale]
    for x in xs[:48]:
        M = np.einsum("i,ikjl,j->kl", x, T, x.conj())
        w, v = np.linalg.eigh((M + M.conj().T) / 2)
        kernel = v[:, w <= 1e-7 * scale]
        kdim = kernel.shape[1]
        if kdim == 0:
            continue
        for col in range(kdim):
            probes.append(product_vector(x, kernel[:, col]))
        if kdim >= 2:
            coeff = rng.standard_normal((6, kdim)) + 1j * rng.standard_normal((6, kdim))
            ys = coeff @ kernel.T
            ys /= np.linalg.norm(ys, axis=1, keepdims=True)
            for y in ys:
                probes.append(product_vector(x, y))
        # slightly off-face probes guard directions negative just outside
        for delta in (0.03, 0.2):
            y = kernel[:, 0] + delta * random_unit_vector(m, rng)
            probes.append(product_vector(x, y / np.linalg.norm(y)))

    for _ in range(128):
        probes.append(product_vector(random_unit_vector(n, rng), random_unit_vector(m, rng)))
    return np.stack(probes)


def cone_search_off_ray(
    phi: LinearMatrixMap,
    basis: np.ndarray,
    budget: int = 2000,
    rng: np.random.Generator | None = None,
    face_pairs: list | None = None,
    search_seesaw: SeeSawConfig = SeeSawConfig(restarts=24, max_iters=200, stop_below=-1e-6),
    confirm_seesaw: SeeSawConfig = SeeSawConfig(),
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray | None:
    """Search span(basis) for a block-positive element off the map's ray.

    Candidates are screened against precomputed product-vector probes (a
    negative probe pairing is an exact refutation), then certified by
    see-saw; certified violations feed back as new probe rows, and the
    violated candidate is repaired along the cutting direction a few times
    before giving up on it.  First surviving candidate wins; None is a
    legitimate outcome and the only possible one when dim < 2.
    """
    basis = np.asarray(basis)
    dim = basis.shape[0]
    if dim < 2:
        return None
    if rng is None:
        rng = np.random.default_rng(0)
    n, m = phi.dim_in, phi.dim_out
    d = n * m

    Bc = hermitian_to_coords(basis)  # (dim, d^2), orthonormal rows from the SVD
    W_hat = ray_representative(phi.choi, tol)
    c = hermitian_to_coords(W_hat)
    c = c / np.linalg.norm(c)
    gamma_ray = Bc @ c

    Z = _probe_vectors(phi, face_pairs or [], rng, tol)
    Q = np.einsum("pa,iab,pb->pi", Z.conj(), basis, Z, optimize=True).real

    reject_below = -10 * tol.zero_tol

    def screen(gamma):
        vals = Q @ gamma
        j = int(np.argmin(vals))
        return float(vals[j]), j

    def materialize(gamma):
        return coords_to_hermitian(gamma @ Bc, d)

    spent = 0
    seed_index = 0
    while spent < budget:
        # alternate anchored perturbations of the ray with blind directions
        u = rng.standard_normal(dim)
        if seed_index % 2 == 0:
            u -= gamma_ray * (gamma_ray @ u)
            norm = np.linalg.norm(u)
            if norm < 1e-12:
                seed_index += 1
                continue
            eps = (0.1, 0.3, 0.7)[(seed_index // 2) % 3]
            gamma = gamma_ray + eps * (u / norm)
        else:
            gamma = u
        gamma = gamma / np.linalg.norm(gamma)
        seed_index += 1

        for _ in range(8):  # repair rounds for this seed
            if spent >= budget:
                break
            spent += 1
            worst, j = screen(gamma)
            if worst < reject_below:
                # repair: lift the worst probe pairing back to zero
                q = Q[j]
                qq = float(q @ q)
                if qq < 1e-14:
                    break
                gamma = gamma - (worst / qq) * q
                norm = np.linalg.norm(gamma)
                if norm < 1e-12:
                    break
                gamma = gamma / norm
                continue
            cand = materialize(gamma)
            cand = ray_representative(cand, tol)
            if is_ray_proportional(cand, phi.choi, tol):
                break
            cand_map = map_from_choi(cand, n, m)
            verdict, report = is_block_positive(cand_map, search_seesaw, rng, tol)
            if verdict == "CERTIFIED_NOT_BP":
                # cutting plane: remember this violation and repair along it
                z = product_vector(report.argmin.x, report.argmin.y)
                q = np.einsum("a,iab,b->i", z.conj(), basis, z).real
                Q = np.vstack([Q, q])
                qq = float(q @ q)
                if qq < 1e-14:
                    break
                gamma = gamma - (report.min_value / qq) * q
                norm = np.linalg.norm(gamma)
                if norm < 1e-12:
                    break
                gamma = gamma / norm
                continue
            confirm_verdict, _ = is_block_positive(cand_map, confirm_seesaw, rng, tol)
            if confirm_verdict == "EVIDENCE_BP":
                return cand
            break
    return None


def exposedness_report(
    desc,
    config: ExposednessConfig = ExposednessConfig(),
    rng: np.random.Generator | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ExposednessReport:
    """Full verdict pipeline; requires the map to look block-positive first.

    CERTIFIED_EXPOSED needs linear dimension one.  NOT_EXPOSED needs a
    counterexample that survives independent re-validation: block-positive
    evidence, off the map's ray, and vanishing on freshly drawn face pairs.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    descriptor, phi = _as_map(desc)
    n, m = phi.dim_in, phi.dim_out

    verdict_bp, bp_report = is_block_positive(phi, config.seesaw, rng, tol)
    if verdict_bp != "EVIDENCE_BP":
        raise NotBlockPositive(
            f"map has a product pair with pairing {bp_report.min_value:.6e}"
        )

    dim, basis, diagnostics, samples = _nullspace_with_diagnostics(
        desc, config.sample_count, config.rel_tol, rng, tol
    )
    diagnostics = dict(diagnostics)
    samples_used = diagnostics["sample_count"]

    if dim == 1:
        return ExposednessReport(
            nullspace_dim=1,
            verdict="CERTIFIED_EXPOSED",
            counterexample=None,
            counterexample_report=None,
            samples_used=samples_used,
            diagnostics=diagnostics,
        )

    cand = cone_search_off_ray(
        phi,
        basis,
        budget=config.budget,
        rng=rng,
        face_pairs=samples.pairs,
        search_seesaw=config.search_seesaw,
        confirm_seesaw=config.seesaw,
        tol=tol,
    )
    if cand is not None:
        ok, cand_report = _validate_counterexample(desc, phi, cand, config, rng, tol)
        if ok:
            diagnostics["counterexample_min_pairing"] = cand_report.min_value
            return ExposednessReport(
                nullspace_dim=dim,
                verdict="NOT_EXPOSED",
                counterexample=cand,
                counterexample_report=cand_report,
                samples_used=samples_used,
                diagnostics=diagnostics,
            )
        diagnostics["rejected_candidate"] = True
    return ExposednessReport(
        nullspace_dim=dim,
        verdict="CONSISTENT_WITH_EXPOSED",
        counterexample=None,
        counterexample_report=None,
        samples_used=samples_used,
        diagnostics=diagnostics,
    )


def _validate_counterexample(desc, phi, cand, config, rng, tol):
    """Re-check a candidate independently of the search that found it."""
    n, m = phi.dim_in, phi.dim_out
    if is_ray_proportional(cand, phi.choi, tol):
        return False, None
    cand_map = map_from_choi(cand, n, m)
    verdict, report = is_block_positive(cand_map, config.seesaw, rng, tol)
    if verdict != "EVIDENCE_BP":
        return False, report
    fresh = dual_face_samples(desc, max(64, 2 * n * m), rng, tol)
    C = face_constraint_matrix(fresh, n, m)
    coords = hermitian_to_coords(cand)
    coords = coords / np.linalg.norm(coords)
    residual = float(np.max(np.abs(C @ coords)))
    if residual > 1e-8:
        return False, report
    return True, report


def optimality_spanning_check(
    desc,
    sample_count: int | None = None,
    rng: np.random.Generator | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[bool, int]:
    """Whether the face's product vectors span the whole product space.

    A spanning face leaves no room to subtract a completely positive map,
    which is the usual optimality notion for entanglement witnesses.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    descriptor, phi = _as_map(desc)
    n, m = phi.dim_in, phi.dim_out
    d = n * m
    k = 2 * d * d if sample_count is None else int(sample_count)
    sample = dual_face_samples(desc, k, rng, tol)
    Z = np.stack([product_vector(p.x, p.y) for p in sample.pairs])
    s = np.linalg.svd(Z, compute_uv=False)
    span_dim = int(np.sum(s > tol.nullspace_rel_tol * s[0]))
    return span_dim == d, span_dim


def verify_lemma1(
    V: np.ndarray,
    x: np.ndarray,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Residual of the rank-deflation identity behind the exposedness proof.

    Summing ``D |conj(x)><conj(x)| D^dag`` over the antisymmetric basis
    attached to V must give ``I - |x><x|`` for every unit x.
    """
    V = require_unitary(np.asarray(V, dtype=complex), tol)
    n2 = V.shape[0]
    if n2 % 2 != 0:
        raise OddDimension("the identity is stated in even dimension")
    x = np.asarray(x, dtype=complex)
    if x.shape != (n2,):
        raise DimensionMismatch(f"x has shape {x.shape}, expected ({n2},)")
    if abs(np.linalg.norm(x) - 1.0) > 1e-9:
        raise NotUnitVector(f"x has norm {np.linalg.norm(x)!r}")
    P_bar = np.outer(x.conj(), x)
    S = np.zeros((n2, n2), dtype=complex)
    for D in antisym_basis(V, n2, tol):
        S += D @ P_bar @ D.conj().T
    target = np.eye(n2) - np.outer(x, x.conj())
    return float(frobenius(S - target))


def verify_bh_structure(
    U: np.ndarray,
    x: np.ndarray,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> BHStructureReport:
    """Check the four structural facts the exposedness argument rests on.

    (i) the map sends |x><x| to the two-projector deflation,
    (ii) it and its conjugation twin sum to the reduction map,
    (iii) x is orthogonal to U conj(x),
    (iv) the sign-flipped alternative is refuted by an explicit vector
    orthogonal to both kernel directions, where its expectation is -1.
    """
    U = require_antisymmetric_unitary(np.asarray(U, dtype=complex), tol)
    n2 = U.shape[0]
    x = np.asarray(x, dtype=complex)
    if x.shape != (n2,):
        raise DimensionMismatch(f"x has shape {x.shape}, expected ({n2},)")
    if abs(np.linalg.norm(x) - 1.0) > 1e-9:
        raise NotUnitVector(f"x has norm {np.linalg.norm(x)!r}")

    phi = breuer_hall(U, tol)
    P_x = np.outer(x, x.conj())
    u = U @ x.conj()
    P_u = np.outer(u, u.conj())
    eye = np.eye(n2)

    lhs = apply(phi, P_x)
    rhs = (eye - P_x) - P_u
    apply_residual = float(frobenius(lhs - rhs))

    twin = co_ad_map(U)
    remark1_residual = float(
        frobenius(choi_of(phi) + choi_of(twin) - choi_of(reduction(n2)))
    )

    orthogonality_value = float(abs(np.vdot(x, u)))

    p2_witness = None
    p2_value = 0.0
    for k in range(n2):
        e = np.zeros(n2, dtype=complex)
        e[k] = 1.0
        v = e - x * np.vdot(x, e) - u * np.vdot(u, e)
        norm = np.linalg.norm(v)
        if norm > 0.3:
            p2_witness = v / norm
            break
    if p2_witness is not None:
        Q = P_u - (eye - P_x)
        p2_value = float(np.real(np.vdot(p2_witness, Q @ p2_witness)))

    check_i = apply_residual <= 1e-11
    check_ii = remark1_residual <= 1e-12
    check_iii = orthogonality_value <= 1e-12
    check_iv = p2_witness is not None and p2_value < -0.5
    return BHStructureReport(
        dim=n2,
        apply_residual=apply_residual,
        remark1_residual=remark1_residual,
        orthogonality_value=orthogonality_value,
        p2_value=p2_value,
        p2_witness=p2_witness,
        check_i=check_i,
        check_ii=check_ii,
        check_iii=check_iii,
        check_iv=check_iv,
        passed=check_i and check_ii and check_iii and check_iv,
    )
