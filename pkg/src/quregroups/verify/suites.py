"""Registered claim suites C1-C11.

C1-C7 check identities with an independent route and are asserted: their
status is pass or fail against the tolerances pinned below.  C8-C11 measure
properties of the psi_n maps and are report-only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from quregroups import clifford as cl
from quregroups import psi as ps
from quregroups import spinor as sp
from quregroups import tensor as tg
from quregroups.verdict import FAIL, PASS, REPORT_ONLY, ClaimVerdict
from quregroups.verify import oracles

EXACT = 0.0
TIGHT = 1e-12
LOOSE = 1e-10


@dataclass(frozen=True)
class SuiteContext:
    rng: np.random.Generator
    samples: int
    tolerance: float
    n_max: int


@dataclass(frozen=True)
class Suite:
    id: str
    title: str
    anchor: str
    asserted: bool
    covers: tuple[str, ...]
    func: Callable[[SuiteContext], ClaimVerdict]


class _Checks:
    """Collects named sub-checks; the suite passes iff each residual meets its own tolerance."""

    def __init__(self):
        self.items: dict[str, dict] = {}

    def add(self, name: str, residual: float, tol: float):
        residual = float(residual)
        self.items[name] = {"residual": residual, "tolerance": tol, "ok": bool(residual <= tol)}

    def flag(self, name: str, ok: bool, **info):
        self.items[name] = {"ok": bool(ok), **info}

    @property
    def ok(self) -> bool:
        return all(item["ok"] for item in self.items.values())

    @property
    def max_residual(self) -> float:
        return max((item["residual"] for item in self.items.values() if "residual" in item), default=0.0)

    def verdict(self, suite: Suite, samples: int, **extra) -> ClaimVerdict:
        tol = max((item["tolerance"] for item in self.items.values() if "tolerance" in item), default=0.0)
        return ClaimVerdict(
            suite.id, suite.anchor, PASS if self.ok else FAIL, self.max_residual, samples,
            details={"checks": self.items, **extra}, tolerance=tol,
        )


def _maxabs(x) -> float:
    return float(np.max(np.abs(x))) if np.size(x) else 0.0


# --- C1 -----------------------------------------------------------------------

def _c1_clifford(ctx: SuiteContext) -> ClaimVerdict:
    checks = _Checks()
    blade = {name: cl.basis_blade(name) for name in cl.BLADE_NAMES}
    one = blade["1"]
    gp = cl.geometric_product
    s = [blade["s1"], blade["s2"], blade["s3"]]
    t = [blade["t1"], blade["t2"], blade["t3"]]

    anti = [gp(s[i], s[j]) + gp(s[j], s[i]) - 2 * (i == j) * one for i in range(3) for j in range(3)]
    checks.add("s_i s_j + s_j s_i = 2 delta_ij", _maxabs(anti), EXACT)
    checks.add("t_i^2 = -1", _maxabs([gp(x, x) + one for x in t]), EXACT)
    quat = [gp(t[1], t[0]) - t[2], gp(t[0], t[2]) - t[1], gp(t[2], t[1]) - t[0]]
    checks.add("t2 t1 = t3, t1 t3 = t2, t3 t2 = t1", _maxabs(quat), EXACT)
    pseudo = blade["I"]
    checks.add("I = s1 s2 s3", _maxabs(gp(gp(s[0], s[1]), s[2]) - pseudo), EXACT)
    checks.add("I central", _maxabs([gp(pseudo, e) - gp(e, pseudo) for e in blade.values()]), EXACT)
    checks.add("I^2 = -1", _maxabs(gp(pseudo, pseudo) + one), EXACT)
    checks.add("t_i = s_j s_k", _maxabs([gp(s[1], s[2]) - t[0], gp(s[2], s[0]) - t[1], gp(s[0], s[1]) - t[2]]), EXACT)

    eye = np.eye(8, dtype=np.int64)
    a, b, c = (np.array(x) for x in zip(*itertools.product(eye, repeat=3)))
    checks.add("associativity over 8^3 blade triples", _maxabs(gp(gp(a, b), c) - gp(a, gp(b, c))), EXACT)

    x, y, z = (ctx.rng.standard_normal((ctx.samples, 8)) for _ in range(3))
    checks.add("associativity on random multivectors", _maxabs(gp(gp(x, y), z) - gp(x, gp(y, z))), TIGHT)
    checks.add("reversion reverses products",
               _maxabs(cl.reversion(gp(x, y)) - gp(cl.reversion(y), cl.reversion(x))), TIGHT)
    graded = [cl.grade_projection(x, k) for k in range(4)]
    checks.add("grade projections sum to identity", _maxabs(sum(graded) - x), EXACT)
    checks.add("grade projections idempotent",
               _maxabs([cl.grade_projection(g, k) - g for k, g in enumerate(graded)]), EXACT)
    checks.add("a + (-1) a = 0", _maxabs(cl.mv_add(x, cl.mv_scale(x, -1.0))), EXACT)

    u, v = cl.vector_to_multivector(x[:, :3]), cl.vector_to_multivector(y[:, :3])
    dot = np.sum(x[:, :3] * y[:, :3], -1)
    checks.add("inner product of vectors is the dot product", _maxabs(cl.inner_product(u, v) - dot), TIGHT)
    wedge = cl.exterior_product(u, v)
    checks.add("exterior product antisymmetric", _maxabs(wedge + cl.exterior_product(v, u)), EXACT)
    checks.add("exterior product is a bivector", _maxabs(wedge - cl.grade_projection(wedge, 2)), EXACT)

    ex, ey = (cl.quaternion_to_multivector(cl.even_part(m)) for m in (x, y))
    checks.add("even subalgebra closed, quaternion product agrees",
               _maxabs(cl.quaternion_multiply(cl.even_part(ex), cl.even_part(ey)) - cl.even_part(gp(ex, ey)))
               + _maxabs(gp(ex, ey) - cl.quaternion_to_multivector(cl.even_part(gp(ex, ey)))), TIGHT)
    return checks.verdict(SUITES_BY_ID["C1"], ctx.samples)


# --- C2 -----------------------------------------------------------------------

def _c2_rotor(ctx: SuiteContext) -> ClaimVerdict:
    checks = _Checks()
    n = ctx.samples
    theta = ctx.rng.uniform(-np.pi, np.pi, n)
    r = oracles.random_unit_vectors(ctx.rng, n)
    v = ctx.rng.standard_normal((n, 3))
    w = ctx.rng.standard_normal((n, 3))
    rv = cl.rotor_rotate(theta, r, v)
    rw = cl.rotor_rotate(theta, r, w)
    checks.add("matches Rodrigues formula", _maxabs(rv - oracles.rodrigues(theta, r, v)), LOOSE)
    checks.add("norm preserved", _maxabs(np.linalg.norm(rv, axis=-1) - np.linalg.norm(v, axis=-1)), LOOSE)
    checks.add("inner products preserved", _maxabs(np.sum(rv * rw, -1) - np.sum(v * w, -1)), LOOSE)
    q = cl.rotor_exp(theta, r)
    checks.add("rotor has unit norm", _maxabs(np.sum(q**2, -1) - 1), TIGHT)
    neg = cl.sandwich(-cl.quaternion_to_multivector(cl.rotor_exp(-theta / 2, r)), v)
    checks.add("-q induces the same rotation", _maxabs(neg - rv), LOOSE)
    checks.add("full turn is the identity", _maxabs(cl.rotor_rotate(np.full(n, 2 * np.pi), r, v) - v), LOOSE)
    quarter = cl.rotor_rotate(np.pi / 2, [0.0, 0.0, 1.0], [1.0, 0.0, 0.0])
    checks.add("quarter turn about s3 sends s1 to s2", _maxabs(quarter - [0.0, 1.0, 0.0]), LOOSE)
    return checks.verdict(SUITES_BY_ID["C2"], n)


# --- C3 -----------------------------------------------------------------------

_QUAT_BASIS = np.eye(4)


def _composition_law(pairing, rng, samples, tol):
    basis = [sp.phi_composition_check(p, q, pairing, tol).verdict for p in _QUAT_BASIS for q in _QUAT_BASIS]
    p = oracles.random_unit_vectors(rng, samples, 4)
    q = oracles.random_unit_vectors(rng, samples, 4)
    sampled = sp.phi_composition_check(p, q, pairing, tol)
    return basis, sampled


def _c3_phi(ctx: SuiteContext) -> ClaimVerdict:
    checks = _Checks()
    n = ctx.samples
    q = oracles.random_unit_vectors(ctx.rng, n, 4)
    u = sp.phi_map(q)
    checks.add("s1 s2 s3 = i Id", _maxabs(sp.pauli(1) @ sp.pauli(2) @ sp.pauli(3) - 1j * np.eye(2)), EXACT)
    unitarity, det = sp.su2_residuals(u)
    checks.add("phi(q) unitary", unitarity.max(), TIGHT)
    checks.add("det phi(q) = 1", det.max(), TIGHT)

    laws = {}
    for pairing in ("literal", "conventional"):
        basis, sampled = _composition_law(pairing, ctx.rng, n, TIGHT)
        decided = sorted(set(basis) - {"both"})
        consistent = len(decided) == 1 and sampled.verdict == decided[0]
        laws[pairing] = {
            "basis_pairs": {v: basis.count(v) for v in sorted(set(basis))},
            "random_pairs": sampled.verdict,
            "random_hom_residual": sampled.hom_residual,
            "random_anti_residual": sampled.anti_residual,
        }
        if pairing == "literal":
            checks.flag("composition law identical on basis and random pairs", consistent,
                        verdict=decided[0] if len(decided) == 1 else "inconsistent")

    actions = sp.conjugation_action(u) - sp.conjugation_action(sp.phi_map(-q))
    checks.add("phi(q) and phi(-q) induce the same conjugation", _maxabs(actions), LOOSE)
    rot = sp.conjugation_action(u)
    checks.add("conjugation action is orthogonal",
               _maxabs(np.swapaxes(rot, -1, -2) @ rot - np.eye(3)), LOOSE)
    return checks.verdict(SUITES_BY_ID["C3"], n, composition_law=laws)


# --- C4 -----------------------------------------------------------------------

def _psi0_relations(rng, samples):
    """Report-only: how psi1(psi0(theta, r)) relates to phi(exp(I r theta))."""
    theta = rng.uniform(-np.pi, np.pi, samples)
    r = oracles.random_unit_vectors(rng, samples)
    c = sp.psi0(theta, r)
    lhs = sp.psi1(c)
    rotor = cl.rotor_exp(theta, r)
    candidates = {
        "phi_literal": sp.phi_map(rotor),
        "phi_literal_adjoint": tg.dagger(sp.phi_map(rotor)),
        "phi_conventional": sp.phi_map(rotor, "conventional"),
        "phi_conventional_adjoint": tg.dagger(sp.phi_map(rotor, "conventional")),
    }
    return {
        "psi0_norm_residual": _maxabs(np.sum(np.abs(c) ** 2, -1) - 1),
        **{f"residual_vs_{k}": _maxabs(lhs - m) for k, m in candidates.items()},
    }


def _c4_psi1(ctx: SuiteContext) -> ClaimVerdict:
    checks = _Checks()
    n = ctx.samples
    a = oracles.random_qubits(ctx.rng, n)
    b = oracles.random_qubits(ctx.rng, n)
    ma, mb = sp.psi1(a), sp.psi1(b)
    checks.add("psi1(a *1 b) = psi1(a) psi1(b)", _maxabs(sp.psi1(sp.star1(a, b)) - ma @ mb), TIGHT)
    checks.flag("psi1_inv(psi1(c)) = c exactly", np.array_equal(sp.psi1_inv(ma), a))
    checks.add("psi1(psi1_inv(M)) = M", _maxabs(sp.psi1(sp.psi1_inv(ma)) - ma), TIGHT)
    unitarity, det = sp.su2_residuals(ma)
    checks.add("psi1(c) unitary", unitarity.max(), TIGHT)
    checks.add("det psi1(c) = 1", det.max(), TIGHT)
    checks.add("psi1(c) has first column c", _maxabs(ma[..., :, 0] - a), EXACT)
    return checks.verdict(SUITES_BY_ID["C4"], n, psi0_relations=_psi0_relations(ctx.rng, n))


# --- C5 -----------------------------------------------------------------------

def _c5_star1(ctx: SuiteContext) -> ClaimVerdict:
    checks = _Checks()
    n = ctx.samples
    a, b, c = (oracles.random_qubits(ctx.rng, n) for _ in range(3))
    star = sp.star1
    checks.add("associativity", _maxabs(star(star(a, b), c) - star(a, star(b, c))), TIGHT)
    e = np.broadcast_to(np.asarray(sp.QUBIT_IDENTITY), a.shape)
    checks.add("(1,0) is a left identity", _maxabs(star(e, a) - a), EXACT)
    checks.add("(1,0) is a right identity", _maxabs(star(a, e) - a), EXACT)
    inv = sp.qubit_inverse(a)
    checks.add("a *1 a^-1 = (1,0)", _maxabs(star(a, inv) - e), TIGHT)
    checks.add("a^-1 *1 a = (1,0)", _maxabs(star(inv, a) - e), TIGHT)
    checks.add("inverse is an involution", _maxabs(sp.qubit_inverse(inv) - a), EXACT)
    checks.add("closure on the unit sphere", _maxabs(np.sum(np.abs(star(a, b)) ** 2, -1) - 1), TIGHT)
    return checks.verdict(SUITES_BY_ID["C5"], n)


# --- C6 -----------------------------------------------------------------------

MAX_WORD_LENGTH = 8
WORD_SAMPLES_CAP = 2000


def _c6_tensor(ctx: SuiteContext) -> ClaimVerdict:
    checks = _Checks()
    n_top = min(3, ctx.n_max)
    mixed, unitarity, det = [], [], []
    for n in range(2, n_top + 1):
        g = oracles.random_su2(ctx.rng, ctx.samples, n)
        h = oracles.random_su2(ctx.rng, ctx.samples, n)
        lhs = tg.group_generator(g) @ tg.group_generator(h)
        rhs = tg.group_generator(g @ h)
        mixed.append(_maxabs(lhs - rhs))
        t = tg.group_generator(g)
        unitarity.append(_maxabs(tg.dagger(t) @ t - np.eye(2**n)))
        det.append(_maxabs(np.abs(np.linalg.det(t)) - 1))
    checks.add("(x)g_i (x)h_i = (x)(g_i h_i)", max(mixed), TIGHT)
    checks.add("generators unitary", max(unitarity), TIGHT)
    checks.add("|det| of generators = 1", max(det), TIGHT)

    words = min(ctx.samples, WORD_SAMPLES_CAP)
    residual, longest, product_ops = 0.0, 0, 0
    for k in range(words):
        n = 2 + k % (n_top - 1)
        length = int(ctx.rng.integers(0, MAX_WORD_LENGTH + 1))
        gens = oracles.random_su2(ctx.rng, length, n)
        exps = ctx.rng.choice([-1, 1], length)
        w = tg.GroupWord(n, tuple(zip(gens, exps.tolist())))
        reduced = tg.word_reduce(w)
        value = tg.word_evaluate(w)
        residual = max(residual, _maxabs(tg.word_evaluate(reduced) - value))
        residual = max(residual, _maxabs(tg.word_evaluate(w.inverse()) @ value - np.eye(2**n)))
        longest = max(longest, len(reduced))
        product_ops += all(tg.operator_schmidt_rank(value, cut).rank == 1 for cut in range(1, n))
    checks.add("word_reduce preserves the evaluated element", residual, TIGHT)
    checks.flag("every word reduces to length <= 1", longest <= 1, longest_reduced=longest)
    return checks.verdict(
        SUITES_BY_ID["C6"], ctx.samples,
        findings={
            "generator_set_closed_under_products_and_inverses": longest <= 1,
            "words_with_product_operator_value": product_ops,
            "words_sampled": words,
        },
    )


# --- C7 -----------------------------------------------------------------------

def _c7_bell(ctx: SuiteContext) -> ClaimVerdict:
    checks = _Checks()
    ortho, density, kets, ranks_ok, product_ok = [], [], [], True, True
    for n in range(2, ctx.n_max + 1):
        states = np.array([tg.bell_state(eps) for eps in tg.bitstrings(n)])
        ortho.append(_maxabs(np.conj(states) @ states.T - np.eye(2**n)))
        density.append(_maxabs(tg.reduced_density_first_qubit(states) - np.eye(2) / 2))
        rebuilt = [
            (tg.canonical_ket("0" + eps[1:]) + (-1) ** int(eps[0]) * tg.canonical_ket(
                "1" + "".join("1" if b == "0" else "0" for b in eps[1:]))) / np.sqrt(2)
            for eps in tg.bitstrings(n)
        ]
        kets.append(_maxabs(states - np.array(rebuilt)))
        ranks_ok &= all(tg.vector_schmidt_rank(x, 1).rank == 2 for x in states)
        c = oracles.random_qubits(ctx.rng, 4)
        rest = ps.random_states(ctx.rng, 4, 2 ** (n - 1))
        product_ok &= all(tg.vector_schmidt_rank(tg.kron_vec(c[k], rest[k]), 1).rank == 1 for k in range(4))
    checks.add("Bell states from canonical kets", max(kets), EXACT)
    checks.add("Bell basis orthonormal", max(ortho), TIGHT)
    checks.add("first-qubit reduced density = Id/2", max(density), TIGHT)
    checks.flag("Schmidt rank 2 at cut 1", ranks_ok)
    checks.flag("product states have Schmidt rank 1", product_ok)
    return checks.verdict(SUITES_BY_ID["C7"], 2 ** (ctx.n_max + 1) - 4, n_values=list(range(2, ctx.n_max + 1)))


# --- C8-C11 (report-only) -------------------------------------------------------

def _psi_ns(ctx):
    return range(1, min(3, ctx.n_max) + 1)


def _aggregate(suite: Suite, parts: dict[str, ClaimVerdict], samples: int, **extra) -> ClaimVerdict:
    return ClaimVerdict(
        suite.id, suite.anchor, REPORT_ONLY,
        max(v.max_residual for v in parts.values()), samples,
        details={**{k: v.details for k, v in parts.items()}, **extra},
    )


def _c8_separable(ctx: SuiteContext) -> ClaimVerdict:
    parts = {}
    for n in _psi_ns(ctx):
        cs = oracles.random_qubits(ctx.rng, ctx.samples, n)
        parts[f"n={n}"] = ps.verify_separable_consistency(cs, ps.literal_tables(n), ctx.tolerance)
    basis = ps.verify_separable_consistency([[1, 0], [1, 0]], ps.literal_tables(2), ctx.tolerance)
    return _aggregate(SUITES_BY_ID["C8"], parts, ctx.samples, basis_product_n2=basis.details)


def _c9_unitarity(ctx: SuiteContext) -> ClaimVerdict:
    parts = {
        f"n={n}": ps.verify_unitarity(ps.literal_tables(n), ctx.samples, ctx.tolerance, ctx.rng)
        for n in _psi_ns(ctx)
    }
    return _aggregate(SUITES_BY_ID["C9"], parts, ctx.samples)


def _c10_tables(ctx: SuiteContext) -> ClaimVerdict:
    details, worst = {}, 0.0
    for n in (1, 2, 3):
        lit, gen = ps.literal_tables(n), ps.generated_tables(n)
        mismatches = ps.compare_tables(lit, gen)
        worst = max([worst] + [abs(a - b) for _, _, _, a, b in mismatches])
        details[f"n={n}"] = {
            "index_rows_are_permutations": lit.index_rows_are_permutations(),
            "index_symmetric": bool(np.array_equal(lit.I, lit.I.T)),
            "index_zero_diagonal": bool(np.all(np.diag(lit.I) == 0)),
            "mismatches": [
                {"matrix": m, "i": i, "j": j, "literal": a, "generated": b} for m, i, j, a, b in mismatches
            ],
        }
        if n > 1:
            cs = oracles.random_qubits(ctx.rng, 50, n)
            details[f"n={n}"]["product_image_schmidt_ranks"] = {
                t.source: ps.verify_separable_consistency(cs, t).details["max_image_operator_schmidt_rank_per_cut"]
                for t in (lit, gen)
            }
    return ClaimVerdict(SUITES_BY_ID["C10"].id, SUITES_BY_ID["C10"].anchor, REPORT_ONLY, float(worst), 3,
                        details=details)


def _c11_bell_images(ctx: SuiteContext) -> ClaimVerdict:
    details, worst, count = {}, 0.0, 0
    for n in range(2, min(3, ctx.n_max) + 1):
        images = ps.bell_images(n, ps.literal_tables(n), ctx.tolerance)
        details[f"n={n}"] = {eps: v.details for eps, _, v in images}
        worst = max([worst] + [v.max_residual for _, _, v in images])
        count += len(images)
    c = oracles.random_qubits(ctx.rng, 2)
    contrast = ps.psi_n(tg.kron_vec(c[0], c[1]), ps.literal_tables(2))
    details["product_state_contrast_n=2"] = {
        "operator_schmidt_rank": tg.operator_schmidt_rank(contrast, 1).rank,
        "matrix_rank": int(np.linalg.matrix_rank(contrast)),
    }
    return ClaimVerdict(SUITES_BY_ID["C11"].id, SUITES_BY_ID["C11"].anchor, REPORT_ONLY, float(worst), count,
                        details=details)


SUITES: tuple[Suite, ...] = (
    Suite("C1", "Clifford relations", "Cl(R^3): s_i^2 = 1, s_i s_j = -s_j s_i, even subalgebra", True,
          ("clifford.geometric_product", "clifford.basis_blade", "clifford.product_table", "clifford.mv_add",
           "clifford.mv_scale", "clifford.grade_projection", "clifford.reversion", "clifford.inner_product",
           "clifford.exterior_product", "clifford.even_part", "clifford.quaternion_multiply",
           "clifford.quaternion_to_multivector", "clifford.vector_to_multivector"), _c1_clifford),
    Suite("C2", "Rotor rotation", "e^{-I r theta/2} rotates by theta about r", True,
          ("clifford.rotor_exp", "clifford.rotor_rotate", "clifford.sandwich",
           "clifford.quaternion_to_multivector"), _c2_rotor),
    Suite("C3", "Phi composition", "Phi: U = a0 Id + i a2 s1 + i a1 s2 + i a3 s3", True,
          ("spinor.phi_map", "spinor.phi_composition_check", "spinor.conjugation_action",
           "spinor.su2_residuals", "spinor.pauli"), _c3_phi),
    Suite("C4", "Psi1 isomorphism", "Psi1: S1 -> SU(2) bijection", True,
          ("spinor.psi0", "spinor.psi1", "spinor.psi1_inv"), _c4_psi1),
    Suite("C5", "Star1 group axioms", "(S1, *1, (1,0)) is a group", True,
          ("spinor.star1", "spinor.qubit_inverse"), _c5_star1),
    Suite("C6", "Mixed product and closure", "words T_0^e0 ... T_{k-1}^e_{k-1} over F1^(x)n", True,
          ("tensor.kron_mat", "tensor.group_generator", "tensor.word_evaluate", "tensor.word_reduce",
           "tensor.operator_schmidt_rank"), _c6_tensor),
    Suite("C7", "Bell basis", "Bell basis b_eps of H_n is maximally entangled", True,
          ("tensor.kron_vec", "tensor.bell_state", "tensor.canonical_ket", "tensor.vector_schmidt_rank",
           "tensor.reduced_density_first_qubit"), _c7_bell),
    Suite("C8", "psi separable consistency", "psi_n equals the operator tensor product on separable states",
          False, ("psi.verify_separable_consistency", "psi.psi_n"), _c8_separable),
    Suite("C9", "psi unitarity", "bijection psi_n: S_{2^n-1} -> SU(2)^(x)n", False,
          ("psi.verify_unitarity",), _c9_unitarity),
    Suite("C10", "Table rule comparison", "index and sign tables I_n, Sigma_n for n = 1, 2, 3", False,
          ("psi.literal_tables", "psi.generated_tables", "psi.compare_tables", "psi.root_of_unity"),
          _c10_tables),
    Suite("C11", "Bell-image properties", "psi_n(b_eps) are maximally entangled elements", False,
          ("psi.bell_images",), _c11_bell_images),
)

SUITES_BY_ID = {s.id: s for s in SUITES}


def list_claims() -> list[dict[str, str]]:
    return [
        {"id": s.id, "title": s.title, "paper_ref": s.anchor, "kind": "asserted" if s.asserted else "report-only"}
        for s in SUITES
    ]
