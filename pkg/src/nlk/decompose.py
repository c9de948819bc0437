"""Gaussian/remainder splitting and full-functional decomposition attempts.

The remainder subspace is the smallest invariant subspace containing all
images (pi(l) - eps(l)) e_i.  Its orthocomplement carries the Gaussian part:
projecting a cocycle there yields a cocycle for the counit representation,
that is, a derivation.  A functional decomposes when both projected cocycles
admit generating functionals; the leftover difference is then a purely
imaginary derivation which is absorbed into the Gaussian part.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .cocycles import Cocycle, Representation, trivial_representation
from .functionals import (
    GroupFunctional,
    SolveOutcome,
    solve_generating_functional,
)
from .linalg import HermitianForm, IndefiniteFormError
from .presentations import GROUP, letter_str


def invariant_closure(representation: Representation) -> list:
    """Echelon basis of the smallest invariant subspace containing all
    (pi(l) - eps(l)) basis vectors, for every letter l of the alphabet.

    The alphabet includes inverse and starred letters, so the closure is
    stable under adjoints as well.
    """
    p = representation.presentation
    n = representation.form.dim
    letters = p.alphabet()
    seeds = []
    for l in letters:
        m = representation.letter_matrix(l)
        eps = p.epsilon_letter(l)
        shifted = linalg.msub(m, linalg.mscale(eps, linalg.identity(n)))
        seeds.extend(linalg.columns(shifted))
    basis = linalg.span_basis(seeds)
    while True:
        extended = list(basis)
        for l in letters:
            m = representation.letter_matrix(l)
            for v in basis:
                extended.append(linalg.mvmul(m, v))
        new_basis = linalg.span_basis(extended)
        if len(new_basis) == len(basis):
            return basis
        basis = new_basis


def _coords_matrix(form: HermitianForm, basis_cols):
    """k x dim matrix sending v to the coordinates of its orthogonal
    projection onto span(basis) relative to that basis."""
    if not basis_cols:
        return tuple()
    b = linalg.from_columns(basis_cols, rows_hint=form.dim)
    bh = linalg.conj_transpose(b)
    gram = linalg.mmul(bh, linalg.mmul(form.gram, b))
    return linalg.mmul(linalg.inverse(gram), linalg.mmul(bh, form.gram))


@dataclass(frozen=True)
class PartSpace:
    """One side of the splitting, in its own coordinates."""
    basis: tuple          # columns in the ambient space
    form: HermitianForm   # Gram matrix of the basis
    coords: tuple         # coordinate map, k x dim
    representation: Representation
    cocycle: Cocycle

    @property
    def dim(self) -> int:
        return self.form.dim


@dataclass(frozen=True)
class SplitResult:
    representation: Representation
    cocycle: Cocycle
    p_g: tuple
    p_r: tuple
    gaussian: PartSpace
    remainder: PartSpace

    def to_json(self):
        return {
            "dim_gaussian": self.gaussian.dim,
            "dim_remainder": self.remainder.dim,
            "P_G": linalg.matrix_to_json(self.p_g),
            "P_R": linalg.matrix_to_json(self.p_r),
            "remainder_basis": [linalg.vector_to_json(v)
                                for v in self.remainder.basis],
        }


def _part_space(representation, cocycle, basis_vectors, trivial: bool) -> PartSpace:
    p = representation.presentation
    form = representation.form
    basis = tuple(basis_vectors)
    coords = _coords_matrix(form, basis)
    part_gram = tuple(tuple(form.inner(v, w) for w in basis) for v in basis)
    part_form = HermitianForm(part_gram)
    if trivial:
        part_rep = trivial_representation(p, part_form)
    else:
        images = {}
        for g in p.generators:
            img = representation.images[g]
            cols = [linalg.mvmul(coords, linalg.mvmul(img, v)) for v in basis]
            images[g] = linalg.from_columns(cols, rows_hint=len(basis))
        part_rep = Representation(p, part_form, images)
    values = {}
    for l in p.alphabet():
        if p.kind == GROUP and l[1] == -1:
            continue
        values[letter_str(p.kind, l)] = linalg.mvmul(coords,
                                                     cocycle.letter_value(l))
    part_cocycle = Cocycle(part_rep, values)
    return PartSpace(basis=basis, form=part_form, coords=coords,
                     representation=part_rep, cocycle=part_cocycle)


def split(cocycle: Cocycle) -> SplitResult:
    """Split a cocycle into its Gaussian and remainder parts.

    Requires a positive definite form.  Both parts are returned in their own
    coordinates together with the ambient projections; the Gaussian part's
    cocycle is built for the counit representation, which certifies that the
    projected values form a derivation.
    """
    representation = cocycle.representation
    form = representation.form
    if not form.definite:
        raise IndefiniteFormError("splitting needs a positive definite form")
    n = form.dim
    h_r = invariant_closure(representation)
    p_r = form.projection(h_r)
    p_g = linalg.msub(linalg.identity(n), p_r)
    h_g = form.orthocomplement(h_r)
    gaussian = _part_space(representation, cocycle, h_g, trivial=True)
    remainder = _part_space(representation, cocycle, h_r, trivial=False)
    return SplitResult(representation=representation, cocycle=cocycle,
                       p_g=p_g, p_r=p_r, gaussian=gaussian, remainder=remainder)


# --- decomposition of a functional ---------------------------------


@dataclass(frozen=True)
class LkOutcome:
    verdict: str  # "decomposed" | "no_lk"
    split_result: SplitResult
    gaussian_outcome: SolveOutcome
    remainder_outcome: SolveOutcome
    psi_gaussian: GroupFunctional | None
    psi_remainder: GroupFunctional | None
    derivation: dict | None  # generator -> purely imaginary correction

    @property
    def decomposed(self) -> bool:
        return self.verdict == "decomposed"

    def to_json(self):
        out = {
            "verdict": self.verdict,
            "split": self.split_result.to_json(),
            "parts": {
                "gaussian": self.gaussian_outcome.to_json(),
                "remainder": self.remainder_outcome.to_json(),
            },
        }
        if self.decomposed:
            out["psi_gaussian"] = self.psi_gaussian.to_json()["psi"]
            out["psi_remainder"] = self.psi_remainder.to_json()["psi"]
            out["derivation_correction"] = {
                g: str(v) for g, v in sorted(self.derivation.items())}
        else:
            out["psi_gaussian"] = None
            out["psi_remainder"] = None
            out["derivation_correction"] = None
        return out


def attempt_lk(functional: GroupFunctional) -> LkOutcome:
    """Try to decompose a verified functional along the cocycle splitting.

    Solves for generating functionals of both projected cocycles.  On double
    success the difference d(g) = psi(g) - psi_G(g) - psi_R(g) is a purely
    imaginary derivation; it is added to the Gaussian part so that
    psi = psi_G + psi_R holds exactly on generators.
    """
    cocycle = functional.cocycle
    p = cocycle.presentation
    sr = split(cocycle)
    out_g = solve_generating_functional(sr.gaussian.cocycle)
    out_r = solve_generating_functional(sr.remainder.cocycle)
    if not (out_g.feasible and out_r.feasible):
        return LkOutcome(verdict="no_lk", split_result=sr,
                         gaussian_outcome=out_g, remainder_outcome=out_r,
                         psi_gaussian=None, psi_remainder=None, derivation=None)
    psi_g = out_g.functional
    psi_r = out_r.functional
    derivation = {}
    adjusted = {}
    for g in p.generators:
        d = functional.values[g] - psi_g.values[g] - psi_r.values[g]
        if d.re != 0:
            raise AssertionError(
                f"real parts failed to split on generator {g}: leftover {d}")
        derivation[g] = d
        adjusted[g] = psi_g.values[g] + d
    psi_g_adjusted = psi_g.with_values(adjusted)
    for g in p.generators:
        total = psi_g_adjusted.values[g] + psi_r.values[g]
        if total != functional.values[g]:
            raise AssertionError(f"decomposition does not rebuild psi({g})")
    return LkOutcome(verdict="decomposed", split_result=sr,
                     gaussian_outcome=out_g, remainder_outcome=out_r,
                     psi_gaussian=psi_g_adjusted, psi_remainder=psi_r,
                     derivation=derivation)


# --- property bookkeeping ------------------------------------------


PROPERTIES = ("LK", "GC", "NC", "AC", "H2Z")

WITNESSED_FALSE = "WITNESSED_FALSE"
CHECKED_TRUE_FINITE = "CHECKED_TRUE_FINITE"
PAPER_CLAIM_TRUE = "PAPER_CLAIM_TRUE"
PAPER_CLAIM_FALSE = "PAPER_CLAIM_FALSE"

TRUE_VERDICTS = {CHECKED_TRUE_FINITE, PAPER_CLAIM_TRUE}
FALSE_VERDICTS = {WITNESSED_FALSE, PAPER_CLAIM_FALSE}

# P -> Q: an algebra with property P also has property Q
IMPLICATIONS = (
    ("H2Z", "AC"),
    ("AC", "GC"),
    ("AC", "NC"),
    ("GC", "LK"),
    ("NC", "LK"),
)


@dataclass(frozen=True)
class PropertyReport:
    algebra: str
    property: str
    verdict: str
    evidence: dict

    def __post_init__(self):
        if self.property not in PROPERTIES:
            raise ValueError(f"unknown property {self.property!r}")
        if self.verdict not in TRUE_VERDICTS | FALSE_VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    def to_json(self):
        return {"algebra": self.algebra, "property": self.property,
                "verdict": self.verdict, "evidence": self.evidence}


def check_diagram_consistency(reports) -> list:
    """Cross-check verdicts against the implication diagram.

    Returns a list of conflict descriptions; empty means consistent.  A
    conflict is an algebra asserted to have a property while lacking one that
    it implies.
    """
    by_algebra = {}
    for r in reports:
        by_algebra.setdefault(r.algebra, {})[r.property] = r.verdict
    conflicts = []
    for algebra, verdicts in sorted(by_algebra.items()):
        for p, q in IMPLICATIONS:
            if (verdicts.get(p) in TRUE_VERDICTS
                    and verdicts.get(q) in FALSE_VERDICTS):
                conflicts.append(
                    f"{algebra}: {p} is {verdicts[p]} but implied {q} "
                    f"is {verdicts[q]}")
    return conflicts
