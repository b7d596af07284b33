"""Certification sweeps: fast path versus brute-force oracle."""

import logging
from typing import Callable

import numpy as np
from pydantic import BaseModel, Field

from ..config import Settings, get_settings
from ..exceptions import InstanceTooLargeError
from ..models import FlcaResult, QuerySet, RootedTree, VertexId, build_tree
from .ancestry import AncestryIndex
from .flca import QueryScratch, aggregate, compute_flca, compute_flca_offline
from .generator import ParentList, TreeGenerator, all_parent_arrays, worst_case_instance
from .oracle import brute_force_flca, covers, mixed_fault_witness, vertex_fault_witness

logger = logging.getLogger(__name__)

WORST_CASE_F_MAX = 6
# later discrepancies are reported as found, without shrinking
MINIMIZE_LIMIT = 5


class Discrepancy(BaseModel):
    """One failed check on one instance."""

    check: str
    parents: list[VertexId | None]
    marks: list[VertexId]
    f: int
    detail: str

    def dump(self) -> str:
        return (
            f"check={self.check} f={self.f}\n"
            f"  parents={self.parents}\n"
            f"  marks={sorted(self.marks)}\n"
            f"  {self.detail}"
        )


class VerifyReport(BaseModel):
    """Totals of a certification run."""

    instances: int = 0
    checks: dict[str, int] = Field(default_factory=dict)
    discrepancies: list[Discrepancy] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.discrepancies

    @property
    def total_checks(self) -> int:
        return sum(self.checks.values())


class Certifier:
    """Runs every check on random, exhaustive and worst-case instances."""

    def __init__(
        self,
        settings: Settings | None = None,
        edge_faults: bool = False,
        corrupt: bool = False,
    ):
        self.settings = settings or get_settings()
        self.edge_faults = edge_faults
        self.corrupt = corrupt

    def _flca(self, index: AncestryIndex, scratch: QueryScratch, query: QuerySet) -> FlcaResult:
        result = compute_flca(index, scratch, query)
        if self.corrupt:
            return _corrupted(index.tree, result)
        return result

    def check_instance(
        self, parents: ParentList, marks: list[VertexId], f: int
    ) -> tuple[list[Discrepancy], list[str]]:
        """Run all applicable checks; return the failures and the names of the checks run."""
        tree = build_tree(parents)
        index = AncestryIndex(tree)
        scratch = QueryScratch.for_index(index)
        query = QuerySet.build(marks, f)
        result = self._flca(index, scratch, query)
        reps = result.representatives
        failures: list[Discrepancy] = []
        ran: list[str] = []

        def check(name: str, ok: bool, detail: Callable[[], str]) -> None:
            ran.append(name)
            if not ok:
                failures.append(
                    Discrepancy(check=name, parents=list(parents), marks=list(query.marks), f=f, detail=detail())
                )

        ell = index.lca_of_set(query.marks)
        bound = min(len(query), result.size_bound)
        check("size_bound", 1 <= len(reps) <= bound, lambda: f"|M*|={len(reps)} > {bound}")
        check(
            "ancestor_free",
            not any(a != b and index.is_ancestor(a, b) for a in reps for b in reps),
            lambda: f"M*={reps} has an ancestor pair",
        )
        check(
            "sandwich",
            covers(tree, [ell], reps) and covers(tree, reps, query.marks),
            lambda: f"M*={reps} not between LCA(M)={ell} and M",
        )

        def is_lca_of_marks_below(u: VertexId) -> bool:
            below = [m for m in query.marks if index.is_ancestor(u, m)]
            return bool(below) and index.lca_of_set(below) == u

        check(
            "lca_of_marked_descendants",
            all(is_lca_of_marks_below(u) for u in reps),
            lambda: f"some u in M*={reps} is not the LCA of the marks below it",
        )
        offline = compute_flca_offline(tree, query)
        check(
            "offline",
            offline.representatives == reps,
            lambda: f"online {reps} != offline {offline.representatives}",
        )
        if f == 1:
            check("f1_is_lca", reps == (ell,), lambda: f"M*={reps}, LCA(M)={ell}")

        again = self._flca(index, scratch, QuerySet.build(reps, f))
        check(
            "idempotence",
            again.representatives == reps,
            lambda: f"FLCA(M*)={again.representatives} != M*={reps}",
        )

        first, second = list(query.marks[::2]), list(query.marks[1::2])
        state = aggregate(index, scratch, None, first, f)
        carried = len(state.representatives)
        if second:
            state = aggregate(index, scratch, state, second, f)
        check(
            "aggregation",
            state.representatives == reps and carried <= result.size_bound,
            lambda: f"streamed {state.representatives} (carried {carried}) != one-shot {reps}",
        )

        try:
            witness = vertex_fault_witness(tree, query.marks, reps, f, self.settings)
            check("equivalence", witness is None, lambda: f"M*={reps}; faults {sorted(witness.vertices)} separate them")
        except InstanceTooLargeError as e:
            logger.warning(f"Skipping equivalence check: {e}")

        if tree.n <= self.settings.oracle_subset_max_n and f <= self.settings.oracle_subset_max_f:
            best, unique = brute_force_flca(tree, query.marks, f, self.settings)
            check(
                "minimality",
                best == reps and unique,
                lambda: f"oracle minimum {best} (unique={unique}) != M*={reps}",
            )

        if self.edge_faults:
            try:
                mixed = mixed_fault_witness(tree, query.marks, reps, f, self.settings)
                check(
                    "edge_faults",
                    mixed is None,
                    lambda: f"M*={reps}; vertex faults {sorted(mixed.vertices)} "
                    f"edge faults {sorted(mixed.edges)} separate them",
                )
            except InstanceTooLargeError as e:
                logger.warning(f"Skipping mixed-fault check: {e}")

        check("scratch_hygiene", scratch.is_clean(), lambda: "scratch left dirty")
        return failures, ran

    def _record(self, report: VerifyReport, parents: ParentList, marks: list[VertexId], f: int) -> None:
        failures, ran = self.check_instance(parents, marks, f)
        report.instances += 1
        for name in ran:
            report.checks[name] = report.checks.get(name, 0) + 1
        for failure in failures:
            logger.warning(f"Discrepancy in {failure.check} on n={len(parents)}, f={f}")
            if len(report.discrepancies) < MINIMIZE_LIMIT:
                failure = self.minimize(failure)
            report.discrepancies.append(failure)

    def run_random(self, report: VerifyReport, instances: int, n_max: int, f_max: int, seed: int) -> None:
        gen = TreeGenerator(seed)
        for _ in range(instances):
            parents, marks, f = gen.instance(n_max, f_max)
            self._record(report, parents, marks, f)

    def run_exhaustive(self, report: VerifyReport, n_max: int, f_max: int) -> None:
        """Every tree on up to n_max vertices, every non-empty marked set, every f <= f_max."""
        for n in range(1, n_max + 1):
            for parents in all_parent_arrays(n):
                for bits in range(1, 1 << n):
                    marks = [v for v in range(n) if bits >> v & 1]
                    for f in range(1, f_max + 1):
                        self._record(report, parents, marks, f)

    def run_worst_case(self, report: VerifyReport, f_max: int = WORST_CASE_F_MAX) -> None:
        """Full binary tree of height f-1, all leaves marked: M* is the whole depth f-1 level."""
        for f in range(1, f_max + 1):
            parents, marks = worst_case_instance(f)
            tree = build_tree(parents)
            index = AncestryIndex(tree)
            result = self._flca(index, QueryScratch.for_index(index), QuerySet.build(marks, f))
            preorder = np.argsort(tree.tour.first_occurrence).tolist()
            expected = tuple(v for v in preorder if tree.depth[v] == f - 1)
            report.instances += 1
            report.checks["worst_case"] = report.checks.get("worst_case", 0) + 1
            if result.representatives != expected or len(expected) != 1 << (f - 1):
                report.discrepancies.append(
                    Discrepancy(
                        check="worst_case",
                        parents=parents,
                        marks=marks,
                        f=f,
                        detail=f"M*={result.representatives}, expected the {len(expected)} depth-{f - 1} vertices",
                    )
                )

    def run(
        self,
        instances: int | None = None,
        n_max: int | None = None,
        f_max: int | None = None,
        seed: int | None = None,
        exhaustive_n: int | None = None,
    ) -> VerifyReport:
        s = self.settings
        instances = s.verify_instances if instances is None else instances
        n_max = n_max or s.verify_n_max
        f_max = f_max or s.verify_f_max
        seed = s.verify_seed if seed is None else seed
        exhaustive_n = s.verify_exhaustive_n if exhaustive_n is None else exhaustive_n

        report = VerifyReport()
        logger.info(
            f"Verifying: {instances} random instances (n<={n_max}, f<={f_max}, seed={seed}), "
            f"exhaustive n<={exhaustive_n}, edge_faults={self.edge_faults}"
        )
        self.run_worst_case(report)
        self.run_exhaustive(report, min(exhaustive_n, n_max), f_max)
        self.run_random(report, instances, n_max, f_max, seed)
        logger.info(
            f"Verification finished: {report.instances} instances, {report.total_checks} checks, "
            f"{len(report.discrepancies)} discrepancies"
        )
        return report

    def _still_fails(self, check: str, parents: ParentList, marks: list[VertexId], f: int) -> bool:
        failures, _ = self.check_instance(parents, marks, f)
        return any(d.check == check for d in failures)

    def minimize(self, failure: Discrepancy) -> Discrepancy:
        """Greedily delete leaves and marks while the same check keeps failing."""
        parents, marks, f = list(failure.parents), list(failure.marks), failure.f
        changed = True
        while changed:
            changed = False
            for v in _leaves(parents):
                smaller, kept = _remove_leaf(parents, marks, v)
                if kept and self._still_fails(failure.check, smaller, kept, f):
                    parents, marks, changed = smaller, kept, True
                    break
            if changed:
                continue
            for m in marks:
                if len(marks) > 1:
                    kept = [x for x in marks if x != m]
                    if self._still_fails(failure.check, parents, kept, f):
                        marks, changed = kept, True
                        break
        if len(parents) == len(failure.parents) and len(marks) == len(failure.marks):
            return failure
        failures, _ = self.check_instance(parents, marks, f)
        return next(d for d in failures if d.check == failure.check)


def _leaves(parents: ParentList) -> list[VertexId]:
    has_child = {p for p in parents if p is not None}
    return [v for v, p in enumerate(parents) if p is not None and v not in has_child]


def _remove_leaf(
    parents: ParentList, marks: list[VertexId], leaf: VertexId
) -> tuple[ParentList, list[VertexId]]:
    def shift(v: VertexId) -> VertexId:
        return v - 1 if v > leaf else v

    smaller = [None if p is None else shift(p) for v, p in enumerate(parents) if v != leaf]
    kept = [shift(m) for m in marks if m != leaf]
    return smaller, kept


def _corrupted(tree: RootedTree, result: FlcaResult) -> FlcaResult:
    """Negative control: perturb M* so verification must fail."""
    reps = list(result.representatives)
    if len(reps) > 1:
        reps.pop()
    else:
        p = tree.parent_of(reps[0])
        if p is not None:
            reps = [p]
        elif tree.n > 1:
            reps = [tree.children[tree.root][0]]
    return result.model_copy(update={"representatives": tuple(reps)})
