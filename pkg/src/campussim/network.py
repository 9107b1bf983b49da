"""Person-class bipartite contact network and per-day attendance events."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

STUDENT = "student"
INSTRUCTOR = "instructor"

IN_PERSON = "in_person"
ONLINE = "online"

STUDENT_MIN_DEGREE = 2
STUDENT_MAX_DEGREE = 5


class NetworkError(Exception):
    pass


class InfeasibleDegreeSequence(NetworkError):
    pass


class NonSimplifiableInstance(NetworkError):
    pass


class CapacityExhausted(NetworkError):
    pass


@dataclass
class Person:
    id: str
    role: str = STUDENT
    department: str = ""
    academic_level: int | None = None  # students only
    mask_type: str = "none"
    wears_mask: bool = False


@dataclass
class ClassSection:
    id: str
    department: str = ""
    difficulty_level: int = 1
    capacity: int = 1
    # weekly meetings as (weekday 0..6, duration hours)
    meetings: tuple[tuple[int, float], ...] = ((0, 1.0), (3, 1.0))
    modality: str = IN_PERSON


@dataclass
class BipartiteNetwork:
    """People <-> class edge set; the contact substrate of the simulation."""

    people: list[Person]
    classes: list[ClassSection]
    edges: set[tuple[str, str]]  # (person id, class id), unique pairs
    meta: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def students(self) -> list[Person]:
        return [p for p in self.people if p.role == STUDENT]

    def instructors(self) -> list[Person]:
        return [p for p in self.people if p.role == INSTRUCTOR]

    def degree_of(self, person_id: str) -> int:
        return sum(1 for (p, _) in self.edges if p == person_id)

    def class_members(self) -> dict[str, list[str]]:
        members: dict[str, list[str]] = {c.id: [] for c in self.classes}
        for pid, cid in sorted(self.edges):
            members[cid].append(pid)
        return members

    def person_classes(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {p.id: [] for p in self.people}
        for pid, cid in sorted(self.edges):
            out[pid].append(cid)
        return out

    def with_modality_cap(self, cap: float) -> "BipartiteNetwork":
        return apply_modality_cap(self, cap)

    def canonical_edge_list(self) -> str:
        """Edge list sorted by person id then class id, for golden-file tests."""
        lines = [f"{pid}\t{cid}" for pid, cid in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    def validate(self) -> list[str]:
        """Return human-readable invariant violations (empty when clean)."""
        problems = []
        roles = {p.id: p.role for p in self.people}
        class_by_id = {c.id: c for c in self.classes}
        deg: dict[str, int] = {p.id: 0 for p in self.people}
        student_count: dict[str, int] = {c.id: 0 for c in self.classes}
        instr_count: dict[str, int] = {c.id: 0 for c in self.classes}
        for pid, cid in self.edges:
            deg[pid] += 1
            if roles[pid] == STUDENT:
                student_count[cid] += 1
            else:
                instr_count[cid] += 1
        for p in self.people:
            if p.role == STUDENT and not (
                STUDENT_MIN_DEGREE <= deg[p.id] <= STUDENT_MAX_DEGREE
            ):
                problems.append(f"student {p.id} has degree {deg[p.id]}")
            if p.role == INSTRUCTOR and deg[p.id] != 1:
                problems.append(f"instructor {p.id} has degree {deg[p.id]}")
        for c in self.classes:
            if student_count[c.id] > class_by_id[c.id].capacity:
                problems.append(
                    f"class {c.id} enrollment {student_count[c.id]} exceeds "
                    f"capacity {class_by_id[c.id].capacity}"
                )
            if instr_count[c.id] != 1:
                problems.append(
                    f"class {c.id} has {instr_count[c.id]} instructors"
                )
        return problems


def balance_degree_sequences(
    d: Sequence[int],
    w: Sequence[int],
    rng: np.random.Generator,
    w_floor: Sequence[int] | None = None,
    w_cap: Sequence[int] | None = None,
) -> tuple[list[int], list[int]]:
    """Adjust the location-side sequence until both sides sum equal.

    The people side is never altered; surplus/deficit is absorbed by
    uniformly chosen location entries, one unit at a time, which is the
    minimal total edit. Raises InfeasibleDegreeSequence when no valid
    adjustment exists.
    """
    d = list(int(x) for x in d)
    w = list(int(x) for x in w)
    if any(x < 0 for x in d) or any(x < 0 for x in w):
        raise InfeasibleDegreeSequence("negative degree entry")
    if not d or not w or sum(d) == 0 or sum(w) == 0:
        raise InfeasibleDegreeSequence("each side needs a positive entry")
    floor = list(w_floor) if w_floor is not None else [0] * len(w)
    cap = list(w_cap) if w_cap is not None else None
    target = sum(d)
    if cap is not None and sum(cap) < target:
        raise InfeasibleDegreeSequence(
            f"location capacity total {sum(cap)} < people demand {target}"
        )
    while sum(w) != target:
        if sum(w) < target:
            eligible = [
                j for j in range(len(w)) if cap is None or w[j] < cap[j]
            ]
        else:
            eligible = [j for j in range(len(w)) if w[j] > floor[j]]
        if not eligible:
            raise InfeasibleDegreeSequence("no adjustable location entry left")
        j = eligible[int(rng.integers(len(eligible)))]
        w[j] += 1 if sum(w) < target else -1
    return d, w


def generate_configuration(
    people: Sequence[Person],
    classes: Sequence[ClassSection],
    d: Sequence[int],
    w: Sequence[int],
    rng: np.random.Generator,
    max_rejects: int = 100,
    max_restarts: int = 10,
) -> BipartiteNetwork:
    """Uniform half-edge matching with prescribed degrees, simple-graph variant.

    Duplicate pairings are rejected and redrawn; after `max_rejects`
    consecutive rejections the whole matching restarts with a fresh
    sub-seed, and after `max_restarts` restarts the instance is declared
    non-simplifiable.
    """
    if len(d) != len(people) or len(w) != len(classes):
        raise NetworkError("degree sequence length mismatch")
    if sum(d) != sum(w):
        raise InfeasibleDegreeSequence("degree sequences not balanced")

    for restart in range(max_restarts):
        sub = rng if restart == 0 else np.random.default_rng(
            rng.integers(2**63)
        )
        p_stubs = [i for i, k in enumerate(d) for _ in range(k)]
        l_stubs = [j for j, k in enumerate(w) for _ in range(k)]
        edges: set[tuple[int, int]] = set()
        rejects = 0
        failed = False
        while p_stubs:
            a = int(sub.integers(len(p_stubs)))
            b = int(sub.integers(len(l_stubs)))
            pair = (p_stubs[a], l_stubs[b])
            if pair in edges:
                rejects += 1
                if rejects > max_rejects:
                    failed = True
                    break
                continue
            edges.add(pair)
            rejects = 0
            p_stubs[a] = p_stubs[-1]
            p_stubs.pop()
            l_stubs[b] = l_stubs[-1]
            l_stubs.pop()
        if not failed:
            id_edges = {(people[i].id, classes[j].id) for i, j in edges}
            return BipartiteNetwork(list(people), list(classes), id_edges)
    raise NonSimplifiableInstance(
        f"no simple matching found after {max_restarts} restarts"
    )


def generate_campus(
    students: Sequence[Person],
    instructors: Sequence[Person],
    classes: Sequence[ClassSection],
    p1: float,
    p2: float,
    p3: float,
    rng: np.random.Generator,
    degree_choices: Sequence[int] = (2, 3, 4, 5),
) -> BipartiteNetwork:
    """Build the student/instructor-class network with department-aware picks.

    Each student draws a course load uniformly from `degree_choices`, then
    fills it one pick at a time: with probability p1 an own-department class
    at their academic level, with p2 an own-department class at another
    level, with p3 a class in another department -- always respecting
    remaining capacity and never enrolling twice in one class. When the
    drawn category has no open seat the pick widens to the next categories.
    """
    if abs(p1 + p2 + p3 - 1.0) > 1e-9:
        raise NetworkError("p1+p2+p3 must equal 1")
    if not (p1 >= p2 >= p3 >= 0):
        raise NetworkError("require p1 >= p2 >= p3 >= 0")
    if len(instructors) != len(classes):
        raise NetworkError("need exactly one instructor per class")

    n_classes = len(classes)
    remaining = np.array([c.capacity for c in classes], dtype=np.int64)
    by_dept_level: dict[tuple[str, int], list[int]] = {}
    by_dept: dict[str, list[int]] = {}
    for j, c in enumerate(classes):
        by_dept_level.setdefault((c.department, c.difficulty_level), []).append(j)
        by_dept.setdefault(c.department, []).append(j)
    all_classes = list(range(n_classes))

    degrees = rng.choice(np.asarray(degree_choices), size=len(students))
    if degrees.sum() > remaining.sum():
        raise CapacityExhausted(
            f"student demand {int(degrees.sum())} exceeds total class "
            f"capacity {int(remaining.sum())}"
        )

    def draw_from(pool, chosen, pred=None):
        # cheap random probes with lazy removal of full classes, then an
        # exact scan as a fallback
        for _ in range(12):
            if not pool:
                return None
            k = int(rng.integers(len(pool)))
            j = pool[k]
            if remaining[j] == 0:
                pool[k] = pool[-1]
                pool.pop()
                continue
            if j in chosen or (pred is not None and not pred(j)):
                continue
            return j
        eligible = [
            j
            for j in pool
            if remaining[j] > 0 and j not in chosen
            and (pred is None or pred(j))
        ]
        if not eligible:
            return None
        return eligible[int(rng.integers(len(eligible)))]

    edges: set[tuple[str, str]] = set()
    category_counts = [0, 0, 0]
    cat_draws = rng.choice(3, size=int(degrees.sum()), p=np.array([p1, p2, p3]))
    pick_no = 0
    for s, student in enumerate(students):
        chosen: set[int] = set()
        level = student.academic_level or 1
        own_level = by_dept_level.get((student.department, level), [])
        own_dept = by_dept.get(student.department, [])
        dept = student.department
        for _ in range(int(degrees[s])):
            cat = int(cat_draws[pick_no])
            pick_no += 1
            picked = None
            for trial_cat in (cat, *(c for c in (0, 1, 2) if c != cat)):
                if trial_cat == 0:
                    picked = draw_from(own_level, chosen)
                elif trial_cat == 1:
                    picked = draw_from(
                        own_dept,
                        chosen,
                        pred=lambda j: classes[j].difficulty_level != level,
                    )
                else:
                    picked = draw_from(
                        all_classes,
                        chosen,
                        pred=lambda j: classes[j].department != dept,
                    )
                if picked is not None:
                    realized = trial_cat
                    break
            if picked is None:
                raise CapacityExhausted(
                    f"no open seat left for student {student.id}"
                )
            chosen.add(picked)
            remaining[picked] -= 1
            category_counts[realized] += 1
            edges.add((student.id, classes[picked].id))

    for instr, cls in zip(instructors, classes):
        edges.add((instr.id, cls.id))

    net = BipartiteNetwork(
        list(students) + list(instructors), list(classes), edges
    )
    net.meta["category_counts"] = tuple(category_counts)
    return net


def apply_modality_cap(net: BipartiteNetwork, cap: float) -> BipartiteNetwork:
    """Move every class with enrolled-student count strictly above `cap` online.

    Topology is untouched; only event generation is suppressed downstream.
    """
    roles = {p.id: p.role for p in net.people}
    counts: dict[str, int] = {c.id: 0 for c in net.classes}
    for pid, cid in net.edges:
        if roles[pid] == STUDENT:
            counts[cid] += 1
    new_classes = [
        replace(c, modality=ONLINE) if counts[c.id] > cap else replace(c)
        for c in net.classes
    ]
    return BipartiteNetwork(
        list(net.people), new_classes, set(net.edges), dict(net.meta)
    )


class NetworkIndex:
    """Integer-indexed, array-backed view of a BipartiteNetwork.

    Built once per scenario; immutable and shared read-only across
    replications.
    """

    def __init__(self, net: BipartiteNetwork):
        self.net = net
        self.person_ids = [p.id for p in net.people]
        self.person_pos = {pid: i for i, pid in enumerate(self.person_ids)}
        self.class_ids = [c.id for c in net.classes]
        self.class_pos = {cid: j for j, cid in enumerate(self.class_ids)}
        self.n_people = len(net.people)
        self.n_classes = len(net.classes)
        self.is_student = np.array(
            [p.role == STUDENT for p in net.people], dtype=bool
        )
        self.in_person = np.array(
            [c.modality == IN_PERSON for c in net.classes], dtype=bool
        )

        instr_of = np.full(self.n_classes, -1, dtype=np.int64)
        stu_p, stu_c = [], []
        for pid, cid in sorted(net.edges):
            i, j = self.person_pos[pid], self.class_pos[cid]
            if self.is_student[i]:
                stu_p.append(i)
                stu_c.append(j)
            else:
                instr_of[j] = i
        self.instructor_of = instr_of
        edge_c = np.array(stu_c, dtype=np.int64)
        edge_p = np.array(stu_p, dtype=np.int64)
        order = np.argsort(edge_c, kind="stable")
        self.edge_class = edge_c[order]
        self.edge_person = edge_p[order]
        self.class_edge_ptr = np.searchsorted(
            self.edge_class, np.arange(self.n_classes + 1)
        )

        # per weekday: meetings (class idx, duration) for in-person classes
        self.weekday_meetings: list[tuple[np.ndarray, np.ndarray]] = []
        for wd in range(7):
            cls, dur = [], []
            for j, c in enumerate(net.classes):
                if not self.in_person[j]:
                    continue
                for day, hours in c.meetings:
                    if day == wd:
                        cls.append(j)
                        dur.append(hours)
            self.weekday_meetings.append(
                (np.array(cls, dtype=np.int64), np.array(dur, dtype=float))
            )

    def class_student_rows(self, j: int) -> np.ndarray:
        lo, hi = self.class_edge_ptr[j], self.class_edge_ptr[j + 1]
        return self.edge_person[lo:hi]


@dataclass
class DaySessions:
    """Realized class sessions of one day, CSR-packed.

    session k covers attendees att_person[att_ptr[k]:att_ptr[k+1]]; the
    instructor, when present, is the first attendee.
    """

    day: int
    session_class: np.ndarray  # class index per session
    duration: np.ndarray  # hours per session
    att_person: np.ndarray  # flat person indices
    att_ptr: np.ndarray  # session offsets, len = n_sessions + 1

    @property
    def n_sessions(self) -> int:
        return len(self.session_class)


class EventSequence:
    """Per-day subgraphs of attended class sessions over the horizon."""

    def __init__(self, index: NetworkIndex, days: list[DaySessions]):
        self.index = index
        self.days = days
        self.horizon = len(days)

    def visits(self, day: int) -> list[tuple[str, list[str]]]:
        d = self.days[day]
        out = []
        for k in range(d.n_sessions):
            att = d.att_person[d.att_ptr[k]: d.att_ptr[k + 1]]
            out.append(
                (
                    self.index.class_ids[int(d.session_class[k])],
                    [self.index.person_ids[int(i)] for i in att],
                )
            )
        return out


def sample_event_sequence(
    net: BipartiteNetwork | NetworkIndex,
    attendance_p: float,
    horizon: int,
    rng: np.random.Generator,
) -> EventSequence:
    """Sample who shows up to each scheduled in-person session.

    Students attend each of their scheduled meetings independently with
    probability `attendance_p`; instructors always attend; online classes
    generate no events.
    """
    if not 0.0 <= attendance_p <= 1.0:
        raise ValueError("attendance_p must be in [0, 1]")
    index = net if isinstance(net, NetworkIndex) else NetworkIndex(net)

    # precompute, per weekday, the flat student-edge rows of each meeting
    wd_layout = []
    for wd in range(7):
        cls, dur = index.weekday_meetings[wd]
        rows = [index.class_student_rows(int(j)) for j in cls]
        sizes = np.array([len(r) for r in rows], dtype=np.int64)
        flat = (
            np.concatenate(rows)
            if rows
            else np.empty(0, dtype=np.int64)
        )
        ptr = np.concatenate([[0], np.cumsum(sizes)])
        wd_layout.append((cls, dur, flat, ptr))

    days: list[DaySessions] = []
    for day in range(horizon):
        cls, dur, flat, ptr = wd_layout[day % 7]
        n_meet = len(cls)
        if n_meet == 0:
            days.append(
                DaySessions(
                    day,
                    np.empty(0, dtype=np.int64),
                    np.empty(0, dtype=float),
                    np.empty(0, dtype=np.int64),
                    np.zeros(1, dtype=np.int64),
                )
            )
            continue
        present = (
            rng.random(len(flat)) < attendance_p
            if attendance_p < 1.0
            else np.ones(len(flat), dtype=bool)
        )
        cs = np.concatenate([[0], np.cumsum(present)])
        per_meeting = cs[ptr[1:]] - cs[ptr[:-1]]  # safe for empty segments
        counts = per_meeting.astype(np.int64) + 1  # instructor slot
        att_ptr = np.concatenate([[0], np.cumsum(counts)])
        att = np.empty(int(att_ptr[-1]), dtype=np.int64)
        att[att_ptr[:-1]] = index.instructor_of[cls]
        fill = np.ones(len(att), dtype=bool)
        fill[att_ptr[:-1]] = False
        att[fill] = flat[present]
        days.append(DaySessions(day, cls.copy(), dur.copy(), att, att_ptr))
    return EventSequence(index, days)
