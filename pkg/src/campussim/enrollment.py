"""Enrollment file I/O and the synthetic campus generator.

File format: UTF-8 delimited text, one record per row, `#` comments, and a
required header row. Record kinds (trailing empty fields may be omitted):

    kind,id,ref,level,capacity,meetings_per_week,duration_hours
    student,S0001,DEPT03,2
    class,C0001,DEPT03,2,35,2,1.0
    instructor,I0001,C0001
    enrollment,S0001,C0001

Class meeting weekdays are not stored; they are derived deterministically
from the class id, so a file always loads to the same network and schedule.
"""

from __future__ import annotations

import csv
import io
import zlib
from pathlib import Path

import numpy as np

from .network import (
    INSTRUCTOR,
    STUDENT,
    STUDENT_MAX_DEGREE,
    STUDENT_MIN_DEGREE,
    BipartiteNetwork,
    CapacityExhausted,
    ClassSection,
    Person,
    generate_campus,
)

HEADER = ["kind", "id", "ref", "level", "capacity",
          "meetings_per_week", "duration_hours"]

# full-scale campus shape
FULL_SCALE_STUDENTS = 46782
FULL_SCALE_CLASSES = 5570


class EnrollmentFormatError(Exception):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(
            f"line {line}: {message}" if line is not None else message
        )


def meeting_schedule(
    class_id: str, meetings_per_week: int, duration_hours: float
) -> tuple[tuple[int, float], ...]:
    """Stable weekday assignment: evenly spaced, offset by a hash of the id."""
    base = zlib.crc32(class_id.encode()) % 7
    return tuple(
        ((base + (7 * k) // meetings_per_week) % 7, duration_hours)
        for k in range(meetings_per_week)
    )


def load_enrollment(source: str | Path | io.TextIOBase) -> BipartiteNetwork:
    """Parse an enrollment file into a deterministic network.

    Structural deviations in real data (student degree outside
    [2, 5], enrollment above capacity) are collected as warnings on the
    returned network, not rejected. Malformed rows and duplicate
    enrollments raise EnrollmentFormatError with the line number.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            return load_enrollment(fh)

    students: dict[str, Person] = {}
    instructors: dict[str, Person] = {}
    classes: dict[str, ClassSection] = {}
    instructor_class: dict[str, str] = {}
    enrollments: set[tuple[str, str]] = set()
    header_seen = False

    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        row = next(csv.reader([line]))
        if not header_seen:
            if [c.strip() for c in row[: len(HEADER)]] != HEADER[: len(row)]:
                raise EnrollmentFormatError(
                    f"expected header {','.join(HEADER)!r}", lineno
                )
            header_seen = True
            continue
        kind = row[0].strip()
        try:
            if kind == "student":
                pid, dept, level = row[1], row[2], int(row[3])
                if pid in students:
                    raise EnrollmentFormatError(
                        f"duplicate student {pid!r}", lineno
                    )
                students[pid] = Person(
                    pid, STUDENT, dept, academic_level=level
                )
            elif kind == "class":
                cid, dept, diff = row[1], row[2], int(row[3])
                capacity = int(row[4])
                mpw = int(row[5]) if len(row) > 5 and row[5] else 2
                dur = float(row[6]) if len(row) > 6 and row[6] else 1.0
                if cid in classes:
                    raise EnrollmentFormatError(
                        f"duplicate class {cid!r}", lineno
                    )
                classes[cid] = ClassSection(
                    cid, dept, diff, capacity,
                    meetings=meeting_schedule(cid, mpw, dur),
                )
            elif kind == "instructor":
                iid, cid = row[1], row[2]
                if iid in instructor_class:
                    raise EnrollmentFormatError(
                        f"duplicate instructor row for {iid!r}", lineno
                    )
                instructor_class[iid] = cid
                instructors[iid] = Person(iid, INSTRUCTOR)
            elif kind == "enrollment":
                sid, cid = row[1], row[2]
                if (sid, cid) in enrollments:
                    raise EnrollmentFormatError(
                        f"duplicate enrollment row ({sid!r}, {cid!r})", lineno
                    )
                enrollments.add((sid, cid))
            else:
                raise EnrollmentFormatError(f"unknown record kind {kind!r}",
                                            lineno)
        except EnrollmentFormatError:
            raise
        except (IndexError, ValueError) as exc:
            raise EnrollmentFormatError(str(exc), lineno) from exc

    warnings: list[str] = []
    edges: set[tuple[str, str]] = set()
    for sid, cid in enrollments:
        if sid not in students:
            raise EnrollmentFormatError(f"enrollment references unknown "
                                        f"student {sid!r}")
        if cid not in classes:
            raise EnrollmentFormatError(f"enrollment references unknown "
                                        f"class {cid!r}")
        edges.add((sid, cid))
    for iid, cid in instructor_class.items():
        if cid not in classes:
            raise EnrollmentFormatError(f"instructor {iid!r} references "
                                        f"unknown class {cid!r}")
        instructors[iid].department = classes[cid].department
        edges.add((iid, cid))

    degree: dict[str, int] = {}
    enrolled: dict[str, int] = {c: 0 for c in classes}
    for sid, cid in enrollments:
        degree[sid] = degree.get(sid, 0) + 1
        enrolled[cid] += 1
    for sid in students:
        d = degree.get(sid, 0)
        if not STUDENT_MIN_DEGREE <= d <= STUDENT_MAX_DEGREE:
            warnings.append(f"student {sid} enrolled in {d} classes")
    for cid, cls in classes.items():
        if enrolled[cid] > cls.capacity:
            warnings.append(
                f"class {cid} enrollment {enrolled[cid]} exceeds capacity "
                f"{cls.capacity}"
            )

    net = BipartiteNetwork(
        list(students.values()) + list(instructors.values()),
        list(classes.values()),
        edges,
    )
    net.warnings = warnings
    net.meta["counts"] = {
        "students": len(students),
        "instructors": len(instructors),
        "classes": len(classes),
        "enrollments": len(enrollments),
    }
    return net


def write_enrollment(net: BipartiteNetwork, path: str | Path) -> None:
    """Write a network back to the enrollment file format."""
    class_of_instructor: dict[str, str] = {}
    roles = {p.id: p.role for p in net.people}
    student_edges = []
    for pid, cid in sorted(net.edges):
        if roles[pid] == INSTRUCTOR:
            class_of_instructor[pid] = cid
        else:
            student_edges.append((pid, cid))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(HEADER)
        for p in sorted(net.people, key=lambda p: p.id):
            if p.role == STUDENT:
                writer.writerow(
                    ["student", p.id, p.department, p.academic_level or 1]
                )
        for c in sorted(net.classes, key=lambda c: c.id):
            mpw = len(c.meetings)
            dur = c.meetings[0][1] if c.meetings else 1.0
            writer.writerow(
                ["class", c.id, c.department, c.difficulty_level,
                 c.capacity, mpw, dur]
            )
        for p in sorted(net.people, key=lambda p: p.id):
            if p.role == INSTRUCTOR:
                writer.writerow(["instructor", p.id, class_of_instructor[p.id]])
        for sid, cid in sorted(student_edges):
            writer.writerow(["enrollment", sid, cid])


def generate_synthetic_campus(
    scale: float,
    seed: int,
    departments: int = 20,
    levels: int = 4,
    p1: float = 0.7,
    p2: float = 0.2,
    p3: float = 0.1,
    meetings_per_week: int = 2,
    duration_hours: float = 1.0,
    capacity_sigma: float = 1.3,
    capacity_slack: float = 1.18,
    out_path: str | Path | None = None,
) -> BipartiteNetwork:
    """Random campus whose aggregate shape matches the full-scale one.

    Student:class ratio of about 8.4:1, one instructor per class, and a
    right-skewed (discrete log-normal) class-size distribution with a few
    large hubs. With out_path set, also writes the enrollment file.
    """
    if not 0 < scale <= 1:
        raise ValueError("scale must be in (0, 1]")
    rng = np.random.default_rng(seed)
    n_students = round(FULL_SCALE_STUDENTS * scale)
    n_classes = round(FULL_SCALE_CLASSES * scale)
    dept_names = [f"DEPT{k:02d}" for k in range(departments)]

    students = [
        Person(
            f"S{i:06d}",
            STUDENT,
            dept_names[int(rng.integers(departments))],
            academic_level=int(rng.integers(1, levels + 1)),
        )
        for i in range(n_students)
    ]

    raw = rng.lognormal(mean=0.0, sigma=capacity_sigma, size=n_classes)
    target_seats = int(np.ceil(n_students * 3.5 * capacity_slack))
    capacities = np.maximum(
        5, np.round(raw / raw.sum() * target_seats)
    ).astype(int)
    classes = [
        ClassSection(
            f"C{j:05d}",
            dept_names[int(rng.integers(departments))],
            difficulty_level=int(rng.integers(1, levels + 1)),
            capacity=int(capacities[j]),
            meetings=meeting_schedule(
                f"C{j:05d}", meetings_per_week, duration_hours
            ),
        )
        for j in range(n_classes)
    ]
    instructors = [Person(f"I{j:05d}", INSTRUCTOR) for j in range(n_classes)]
    for instr, cls in zip(instructors, classes):
        instr.department = cls.department

    net = generate_campus(students, instructors, classes, p1, p2, p3, rng)
    if out_path is not None:
        write_enrollment(net, out_path)
    return net
