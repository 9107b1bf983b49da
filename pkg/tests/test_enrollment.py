import io

import numpy as np
import pytest

from campussim.enrollment import (
    FULL_SCALE_CLASSES,
    FULL_SCALE_STUDENTS,
    EnrollmentFormatError,
    generate_synthetic_campus,
    load_enrollment,
    meeting_schedule,
    write_enrollment,
)

VALID = """\
kind,id,ref,level,capacity,meetings_per_week,duration_hours
# people
student,S0001,MATH,1
student,S0002,MATH,2
student,S0003,CHEM,1
class,C0001,MATH,1,30,2,1.0
class,C0002,CHEM,1,25,3,1.5
instructor,I0001,C0001
instructor,I0002,C0002
enrollment,S0001,C0001
enrollment,S0001,C0002
enrollment,S0002,C0001
enrollment,S0002,C0002
enrollment,S0003,C0001
enrollment,S0003,C0002
"""


class TestMeetingSchedule:
    def test_deterministic(self):
        assert meeting_schedule("C0001", 2, 1.0) == meeting_schedule(
            "C0001", 2, 1.0
        )

    def test_meeting_count_and_duration(self):
        meetings = meeting_schedule("C0042", 3, 1.5)
        assert len(meetings) == 3
        assert all(dur == 1.5 for _, dur in meetings)
        assert all(0 <= wd <= 6 for wd, _ in meetings)

    def test_meetings_are_spread_out(self):
        meetings = meeting_schedule("C0001", 2, 1.0)
        days = [wd for wd, _ in meetings]
        assert len(set(days)) == 2

    def test_different_ids_get_different_offsets(self):
        days = {meeting_schedule(f"C{k:05d}", 1, 1.0)[0][0]
                for k in range(50)}
        assert len(days) == 7


class TestLoadEnrollment:
    def test_valid_file(self):
        net = load_enrollment(io.StringIO(VALID))
        assert net.meta["counts"] == {
            "students": 3, "instructors": 2, "classes": 2, "enrollments": 6,
        }
        assert net.warnings == []
        assert net.degree_of("S0001") == 2
        assert net.degree_of("I0001") == 1

    def test_comments_and_blank_lines_ignored(self):
        text = "\n# leading comment\n\n" + VALID
        net = load_enrollment(io.StringIO(text))
        assert len(net.students()) == 3

    def test_missing_header(self):
        with pytest.raises(EnrollmentFormatError) as exc:
            load_enrollment(io.StringIO("student,S1,MATH,1\n"))
        assert "header" in str(exc.value)

    def test_unknown_kind_reports_line(self):
        text = VALID + "widget,W1,X\n"
        with pytest.raises(EnrollmentFormatError) as exc:
            load_enrollment(io.StringIO(text))
        assert exc.value.line == 16

    def test_duplicate_student(self):
        text = VALID + "student,S0001,MATH,1\n"
        with pytest.raises(EnrollmentFormatError, match="duplicate student"):
            load_enrollment(io.StringIO(text))

    def test_duplicate_enrollment(self):
        text = VALID + "enrollment,S0001,C0001\n"
        with pytest.raises(EnrollmentFormatError, match="duplicate enrollment"):
            load_enrollment(io.StringIO(text))

    def test_unknown_reference(self):
        text = VALID + "enrollment,S9999,C0001\n"
        with pytest.raises(EnrollmentFormatError, match="unknown"):
            load_enrollment(io.StringIO(text))

    def test_bad_numeric_field_reports_line(self):
        text = VALID.replace("class,C0001,MATH,1,30,2,1.0",
                             "class,C0001,MATH,1,lots,2,1.0")
        with pytest.raises(EnrollmentFormatError) as exc:
            load_enrollment(io.StringIO(text))
        assert exc.value.line == 6

    def test_degree_deviation_is_a_warning_not_an_error(self):
        # S0003 drops to one class: legal input, flagged for review
        text = VALID.replace("enrollment,S0003,C0002\n", "")
        net = load_enrollment(io.StringIO(text))
        assert any("S0003" in w for w in net.warnings)

    def test_over_capacity_is_a_warning(self):
        text = VALID.replace("class,C0001,MATH,1,30,2,1.0",
                             "class,C0001,MATH,1,2,2,1.0")
        net = load_enrollment(io.StringIO(text))
        assert any("capacity" in w for w in net.warnings)

    def test_instructor_department_inherited_from_class(self):
        net = load_enrollment(io.StringIO(VALID))
        instructors = {p.id: p for p in net.instructors()}
        assert instructors["I0001"].department == "MATH"
        assert instructors["I0002"].department == "CHEM"


class TestRoundTrip:
    def test_write_then_load_preserves_network(self, tmp_path):
        net = generate_synthetic_campus(scale=0.005, seed=4)
        path = tmp_path / "campus.csv"
        write_enrollment(net, path)
        loaded = load_enrollment(path)
        assert loaded.canonical_edge_list() == net.canonical_edge_list()
        assert len(loaded.classes) == len(net.classes)
        schedules = {c.id: c.meetings for c in net.classes}
        for c in loaded.classes:
            assert c.meetings == schedules[c.id]

    def test_out_path_argument_writes_file(self, tmp_path):
        path = tmp_path / "campus.csv"
        generate_synthetic_campus(scale=0.005, seed=4, out_path=path)
        assert load_enrollment(path).validate() == []


class TestSyntheticCampus:
    def test_shape_tracks_scale(self):
        net = generate_synthetic_campus(scale=0.01, seed=3)
        assert len(net.students()) == round(FULL_SCALE_STUDENTS * 0.01)
        assert len(net.classes) == round(FULL_SCALE_CLASSES * 0.01)
        assert len(net.instructors()) == len(net.classes)

    def test_structure_is_valid(self):
        net = generate_synthetic_campus(scale=0.01, seed=3)
        assert net.validate() == []

    def test_deterministic_given_seed(self):
        a = generate_synthetic_campus(scale=0.005, seed=4)
        b = generate_synthetic_campus(scale=0.005, seed=4)
        assert a.canonical_edge_list() == b.canonical_edge_list()

    def test_seeds_differ(self):
        a = generate_synthetic_campus(scale=0.005, seed=4)
        b = generate_synthetic_campus(scale=0.005, seed=5)
        assert a.canonical_edge_list() != b.canonical_edge_list()

    def test_class_sizes_are_right_skewed(self):
        net = generate_synthetic_campus(scale=0.043, seed=1)
        sizes = np.array([
            sum(1 for pid in members if pid.startswith("S"))
            for members in net.class_members().values()
        ])
        assert np.mean(sizes) < np.max(sizes) / 4  # a few large hubs
        assert np.median(sizes) < np.mean(sizes)

    def test_invalid_scale(self):
        with pytest.raises(ValueError):
            generate_synthetic_campus(scale=0.0, seed=0)
        with pytest.raises(ValueError):
            generate_synthetic_campus(scale=1.5, seed=0)
