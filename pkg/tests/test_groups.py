import pytest

from fgwalk.core.errors import GraphFormatError, PreconditionError
from fgwalk.features.walkstats.groups import (
    FiniteGroup,
    GroupLabeling,
    abelian_tv_bound,
    check_hypotheses,
    cyclic_group,
    emit_group,
    group_rate,
    group_walk_distribution,
    load_group,
    parse_group,
    symmetric_group,
)
from fgwalk.features.walkstats.modp import modp_rate, modp_walk_distribution

Z3_LABELS = (0, 1, 2, 0)
# identity, 102, 120, 021
S3_LABELS = (0, 2, 3, 1)


@pytest.fixture
def z3_labeling():
    return GroupLabeling(cyclic_group(3), Z3_LABELS)


@pytest.fixture
def s3_labeling():
    return GroupLabeling(symmetric_group(3), S3_LABELS)


def test_symmetric_group_ordering():
    S3 = symmetric_group(3)
    assert S3.names == ("012", "021", "102", "120", "201", "210")
    assert not S3.is_abelian()
    assert S3.commutator_subgroup() == {0, 3, 4}
    # (102)(021) applies 021 first
    assert S3.name(S3.mul(2, 1)) == "120"


def test_cyclic_group_inverse():
    Z5 = cyclic_group(5)
    assert Z5.is_abelian()
    assert Z5.inverse(2) == 3


@pytest.mark.parametrize(
    "table",
    [
        ((0, 1), (1, 1)),
        ((1, 0), (0, 1)),
        ((0, 1, 2), (1, 0, 2), (2, 1, 0)),
    ],
)
def test_invalid_tables_rejected(table):
    with pytest.raises(PreconditionError):
        FiniteGroup(len(table), table)


def test_abelian_counts_match_residues(k4, z3_labeling):
    for N in (5, 9):
        dist = group_walk_distribution(k4, z3_labeling, N)
        assert dist.counts == modp_walk_distribution(k4, list(Z3_LABELS), 3, N).counts


def test_abelian_rate(k4, z3_labeling):
    assert group_rate(k4, z3_labeling) == pytest.approx(
        modp_rate(k4.float_matrix(), Z3_LABELS, 3), rel=1e-8
    )


def test_tv_within_character_bound(k4, z3_labeling):
    for N in (4, 8, 12):
        tv = group_walk_distribution(k4, z3_labeling, N).tv_distance
        bound = abelian_tv_bound(k4, z3_labeling, N)
        assert tv <= bound.tv_bound + 1e-12
        assert len(bound.rates) == 2


def test_nonabelian_walks_equidistribute(k4, s3_labeling):
    assert check_hypotheses(s3_labeling).ok
    tvs = [
        group_walk_distribution(k4, s3_labeling, N).tv_distance
        for N in (4, 10, 20, 30)
    ]
    assert tvs == sorted(tvs, reverse=True)
    assert tvs[-1] < 0.05
    dist = group_walk_distribution(k4, s3_labeling, 30)
    assert dist.total == 3**30 + 3
    assert dist.rate < 1


def test_labels_that_do_not_generate():
    report = check_hypotheses(GroupLabeling(cyclic_group(3), (0, 0, 0, 0)))
    assert not report.generates
    assert "generate" in report.witness


def test_labels_in_one_coset(k4):
    labeling = GroupLabeling(cyclic_group(3), (1, 1, 1, 1))
    report = check_hypotheses(labeling)
    assert report.generates
    assert not report.coset_condition
    # sum(f) = N mod 3 on every walk: no equidistribution
    dist = group_walk_distribution(k4, labeling, 6)
    assert dist.counts[1] == dist.counts[2] == 0
    assert not dist.hypotheses.ok


def test_label_out_of_range():
    with pytest.raises(PreconditionError):
        GroupLabeling(cyclic_group(3), (0, 3))


def test_label_count_checked(k4):
    with pytest.raises(PreconditionError):
        group_walk_distribution(k4, GroupLabeling(cyclic_group(3), (0, 1)), 4)


def test_character_bound_needs_abelian_group(k4, s3_labeling):
    with pytest.raises(PreconditionError):
        abelian_tv_bound(k4, s3_labeling, 4)


# --- file format ---


def test_group_file_round_trip(tmp_path):
    S3 = symmetric_group(3)
    path = tmp_path / "s3.group"
    path.write_text(emit_group(S3, S3_LABELS), encoding="utf-8")
    group, labels = load_group(path)
    assert group.table == S3.table
    assert labels == dict(enumerate(S3_LABELS))


def test_group_file_comments_and_labels():
    text = (
        "# Z/2\ngroup 2\nmul 0 0 0\nmul 0 1 1\nmul 1 0 1\n"
        "mul 1 1 0  # wraps\nvlabel 3 1\n"
    )
    group, labels = parse_group(text)
    assert group.order == 2
    assert labels == {3: 1}


@pytest.mark.parametrize(
    "text, line_no",
    [
        ("order 2\n", 1),
        ("group 2\nmul 0 0 2\n", 2),
        ("group 2\nmul 0 0 0\nmul 0 0 1\n", 3),
        ("group 2\nvlabel -1 0\n", 2),
        ("group 2\nmul 0 0\n", 2),
    ],
)
def test_group_file_errors(text, line_no):
    with pytest.raises(GraphFormatError) as info:
        parse_group(text)
    assert info.value.line_no == line_no


def test_incomplete_table():
    with pytest.raises(GraphFormatError, match="incomplete"):
        parse_group("group 2\nmul 0 0 0\n")


def test_labeling_from_dict():
    Z3 = cyclic_group(3)
    assert GroupLabeling.from_dict(Z3, {0: 1, 1: 2}, 2).labels == (1, 2)
    with pytest.raises(PreconditionError):
        GroupLabeling.from_dict(Z3, {0: 1}, 2)
