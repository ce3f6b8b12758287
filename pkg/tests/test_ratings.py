from __future__ import annotations

import random

import pytest

from ran import errors, ratings
from ran.model import Score, Selection

from helpers import event_log, folder_ids, roots_of


@pytest.fixture()
def rated_world(catalog, make_user):
    """Owner with a public project; one full copier; one partial importer;
    one bystander."""
    owner = make_user("owner@x.dev", "Owner")
    copier = make_user("copier@x.dev", "Copier")
    importer = make_user("importer@x.dev", "Importer")
    bystander = make_user("bystander@x.dev", "Bystander")
    project = catalog.create_project(owner.id, "rated", tags=["apple"])
    roots = roots_of(catalog, project.id)
    meta, _ = catalog.register_asset(owner.id, b"payload", "a.bin",
                                     "application/octet-stream", [])
    from ran.model import Whole
    catalog.artifact_add(owner.id, roots["TrainData"], meta.id, Whole(),
                         "a.bin")
    catalog.project_copy(copier.id, project.id, "copier-copy")
    target = catalog.create_project(importer.id, "importer-target")
    arts, _ = catalog.folder_list(importer.id, roots["TrainData"])
    catalog.selection_import(importer.id, project.id,
                             Selection(artifacts={arts[0].id}), target.id,
                             roots_of(catalog, target.id)["TrainData"])
    return owner, copier, importer, bystander, project


class TestWireValues:
    @pytest.mark.parametrize("raw,value", [
        ("up", 1), ("down", -1), (1, 1), (-1, -1), ("+1", 1), ("-1", -1),
    ])
    def test_accepted_forms(self, raw, value):
        assert ratings.parse_value(raw) == value

    @pytest.mark.parametrize("raw", ["sideways", 0, 2, "", None, 1.5])
    def test_rejected_forms(self, raw):
        with pytest.raises(errors.Validation):
            ratings.parse_value(raw)


class TestEligibility:
    def test_full_copier_is_eligible(self, catalog, rated_world):
        _, copier, *_ , project = rated_world
        assert ratings.is_eligible(catalog, copier.id, project.id)

    def test_partial_importer_is_not(self, catalog, rated_world):
        _, _, importer, _, project = rated_world
        assert not ratings.is_eligible(catalog, importer.id, project.id)

    def test_bystander_is_not(self, catalog, rated_world):
        *_, bystander, project = rated_world
        assert not ratings.is_eligible(catalog, bystander.id, project.id)

    def test_owner_is_never_eligible(self, catalog, rated_world):
        owner, *_ , project = rated_world
        assert not ratings.is_eligible(catalog, owner.id, project.id)

    def test_rate_without_eligibility_refused(self, catalog, rated_world):
        owner, _, importer, bystander, project = rated_world
        for user in (owner, importer, bystander):
            with pytest.raises(errors.NotEligible):
                ratings.rate(catalog, user.id, project.id, 1)

    def test_eligibility_survives_copy_deletion(self, catalog, rated_world):
        _, copier, *_ , project = rated_world
        copy = next(p for p in catalog.list_projects(copier.id))
        catalog.delete_project(copier.id, copy.id)
        assert ratings.is_eligible(catalog, copier.id, project.id)
        assert ratings.rate(catalog, copier.id, project.id, 1) == \
            Score(ups=1, downs=0, net=1)


class TestRateTransitions:
    def test_first_vote(self, catalog, rated_world):
        _, copier, *_ , project = rated_world
        assert ratings.rate(catalog, copier.id, project.id, 1) == \
            Score(ups=1, downs=0, net=1)

    def test_flip_swings_net_by_two(self, catalog, rated_world):
        _, copier, *_ , project = rated_world
        ratings.rate(catalog, copier.id, project.id, 1)
        assert ratings.rate(catalog, copier.id, project.id, -1) == \
            Score(ups=0, downs=1, net=-1)

    def test_same_value_is_idempotent_and_silent(self, catalog, rated_world):
        _, copier, *_ , project = rated_world
        ratings.rate(catalog, copier.id, project.id, 1)
        before = event_log(catalog, project.id)
        after_score = ratings.rate(catalog, copier.id, project.id, 1)
        assert after_score == Score(ups=1, downs=0, net=1)
        assert event_log(catalog, project.id) == before

    def test_unrate_clears_and_is_required_first(self, catalog, rated_world):
        _, copier, *_ , project = rated_world
        with pytest.raises(errors.NoRating):
            ratings.unrate(catalog, copier.id, project.id)
        ratings.rate(catalog, copier.id, project.id, -1)
        assert ratings.unrate(catalog, copier.id, project.id) == \
            Score(ups=0, downs=0, net=0)
        with pytest.raises(errors.NoRating):
            ratings.unrate(catalog, copier.id, project.id)

    def test_events_record_direction_words(self, catalog, rated_world):
        _, copier, *_ , project = rated_world
        ratings.rate(catalog, copier.id, project.id, 1)
        ratings.rate(catalog, copier.id, project.id, -1)
        ratings.unrate(catalog, copier.id, project.id)
        tail = [e[1:] for e in event_log(catalog, project.id)[-3:]]
        assert tail == [("rating.set", "up"), ("rating.set", "down"),
                        ("rating.cleared", "")]

    def test_rate_does_not_bump_version(self, catalog, rated_world):
        owner, copier, *_ , project = rated_world
        before = catalog.get_project(owner.id, project.id).version
        ratings.rate(catalog, copier.id, project.id, 1)
        ratings.unrate(catalog, copier.id, project.id)
        assert catalog.get_project(owner.id, project.id).version == before


class TestSummary:
    def test_summary_shape_for_each_caller(self, catalog, rated_world):
        owner, copier, importer, _, project = rated_world
        ratings.rate(catalog, copier.id, project.id, 1)
        assert ratings.summary(catalog, copier.id, project.id) == {
            "ups": 1, "downs": 0, "net": 1, "mine": "up", "eligible": True}
        assert ratings.summary(catalog, owner.id, project.id) == {
            "ups": 1, "downs": 0, "net": 1, "mine": None, "eligible": False}
        assert ratings.summary(catalog, importer.id, project.id)["mine"] \
            is None

    def test_summary_respects_visibility(self, catalog, rated_world):
        owner, copier, _, bystander, project = rated_world
        fresh = catalog.get_project(owner.id, project.id)
        catalog.update_project_meta(owner.id, project.id, fresh.version,
                                    {"visibility": "Private"})
        with pytest.raises(errors.Forbidden):
            ratings.summary(catalog, bystander.id, project.id)
        # the copier retains read access to the score through eligibility
        assert ratings.summary(catalog, copier.id, project.id)["eligible"]


class TestAggregateProperty:
    def test_random_vote_sequences_match_brute_force(self, catalog,
                                                     make_user):
        owner = make_user("agg-owner@x.dev")
        voters = [make_user(f"agg{i}@x.dev") for i in range(4)]
        project = catalog.create_project(owner.id, "agg", tags=["x"])
        for i, voter in enumerate(voters):
            catalog.project_copy(voter.id, project.id, f"agg-copy-{i}")

        rng = random.Random(11)
        truth: dict[str, int] = {}
        for _ in range(120):
            voter = rng.choice(voters)
            move = rng.choice(["up", "down", "clear"])
            if move == "clear":
                if voter.id in truth:
                    ratings.unrate(catalog, voter.id, project.id)
                    del truth[voter.id]
                else:
                    with pytest.raises(errors.NoRating):
                        ratings.unrate(catalog, voter.id, project.id)
                continue
            value = 1 if move == "up" else -1
            score = ratings.rate(catalog, voter.id, project.id, value)
            truth[voter.id] = value
            ups = sum(1 for v in truth.values() if v == 1)
            downs = sum(1 for v in truth.values() if v == -1)
            assert score == Score(ups=ups, downs=downs, net=ups - downs)
        final = ratings.aggregate(catalog, project.id)
        ups = sum(1 for v in truth.values() if v == 1)
        downs = sum(1 for v in truth.values() if v == -1)
        assert final == Score(ups=ups, downs=downs, net=ups - downs)
        assert ratings.audit_ratings(catalog) == []
