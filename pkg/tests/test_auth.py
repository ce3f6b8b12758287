from __future__ import annotations

import base64
import hashlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ran import auth, errors

GOOD_PASSWORD = "horse-staple-42"


def unb64(text: str) -> bytes:
    return base64.urlsafe_b64decode(text + "=" * (-len(text) % 4))


class FakeTime:
    def __init__(self, start: float = 1_000_000.0):
        self.now = start

    def __call__(self) -> float:
        return self.now

    def advance(self, seconds: float) -> None:
        self.now += seconds


class TestPasswordHashing:
    def test_digest_format_and_params(self):
        stored = auth.hash_password(GOOD_PASSWORD)
        scheme, n, r, p, salt, digest = stored.split("$")
        assert scheme == "scrypt"
        assert (int(n), int(r), int(p)) == (16384, 8, 1)
        assert len(unb64(salt)) == 16
        assert len(unb64(digest)) == 64

    def test_same_password_salts_differently(self):
        a = auth.hash_password(GOOD_PASSWORD)
        b = auth.hash_password(GOOD_PASSWORD)
        assert a != b
        assert auth.verify_password(GOOD_PASSWORD, a)
        assert auth.verify_password(GOOD_PASSWORD, b)

    def test_wrong_password_rejected(self):
        stored = auth.hash_password(GOOD_PASSWORD)
        assert not auth.verify_password("horse-staple-43", stored)
        assert not auth.verify_password("", stored)

    def test_digest_matches_stdlib_scrypt(self):
        stored = auth.hash_password(GOOD_PASSWORD)
        _, n, r, p, salt, digest = stored.split("$")
        recomputed = hashlib.scrypt(
            GOOD_PASSWORD.encode(), salt=unb64(salt),
            n=int(n), r=int(r), p=int(p))
        assert unb64(digest) == recomputed

    @pytest.mark.parametrize("short", ["", "a", "nine-char", "123456789"])
    def test_short_passwords_refused(self, short):
        assert len(short) < auth.MIN_PASSWORD_LEN
        with pytest.raises(errors.WeakPassword):
            auth.hash_password(short)

    def test_boundary_length_accepted(self):
        assert auth.verify_password("x" * 10, auth.hash_password("x" * 10))

    def test_garbage_stored_value_never_verifies(self):
        for stored in ("", "scrypt$bad", "plaintext", "scrypt$a$b$c$d$e"):
            assert not auth.verify_password(GOOD_PASSWORD, stored)

    @settings(max_examples=20, deadline=None)
    @given(st.text(min_size=10, max_size=40))
    def test_round_trip_property(self, password):
        assert auth.verify_password(password, auth.hash_password(password))


class TestRegisterAndLogin:
    def test_register_then_login(self, catalog):
        sessions = auth.Sessions(catalog)
        user = auth.register(catalog, "Ada@X.dev", "Ada", GOOD_PASSWORD)
        assert user.email == "ada@x.dev"  # stored lowercased
        found, token = auth.login(catalog, sessions, "ada@x.dev",
                                  GOOD_PASSWORD)
        assert found.id == user.id
        assert sessions.authenticate(token) == user.id

    def test_duplicate_email_conflicts(self, catalog):
        auth.register(catalog, "dup@x.dev", "One", GOOD_PASSWORD)
        with pytest.raises(errors.EmailTaken):
            auth.register(catalog, "DUP@x.dev", "Two", GOOD_PASSWORD)

    def test_unknown_email_and_bad_password_same_error(self, catalog):
        sessions = auth.Sessions(catalog)
        auth.register(catalog, "real@x.dev", "Real", GOOD_PASSWORD)
        with pytest.raises(errors.InvalidCredentials) as missing:
            auth.login(catalog, sessions, "ghost@x.dev", GOOD_PASSWORD)
        with pytest.raises(errors.InvalidCredentials) as wrong:
            auth.login(catalog, sessions, "real@x.dev", "bad-password-1")
        assert str(missing.value) == str(wrong.value)


class TestSessions:
    def test_tokens_stored_hashed(self, catalog, make_user):
        user = make_user("hash@x.dev")
        sessions = auth.Sessions(catalog)
        token = sessions.issue(user.id)
        with catalog.read() as conn:
            stored = [t for (t,) in conn.execute(
                "SELECT token_hash FROM sessions")]
        assert token not in stored
        assert hashlib.sha256(token.encode()).hexdigest() in stored

    def test_expiry_is_enforced(self, catalog, make_user):
        user = make_user("exp@x.dev")
        clock = FakeTime()
        sessions = auth.Sessions(catalog, ttl_seconds=100, time_fn=clock)
        token = sessions.issue(user.id)
        clock.advance(99)
        assert sessions.authenticate(token) == user.id
        clock.advance(101)
        with pytest.raises(errors.ExpiredToken):
            sessions.authenticate(token)
        # expired rows are dropped; a second try reads as unknown
        with pytest.raises(errors.InvalidCredentials):
            sessions.authenticate(token)

    def test_activity_slides_the_expiry(self, catalog, make_user):
        user = make_user("slide@x.dev")
        clock = FakeTime()
        sessions = auth.Sessions(catalog, ttl_seconds=100, time_fn=clock)
        token = sessions.issue(user.id)
        for _ in range(5):
            clock.advance(90)  # would expire without the slide
            assert sessions.authenticate(token) == user.id

    def test_revoked_token_unusable(self, catalog, make_user):
        user = make_user("rev@x.dev")
        sessions = auth.Sessions(catalog)
        token = sessions.issue(user.id)
        sessions.revoke(token)
        with pytest.raises(errors.InvalidCredentials):
            sessions.authenticate(token)

    def test_missing_and_unknown_tokens_rejected(self, catalog):
        sessions = auth.Sessions(catalog)
        with pytest.raises(errors.InvalidCredentials):
            sessions.authenticate("")
        with pytest.raises(errors.InvalidCredentials):
            sessions.authenticate("fabricated-token")

    def test_tokens_are_unique_and_long(self, catalog, make_user):
        user = make_user("uniq@x.dev")
        sessions = auth.Sessions(catalog)
        tokens = {sessions.issue(user.id) for _ in range(20)}
        assert len(tokens) == 20
        assert all(len(t) >= 40 for t in tokens)
