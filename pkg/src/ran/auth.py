"""Password hashing and bearer-token sessions.

Passwords are stored as salted scrypt digests (self-describing, parameters in
the stored string). Session tokens are 256-bit random values; only a SHA-256
of the token is persisted, and expiry slides forward on each successful use.
"""

from __future__ import annotations

import base64
import hashlib
import hmac
import secrets
import time
from typing import Callable

from . import errors
from .catalog import Catalog
from .model import User

MIN_PASSWORD_LEN = 10
DEFAULT_TTL_SECONDS = 24 * 60 * 60

_SCRYPT_N = 2 ** 14
_SCRYPT_R = 8
_SCRYPT_P = 1

# fixed-cost comparison target for login attempts against unknown emails
_DUMMY_DIGEST_SOURCE = "dummy-password-equalizer"


def _b64(raw: bytes) -> str:
    return base64.urlsafe_b64encode(raw).decode("ascii").rstrip("=")


def _unb64(text: str) -> bytes:
    pad = "=" * (-len(text) % 4)
    return base64.urlsafe_b64decode(text + pad)


def hash_password(password: str) -> str:
    if len(password) < MIN_PASSWORD_LEN:
        raise errors.WeakPassword(
            f"password must be at least {MIN_PASSWORD_LEN} characters")
    salt = secrets.token_bytes(16)
    digest = hashlib.scrypt(password.encode("utf-8"), salt=salt,
                            n=_SCRYPT_N, r=_SCRYPT_R, p=_SCRYPT_P)
    return f"scrypt${_SCRYPT_N}${_SCRYPT_R}${_SCRYPT_P}${_b64(salt)}${_b64(digest)}"


def verify_password(password: str, stored: str) -> bool:
    try:
        scheme, n, r, p, salt, digest = stored.split("$")
        if scheme != "scrypt":
            return False
        expected = _unb64(digest)
        actual = hashlib.scrypt(password.encode("utf-8"), salt=_unb64(salt),
                                n=int(n), r=int(r), p=int(p),
                                dklen=len(expected))
    except (ValueError, TypeError):
        return False
    return hmac.compare_digest(actual, expected)


_DUMMY_DIGEST = None


def _dummy_digest() -> str:
    global _DUMMY_DIGEST
    if _DUMMY_DIGEST is None:
        _DUMMY_DIGEST = hash_password(_DUMMY_DIGEST_SOURCE)
    return _DUMMY_DIGEST


def _token_hash(token: str) -> str:
    return hashlib.sha256(token.encode("ascii")).hexdigest()


class Sessions:
    """Token issue/validate/revoke over the catalog's session table."""

    def __init__(self, catalog: Catalog, ttl_seconds: float = DEFAULT_TTL_SECONDS,
                 time_fn: Callable[[], float] = time.time):
        self.catalog = catalog
        self.ttl = float(ttl_seconds)
        self._time = time_fn

    def issue(self, user_id: str) -> str:
        token = secrets.token_urlsafe(32)
        with self.catalog.write() as conn:
            conn.execute("INSERT INTO sessions VALUES (?,?,?)",
                         (_token_hash(token), user_id, self._time() + self.ttl))
        return token

    def authenticate(self, token: str) -> str:
        """Resolve a bearer token to a user id, sliding the expiry forward."""
        if not token:
            raise errors.InvalidCredentials("missing bearer token")
        digest = _token_hash(token)
        now = self._time()
        with self.catalog.write() as conn:
            row = conn.execute(
                "SELECT user, expires_at FROM sessions WHERE token_hash=?",
                (digest,)).fetchone()
            if row is None:
                raise errors.InvalidCredentials("unknown or revoked token")
            user_id, expires_at = row
            expired = expires_at < now
            if expired:
                # raise only after the delete commits, or rollback undoes it
                conn.execute("DELETE FROM sessions WHERE token_hash=?", (digest,))
            else:
                conn.execute("UPDATE sessions SET expires_at=? WHERE token_hash=?",
                             (now + self.ttl, digest))
        if expired:
            raise errors.ExpiredToken("session expired")
        return user_id

    def revoke(self, token: str) -> None:
        with self.catalog.write() as conn:
            conn.execute("DELETE FROM sessions WHERE token_hash=?",
                         (_token_hash(token),))


def register(catalog: Catalog, email: str, display_name: str, password: str) -> User:
    return catalog.create_user(email, display_name, hash_password(password))


def login(catalog: Catalog, sessions: Sessions, email: str, password: str
          ) -> tuple[User, str]:
    """Constant-cost credential check: unknown emails still hash once."""
    user = catalog.user_by_email(email)
    if user is None:
        verify_password(password, _dummy_digest())
        raise errors.InvalidCredentials("invalid email or password")
    if not verify_password(password, user.password_digest):
        raise errors.InvalidCredentials("invalid email or password")
    return user, sessions.issue(user.id)
