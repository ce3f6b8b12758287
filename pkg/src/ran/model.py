"""Pure domain types, identifier formats, validation, and shared rules.

No I/O here: everything is a value type or a pure function, safe to use
from any number of concurrent executors.
"""

from __future__ import annotations

import re
import unicodedata
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import NamedTuple

from . import errors

TAG_MAX_LEN = 64
TAGS_MAX = 32
PROJECT_NAME_MAX = 120
FOLDER_NAME_MAX = 120
DISPLAY_NAME_MAX = 200
USER_NAME_MAX = 80
DESCRIPTION_MAX = 10_000

_TAG_RE = re.compile(r"^[a-z0-9._-]+$")
_HEX64_RE = re.compile(r"^[0-9a-f]{64}$")
_WS_RUN_RE = re.compile(r"\s+")
# Pragmatic address check; the full grammar buys nothing for a registry login.
_EMAIL_RE = re.compile(r"^[a-z0-9._%+-]+@[a-z0-9.-]+\.[a-z]{2,}$")


def new_id() -> str:
    """Fresh 128-bit random identifier as canonical lowercase UUID text."""
    return str(uuid.uuid4())


def is_valid_id(text: str) -> bool:
    try:
        return str(uuid.UUID(text)) == text
    except (ValueError, AttributeError, TypeError):
        return False


def is_asset_id(text: str) -> bool:
    return bool(isinstance(text, str) and _HEX64_RE.match(text))


def format_timestamp(dt: datetime) -> str:
    """RFC 3339 UTC with millisecond precision, e.g. 2026-08-19T09:30:00.123Z."""
    dt = dt.astimezone(timezone.utc)
    return dt.strftime("%Y-%m-%dT%H:%M:%S.") + f"{dt.microsecond // 1000:03d}Z"


def parse_timestamp(text: str) -> datetime:
    return datetime.strptime(text, "%Y-%m-%dT%H:%M:%S.%fZ").replace(tzinfo=timezone.utc)


def utc_now_text() -> str:
    return format_timestamp(datetime.now(timezone.utc))


# --- validation -------------------------------------------------------------

def normalize_tag(raw: str) -> str:
    """Normalize a raw tag to its canonical form.

    NFC-normalized, lowercased, whitespace runs collapsed to "-"; the result
    must be 1-64 chars drawn from [a-z0-9._-]. Idempotent on accepted values.
    """
    if raw is None:
        raise errors.EmptyTag("tag is empty")
    text = unicodedata.normalize("NFC", str(raw)).strip()
    if not text:
        raise errors.EmptyTag("tag is empty")
    text = _WS_RUN_RE.sub("-", text.lower())
    if not _TAG_RE.match(text):
        bad = next(ch for ch in text if not _TAG_RE.match(ch))
        raise errors.InvalidCharacter(f"tag contains invalid character {bad!r}")
    if len(text) > TAG_MAX_LEN:
        raise errors.TooLong(f"tag exceeds {TAG_MAX_LEN} characters")
    return text


def normalize_tags(raw_tags) -> set[str]:
    tags = {normalize_tag(t) for t in raw_tags}
    if len(tags) > TAGS_MAX:
        raise errors.Validation(f"at most {TAGS_MAX} tags allowed")
    return tags


def _validate_name(name: str, max_len: int, what: str) -> str:
    if name is None:
        raise errors.Empty(f"{what} is empty")
    text = str(name).strip()
    if not text:
        raise errors.Empty(f"{what} is empty")
    if len(text) > max_len:
        raise errors.TooLong(f"{what} exceeds {max_len} characters")
    if any(ord(ch) < 32 or ord(ch) == 127 for ch in text):
        raise errors.InvalidCharacter(f"{what} contains control characters")
    return text


def validate_project_name(name: str) -> str:
    return _validate_name(name, PROJECT_NAME_MAX, "project name")


def validate_folder_name(name: str) -> str:
    text = _validate_name(name, FOLDER_NAME_MAX, "folder name")
    if "/" in text:
        raise errors.InvalidCharacter("folder name contains '/'")
    return text


def validate_display_name(name: str) -> str:
    text = _validate_name(name, DISPLAY_NAME_MAX, "display name")
    if "/" in text:
        raise errors.InvalidCharacter("display name contains '/'")
    return text


def validate_user_name(name: str) -> str:
    return _validate_name(name, USER_NAME_MAX, "display name")


def validate_description(text: str) -> str:
    if text is None:
        return ""
    text = str(text)
    if len(text) > DESCRIPTION_MAX:
        raise errors.TooLong(f"description exceeds {DESCRIPTION_MAX} characters")
    return text


def validate_email(raw: str) -> str:
    email = (raw or "").strip().lower()
    if not _EMAIL_RE.match(email):
        raise errors.Validation("invalid email address")
    return email


# --- folders ----------------------------------------------------------------

class FolderKind(str, Enum):
    TRAIN_DATA = "TrainData"
    TEST_DATA = "TestData"
    MODEL = "Model"
    CODE = "Code"
    SUB = "Sub"


def canonical_roots() -> list[tuple[FolderKind, str]]:
    """The four fixed root folders of every project, in display order."""
    return [
        (FolderKind.TRAIN_DATA, "TrainData"),
        (FolderKind.TEST_DATA, "TestData"),
        (FolderKind.MODEL, "Model"),
        (FolderKind.CODE, "Code"),
    ]


class Visibility(str, Enum):
    PUBLIC = "Public"
    PRIVATE = "Private"


# --- ratings ----------------------------------------------------------------

class Score(NamedTuple):
    net: int
    ups: int
    downs: int


def score(ups: int, downs: int) -> Score:
    return Score(net=ups - downs, ups=ups, downs=downs)


# --- fragment selectors -----------------------------------------------------

@dataclass(frozen=True)
class Whole:
    def to_wire(self) -> dict:
        return {"type": "whole"}


@dataclass(frozen=True)
class ByteRange:
    offset: int
    length: int

    def __post_init__(self):
        if self.offset < 0 or self.length < 1:
            raise errors.SelectorInvalid("byte range needs offset >= 0 and len >= 1")

    def to_wire(self) -> dict:
        return {"type": "byte_range", "offset": self.offset, "len": self.length}


@dataclass(frozen=True)
class Members:
    paths: tuple[str, ...]

    def __post_init__(self):
        if not self.paths:
            raise errors.SelectorInvalid("members selector needs at least one path")
        normalized = tuple(sorted(set(self.paths)))
        object.__setattr__(self, "paths", normalized)

    def to_wire(self) -> dict:
        return {"type": "members", "paths": list(self.paths)}


Selector = Whole | ByteRange | Members


def selector_from_wire(data) -> Selector:
    """Parse the JSON wire form of a fragment selector."""
    if data is None:
        return Whole()
    if not isinstance(data, dict) or "type" not in data:
        raise errors.SelectorInvalid("selector must be an object with a 'type'")
    kind = data["type"]
    if kind == "whole":
        return Whole()
    if kind == "byte_range":
        try:
            return ByteRange(offset=int(data["offset"]), length=int(data["len"]))
        except (KeyError, ValueError, TypeError):
            raise errors.SelectorInvalid("byte_range selector needs integer offset and len")
    if kind == "members":
        paths = data.get("paths")
        if not isinstance(paths, list) or not all(isinstance(p, str) for p in paths):
            raise errors.SelectorInvalid("members selector needs a list of paths")
        return Members(paths=tuple(paths))
    raise errors.SelectorInvalid(f"unknown selector type {kind!r}")


# --- records ----------------------------------------------------------------

@dataclass
class User:
    id: str
    email: str
    display_name: str
    password_digest: str
    created_at: str

    def public_view(self) -> dict:
        # password_digest must never reach a client.
        return {
            "id": self.id,
            "email": self.email,
            "display_name": self.display_name,
            "created_at": self.created_at,
        }


@dataclass
class Project:
    id: str
    owner: str
    name: str
    description: str
    tags: set[str]
    visibility: Visibility
    version: int
    copied_from: CopiedFrom | None
    created_at: str
    updated_at: str


@dataclass(frozen=True)
class CopiedFrom:
    project_id: str
    source_version: int
    source_name: str


@dataclass
class Folder:
    id: str
    project: str
    parent: str | None
    kind: FolderKind
    name: str


@dataclass
class Artifact:
    id: str
    folder: str
    asset: str
    selector: Selector
    display_name: str
    added_by: str
    added_at: str


@dataclass
class AssetMeta:
    id: str
    size_bytes: int
    media_type: str
    original_filename: str
    uploader: str
    tags: set[str]
    created_at: str
    refcount: int


class ReuseScope(str, Enum):
    FULL = "Full"
    PARTIAL = "Partial"


@dataclass
class ReuseRecord:
    id: str
    user: str
    source_project: str
    target_project: str
    scope: ReuseScope
    summary: str
    at: str


@dataclass
class Rating:
    user: str
    project: str
    value: int  # +1 or -1
    updated_at: str


TRACKING_ACTIONS = frozenset({
    "project.created",
    "project.updated",
    "folder.created",
    "folder.renamed",
    "folder.deleted",
    "artifact.added",
    "artifact.removed",
    "project.copied-by",
    "rating.set",
    "rating.cleared",
})


@dataclass
class TrackingEvent:
    seq: int
    project: str
    actor: str
    action: str
    target: str
    at: str


@dataclass
class Selection:
    folders: set[str] = field(default_factory=set)
    artifacts: set[str] = field(default_factory=set)

    def is_empty(self) -> bool:
        return not self.folders and not self.artifacts
