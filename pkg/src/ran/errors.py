"""Error taxonomy shared by every module.

Each error carries a stable machine ``code`` (used verbatim in API error
bodies and CLI output) and the HTTP status the API layer maps it to.
"""

from __future__ import annotations


class RegistryError(Exception):
    """Base class for all registry errors."""

    code = "Error"
    http_status = 400

    def __init__(self, message: str | None = None):
        super().__init__(message or self.__class__.__name__)

    @property
    def message(self) -> str:
        return str(self)


# --- validation -------------------------------------------------------------

class Validation(RegistryError):
    code = "Validation"


class Empty(Validation):
    code = "Empty"


class EmptyTag(Validation):
    code = "EmptyTag"


class TooLong(Validation):
    code = "TooLong"


class InvalidCharacter(Validation):
    code = "InvalidCharacter"


class EmptyQuery(Validation):
    code = "EmptyQuery"


class EmptySelection(Validation):
    code = "EmptySelection"


class WeakPassword(Validation):
    code = "WeakPassword"


class SelectorInvalid(Validation):
    code = "SelectorInvalid"


# --- auth -------------------------------------------------------------------

class InvalidCredentials(RegistryError):
    code = "InvalidCredentials"
    http_status = 401


class ExpiredToken(RegistryError):
    code = "ExpiredToken"
    http_status = 401


class Forbidden(RegistryError):
    code = "Forbidden"
    http_status = 403


class NotEligible(RegistryError):
    code = "NotEligible"
    http_status = 403


# --- lookup -----------------------------------------------------------------

class NotFound(RegistryError):
    code = "NotFound"
    http_status = 404


class AssetNotFound(NotFound):
    code = "AssetNotFound"


class NoRating(NotFound):
    code = "NoRating"


class BlobMissing(NotFound):
    code = "BlobMissing"


# --- conflicts --------------------------------------------------------------

class Conflict(RegistryError):
    http_status = 409


class NameConflict(Conflict):
    code = "NameConflict"


class EmailTaken(Conflict):
    code = "EmailTaken"


class VersionConflict(Conflict):
    code = "VersionConflict"


class CopyOwnProject(Conflict):
    code = "CopyOwnProject"


class RootImmutable(Conflict):
    code = "RootImmutable"


# --- blob store -------------------------------------------------------------

class TooLarge(RegistryError):
    code = "TooLarge"
    http_status = 413


class PackageTooLarge(RegistryError):
    code = "PackageTooLarge"
    http_status = 413


class UploadCapExceeded(RegistryError):
    code = "UploadCapExceeded"
    http_status = 429


class CorruptBlob(RegistryError):
    code = "CorruptBlob"
    http_status = 500


class StorageFailure(RegistryError):
    code = "StorageFailure"
    http_status = 500


class SelectorOutOfBounds(SelectorInvalid):
    code = "SelectorOutOfBounds"


class NotAnArchive(SelectorInvalid):
    code = "NotAnArchive"


class MemberMissing(SelectorInvalid):
    code = "MemberMissing"
