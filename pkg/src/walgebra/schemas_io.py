"""File-loading helpers shared by the CLI."""

from __future__ import annotations

import json
from pathlib import Path

from pydantic import ValidationError

from .errors import MapFormatError
from .service.schemas import MapFileModel, VerifyMapRequest


def load_map_request(path: Path, check: str) -> VerifyMapRequest:
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise MapFormatError(f"{path}: invalid JSON: {e}") from None
    try:
        return VerifyMapRequest(check=check, map=MapFileModel.model_validate(obj))
    except ValidationError as e:
        first = e.errors()[0]
        raise MapFormatError(f"{path}: {first['msg']} at {list(first['loc'])}") from None
