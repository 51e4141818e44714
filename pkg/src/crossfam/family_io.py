# crossfam/family_io.py

import hashlib  # digest ổn định cho họ tập không có generator
import json  # parse và dump JSON
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from .config import MAX_GROUND_SIZE, get_logger
from .errors import (
    DuplicateSetError,
    ElementRangeError,
    GroundSetTooLargeError,
    MalformedFamilyError,
    ParameterError,
)
from .family_core import SetFamily, bits_of

logger = get_logger(__name__)


class FamilyDocument(BaseModel):
    """On-disk family format: ground size, sorted element lists, optional labels and metadata."""

    ground_size: int = Field(ge=0)
    sets: List[List[int]]
    labels: Optional[List[str]] = None
    metadata: Optional[Dict[str, Any]] = None


def family_from_document(doc: FamilyDocument) -> SetFamily:
    if doc.ground_size > MAX_GROUND_SIZE:
        raise GroundSetTooLargeError(
            f"ground size {doc.ground_size} exceeds the supported width {MAX_GROUND_SIZE}"
        )
    bits = []
    seen = set()
    for members in doc.sets:
        if len(set(members)) != len(members):
            raise MalformedFamilyError(f"set {members} repeats an element")
        for x in members:
            if x < 0 or x >= doc.ground_size:
                raise ElementRangeError(f"element {x} outside ground set [0, {doc.ground_size})")
        b = bits_of(members)
        if b in seen:
            raise DuplicateSetError(f"duplicate set {sorted(members)}")
        seen.add(b)
        bits.append(b)
    metadata = dict(doc.metadata or {})
    if doc.labels is not None:
        if len(doc.labels) != doc.ground_size:
            raise MalformedFamilyError("labels must name every ground element")
        metadata["labels"] = list(doc.labels)
    return SetFamily.from_bits(doc.ground_size, bits, metadata)


def parse_family_json(text: str) -> SetFamily:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedFamilyError(f"invalid JSON: {e}") from e
    try:
        doc = FamilyDocument.model_validate(raw)
    except ValidationError as e:
        raise MalformedFamilyError(f"invalid family document: {e.errors()[0]['msg']}") from e
    return family_from_document(doc)


def parse_family_file(path: Union[str, Path]) -> SetFamily:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise MalformedFamilyError(f"cannot read {path}: {e}") from e
    family = parse_family_json(text)
    logger.debug(f"Loaded {len(family)} sets over ground {family.ground_size} from {path}")
    return family


def family_to_document(f: SetFamily) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"ground_size": f.ground_size, "sets": f.as_lists()}
    metadata = {k: v for k, v in f.metadata.items() if k != "labels"}
    if f.labels is not None:
        doc["labels"] = list(f.labels)
    if metadata:
        doc["metadata"] = metadata
    return doc


def dump_family(f: SetFamily) -> str:
    return json.dumps(family_to_document(f), ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def write_family_file(f: SetFamily, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_family(f), encoding="utf-8")
    logger.info(f"Đã ghi họ {len(f)} tập vào {path}")
    return path


def family_digest(f: SetFamily) -> str:
    payload = json.dumps({"ground_size": f.ground_size, "sets": f.as_lists()}, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]


def describe_family(f: SetFamily) -> str:
    """Generator name and parameters when known, otherwise a content digest."""
    name = f.metadata.get("generator")
    if name:
        params = f.metadata.get("params", {})
        inner = ",".join(f"{k}={params[k]}" for k in params)
        return f"{name}({inner})"
    return f"family#{family_digest(f)}"


def parse_permutations_json(text: str, ground_size: int) -> list:
    """A JSON list whose entries are image arrays or objects {"cycles": [[...], ...]}."""
    from .symmetry import GroundPermutation

    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedFamilyError(f"invalid JSON: {e}") from e
    if not isinstance(raw, list):
        raise MalformedFamilyError("permutation file must hold a JSON list")
    perms = []
    for entry in raw:
        if isinstance(entry, dict) and "cycles" in entry:
            perms.append(GroundPermutation.from_cycles(ground_size, entry["cycles"]))
        elif isinstance(entry, list):
            perms.append(GroundPermutation(tuple(entry)))
        else:
            raise MalformedFamilyError(f"unrecognised permutation entry {entry!r}")
    for p in perms:
        if p.size != ground_size:
            raise ParameterError(f"permutation of size {p.size} on a ground set of size {ground_size}")
    return perms
