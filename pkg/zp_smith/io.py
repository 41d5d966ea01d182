"""
ZP-Smith File Formats

Complex files, matrix files and Smith report files.

Features:
- Complex files: JSON with fields p, vertices, action and facets
- Matrix files: one row per line, space-separated decimal integers
- Smith report files: JSON with per-dimension class data and run metadata
"""

import json
import logging
from pathlib import Path

from zp_smith.complex import ZpComplex, build_complex, make_zp_complex
from zp_smith.linalg import IntMatrix

logger = logging.getLogger("zp_smith")


class FileFormatError(ValueError):
    """A file could not be parsed into the expected structure."""


# ---------------------------------------------------------------------------
# Complex files
# ---------------------------------------------------------------------------


def parse_complex(data, validate=True):
    """
    Build a complex from a decoded complex file.

    Args:
        data: Dict with `vertices` and `facets`, plus `p` and `action` for a
            Z_p-complex
        validate: Check the ZpComplex invariants (off for `zp-smith validate`,
            which reports violations itself)

    Returns:
        ZpComplex, or SimplicialComplex when p and action are omitted

    Raises:
        FileFormatError: On missing or mistyped fields
        ValueError: If the complex violates a ZpComplex invariant

    Examples:
        >>> parse_complex({"vertices": ["a", "b"], "facets": [["a", "b"]]}).count(1)
        1
    """
    if not isinstance(data, dict):
        raise FileFormatError("Complex file must hold a JSON object")
    vertices = data.get("vertices")
    facets = data.get("facets")
    if not isinstance(vertices, list) or not isinstance(facets, list):
        raise FileFormatError("Complex file needs 'vertices' and 'facets' lists")
    names = [str(v) for v in vertices]
    position = {name: i for i, name in enumerate(names)}
    if len(position) != len(names):
        raise FileFormatError("Vertex names must be distinct")
    indexed = []
    for facet in facets:
        if not isinstance(facet, list):
            raise FileFormatError(f"Facet {facet!r} is not a list")
        try:
            indexed.append([position[str(v)] for v in facet])
        except KeyError as exc:
            raise FileFormatError(f"Facet {facet!r} uses unknown vertex {exc.args[0]!r}")

    p, action = data.get("p"), data.get("action")
    if p is None and action is None:
        return build_complex(indexed, vertex_count=len(names), names=names)
    if not isinstance(p, int) or not isinstance(action, list):
        raise FileFormatError("Z_p-complex files need an integer 'p' and an 'action' list")
    if not all(isinstance(v, int) for v in action):
        raise FileFormatError("'action' must list vertex positions")
    if validate:
        return make_zp_complex(indexed, p, action, names=names)
    complex_ = build_complex(indexed, vertex_count=len(names), names=names)
    return ZpComplex(complex=complex_, p=p, action=tuple(action))


def dump_complex(K):
    """Complex file dict for a ZpComplex or SimplicialComplex."""
    complex_ = K.complex if isinstance(K, ZpComplex) else K
    names = [complex_.vertex_name(v) for v in range(complex_.vertex_count)]
    data = {}
    if isinstance(K, ZpComplex):
        data["p"] = K.p
    data["vertices"] = names
    if isinstance(K, ZpComplex):
        data["action"] = list(K.action)
    data["facets"] = [[names[v] for v in facet] for facet in complex_.facets]
    return data


def _read_text(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise FileFormatError(f"{path}: not UTF-8 text (byte {exc.start})")


def read_complex(path, validate=True):
    """
    Read a complex file.

    Raises:
        OSError: If the file cannot be read
        FileFormatError: If it is not UTF-8 JSON or lacks required fields
    """
    text = _read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})")
    return parse_complex(data, validate=validate)


def write_complex(K, path=None):
    """Write a complex file; returns the JSON text (also written when path is given)."""
    text = json.dumps(dump_complex(K), indent=2, ensure_ascii=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.debug("complex_written", extra={"path": str(path)})
    return text


# ---------------------------------------------------------------------------
# Matrix files
# ---------------------------------------------------------------------------


def parse_matrix(text):
    """
    Parse a matrix: one row per line, space-separated integers.

    Raises:
        FileFormatError: On non-integer entries or ragged rows

    Examples:
        >>> parse_matrix("1 2\\n3 4\\n").to_dense()
        [[1, 2], [3, 4]]
    """
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append([int(token) for token in line.split()])
        except ValueError:
            raise FileFormatError(f"Line {number}: entries must be decimal integers")
    if rows and any(len(row) != len(rows[0]) for row in rows):
        raise FileFormatError("All matrix rows must have the same length")
    return IntMatrix.from_rows(rows)


def format_matrix(matrix):
    return "".join(" ".join(str(v) for v in row) + "\n" for row in matrix.to_dense())


def read_matrix(path):
    return parse_matrix(_read_text(path))


# ---------------------------------------------------------------------------
# Smith report files
# ---------------------------------------------------------------------------


def class_entry(report, X=None):
    """Report-file entry for one SmithClassReport."""
    entry = {
        "j": report.dimension,
        "parity": report.parity,
        "trivial_over_Z": report.trivial_over_z,
        "minimal_modulus_exponent": report.minimal_modulus_exponent,
        "certificate": None,
    }
    if report.certificate is not None:
        entry["certificate"] = report.certificate.to_dict(X)
    return entry


def smith_report(computation, max_dim=None, exponent=1, metadata=None):
    """
    Smith report file dict for a SmithComputation.

    Args:
        computation: SmithComputation
        max_dim: Last class dimension reported (default: the Smith index)
        exponent: m for the reported index modulo p^m
        metadata: Extra run data (timing, peak memory)

    Returns:
        Dict with classes, index, index_mod_p, moduli and metadata
    """
    index = computation.index()
    if max_dim is None:
        max_dim = index
    X = computation.X
    classes = [class_entry(r, X) for r in computation.reports(max_dim=max_dim)]
    moduli = computation.moduli()
    return {
        "p": computation.p,
        "classes": classes,
        "index": index,
        "index_mod_p": computation.index_mod(1),
        "index_mod": {"exponent": exponent, "index": computation.index_mod(exponent)},
        "moduli": list(moduli.values),
        "metadata": dict(metadata or {}),
    }


def write_report(report, path=None):
    text = json.dumps(report, indent=2, default=str) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
