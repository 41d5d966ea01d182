"""
ZP-Smith Command Line

The `zp-smith` console script: batch Smith computations, joins, deleted
joins and products, embeddability verdicts and corpus export.

Features:
- One sub-command per library operation, JSON on stdout or to -o
- Exit codes 0 (ok), 1 (domain error), 2 (I/O or parse error),
  3 (memory cap exceeded), 4 (theorem check failed)
- A single machine-parsable JSON error line on stderr
"""

import argparse
import logging
import resource
import sys
import time
from pathlib import Path

from django.conf import settings

from zp_smith import __version__
from zp_smith.certificates import find_certificate
from zp_smith.complex import ZpComplex, to_free_chain_complex, validate_zp
from zp_smith.conf import smith_settings
from zp_smith.corpus import CORPUS, build
from zp_smith.deleted import deleted_join, deleted_product
from zp_smith.embedding import embed_verdict
from zp_smith.io import (
    FileFormatError,
    class_entry,
    read_complex,
    read_matrix,
    smith_report,
    write_complex,
    write_report,
)
from zp_smith.joins import join, join_resolution
from zp_smith.linalg import MemoryCapExceeded, snf
from zp_smith.response import SmithResponse
from zp_smith.smith import (
    ResolutionError,
    SmithComputation,
    TheoremViolation,
    build_resolution,
)

logger = logging.getLogger("zp_smith")


def _zp_complex(path):
    K = read_complex(path)
    if not isinstance(K, ZpComplex):
        raise ValueError(f"{path} describes a complex without a Z_p-action")
    return K


def _simplicial(path):
    K = read_complex(path)
    return K.complex if isinstance(K, ZpComplex) else K


def _metadata(started):
    return {
        "seconds": round(time.perf_counter() - started, 3),
        "peak_rss_kib": resource.getrusage(resource.RUSAGE_SELF).ru_maxrss,
    }


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_validate(args):
    K = read_complex(args.file, validate=False)
    if not isinstance(K, ZpComplex):
        return SmithResponse.ok(valid=True, p=None, dimension=K.dimension)
    response = validate_zp(K)
    if response.success:
        return SmithResponse.ok(valid=True, p=K.p, dimension=K.dimension)
    return response


def cmd_smith(args):
    started = time.perf_counter()
    computation = SmithComputation(to_free_chain_complex(_zp_complex(args.file)))
    report = smith_report(computation, max_dim=args.max_dim, exponent=args.mod)
    report["metadata"] = _metadata(started)
    text = write_report(report, args.output)
    if args.output is None:
        sys.stdout.write(text)
    return None


def cmd_certificate(args):
    X = to_free_chain_complex(_zp_complex(args.file))
    computation = SmithComputation(X)
    report = computation.smith_class(args.dim, certificate=False)
    certificate = find_certificate(X, report, args.mod)
    if certificate is None:
        return SmithResponse.warning_response(
            "INCONCLUSIVE",
            dimension=args.dim,
            modulus=args.mod,
            certificate=None,
            reason=f"A^{args.dim} vanishes modulo {args.mod}",
        )
    return SmithResponse.ok(certificate=certificate.to_dict(X))


def cmd_join(args):
    joined = join(_zp_complex(args.left), _zp_complex(args.right))
    text = write_complex(joined.result, args.output)
    if args.output is None:
        sys.stdout.write(text)
    return None


def cmd_deleted(args):
    M = _simplicial(args.file)
    if args.product:
        X = deleted_product(M).chain_complex
        cells = {
            str(dim): [[list(a), list(b)] for a, b in X.labels[dim]]
            for dim in range(0, X.top_dim + 1)
        }
        data = SmithResponse.ok(
            p=2, ranks=[X.rank(d) for d in range(0, X.top_dim + 1)], cells=cells
        )
        _emit(data.to_json(indent=2) + "\n", args.output)
        return None
    text = write_complex(deleted_join(M).result, args.output)
    if args.output is None:
        sys.stdout.write(text)
    return None


def _class_summary(computation, top):
    return [class_entry(computation.smith_class(j, certificate=False)) for j in range(top + 1)]


def cmd_join_smith(args):
    started = time.perf_counter()
    K, L = _zp_complex(args.left), _zp_complex(args.right)
    joined = join(K, L)
    RK = build_resolution(joined.left)
    RL = build_resolution(joined.right)
    resolution = join_resolution(RK, RL, joined)
    X = joined.chain_complex
    computation = SmithComputation(X, resolution.as_resolution(validate=False))
    top = X.top_dim if args.max_dim is None else min(args.max_dim, X.top_dim)
    classes = _class_summary(computation, top)
    data = {
        "p": X.p,
        "dimension": X.top_dim,
        "classes": classes,
        "stability": resolution.stability,
    }
    if args.direct:
        direct = _class_summary(SmithComputation(to_free_chain_complex(joined.result)), top)
        agrees = direct == classes
        data["direct"] = {"classes": direct, "agrees": agrees}
        if not agrees:
            logger.error("join_resolution_disagreement", extra={"dimension": top})
            raise TheoremViolation("Join-resolution classes differ from the direct computation")
    data["metadata"] = _metadata(started)
    return SmithResponse.ok(**data)


def cmd_embed_verdict(args):
    verdict = embed_verdict(
        _simplicial(args.left), _simplicial(args.right), cross_check=args.cross_check
    )
    return SmithResponse.ok(**verdict.to_dict())


def _parse_params(pairs):
    params = {}
    for pair in pairs or ():
        key, sep, value = pair.partition("=")
        if not sep:
            raise ValueError(f"Parameter {pair!r} must look like name=value")
        try:
            params[key] = int(value)
        except ValueError:
            raise ValueError(f"Parameter {key} must be an integer, got {value!r}")
    return params


def cmd_corpus(args):
    K = build(args.name, **_parse_params(args.param))
    text = write_complex(K, args.output)
    if args.output is None:
        sys.stdout.write(text)
    return None


def cmd_snf(args):
    decomposition = snf(read_matrix(args.file), inverses=False)
    return SmithResponse.ok(
        shape=list(decomposition.S.shape),
        rank=decomposition.rank,
        diagonal=list(decomposition.diagonal),
        invariant_factors=list(decomposition.invariant_factors),
    )


COMMANDS = {
    "validate": cmd_validate,
    "smith": cmd_smith,
    "certificate": cmd_certificate,
    "join": cmd_join,
    "deleted": cmd_deleted,
    "join-smith": cmd_join_smith,
    "embed-verdict": cmd_embed_verdict,
    "corpus": cmd_corpus,
    "snf": cmd_snf,
}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog="zp-smith",
        description="Smith classes, indices and embeddability verdicts for Z_p-complexes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--memory-cap", type=int, help="Abort SNF runs above this many bytes")
    parser.add_argument(
        "--max-modulus-exponent", type=int, help="Largest m scanned for moduli p^m"
    )
    parser.add_argument("--verbose", action="store_true", help="Log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="Check a complex file")
    p.add_argument("file", type=Path)

    p = sub.add_parser("smith", help="Smith classes, index and moduli of a Z_p-complex")
    p.add_argument("file", type=Path)
    p.add_argument("--mod", type=int, default=1, help="Also report the index modulo p^m")
    p.add_argument("--max-dim", type=int, help="Report classes up to this dimension")
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("certificate", help="Certificate that A^j is nonzero modulo n")
    p.add_argument("file", type=Path)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("join", help="Join of two Z_p-complexes")
    p.add_argument("left", type=Path)
    p.add_argument("right", type=Path)
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("deleted", help="Deleted join or deleted product of a complex")
    p.add_argument("file", type=Path)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--join", dest="product", action="store_false")
    kind.add_argument("--product", dest="product", action="store_true")
    p.set_defaults(product=False)
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("join-smith", help="Smith classes of a join via the join resolution")
    p.add_argument("left", type=Path)
    p.add_argument("right", type=Path)
    p.add_argument("--direct", action="store_true", help="Cross-check with a direct resolution")
    p.add_argument("--max-dim", type=int)
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("embed-verdict", help="Does M*N embed in twice its dimension?")
    p.add_argument("left", type=Path)
    p.add_argument("right", type=Path)
    p.add_argument("--cross-check", action="store_true")
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("corpus", help="Export a built-in complex")
    p.add_argument("name", choices=sorted(CORPUS))
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    p.add_argument("file", type=Path)
    p.add_argument("-o", "--output", type=Path)
    return parser.parse_args(argv)


def configure(args):
    """Apply the global flags to Django settings and the logger."""
    overrides = {}
    if args.memory_cap is not None:
        overrides["MEMORY_CAP"] = args.memory_cap
    if args.max_modulus_exponent is not None:
        overrides["MAX_MODULUS_EXPONENT"] = args.max_modulus_exponent
    if not settings.configured:
        settings.configure(ZP_SMITH=overrides)
    elif overrides:
        settings.ZP_SMITH = {**getattr(settings, "ZP_SMITH", {}), **overrides}
    smith_settings.reload()

    handlers = [h for h in logger.handlers if isinstance(h, logging.StreamHandler)]
    if handlers:
        # sys.stderr may have been swapped since the last call
        handlers[0].setStream(sys.stderr)
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s %(message)s"))
        logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if args.verbose else logging.WARNING)


def main(argv=None):
    args = _parse_args(argv)
    configure(args)
    try:
        response = COMMANDS[args.command](args)
    except MemoryCapExceeded as exc:
        response = SmithResponse.error(
            "MEMORY_CAP_EXCEEDED", str(exc), estimate=exc.estimate, cap=exc.cap
        )
    except FileFormatError as exc:
        response = SmithResponse.error("PARSE_ERROR", str(exc))
    except OSError as exc:
        response = SmithResponse.error("IO_ERROR", str(exc))
    except (TheoremViolation, ResolutionError) as exc:
        response = SmithResponse.error("THEOREM_VIOLATION", str(exc))
    except ValueError as exc:
        response = SmithResponse.error("DOMAIN_ERROR", str(exc))

    if response is None:
        return 0
    if not response.success:
        sys.stderr.write(response.to_json(include_status=True) + "\n")
        return response.exit_status
    text = response.to_json(indent=2) + "\n"
    _emit(text, getattr(args, "output", None))
    return response.exit_status


if __name__ == "__main__":
    sys.exit(main())
