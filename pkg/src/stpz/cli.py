"""Command-line interface: compress, decompress, metrics, bench, info.

JSON results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
2 dimension/validation error, 3 I/O error, 4 malformed file.  The
STPZ_THREADS environment variable caps per-slice parallelism (0 or unset =
one worker per CPU, at most one per slice).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .codec import Method, deserialize, serialize, storage_count
from .decomp import reconstruct, t_svd_trunc, tensor_stp_svd_trunc
from .errors import DimensionError, FormatError
from .imaging import (
    image_to_tensor,
    load_ppm,
    psnr,
    relative_error,
    save_ppm,
    ssim,
    tensor_to_image,
)

__all__ = ["BenchReport", "main"]


@dataclass
class BenchReport:
    """One benchmark row: method, timing, quality metrics, and storage."""

    method: str
    m2: int
    n2: int
    R: list[int]
    wall_time_seconds: float
    related_error: float
    psnr_db: float
    ssim: float
    storage_count: int
    cr: Fraction

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "m2": self.m2,
            "n2": self.n2,
            "R": self.R,
            "wall_time_seconds": self.wall_time_seconds,
            "related_error": self.related_error,
            "psnr_db": _psnr_field(self.psnr_db),
            "ssim": self.ssim,
            "storage_count": self.storage_count,
            "cr": _cr_str(self.cr),
        }


def _threads(slices: int) -> int:
    raw = os.environ.get("STPZ_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        raise DimensionError(f"STPZ_THREADS must be an integer, got {raw!r}")
    if cap < 0:
        raise DimensionError(f"STPZ_THREADS must be nonnegative, got {cap}")
    if cap == 0:
        cap = os.cpu_count() or 1
    return max(1, min(cap, slices))


def _divisors(n: int, limit: int = 16) -> list[int]:
    out = [d for d in range(2, n + 1) if n % d == 0]
    return out[:limit]


def _check_divides(factor: int, factor_name: str, dim: int, dim_name: str) -> None:
    if factor < 1 or dim % factor != 0:
        raise DimensionError(
            f"--{factor_name} {factor} does not divide {dim_name} {dim}; "
            f"valid choices include {_divisors(dim)}"
        )


def _parse_rank(spec: str, slices: int, rmax: int) -> list[int]:
    if spec == "full":
        return [rmax] * slices
    try:
        values = [int(tok) for tok in spec.split(",")]
    except ValueError:
        raise DimensionError(
            f"--rank must be 'full', an integer, or a comma list, got {spec!r}"
        )
    if len(values) == 1:
        values = values * slices
    if len(values) != slices:
        raise DimensionError(
            f"--rank list has {len(values)} entries, expected {slices}"
        )
    for r in values:
        if not 1 <= r <= rmax:
            raise DimensionError(f"rank {r} out of range [1, {rmax}]")
    return values


def _read_bytes(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write_bytes(path: str, blob: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(blob)


def _emit(obj) -> None:
    print(json.dumps(obj))


def _psnr_field(value: float):
    return "inf" if math.isinf(value) else value


def _cr_str(cr: Fraction) -> str:
    return str(float(cr))


def cmd_compress(args) -> int:
    img = load_ppm(_read_bytes(args.input))
    A = image_to_tensor(img)
    h, w, c = A.shape
    _check_divides(args.m2, "m2", h, "image height")
    _check_divides(args.n2, "n2", w, "image width")
    m1, n1 = h // args.m2, w // args.n2
    R = _parse_rank(args.rank, c, min(m1, n1))
    t0 = time.perf_counter()
    F = tensor_stp_svd_trunc(A, args.m2, args.n2, R, threads=_threads(c))
    elapsed = time.perf_counter() - t0
    _write_bytes(args.output, serialize(F))
    count = storage_count(Method.TRUNC_STPSVD, m1, args.m2, n1, args.n2, c, R)
    _emit(
        {
            "storage_count": count,
            "cr": _cr_str(Fraction(count, h * w * c)),
            "wall_time_seconds": elapsed,
        }
    )
    return 0


def cmd_decompress(args) -> int:
    F = deserialize(_read_bytes(args.input))
    img = tensor_to_image(reconstruct(F))
    if img.imag_warning:
        print("warning: reconstruction had non-negligible imaginary part", file=sys.stderr)
    _write_bytes(args.output, save_ppm(img))
    return 0


def cmd_metrics(args) -> int:
    ref = load_ppm(_read_bytes(args.ref))
    test = load_ppm(_read_bytes(args.test))
    _emit(
        {
            "psnr": _psnr_field(psnr(ref, test)),
            "ssim": ssim(ref, test),
            "related_error": relative_error(ref, test),
        }
    )
    return 0


def cmd_bench(args) -> int:
    img = load_ppm(_read_bytes(args.input))
    A = image_to_tensor(img)
    h, w, c = A.shape
    _check_divides(args.m2, "m2", h, "image height")
    _check_divides(args.n2, "n2", w, "image width")
    m1, n1 = h // args.m2, w // args.n2
    threads = _threads(c)
    if args.method == "stpsvd":
        R = _parse_rank(args.rank, c, min(m1, n1))
        t0 = time.perf_counter()
        F = tensor_stp_svd_trunc(A, args.m2, args.n2, R, threads=threads)
        out = reconstruct(F, drop_imag=True)
        elapsed = time.perf_counter() - t0
        count = storage_count(Method.TRUNC_STPSVD, m1, args.m2, n1, args.n2, c, R)
    else:
        R = _parse_rank(args.rank, c, min(h, w))
        t0 = time.perf_counter()
        F = t_svd_trunc(A, R, threads=threads)
        out = reconstruct(F, drop_imag=True)
        elapsed = time.perf_counter() - t0
        count = storage_count(Method.TRUNC_TSVD, m1, args.m2, n1, args.n2, c, R)
    test = tensor_to_image(out)
    report = BenchReport(
        method=args.method,
        m2=args.m2,
        n2=args.n2,
        R=R,
        wall_time_seconds=elapsed,
        related_error=relative_error(img, test),
        psnr_db=psnr(img, test),
        ssim=ssim(img, test),
        storage_count=count,
        cr=Fraction(count, h * w * c),
    )
    _emit(report.to_json())
    return 0


def cmd_info(args) -> int:
    F = deserialize(_read_bytes(args.input))
    m1, m2, n1, n2, l = F.dims
    R = F.block_rank
    count = storage_count(Method.TRUNC_STPSVD, m1, m2, n1, n2, l, R)
    _emit(
        {
            "m1": m1,
            "m2": m2,
            "n1": n1,
            "n2": n2,
            "l": l,
            "R": R,
            "flags": {"real_input": F.real_input},
            "storage_count": count,
            "cr": _cr_str(Fraction(count, m1 * m2 * n1 * n2 * l)),
        }
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stpz",
        description="Lossy third-order tensor compression via semi-tensor-product decompositions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a PPM/PGM image to an STPZ container")
    p.add_argument("--input", required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--rank", required=True, help="'full', an integer, or r1,r2,...")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="reconstruct a PPM/PGM image from a container")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("metrics", help="PSNR / SSIM / relative error of two images")
    p.add_argument("--ref", required=True)
    p.add_argument("--test", required=True)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("bench", help="time one method and report quality metrics")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=("stpsvd", "tsvd"), required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--rank", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("info", help="dump a container header")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_info)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
