"""Command line driver: ``asbsr <subcommand> ...``.

On failure a single line ``error: <category>: <message>`` goes to stderr and
the exit status is 1 (2 for usage errors).
"""

import argparse
import json
import math
import sys

import numpy as np

from . import imageio
from .cs_lab import (
    SparseSignalSpec,
    component_indices,
    cs_bound_min_redundancy,
    make_sparse_signal,
    monte_carlo_redundancy,
    recover_klargest,
)
from .errors import ASBSRError, InvalidArgument
from .formatting import fmt
from .lattices import KINDS, LatticeSpec, SampleSet, generate_positions, sample_image
from .pipeline import load_config, run_pipeline
from .reconstruction import INITS, IterConfig, direct_reconstruct, error_metrics, iterative_reconstruct
from .shapes import FAMILIES, fit_shape_to_budget, make_mask, mask_area
from .spectral import msed_zone, sparsity, truncate_spectrum
from .transforms import dct2_forward


def _emit(record):
    print(json.dumps(record, sort_keys=True))


def _log_base(text):
    if text == "e":
        return math.e
    return float(text)


def cmd_msed(args):
    image = imageio.read_image(args.image)
    spectrum = dct2_forward(image)
    mask = msed_zone(spectrum, mse=args.mse, rmse=args.rmse)
    bs = truncate_spectrum(spectrum, mask)
    if args.mask_out:
        imageio.write_mask(mask, args.mask_out)
    cells, _ = mask_area(mask)
    _emit({"cells": cells, "sparsity": fmt(sparsity(mask)), "rmse": fmt(bs.rmse), "dims": list(image.shape)})


def _mask_from_args(args, dims):
    if args.mask:
        mask = imageio.read_mask(args.mask)
        if mask.shape != tuple(dims):
            raise InvalidArgument(f"mask shape {mask.shape} does not match image {tuple(dims)}")
        return mask
    spec = fit_shape_to_budget(args.family, dims, args.fraction, args.aspect_ratio)
    return make_mask(spec, dims)


def cmd_sample(args):
    image = imageio.read_image(args.image)
    dims = image.shape
    if args.M is not None:
        M = args.M
    elif args.mask or args.fraction is not None:
        M = mask_area(_mask_from_args(args, dims))[0]
    else:
        raise InvalidArgument("give --M, --mask or --fraction")
    spec = LatticeSpec(args.lattice, M, dims, args.seed)
    samples = sample_image(image, generate_positions(spec))
    imageio.write_samples_csv(samples, args.out)
    _emit({"M": M, "dims": list(dims), "lattice": args.lattice, "seed": args.seed, "out": args.out})


def cmd_reconstruct(args):
    mask = imageio.read_mask(args.mask)
    samples = imageio.read_samples_csv(args.samples, mask.shape)
    truth = imageio.read_image(args.truth) if args.truth else None
    if args.method == "direct":
        recon = direct_reconstruct(samples, np.argwhere(mask))
        record = {"method": "direct", "M": len(samples)}
        if truth is not None:
            rmse, trim = error_metrics(recon, truth)
            record.update(rmse=fmt(rmse), trimmed90=fmt(trim))
    else:
        cfg = IterConfig(args.max_iters, args.rel_tol, args.init)
        recon, report = iterative_reconstruct(samples, mask, cfg, truth=truth)
        if args.report:
            report.write_csv(args.report)
        record = {"method": "iterative", "M": len(samples), **report.summary()}
    imageio.write_image(recon, args.out)
    record["out"] = args.out
    _emit(record)


def cmd_pipeline(args):
    result = run_pipeline(load_config(args.config), output_dir=args.output_dir)
    _emit({"output_dir": str(result.output_dir), **result.manifest["derived"], **result.report.summary()})


def cmd_cs_demo(args):
    spec = SparseSignalSpec.uniform(args.N, args.freqs)
    truth = make_sparse_signal(spec)
    rng = np.random.default_rng(args.seed)
    cols = np.sort(rng.choice(args.N, size=args.M, replace=False))
    samples = SampleSet((1, args.N), np.zeros(args.M), cols, truth[cols])
    cfg = IterConfig(args.max_iters, args.rel_tol, "zero_fill")
    _, outcome = recover_klargest(samples, len(args.freqs), cfg, truth=truth)
    if args.trace:
        with open(args.trace, "w", newline="\n") as f:
            f.write("iteration,residual,rmse_norm\n")
            for i, (r, e) in enumerate(zip(outcome.residuals, outcome.rmse_trace), start=1):
                f.write(f"{i},{fmt(r)},{fmt(e)}\n")
    _emit({
        "N": args.N, "M": args.M, "K": len(args.freqs), "seed": args.seed,
        "true_support": component_indices(spec), "detected_support": list(outcome.support),
        "support_recovered": outcome.support_recovered, "rmse_norm": fmt(outcome.rmse_norm),
        "iterations": outcome.iterations, "redundancy": fmt(args.M / len(args.freqs)),
    })


def cmd_cs_mc(args):
    cfg = IterConfig(args.max_iters, 1e-8, "zero_fill")
    table = monte_carlo_redundancy(args.N, args.freq, args.M, args.trials, args.seed, args.noise_sigma, cfg)
    if args.out:
        table.write_csv(args.out)
    else:
        print(",".join(table.HEADER))
        for r in table.rows:
            print(f"{fmt(r.sparsity)},{fmt(r.freq)},{r.M},{r.trials},{r.failures},{fmt(r.failure_rate)},{fmt(r.redundancy)}")


def cmd_bound(args):
    r = cs_bound_min_redundancy(args.ss, _log_base(args.base))
    _emit({"SS": fmt(args.ss), "log_base": args.base, "min_redundancy": fmt(r)})


def build_parser():
    p = argparse.ArgumentParser(prog="asbsr", description="Sparse image sampling and bounded-spectrum reconstruction")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("msed", help="MSED-zone and spectrum sparsity of an image")
    s.add_argument("--image", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--rmse", type=float, help="error budget in gray levels")
    g.add_argument("--mse", type=float)
    s.add_argument("--mask-out", help="write the zone as a PGM mask")
    s.set_defaults(func=cmd_msed)

    s = sub.add_parser("sample", help="sample an image over a lattice")
    s.add_argument("--image", required=True)
    s.add_argument("--lattice", choices=KINDS, default="jittered")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--M", type=int, help="sample budget (default: mask cell count)")
    s.add_argument("--mask", help="PGM mask whose area sets the budget")
    s.add_argument("--fraction", type=float, help="fit a shape of this area fraction")
    s.add_argument("--family", choices=FAMILIES, default="ellipse")
    s.add_argument("--aspect-ratio", type=float, default=1.0)
    s.add_argument("--out", required=True, help="positions CSV")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("reconstruct", help="reconstruct an image from a samples CSV")
    s.add_argument("--samples", required=True)
    s.add_argument("--mask", required=True, help="PGM spectrum mask; also fixes the image size")
    s.add_argument("--method", choices=("iterative", "direct"), default="iterative")
    s.add_argument("--max-iters", type=int, default=1000)
    s.add_argument("--rel-tol", type=float, default=1e-8)
    s.add_argument("--init", choices=INITS, default="nearest_neighbor")
    s.add_argument("--truth", help="reference image for error reporting")
    s.add_argument("--report", help="per-iteration CSV")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("pipeline", help="run a full experiment from a JSON config")
    s.add_argument("--config", required=True)
    s.add_argument("--output-dir")
    s.set_defaults(func=cmd_pipeline)

    s = sub.add_parser("cs-demo", help="single K-largest recovery of a sinusoid mixture")
    s.add_argument("--N", type=int, default=512)
    s.add_argument("--M", type=int, default=76)
    s.add_argument("--freqs", type=float, nargs="+", default=[0.1, 0.3, 0.5, 0.7, 0.9])
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-iters", type=int, default=1000)
    s.add_argument("--rel-tol", type=float, default=1e-8)
    s.add_argument("--trace", help="per-iteration CSV")
    s.set_defaults(func=cmd_cs_demo)

    s = sub.add_parser("cs-mc", help="Monte-Carlo failure rate versus number of samples")
    s.add_argument("--N", type=int, default=512)
    s.add_argument("--freq", type=float, default=0.5)
    s.add_argument("--M", type=int, nargs="+", default=list(range(8, 49, 4)))
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--noise-sigma", type=float, default=0.0)
    s.add_argument("--max-iters", type=int, default=50)
    s.add_argument("--out", help="table CSV (default: stdout)")
    s.set_defaults(func=cmd_cs_mc)

    s = sub.add_parser("bound", help="minimum redundancy R* from R > -2 log(R * SS)")
    s.add_argument("--ss", type=float, required=True)
    s.add_argument("--base", default="e", help="logarithm base: e, 2, 10 or any number > 1")
    s.set_defaults(func=cmd_bound)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ASBSRError as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {exc.category}: {msg}", file=sys.stderr)
        return 1
    except OSError as exc:
        msg = " ".join(str(exc).split())
        print(f"error: io-error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
