"""End-to-end sampling and reconstruction driven by a JSON config.

A config looks like::

    {
      "schema": 1,
      "image": {"path": "photo.pgm"},
      "mask": {"shape": {"family": "pie_sector", "target_fraction": 0.3}},
      "lattice": {"kind": "jittered"},
      "reconstruction": {"method": "iterative", "max_iters": 1000},
      "output_dir": "out",
      "seed": 7
    }

``image`` is either ``{"path": ...}`` or ``{"synthetic": {...}}`` and
``mask`` is either ``{"shape": {...}}`` or ``{"path": ...}``.  A shape gives
either ``scale`` or ``target_fraction``.  The lattice budget ``M`` defaults
to the number of mask cells.

Every run writes ``manifest.json`` holding the fully resolved config, which
can be fed back to :func:`run_pipeline` to repeat the run exactly.
"""

import contextlib
import json
import os
import secrets
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import imageio
from .errors import ASBSRError, InvalidArgument
from .lattices import LatticeSpec, generate_positions, sample_image
from .reconstruction import IterConfig, ReconstructionReport, direct_reconstruct, error_metrics, iterative_reconstruct
from .shapes import ShapeSpec, fit_shape_to_budget, make_mask, mask_area
from .synthetic import bound_spectrum, natural_noise_image

__all__ = ["SCHEMA_VERSION", "OUTPUT_DIR_ENV", "ExperimentConfig", "PipelineResult", "load_config", "run_pipeline"]

SCHEMA_VERSION = 1
OUTPUT_DIR_ENV = "ASBSR_OUTPUT_DIR"
METHODS = ("iterative", "direct")


@dataclass
class ExperimentConfig:
    image: dict
    mask: dict
    lattice: dict = field(default_factory=lambda: {"kind": "jittered"})
    reconstruction: dict = field(default_factory=lambda: {"method": "iterative"})
    output_dir: str = "asbsr-out"
    seed: int = None

    def __post_init__(self):
        if not isinstance(self.image, dict) or len({"path", "synthetic"} & self.image.keys()) != 1:
            raise InvalidArgument("config.image needs exactly one of 'path' or 'synthetic'")
        if not isinstance(self.mask, dict) or len({"path", "shape"} & self.mask.keys()) != 1:
            raise InvalidArgument("config.mask needs exactly one of 'path' or 'shape'")
        if "shape" in self.mask:
            shape = self.mask["shape"]
            if len({"scale", "target_fraction"} & shape.keys()) != 1:
                raise InvalidArgument("config.mask.shape needs exactly one of 'scale' or 'target_fraction'")
        method = self.reconstruction.get("method", "iterative")
        if method not in METHODS:
            raise InvalidArgument(f"unknown reconstruction method {method!r}; expected one of {METHODS}")
        if "synthetic" in self.image:
            syn = self.image["synthetic"]
            M = self.lattice.get("M")
            if M is not None and "dims" in syn and int(M) > int(syn["dims"][0]) * int(syn["dims"][1]):
                raise InvalidArgument(f"lattice M={M} exceeds the {syn['dims'][0]}x{syn['dims'][1]} grid")

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        schema = d.pop("schema", SCHEMA_VERSION)
        if schema != SCHEMA_VERSION:
            raise InvalidArgument(f"unsupported config schema {schema}; this version reads schema {SCHEMA_VERSION}")
        d.pop("derived", None)
        known = {"image", "mask", "lattice", "reconstruction", "output_dir", "seed"}
        unknown = set(d) - known
        if unknown:
            raise InvalidArgument(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    def to_dict(self):
        return {
            "schema": SCHEMA_VERSION,
            "image": self.image,
            "mask": self.mask,
            "lattice": self.lattice,
            "reconstruction": self.reconstruction,
            "output_dir": self.output_dir,
            "seed": self.seed,
        }


def load_config(path):
    with open(path) as f:
        return ExperimentConfig.from_dict(json.load(f))


@dataclass
class PipelineResult:
    output_dir: Path
    image: np.ndarray
    reconstructed: np.ndarray
    mask: np.ndarray
    samples: object
    report: ReconstructionReport
    manifest: dict


@contextlib.contextmanager
def _stage(name):
    try:
        yield
    except ASBSRError as exc:
        msg = str(exc)
        if not msg.startswith(f"{name}: "):
            exc.args = (f"{name}: {msg}",)
        raise


def _dump_json(obj, path):
    with open(path, "w", newline="\n") as f:
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write("\n")


def run_pipeline(cfg, output_dir=None):
    """Run mask, lattice, sampling and reconstruction; write all artifacts.

    Output directory precedence: ``output_dir`` argument, then the
    ``ASBSR_OUTPUT_DIR`` environment variable, then ``cfg.output_dir``.
    """
    if isinstance(cfg, dict):
        cfg = ExperimentConfig.from_dict(cfg)
    out = Path(output_dir or os.environ.get(OUTPUT_DIR_ENV) or cfg.output_dir)
    seed = cfg.seed if cfg.seed is not None else secrets.randbits(63)
    lattice_cfg = dict(cfg.lattice)
    lattice_seed = lattice_cfg.get("seed")
    lattice_seed = seed if lattice_seed is None else int(lattice_seed)
    method = cfg.reconstruction.get("method", "iterative")

    with _stage("config"):
        iter_cfg = IterConfig(**{k: v for k, v in cfg.reconstruction.items() if k != "method"})

    image_cfg = dict(cfg.image)
    if "path" in image_cfg:
        with _stage("imageio"):
            image = imageio.read_image(image_cfg["path"])
        dims = image.shape
    else:
        syn = dict(image_cfg["synthetic"])
        syn.setdefault("dims", [256, 256])
        syn.setdefault("seed", seed)
        syn.setdefault("falloff", 1.0)
        syn.setdefault("bound_to_mask", True)
        image_cfg = {"synthetic": syn}
        dims = (int(syn["dims"][0]), int(syn["dims"][1]))
        image = None

    M = lattice_cfg.get("M")
    if M is not None and not 1 <= int(M) <= dims[0] * dims[1]:
        raise InvalidArgument(f"config: lattice M={M} must be in [1, {dims[0] * dims[1]}]")

    mask_cfg = dict(cfg.mask)
    shape_scale = None
    with _stage("shapes"):
        if "path" in mask_cfg:
            mask = imageio.read_mask(mask_cfg["path"])
            if mask.shape != tuple(dims):
                raise InvalidArgument(f"mask shape {mask.shape} does not match image {tuple(dims)}")
        else:
            shape = dict(mask_cfg["shape"])
            family = shape["family"]
            aspect = float(shape.get("aspect_ratio", 1.0))
            span = tuple(shape.get("angular_span", (0.0, 90.0)))
            if "target_fraction" in shape:
                spec = fit_shape_to_budget(family, dims, float(shape["target_fraction"]), aspect, span)
            else:
                spec = ShapeSpec(family, float(shape["scale"]), aspect, span)
            mask = make_mask(spec, dims)
            shape_scale = spec.scale
            resolved = spec.to_dict()
            if "target_fraction" in shape:
                resolved["target_fraction"] = shape["target_fraction"]
                del resolved["scale"]
            mask_cfg = {"shape": resolved}
        cells, fraction = mask_area(mask)

    if image is None:
        image = natural_noise_image(dims, seed=int(syn["seed"]), falloff=float(syn["falloff"]))
        if syn["bound_to_mask"]:
            image = bound_spectrum(image, mask)

    M = cells if M is None else int(M)
    with _stage("lattices"):
        spec = LatticeSpec(lattice_cfg.get("kind", "jittered"), M, dims, lattice_seed)
        positions = generate_positions(spec)
        samples = sample_image(image, positions)

    with _stage("reconstruction"):
        if method == "iterative":
            recon, report = iterative_reconstruct(samples, mask, iter_cfg, truth=image)
        else:
            recon = direct_reconstruct(samples, np.argwhere(mask))
            residual = float(np.sqrt(np.mean((recon[samples.rows, samples.cols] - samples.values) ** 2)))
            rmse, trim = error_metrics(recon, image)
            report = ReconstructionReport(
                iterations_run=1, residuals=[residual], rmse_vs_truth=[rmse], rmse_trimmed90=[trim],
                final_residual=residual, converged=True,
            )

    resolved_cfg = ExperimentConfig(
        image=image_cfg,
        mask=mask_cfg,
        lattice=spec.to_dict(),
        reconstruction={"method": method, **iter_cfg.to_dict()},
        output_dir=cfg.output_dir,
        seed=seed,
    )
    manifest = resolved_cfg.to_dict()
    manifest["derived"] = {"M": M, "mask_cells": cells, "mask_fraction": fraction, "dims": list(dims)}
    if shape_scale is not None:
        manifest["derived"]["shape_scale"] = shape_scale

    out.mkdir(parents=True, exist_ok=True)
    imageio.write_pgm(recon, out / "reconstructed.pgm", maxval=255 if image.max() <= 255.5 else 65535)
    imageio.write_mask(mask, out / "mask.pgm")
    imageio.write_samples_csv(samples, out / "positions.csv")
    report.write_csv(out / "report.csv")
    report.write_json(out / "report.json")
    _dump_json(manifest, out / "manifest.json")
    return PipelineResult(out, image, recon, mask, samples, report, manifest)
