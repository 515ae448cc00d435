"""Image sampling at rates set by a spectrum-bounding shape, with
bounded-spectrum reconstruction, plus a small compressed-sensing lab."""

from .cs_lab import (
    RedundancyTable,
    SparseSignalSpec,
    TrialOutcome,
    cs_bound_min_redundancy,
    make_sparse_signal,
    monte_carlo_redundancy,
    recover_klargest,
)
from .errors import (
    ASBSRError,
    InfeasibleError,
    InvalidArgument,
    ParseError,
    SingularSystemError,
    UnsupportedFormatError,
)
from .imageio import read_image, write_image
from .lattices import (
    LatticeSpec,
    SampleSet,
    generate_positions,
    positions_jittered,
    positions_quasi_uniform,
    positions_random,
    sample_image,
)
from .pipeline import ExperimentConfig, run_pipeline
from .reconstruction import (
    IterConfig,
    ReconstructionReport,
    direct_reconstruct,
    error_metrics,
    interpolate_initial,
    iterative_reconstruct,
)
from .shapes import ShapeSpec, fit_shape_to_budget, make_mask, mask_area
from .spectral import BsApproximation, msed_zone, sparsity, truncate_spectrum
from .transforms import (
    build_subtransform,
    dct1_forward,
    dct1_inverse,
    dct2_forward,
    dct2_inverse,
)

__version__ = "0.1.0"
