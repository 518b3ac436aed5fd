"""Information-theoretic simulation of the Bell-state quantum eraser."""
from .tensor import (
    CompositeSpace,
    DensityOperator,
    StateVector,
    Subsystem,
    apply_unitary,
    eigenvalues_hermitian,
    outer,
    partial_trace,
    tensor,
    von_neumann_entropy,
)
from .venn import (
    VennDiagram3,
    conditional_entropy,
    conditional_mutual,
    joint_entropy,
    mutual_entropy,
    ternary_mutual,
    venn3,
)
from .eraser import (
    EraserState,
    ErasureAngle,
    ScalarPanel,
    Stage,
    bagan_identity,
    build_pretag,
    conditional_quanton,
    measure_A,
    measure_B,
    rotation,
    scalar_panel,
    tag_paths,
    wave_plate,
)
from .interference import (
    Pattern,
    ScreenGrid,
    SlitGeometry,
    conditional_pattern,
    estimate_visibility,
    screen_measurement_state,
    slit_amplitude,
    total_pattern,
)

__version__ = "0.1.0"
