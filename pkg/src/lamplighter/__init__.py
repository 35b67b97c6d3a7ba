"""Lamplighter group word metric, explicit quasi-line walks, and
ball-local coarse separation evidence."""

from .group import (
    EXCEEDS,
    IDENTITY,
    CodecError,
    Configuration,
    Step,
    apply_step,
    bfs_ball,
    bfs_distance,
    compose,
    decode_config,
    dyadic_views,
    encode_config,
    generator,
    invert,
    neighbors,
    word_distance,
)
from .walks import (
    ProbeSet,
    Walk,
    half_quasi_line,
    mirror_walk,
    probes,
    quasi_circle,
    quasi_interval,
    quasi_line,
    stage_config,
    stage_steps,
    stage_walk,
    trailing_ones,
)
from .coarse import (
    Ball,
    CircleFamilyDistortion,
    Component,
    DistortionProfile,
    PathSpec,
    ProbeInsideObstacleError,
    ProbeOutsideBallError,
    ProbePlacement,
    ResourceLimitError,
    SeparationReport,
    ball,
    circle_family_distortion,
    components_after_removal,
    distance_to_path,
    distortion_profile,
    path_in_ball,
    separation_report,
)

__all__ = [
    "EXCEEDS",
    "IDENTITY",
    "CodecError",
    "Configuration",
    "Step",
    "apply_step",
    "bfs_ball",
    "bfs_distance",
    "compose",
    "decode_config",
    "dyadic_views",
    "encode_config",
    "generator",
    "invert",
    "neighbors",
    "word_distance",
    "ProbeSet",
    "Walk",
    "half_quasi_line",
    "mirror_walk",
    "probes",
    "quasi_circle",
    "quasi_interval",
    "quasi_line",
    "stage_config",
    "stage_steps",
    "stage_walk",
    "trailing_ones",
    "Ball",
    "CircleFamilyDistortion",
    "Component",
    "DistortionProfile",
    "PathSpec",
    "ProbeInsideObstacleError",
    "ProbeOutsideBallError",
    "ProbePlacement",
    "ResourceLimitError",
    "SeparationReport",
    "ball",
    "circle_family_distortion",
    "components_after_removal",
    "distance_to_path",
    "distortion_profile",
    "path_in_ball",
    "separation_report",
]
