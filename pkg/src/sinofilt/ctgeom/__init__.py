from .fbp import fbp_fan, filter_sinogram, ramp_kernel
from .geometry import FanBeamGeometry, ReconFilter, pixel_centers
from .phantom import SHEPP_LOGAN_MODIFIED, disk, ellipse_sum, shepp_logan
from .projector import forward_project_fan, line_integrals

__all__ = [
    "FanBeamGeometry",
    "ReconFilter",
    "SHEPP_LOGAN_MODIFIED",
    "disk",
    "ellipse_sum",
    "fbp_fan",
    "filter_sinogram",
    "forward_project_fan",
    "line_integrals",
    "pixel_centers",
    "ramp_kernel",
    "shepp_logan",
]
