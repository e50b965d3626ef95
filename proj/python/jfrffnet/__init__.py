"""Joint time-vertex fractional Fourier transforms and JFRFFNet denoising."""

from ._jfrffnet import *  # noqa: F401,F403
from ._jfrffnet import __version__
