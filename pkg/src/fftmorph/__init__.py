"""Exact grayscale morphology via tonal-lift FFT convolution."""

from .fft_conv import (Backend, ConvPlan, PrecisionBudgetError, conv_full_direct,
                       conv_full_fft, conv_full_fft_with_stats, next_fast_size,
                       set_fft_workers)
from .morphology import (MorphMethod, beucher_gradient, closing, dilate,
                         dilate_fft, dilate_naive, erode, erode_fft,
                         erode_naive, negate, opening, reflect)
from .pgmio import (ParseError, clamp, histogram, read_pgm, read_se,
                    requantize, write_pgm, write_se)
from .semiring import (NEG_INF, degree, maxplus_sum_of_products, monomial,
                       poly_add, poly_mul)
from .tensor import OffsetArray, full_output_range
from .umbra import (CountVolume, GridFunction, UmbraVolume, build_umbra,
                    project, project_with_validity, required_lr)

__version__ = "0.1.0"

__all__ = [
    "Backend", "ConvPlan", "CountVolume", "GridFunction", "MorphMethod",
    "NEG_INF", "OffsetArray", "ParseError", "PrecisionBudgetError",
    "UmbraVolume", "beucher_gradient", "build_umbra", "clamp", "closing",
    "conv_full_direct", "conv_full_fft", "conv_full_fft_with_stats", "degree",
    "dilate", "dilate_fft", "dilate_naive", "erode", "erode_fft",
    "erode_naive", "full_output_range", "histogram", "maxplus_sum_of_products",
    "monomial", "negate", "next_fast_size", "opening", "poly_add", "poly_mul",
    "project", "project_with_validity", "read_pgm", "read_se", "reflect",
    "requantize", "required_lr", "set_fft_workers", "write_pgm", "write_se",
]
