"""Exact algebra for quantized matrix algebras, the quantized Weyl algebra and its differential operators."""

from .qcoeff import ONE, ZERO, PoleError, QRat, gamma, qint, qpow
from .qmatrixalg import MINUS, PLUS, basis_of_degree, normal_order, word_element
from .weylq import WeylElement
from .pairing import PairingForm, gram, transpose
from .dualrep import DualRepSpec, dual_rep_matrix
from .membership import derive_case

__version__ = "0.1.0"

__all__ = ["ONE", "ZERO", "PoleError", "QRat", "gamma", "qint", "qpow", "MINUS", "PLUS", "basis_of_degree",
           "normal_order", "word_element", "WeylElement", "PairingForm", "gram", "transpose", "DualRepSpec",
           "dual_rep_matrix", "derive_case"]
