"""Exact cross-correlation spectra of p-ary m-sequences and their decimations."""

from .cyclotomic import CycInt, QuadValue, omega_pow, recognize_quadratic, sqrt_p_element, to_complex
from .ffield import FieldDesc, FieldElem, build_field, dlog, quad_char, trace
from .seqgen import SeqParams, cross_correlation_direct, m_sequence, validate_params
from .spectrum import CorrClass, SpectrumReport, closed_form_table, full_spectrum

__all__ = [
    "CorrClass", "CycInt", "FieldDesc", "FieldElem", "QuadValue", "SeqParams", "SpectrumReport",
    "build_field", "closed_form_table", "cross_correlation_direct", "dlog", "full_spectrum",
    "m_sequence", "omega_pow", "quad_char", "recognize_quadratic", "sqrt_p_element", "to_complex",
    "trace", "validate_params",
]
