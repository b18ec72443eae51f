"""Skew energy and limiting spectra of random oriented graphs."""
from ._backend import backend_name
from .errors import EdgeListError, NumericError, ParameterError, SamplingError, SkewRandError
from .graphgen import (
    GnpParams,
    OrientedGraph,
    RegularParams,
    degree_sequence,
    read_edge_list,
    sample_gnp_oriented,
    sample_regular_oriented,
    write_edge_list,
)
from .lsd import SEMICIRCLE, DensityModel, energy_constant, mckay
from .spectra import normalized_spectrum, skew_adjacency, skew_energy, skew_spectrum

__version__ = "0.1.0"
