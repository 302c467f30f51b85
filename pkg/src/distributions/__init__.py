# distributions/__init__.py
from .discrete import (
    DiscreteDist,
    merge_atoms,
    mean,
    variance,
    call_value,
    call_values,
    put_value,
    shift,
    center,
    scale_center,
    product_independent,
    total_variation,
)
from .io import AtomModel, DistributionModel, load_distribution, dump_distribution

__all__ = [
    'DiscreteDist',
    'merge_atoms',
    'mean',
    'variance',
    'call_value',
    'call_values',
    'put_value',
    'shift',
    'center',
    'scale_center',
    'product_independent',
    'total_variation',
    'AtomModel',
    'DistributionModel',
    'load_distribution',
    'dump_distribution',
]
