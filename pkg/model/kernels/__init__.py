"""
Kernels package.
Contains the base kernel class and the three delay distribution families.
"""
import re

from .base_kernel import BaseKernel
from .dirac_kernel import DiracKernel
from .gamma_kernel import GammaKernel
from .transforms import KernelTransforms, transforms
from .uniform_kernel import UniformKernel

Kernel = BaseKernel


def parse_kernel(text: str) -> BaseKernel:
    """
    Build a kernel from its config-string form.

    Accepted forms: 'dirac', 'uniform:sigma=1', 'gamma:p=2'.

    Args:
        text: Kernel description

    Returns:
        BaseKernel: The validated kernel

    Raises:
        ValueError: If the family is unknown or a shape parameter is invalid
    """
    if not isinstance(text, str) or not text.strip():
        raise ValueError("kernel: empty kernel description")

    match = re.match(r'^\s*(\w+)\s*(?::\s*(\w+)\s*=\s*([^\s]+))?\s*$', text)
    if not match:
        raise ValueError(f"kernel: cannot parse '{text}'")
    family, key, raw_value = match.group(1).lower(), match.group(2), match.group(3)

    if family == "dirac":
        if key is not None:
            raise ValueError(f"kernel: dirac takes no parameters, got '{key}'")
        return DiracKernel()
    if family == "uniform":
        if key != "sigma":
            raise ValueError("kernel: uniform requires 'sigma', e.g. uniform:sigma=1")
        try:
            sigma = float(raw_value)
        except ValueError:
            raise ValueError(f"kernel: sigma must be a number, got '{raw_value}'")
        return UniformKernel(sigma)
    if family == "gamma":
        if key != "p":
            raise ValueError("kernel: gamma requires 'p', e.g. gamma:p=2")
        try:
            p = int(raw_value)
        except ValueError:
            raise ValueError(f"kernel: p must be an integer, got '{raw_value}'")
        return GammaKernel(p)
    raise ValueError(f"kernel: unknown family '{family}' (expected uniform, dirac or gamma)")


__all__ = [
    'BaseKernel',
    'Kernel',
    'UniformKernel',
    'DiracKernel',
    'GammaKernel',
    'KernelTransforms',
    'transforms',
    'parse_kernel',
]
