# Model package: parameters, equilibrium, kernels and the characteristic function
from .kernels import (
    BaseKernel, Kernel, UniformKernel, DiracKernel, GammaKernel,
    KernelTransforms, transforms, parse_kernel
)
from .params import (
    ModelParams, CharacteristicPoint, equilibrium, equilibrium_residual,
    growth_rate_for_equilibrium, linear_coefficients, characteristic
)
