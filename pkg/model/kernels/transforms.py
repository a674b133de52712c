"""
KernelTransforms: validated evaluators for C(omega), S(omega), C'(omega), S'(omega).
"""
from dataclasses import dataclass

from .base_kernel import ArrayLike, BaseKernel, as_omega_array, as_output


@dataclass(frozen=True)
class KernelTransforms:
    """
    Cosine/sine transforms of a normalized kernel and their derivatives.

    All evaluators accept a scalar or a numpy array of frequencies and reject
    negative values with ValueError.
    """

    kernel: BaseKernel

    def C(self, omega: ArrayLike) -> ArrayLike:
        values, is_scalar = as_omega_array(omega)
        return as_output(self.kernel._cosine(values), is_scalar)

    def S(self, omega: ArrayLike) -> ArrayLike:
        values, is_scalar = as_omega_array(omega)
        return as_output(self.kernel._sine(values), is_scalar)

    def C_prime(self, omega: ArrayLike) -> ArrayLike:
        values, is_scalar = as_omega_array(omega)
        return as_output(self.kernel._cosine_prime(values), is_scalar)

    def S_prime(self, omega: ArrayLike) -> ArrayLike:
        values, is_scalar = as_omega_array(omega)
        return as_output(self.kernel._sine_prime(values), is_scalar)


def transforms(kernel: BaseKernel) -> KernelTransforms:
    """
    Build the transform evaluators for a kernel.

    Args:
        kernel: A validated kernel instance

    Returns:
        KernelTransforms: Evaluators of C, S, C', S' for the normalized kernel
    """
    return KernelTransforms(kernel)
