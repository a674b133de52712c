"""
Figures package.
Contains the base figure class and one preset per reproducible figure.
"""

from .base_figure import BaseFigure, FigureBundle, PRESET_K, PRESET_D
from .analytic_figures import KernelShapeFigure, UniformRegionFigure, GammaTransformFigure
from .simulation_figures import UniformHopfFigure, GammaSwitchingFigure, GammaTwoRegimesFigure

FIGURE_REGISTRY = {
    figure.figure_id: figure
    for figure in (
        KernelShapeFigure, UniformRegionFigure, UniformHopfFigure,
        GammaTransformFigure, GammaSwitchingFigure, GammaTwoRegimesFigure,
    )
}


def reproduce_figure(figure_id: str, output_dir: str = None, workers: int = 1,
                     sweep_points: int = None) -> FigureBundle:
    """
    Write every dataset needed to re-plot one figure.

    Args:
        figure_id: One of fig1, fig3, fig4, fig5, fig6, fig7
        output_dir: Target directory (default from the environment)
        workers: Processes for bifurcation sweeps
        sweep_points: Override of the preset sweep resolution

    Returns:
        FigureBundle: Written files and the summary

    Raises:
        ValueError: If the figure id is unknown
    """
    if figure_id not in FIGURE_REGISTRY:
        raise ValueError(f"figure: unknown id '{figure_id}', expected one of {', '.join(sorted(FIGURE_REGISTRY))}")
    return FIGURE_REGISTRY[figure_id](output_dir, workers, sweep_points).run()


__all__ = [
    'BaseFigure',
    'FigureBundle',
    'FIGURE_REGISTRY',
    'reproduce_figure',
    'KernelShapeFigure',
    'UniformRegionFigure',
    'GammaTransformFigure',
    'UniformHopfFigure',
    'GammaSwitchingFigure',
    'GammaTwoRegimesFigure',
]
